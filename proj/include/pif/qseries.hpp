#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pif/errors.hpp"

namespace pif {

// Truncated Laurent series in the nome q = e^{i pi z}:
// coeffs[i] multiplies q^{lead+i}; the expansion is exact through q^order.
// A zero series has no coefficients.
template <class T>
struct QSeries {
    long lead = 0;
    long order = 0;
    std::vector<T> coeffs;

    QSeries() = default;
    QSeries(long lead_, long order_, std::vector<T> c) : lead(lead_), order(order_), coeffs(std::move(c)) {
        normalize();
    }

    static QSeries constant(const T& c, long order) {
        return QSeries(0, order, std::vector<T>{c});
    }
    static QSeries monomial(long k, long order) {
        return QSeries(k, order, std::vector<T>{T(1)});
    }

    bool is_zero() const { return coeffs.empty(); }

    T coeff(long k) const {
        if (k > order) throw RangeViolation("coefficient beyond tracked order");
        if (k < lead || k - lead >= static_cast<long>(coeffs.size())) return T(0);
        return coeffs[static_cast<std::size_t>(k - lead)];
    }

    void normalize() {
        long keep = order - lead + 1;
        if (keep < 0) keep = 0;
        if (static_cast<long>(coeffs.size()) > keep) coeffs.resize(static_cast<std::size_t>(keep));
        std::size_t z = 0;
        while (z < coeffs.size() && coeffs[z] == 0) ++z;
        if (z == coeffs.size()) {
            coeffs.clear();
            lead = order + 1;
            return;
        }
        if (z > 0) {
            coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(z));
            lead += static_cast<long>(z);
        }
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    QSeries truncated(long new_order) const {
        QSeries r = *this;
        r.order = std::min(order, new_order);
        r.normalize();
        return r;
    }
};

template <class T>
QSeries<T> operator+(const QSeries<T>& a, const QSeries<T>& b) {
    long order = std::min(a.order, b.order);
    if (a.is_zero()) return b.truncated(order);
    if (b.is_zero()) return a.truncated(order);
    long lead = std::min(a.lead, b.lead);
    if (lead > order) return QSeries<T>(order + 1, order, {});
    std::vector<T> c(static_cast<std::size_t>(order - lead + 1), T(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        long k = a.lead + static_cast<long>(i);
        if (k > order) break;
        c[static_cast<std::size_t>(k - lead)] += a.coeffs[i];
    }
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
        long k = b.lead + static_cast<long>(i);
        if (k > order) break;
        c[static_cast<std::size_t>(k - lead)] += b.coeffs[i];
    }
    return QSeries<T>(lead, order, std::move(c));
}

template <class T>
QSeries<T> operator*(const T& s, const QSeries<T>& a) {
    QSeries<T> r = a;
    for (auto& c : r.coeffs) c *= s;
    r.normalize();
    return r;
}

template <class T>
QSeries<T> operator-(const QSeries<T>& a, const QSeries<T>& b) {
    return a + T(-1) * b;
}

template <class T>
QSeries<T> operator*(const QSeries<T>& a, const QSeries<T>& b) {
    if (a.is_zero() || b.is_zero()) {
        long order = std::min(a.order + (b.is_zero() ? b.order : b.lead),
                              b.order + (a.is_zero() ? a.order : a.lead));
        return QSeries<T>(order + 1, order, {});
    }
    long lead = a.lead + b.lead;
    long order = std::min(a.order + b.lead, b.order + a.lead);
    long n = order - lead + 1;
    if (n <= 0) return QSeries<T>(order + 1, order, {});
    std::vector<T> c(static_cast<std::size_t>(n), T(0));
    long na = std::min<long>(static_cast<long>(a.coeffs.size()), n);
    for (long i = 0; i < na; ++i) {
        if (a.coeffs[static_cast<std::size_t>(i)] == 0) continue;
        long nb = std::min<long>(static_cast<long>(b.coeffs.size()), n - i);
        for (long j = 0; j < nb; ++j)
            c[static_cast<std::size_t>(i + j)] +=
                a.coeffs[static_cast<std::size_t>(i)] * b.coeffs[static_cast<std::size_t>(j)];
    }
    return QSeries<T>(lead, order, std::move(c));
}

namespace detail {
inline bool exact_divide(mpz_class& out, const mpz_class& num, const mpz_class& den) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return false;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return true;
}
inline bool exact_divide(mpq_class& out, const mpq_class& num, const mpq_class& den) {
    out = num / den;
    return true;
}
}  // namespace detail

// Needs a nonzero leading coefficient; integer series additionally need the
// quotients to stay integral (a unit leading coefficient always works).
template <class T>
QSeries<T> invert(const QSeries<T>& a) {
    if (a.is_zero()) throw InvalidArgument("cannot invert the zero series");
    long rel = a.order - a.lead;  // relative precision
    std::size_t n = static_cast<std::size_t>(rel + 1);
    std::vector<T> r(n, T(0));
    const T& c0 = a.coeffs[0];
    if (!detail::exact_divide(r[0], T(1), c0))
        throw InvalidArgument("leading coefficient is not invertible in this ring");
    for (std::size_t k = 1; k < n; ++k) {
        T s(0);
        std::size_t top = std::min(k, a.coeffs.size() - 1);
        for (std::size_t i = 1; i <= top; ++i) s += a.coeffs[i] * r[k - i];
        T neg = -s;
        if (!detail::exact_divide(r[k], neg, c0))
            throw InvalidArgument("series inverse leaves the coefficient ring");
    }
    return QSeries<T>(-a.lead, -a.lead + rel, std::move(r));
}

template <class T>
QSeries<T> pow(const QSeries<T>& a, long e) {
    if (e < 0) return pow(invert(a), -e);
    QSeries<T> result = QSeries<T>::constant(T(1), a.order - a.lead + e * a.lead);
    QSeries<T> base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

using ZSeries = QSeries<mpz_class>;
using RSeries = QSeries<mpq_class>;

// theta(z) = Theta3(z) = 1 + 2 sum q^{m^2}
ZSeries theta_series(long order);
// lambda = Theta2^4/Theta3^4 = 16q - 128q^2 + 704q^3 - ...
ZSeries lambda_series(long order);
// J = lambda(1 - lambda)/16
ZSeries J_series(long order);

namespace testing {
// Corrupts the q^2 coefficient of lambda_series (verification fault hook).
void set_lambda_fault(bool on);
bool lambda_fault();
}  // namespace testing

}  // namespace pif
