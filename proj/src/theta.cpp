#include "pif/theta.hpp"

#include <cmath>
#include <numbers>

#include "pif/errors.hpp"

namespace pif {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kDirectIm = 0.2;  // series only for |q| <= e^{-0.2 pi}
const cplx I(0.0, 1.0);

// Tail of sum_{m>M} |q|^{m^2} (or m(m+1)) is below 2|q|^{(M+1)^2}/(1-|q|).
ThetaTriple direct(cplx z) {
    double y = z.imag();
    double aq = std::exp(-pi * y);
    int M = 1;
    while (2.0 * std::pow(aq, (M + 1.0) * (M + 1.0) - 1.0) / (1.0 - aq) > 1e-17) ++M;
    cplx s3 = 1.0, s4 = 1.0, s2 = 0.0;
    for (int m = 1; m <= M; ++m) {
        cplx t = std::exp(I * pi * static_cast<double>(m) * static_cast<double>(m) * z);
        s3 += 2.0 * t;
        s4 += (m % 2 ? -2.0 : 2.0) * t;
    }
    for (int m = 0; m <= M; ++m)
        s2 += std::exp(I * pi * static_cast<double>(m) * static_cast<double>(m + 1) * z);
    s2 *= 2.0 * std::exp(I * pi * z / 4.0);
    return {s2, s3, s4};
}

// Theta values at -1/w from those at w.
ThetaTriple apply_S(const ThetaTriple& t, cplx w) {
    cplx f = std::sqrt(-I * w);
    return {f * t.t4, f * t.t3, f * t.t2};
}

// Theta values at w + k from those at w.
ThetaTriple apply_shift(const ThetaTriple& t, long k) {
    long r = ((k % 8) + 8) % 8;
    cplx ph = std::exp(I * pi * static_cast<double>(r) / 4.0);
    if (k % 2 == 0) return {ph * t.t2, t.t3, t.t4};
    return {ph * t.t2, t.t4, t.t3};
}

bool in_domain(cplx g, double tol) {
    return std::abs(g) >= 1.0 - tol && std::abs(g.real()) <= 1.0 + tol;
}

}  // namespace

ReductionResult reduce_to_fundamental(UpperHalfPoint tau, double tol) {
    if (!(tau.im > 0.0)) throw InvalidArgument("point must lie in the upper half plane");
    ReductionResult r;
    cplx g = tau.z();
    r.shift = static_cast<long>(std::floor((g.real() + 1.0) / 2.0));
    g -= 2.0 * static_cast<double>(r.shift);
    r.path.push_back(g);
    const int cap = 1000000;
    while (!in_domain(g, tol)) {
        if (r.steps >= cap) throw ReductionFailure("iteration cap exceeded in fundamental-domain reduction");
        cplx w = -1.0 / g;
        long n = static_cast<long>(std::floor((w.real() + 1.0) / 2.0));
        g = w - 2.0 * static_cast<double>(n);
        r.word.push_back(n);
        r.path.push_back(g);
        ++r.steps;
    }
    r.tau_prime = {g.real(), g.imag()};
    r.I = g.imag();
    return r;
}

cplx replay(const ReductionResult& r) {
    cplx g = r.tau_prime.z();
    for (std::size_t i = r.word.size(); i-- > 0;) g = -1.0 / (g + 2.0 * static_cast<double>(r.word[i]));
    return g + 2.0 * static_cast<double>(r.shift);
}

ThetaTriple theta_nulls(UpperHalfPoint zp) {
    if (!(zp.im > 0.0)) throw InvalidArgument("point must lie in the upper half plane");
    if (zp.im >= kDirectIm) return direct(zp.z());
    ReductionResult r = reduce_to_fundamental(zp);
    cplx tp = r.tau_prime.z();
    ThetaTriple t;
    if (tp.imag() >= kDirectIm) {
        t = direct(tp);
    } else {
        // near the cusp +-1: tau' = c + w, w = -1/v with Im v large
        long c = tp.real() > 0.0 ? 1 : -1;
        cplx w = tp - static_cast<double>(c);
        cplx v = -1.0 / w;
        t = apply_shift(apply_S(direct(v), v), c);
    }
    for (std::size_t i = r.word.size(); i-- > 0;) {
        cplx w = r.path[i + 1] + 2.0 * static_cast<double>(r.word[i]);
        t = apply_S(apply_shift(t, 2 * r.word[i]), w);
    }
    return apply_shift(t, 2 * r.shift);
}

cplx theta_eval(ThetaKind which, UpperHalfPoint z) {
    ThetaTriple t = theta_nulls(z);
    switch (which) {
        case ThetaKind::two: return t.t2;
        case ThetaKind::three: return t.t3;
        case ThetaKind::four: return t.t4;
    }
    return t.t3;
}

LambdaJ lambda_J_eval(UpperHalfPoint z) {
    ThetaTriple t = theta_nulls(z);
    cplx r = t.t2 / t.t3;
    cplx lam = r * r * r * r;
    return {lam, lam * (1.0 - lam) / 16.0};
}

LineValues line_values(double t) {
    if (!(t > 0.0)) throw InvalidArgument("line parameter must be positive");
    // theta(1+it) = Theta4(it), lambda(1+it) = -Theta2(it)^4/Theta4(it)^4
    double th, ratio;
    if (t >= 1.0) {
        ThetaTriple v = direct(cplx(0.0, t));
        th = v.t4.real();
        ratio = v.t2.real() / v.t4.real();
    } else {
        double s = 1.0 / t;
        ThetaTriple v = direct(cplx(0.0, s));
        th = std::sqrt(s) * v.t2.real();
        ratio = v.t4.real() / v.t2.real();
    }
    double r2 = ratio * ratio;
    double lam = -r2 * r2;
    return {th * th * th, lam, 16.0 / (lam * (1.0 - lam))};
}

}  // namespace pif
