#include "pif/hilbert.hpp"

#include <cmath>
#include <numbers>

#include "pif/errors.hpp"

namespace pif {

TruncatedOperator heps_assemble(const HilbertKernelSpec& spec, const IndexWindow& w) {
    if (spec.p < 1) throw InvalidArgument("kernel order must be >= 1");
    if (!(spec.profile.L < 1.0)) throw RangeViolation("perturbation size L must be < 1");
    TruncatedOperator A(w, w);
    for (long n = w.lo; n <= w.hi; ++n) {
        double e = spec.profile[n];
        for (long k = w.lo; k <= w.hi; ++k) {
            if (k == n) continue;
            double d = static_cast<double>(n - k) + e;
            double v = 1.0 / std::pow(d, spec.p);
            if (spec.alternating && ((n - k) % 2 != 0)) v = -v;
            A(n, k) = v;
        }
    }
    return A;
}

TruncatedOperator sq_assemble(int q, const IndexWindow& w) {
    if (q <= 0) throw InvalidArgument("S^q needs q >= 1");
    TruncatedOperator A(w, w);
    for (long n = w.lo; n <= w.hi; ++n)
        for (long k = w.lo; k <= w.hi; ++k)
            if (k != n) A(n, k) = 1.0 / std::pow(std::abs(static_cast<double>(n - k)), q);
    return A;
}

double hp0_norm(int p) {
    // (2 pi)^p b_p / p!, b_p = max |B_p| on [0,1]
    constexpr double pi = std::numbers::pi;
    switch (p) {
        case 1: return 2.0 * pi * 0.5;
        case 2: return 4.0 * pi * pi * (1.0 / 6.0) / 2.0;
        case 3: return 8.0 * pi * pi * pi * (1.0 / (12.0 * std::sqrt(3.0))) / 6.0;
        default: throw NotImplemented("closed-form norm only for p = 1, 2, 3");
    }
}

double zeta(int q) {
    if (q < 2) throw InvalidArgument("zeta(q) needs q >= 2");
    const int M = 2000;
    double s = 0.0;
    for (int k = M; k >= 1; --k) s += std::pow(static_cast<double>(k), -q);
    // sum_{k>M} k^{-q} via Euler-Maclaurin; next term is below 1e-20 for M = 2000
    double m = M, dq = q;
    double tail = std::pow(m, 1.0 - dq) / (dq - 1.0) - 0.5 * std::pow(m, -dq) +
                  dq * std::pow(m, -dq - 1.0) / 12.0 -
                  dq * (dq + 1.0) * (dq + 2.0) * std::pow(m, -dq - 3.0) / 720.0;
    return s + tail;
}

double sq_norm(int q) {
    if (q < 2) throw InvalidArgument("||S^q|| is finite only for q >= 2");
    return 2.0 * zeta(q);
}

double gamma_p(int p, double L) {
    if (!(L >= 0.0 && L < 1.0)) throw RangeViolation("gamma_p needs 0 <= L < 1");
    double pert = (std::pow(1.0 + L, p) - 1.0) / std::pow(1.0 - L, p);
    return hp0_norm(p) + pert * sq_norm(p + 1);
}

}  // namespace pif
