#include "pif/qseries.hpp"

namespace pif {

namespace {
bool g_lambda_fault = false;
}

namespace testing {
void set_lambda_fault(bool on) { g_lambda_fault = on; }
bool lambda_fault() { return g_lambda_fault; }
}  // namespace testing

ZSeries theta_series(long order) {
    if (order < 0) throw InvalidArgument("order must be >= 0");
    std::vector<mpz_class> c(static_cast<std::size_t>(order + 1), 0);
    c[0] = 1;
    for (long m = 1; m * m <= order; ++m) c[static_cast<std::size_t>(m * m)] = 2;
    return ZSeries(0, order, std::move(c));
}

ZSeries lambda_series(long order) {
    if (order < 1) throw InvalidArgument("order must be >= 1");
    // Theta2^4 = 16 q psi^4, psi = sum_{m>=0} q^{m(m+1)}
    std::vector<mpz_class> p(static_cast<std::size_t>(order + 1), 0);
    for (long m = 0; m * (m + 1) <= order; ++m) p[static_cast<std::size_t>(m * (m + 1))] = 1;
    ZSeries psi(0, order, std::move(p));
    ZSeries th = theta_series(order);
    ZSeries psi2 = psi * psi, th2 = th * th;
    ZSeries ratio = (psi2 * psi2) * invert(th2 * th2);
    ZSeries lam = mpz_class(16) * (ZSeries::monomial(1, order) * ratio).truncated(order);
    if (g_lambda_fault && order >= 2) {
        lam.coeffs[1] += 1;
        lam.normalize();
    }
    return lam;
}

ZSeries J_series(long order) {
    ZSeries lam = lambda_series(order);
    ZSeries one = ZSeries::constant(1, order);
    ZSeries prod = lam * (one - lam);
    // all coefficients of lambda(1 - lambda) are divisible by 16
    for (auto& c : prod.coeffs) {
        if (!mpz_divisible_ui_p(c.get_mpz_t(), 16))
            throw ConstructionFailure("lambda(1-lambda) has a coefficient not divisible by 16");
        c /= 16;
    }
    prod.normalize();
    return prod;
}

}  // namespace pif
