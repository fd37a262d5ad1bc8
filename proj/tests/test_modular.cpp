#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pif/errors.hpp"
#include "pif/gforms.hpp"
#include "pif/modular.hpp"
#include "pif/mpbasis.hpp"
#include "pif/qseries.hpp"
#include "pif/theta.hpp"

using namespace pif;
constexpr double pi = std::numbers::pi;

TEST_CASE("lambda and 1/J expansions") {
    ZSeries lam = lambda_series(8);
    const long want[] = {0, 16, -128, 704, -3072, 11488, -38400};
    for (long k = 0; k <= 6; ++k) CHECK(lam.coeff(k) == want[k]);
    ZSeries iJ = invert(J_series(6));
    CHECK(iJ.lead == -1);
    CHECK(iJ.coeff(-1) == 1);
    CHECK(iJ.coeff(0) == 24);
    CHECK(iJ.coeff(1) == 276);
    CHECK(iJ.coeff(2) == 2048);
    CHECK_THROWS_AS(lam.coeff(9), RangeViolation);
}

TEST_CASE("fault hook") {
    testing::set_lambda_fault(true);
    CHECK(lambda_series(4).coeff(2) == -127);
    testing::set_lambda_fault(false);
    CHECK(lambda_series(4).coeff(2) == -128);
}

TEST_CASE("theta nulls and reduction") {
    LambdaJ lj = lambda_J_eval({0.0, 1.0});
    CHECK(std::abs(lj.lambda - 0.5) < 1e-13);
    CHECK(std::abs(lj.J - 1.0 / 64.0) < 1e-13);
    ThetaTriple t = theta_nulls({0.0, 1.0});
    // theta_3(i) = pi^{1/4} / Gamma(3/4)
    CHECK(std::abs(t.t3 - std::pow(pi, 0.25) / std::tgamma(0.75)) < 1e-13);
    ReductionResult r = reduce_to_fundamental({0.1, 0.01});
    CHECK(r.steps == 2);
    CHECK(std::abs(replay(r) - cplx(0.1, 0.01)) < 1e-12);
    CHECK(std::abs(r.tau_prime.z()) >= 1.0 - 1e-12);
    CHECK(std::abs(r.tau_prime.re) <= 1.0 + 1e-12);
    ThetaTriple s = theta_nulls({0.37, 0.05});
    CHECK(std::abs(std::pow(s.t3, 4) - std::pow(s.t2, 4) - std::pow(s.t4, 4)) < 1e-9 * std::abs(std::pow(s.t3, 4)));
}

TEST_CASE("basis polynomials") {
    // exact rational construction in tests/oracles/rv_oracle.py
    RVBasis p3 = gn_construct(3, Sign::plus, 12);
    CHECK(p3.P == std::vector<mpz_class>{-896, 1212, -78, 1});
    RVBasis m4 = gn_construct(4, Sign::minus, 12);
    CHECK(m4.P == std::vector<mpz_class>{0, -2024, 1080, -70, 1});
    CHECK(check_normalization(p3));
    RVBasis m0 = gn_construct(0, Sign::minus, 8);
    CHECK(m0.g_series.is_zero());
    RVBasis back = basis_from_json(to_json(p3));
    CHECK(back.g_series.coeff(5) == p3.g_series.coeff(5));
    CHECK_THROWS_AS(gn_family(4, Sign::plus, 6), InvalidArgument);
}

TEST_CASE("basis values against the mpmath oracle") {
    double x = 1.8;  // u = 3.24
    CHECK(bn_eval(gn_construct(0, Sign::plus, 12), x, 1e-10) == doctest::Approx(-0.000352651487286628984).epsilon(1e-12));
    CHECK(bn_eval(gn_construct(1, Sign::plus, 12), x, 1e-10) == doctest::Approx(0.0106825068016765247).epsilon(1e-12));
    CHECK(bn_eval(gn_construct(2, Sign::plus, 12), x, 1e-10) == doctest::Approx(-0.0746340843271356812).epsilon(1e-12));
    CHECK(bn_eval(gn_construct(1, Sign::minus, 12), x, 1e-10) == doctest::Approx(0.000696777407299762132).epsilon(1e-12));
    CHECK(bn_eval(gn_construct(2, Sign::minus, 12), x, 1e-10) == doctest::Approx(-0.0180696425224557683).epsilon(1e-12));

    auto [a1, ah1] = an_eval(1, std::sqrt(6.5), 1e-10);
    CHECK(a1 == doctest::Approx(-0.000131836912155354775).epsilon(1e-10));
    CHECK(ah1 == doctest::Approx(-0.000129894344156942008).epsilon(1e-10));
    auto [a3, ah3] = an_eval(3, std::sqrt(5.3), 1e-10);
    CHECK(a3 == doctest::Approx(0.0142545639216780874).epsilon(1e-12));
    CHECK(ah3 == doctest::Approx(0.0108841910640961451).epsilon(1e-12));
}

TEST_CASE("routes agree") {
    RVBasis b = gn_construct(2, Sign::plus, 12);
    double x = std::sqrt(5.7);
    CHECK(bn_eval(b, x, 1e-10, Route::laplace) == doctest::Approx(bn_eval(b, x, 1e-10, Route::contour)).epsilon(1e-12));
}

TEST_CASE("delta property away from the origin") {
    for (int n = 0; n <= 5; ++n)
        for (int m = 1; m <= 6; ++m) {
            auto [a, ah] = an_eval(n, std::sqrt(static_cast<double>(m)), 1e-10);
            CHECK(std::abs(a - (n == m ? 1.0 : 0.0)) < 1e-9);
            CHECK(std::abs(ah) < 1e-9);
        }
}

TEST_CASE("values at the origin follow Poisson summation") {
    // f(0) = sum a_n(0) f(sqrt n) + ahat_n(0) fhat(sqrt n) for every even Schwartz f, and
    // f(0) - fhat(0) = 2 sum_{k>=1} (fhat(k) - f(k)); the basis realizes exactly this relation.
    auto [a0, ah0] = an_eval(0, 0.0, 1e-10);
    CHECK(a0 == doctest::Approx(0.5));
    CHECK(ah0 == doctest::Approx(0.5));
    auto [a1, ah1] = an_eval(1, 0.0, 1e-10);
    CHECK(a1 == doctest::Approx(-1.0));
    CHECK(ah1 == doctest::Approx(1.0));
    auto [a2, ah2] = an_eval(2, 0.0, 1e-10);
    CHECK(std::abs(a2) < 1e-9);
    CHECK(std::abs(ah2) < 1e-9);
}

TEST_CASE("d0 and sign check") {
    CHECK(d0_eval(std::sqrt(3.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d0_eval(0.5) == doctest::Approx(std::sin(pi * 0.25) / std::sinh(pi * 0.5)));
    SignCheckReport r = modular_sign_check({0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
    CHECK(r.pass);
    CHECK(r.inv_J_decreasing);
    CHECK(r.min_theta_cubed > 0.0);
}

TEST_CASE("generating kernels") {
    CHECK(verify_generating(Sign::plus, {0.0, 2.0}, 0.7, 12) < 1e-12);
    CHECK(verify_generating(Sign::minus, {0.3, 2.5}, 1.1, 12) < 1e-12);
    CHECK_THROWS_AS(verify_generating(Sign::plus, {0.0, 0.8}, 0.7, 4), InvalidArgument);
}

TEST_CASE("Fourier eigenrelation for small n") {
    auto res = fourier_eigen_check(2, 4.0);
    for (const auto& r : res) CHECK(r.sup_error < 1e-6);
}
