#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pif/acceptance.hpp"
#include "pif/bandlimited.hpp"
#include "pif/errors.hpp"

using namespace pif;
constexpr double pi = std::numbers::pi;

TEST_CASE("sinc and the Vaaler pair") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(0.5) == doctest::Approx(2.0 / pi));
    CHECK(std::abs(sinc(3.0)) < 1e-16);
    CHECK(sinc_deriv(1e-9) == doctest::Approx(-std::numbers::pi * std::numbers::pi * 1e-9 / 3.0).epsilon(1e-9));
    double x = 0.3;
    CHECK(vaaler::g(x) == doctest::Approx(std::pow(std::sin(pi * x) / (pi * x), 2)));
    CHECK(vaaler::h(x) == doctest::Approx(std::pow(std::sin(pi * x), 2) / (pi * pi * x)));
    // g_n = h'_n = 0, g'_n = 0, h_n = 0 at nonzero integers; h'(0) = 1
    CHECK(std::abs(vaaler::dh(0.0) - 1.0) < 1e-14);
    CHECK(std::abs(vaaler::h(2.0)) < 1e-15);
    CHECK(std::abs(vaaler::dg(0.0)) < 1e-14);
    double e = 1e-6;
    CHECK(vaaler::dg(x) == doctest::Approx((vaaler::g(x + e) - vaaler::g(x - e)) / (2 * e)).epsilon(1e-7));
    CHECK(vaaler::dh(x) == doctest::Approx((vaaler::h(x + e) - vaaler::h(x - e)) / (2 * e)).epsilon(1e-7));
}

TEST_CASE("threshold oracles") {
    // mpmath root of the bound expressions (tests/oracles/threshold_oracle.py)
    CHECK(kadec_threshold(1e-10) == doctest::Approx(0.239401115949753693).epsilon(1e-8));
    CHECK(kadec_bound(0.2) == doctest::Approx(0.806177787711372159).epsilon(1e-13));
    CHECK(vaaler_threshold(1e-10) == doctest::Approx(0.119535520164995534).epsilon(1e-8));
    CHECK(vaaler_bound(0.1) == doctest::Approx(0.810648412011439704).epsilon(1e-12));
    CHECK(kadec_bound(0.0) == 0.0);
    CHECK_THROWS_AS(kadec_bound(0.6), RangeViolation);
    CHECK_THROWS_AS(vaaler_bound(0.25), RangeViolation);
    CHECK(kadec_bound_complex(0.2) > kadec_bound(0.2));
}

TEST_CASE("small-L branches are continuous") {
    CHECK(vaaler_bound(0.999e-3) == doctest::Approx(vaaler_bound(1.001e-3)).epsilon(1e-2));
    CHECK(digamma_pair_sum(0.0) == doctest::Approx(pi * pi / 3.0));
    CHECK(digamma_pair_sum(1e-7) == doctest::Approx(digamma_pair_sum(1e-3)).epsilon(1e-5));
    CHECK_THROWS_AS(digamma_pair_sum(2.0), PoleError);
    // direct sum of 1/(j (j + z)) for z = 0.3
    double s = 0.0;
    for (int j = 1; j < 2000000; ++j) s += 1.0 / (j * (j + 0.3)) + 1.0 / (j * (j - 0.3));
    CHECK(digamma_pair_sum(0.3) == doctest::Approx(s).epsilon(1e-6));
}

TEST_CASE("zero jitter returns the input") {
    SincFixture fx = make_sinc_fixture(7, 0.0);
    Reconstruction r = shannon_reconstruct(fx.samples, 1e-12);
    for (long k = -200; k <= 200; ++k) CHECK(r.values[k] == doctest::Approx(fx.samples.values[k]));
}

TEST_CASE("jittered Shannon recovery") {
    SincFixture fx = make_sinc_fixture(3, 0.2);
    Reconstruction r = shannon_reconstruct(fx.samples, 1e-12);
    CHECK(r.certificate.invertible);
    double worst = 0.0;
    for (long k = -100; k <= 100; ++k) {
        double want = std::abs(k) <= 50 ? fx.coeffs[static_cast<std::size_t>(k + 50)] : 0.0;
        worst = std::max(worst, std::abs(r.values[k] - want));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("above the threshold is not certified") {
    SincFixture fx = make_sinc_fixture(3, 0.3);
    CHECK_THROWS_AS(shannon_reconstruct(fx.samples, 1e-12), NotCertified);
}

TEST_CASE("sample set json") {
    SincFixture fx = make_sinc_fixture(1, 0.1);
    SampleSet back = sample_set_from_json(to_json(fx.samples));
    CHECK(back.values.values == fx.samples.values.values);
    CHECK(back.profile.eps == fx.samples.profile.eps);
    CHECK(back.band == Band::pw_pi);
}

TEST_CASE("Shannon to Vaaler conversion") {
    IndexWindow w = IndexWindow::two_sided(-5, 5);
    RealSequence a(w);
    a.at(0) = 1.0;  // f = sinc
    VaalerConversion c = shannon_to_vaaler(a);
    // f'(k) = (-1)^k / k for k != 0
    CHECK(c.b[3] == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
    CHECK(c.b[0] == doctest::Approx(0.0));
    for (double x : {0.25, 1.7, -3.3})
        CHECK(c(x) == doctest::Approx(sinc(x)).epsilon(1e-6));
}
