#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pif/errors.hpp"
#include "pif/modular.hpp"
#include "pif/rvperturb.hpp"

using namespace pif;
constexpr double pi = std::numbers::pi;

namespace {

RVOperatorConfig zero_config(int N) {
    RVOperatorConfig cfg;
    cfg.N = N;
    cfg.profile = profile_from_eps(IndexWindow::one_sided(N), std::vector<double>(N + 1, 0.0), true);
    return cfg;
}

WeightedSeqPair gaussian_samples(const RVOperatorConfig& cfg, double a) {
    WeightedSeqPair s;
    s.x = RealSequence(IndexWindow::one_sided(cfg.N));
    s.y = RealSequence(IndexWindow::one_sided(cfg.N));
    for (int k = 0; k <= cfg.N; ++k) {
        double u = k + cfg.profile[k];
        s.x.at(k) = std::exp(-a * pi * u);
        s.y.at(k) = std::exp(-pi * u / a) / std::sqrt(a);
    }
    return s;
}

}  // namespace

TEST_CASE("unperturbed operator") {
    RVOperatorConfig cfg = zero_config(16);
    TruncatedOperator B = build_T_tilde(cfg);
    CHECK(B.entries.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(schur_certificate(cfg).bound < 1e-9);
    CHECK(hs_certificate(cfg).bound < 1e-9);
    auto [th, eta] = perturbed_basis_eval(cfg, 3, 1.3);
    auto [a, ah] = an_eval(3, 1.3, 1e-10);
    CHECK(th == doctest::Approx(a).epsilon(1e-9));
    CHECK(eta == doctest::Approx(ah).epsilon(1e-9));
}

TEST_CASE("config validation") {
    RVOperatorConfig cfg = rv_config(0.01, 1.25, 16);
    cfg.s = 1.0;
    CHECK_THROWS_AS(schur_certificate(cfg), InvalidArgument);
    cfg = rv_config(0.01, 1.25, 16);
    cfg.N = 4;
    CHECK_THROWS_AS(build_T_tilde(cfg), InvalidArgument);
    cfg = rv_config(0.01, 1.25, 16);
    cfg.profile.eps[0] = 0.01;
    CHECK_THROWS_AS(build_T_tilde(cfg), RangeViolation);
}

TEST_CASE("entry against the mpmath oracle") {
    // eps_4 = 0.01 * 5^{-5/4}; a_2(sqrt 4.0013374806...) from tests/oracles/rv_oracle.py
    RVOperatorConfig cfg = rv_config(0.01, 1.25, 16);
    TruncatedOperator B = build_T_tilde(cfg);
    double w = std::pow(5.0 / 3.0, 10.0);
    CHECK(B.entries(4, 2) == doctest::Approx(0.0000814532932118728443 * w).epsilon(1e-9));
    CHECK(B.entries(4, 17 + 2) == doctest::Approx(0.0000627795111748129564 * w).epsilon(1e-9));
    CHECK(B.entries(17 + 4, 2) == B.entries(4, 17 + 2));
    CHECK(B.entries(0, 5) == 0.0);
}

TEST_CASE("certificates at the default configuration") {
    RVOperatorConfig cfg = rv_config(0.01, 1.25, 64);
    NormCertificate sc = schur_certificate(cfg);
    NormCertificate hs = hs_certificate(cfg);
    double op = op_norm_power(build_T_tilde_reduced(cfg), 1e-12, 5000).bound;
    CHECK(hs.bound >= op * (1.0 - 1e-12));
    CHECK(sc.bound >= op * (1.0 - 1e-12));
    CHECK(hs.bound == doctest::Approx(std::sqrt(2.0) * hs.detail["half_sum"].get<double>()).epsilon(1e-12));
    CHECK(sc.detail["bound_with_col0"].get<double>() >= sc.bound);
    CHECK(std::isfinite(sc.detail["tail_term"].get<double>()));
}

TEST_CASE("certificates are linear in delta and vanish with it") {
    double s005 = schur_certificate(rv_config(0.005)).bound;
    double s01 = schur_certificate(rv_config(0.01)).bound;
    double s02 = schur_certificate(rv_config(0.02)).bound;
    CHECK(s005 < s01);
    CHECK(s01 < s02);
    CHECK(s01 / s005 == doctest::Approx(2.0).epsilon(0.2));
    CHECK(s02 / s01 == doctest::Approx(2.0).epsilon(0.2));
    double h005 = hs_certificate(rv_config(0.005)).bound;
    double h01 = hs_certificate(rv_config(0.01)).bound;
    double h02 = hs_certificate(rv_config(0.02)).bound;
    CHECK(h005 < h01);
    CHECK(h01 < h02);
}

TEST_CASE("HS bound dominates the operator norm on random profiles") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> d(0.002, 0.02), p(1.25, 2.0);
    for (int t = 0; t < 5; ++t) {
        RVOperatorConfig cfg = rv_config(d(rng), p(rng), 24);
        double op = op_norm_power(build_T_tilde_reduced(cfg), 1e-12, 5000).bound;
        CHECK(hs_certificate(cfg).bound >= op * (1.0 - 1e-12));
        if (hs_certificate(cfg).bound < 1.0) {
            RecoveryResult r = recover_values(cfg, gaussian_samples(cfg, 1.0));
            CHECK(r.residual < 1e-10);
        }
    }
}

TEST_CASE("HS bound is stable under N") {
    double h64 = hs_certificate(rv_config(0.01, 1.5, 64)).bound;
    double h96 = hs_certificate(rv_config(0.01, 1.5, 96)).bound;
    CHECK(std::abs(h96 - h64) < 1e-3);
}

TEST_CASE("recovery on a certified configuration") {
    RVOperatorConfig cfg = rv_config(0.005, 1.25, 64);
    REQUIRE(schur_certificate(cfg).bound < 1.0);
    for (double a : {1.0, 2.0}) {
        RecoveryResult r = recover_values(cfg, gaussian_samples(cfg, a));
        double err = 0.0;
        for (int k = 0; k <= 16; ++k)
            err = std::max({err, std::abs(r.values.x[k] - std::exp(-a * pi * k)),
                            std::abs(r.values.y[k] - std::exp(-pi * k / a) / std::sqrt(a))});
        CHECK(err < 1e-4);
    }
    WeightedSeqPair s = gaussian_samples(cfg, 1.0);
    for (double x : {0.3, 1.1, 2.4}) {
        PerturbedBasis b = perturbed_basis_all(cfg, x);
        double v = 0.0;
        for (int j = 0; j <= 64; ++j)
            v += s.x[j] * b.theta[static_cast<std::size_t>(j)] + s.y[j] * b.eta[static_cast<std::size_t>(j)];
        CHECK(std::abs(v - std::exp(-pi * x * x)) < 1e-3);
    }
    // dual basis: theta_j(sqrt(i + eps_i)) = delta_ij
    double u = 5.0 + cfg.profile[5];
    PerturbedBasis b = perturbed_basis_all(cfg, std::sqrt(u));
    for (int j = 0; j <= 10; ++j) {
        CHECK(std::abs(b.theta[static_cast<std::size_t>(j)] - (j == 5 ? 1.0 : 0.0)) < 1e-8);
        CHECK(std::abs(b.eta[static_cast<std::size_t>(j)]) < 1e-8);
    }
}

TEST_CASE("recover inverts sampling of basis-generated data") {
    RVOperatorConfig cfg = rv_config(0.005, 1.25, 24);
    TruncatedOperator T = build_T_tilde_raw(cfg);
    Eigen::VectorXd xy = Eigen::VectorXd::Zero(50);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k <= 24; ++k) {
        xy(k) = u(rng) * std::exp(-0.5 * k);
        xy(25 + k) = u(rng) * std::exp(-0.5 * k);
    }
    Eigen::VectorXd smp = T.entries * xy;
    WeightedSeqPair s;
    s.x = RealSequence(IndexWindow::one_sided(24));
    s.y = RealSequence(IndexWindow::one_sided(24));
    for (int k = 0; k <= 24; ++k) {
        s.x.at(k) = smp(k);
        s.y.at(k) = smp(25 + k);
    }
    RecoveryResult r = recover_values(cfg, s);
    for (int k = 0; k <= 24; ++k) {
        CHECK(r.values.x[k] == doctest::Approx(xy(k)).epsilon(1e-8));
        CHECK(r.values.y[k] == doctest::Approx(xy(25 + k)).epsilon(1e-8));
    }
}

TEST_CASE("uncertified configurations are refused") {
    RVOperatorConfig cfg = rv_config(0.05, 1.25, 24);
    REQUIRE(schur_certificate(cfg).bound >= 1.0);
    REQUIRE(hs_certificate(cfg).bound >= 1.0);
    CHECK_THROWS_AS(recover_values(cfg, gaussian_samples(cfg, 1.0)), NotCertified);
    CHECK_THROWS_AS(perturbed_basis_eval(cfg, 0, 0.5), NotCertified);
}

TEST_CASE("Poisson check") {
    IndexWindow w = IndexWindow::one_sided(64);
    RealSequence x(w), y(w);
    for (long k = 0; k <= 64; ++k) {
        x.at(k) = std::exp(-2.0 * pi * k);
        y.at(k) = std::exp(-pi * k / 2.0) / std::sqrt(2.0);
    }
    CHECK(poisson_check(x, y) < 1e-12);
    CHECK(poisson_check(x, x) == 0.0);
    y.at(4) += 1e-3;
    CHECK(poisson_check(x, y) == doctest::Approx(2e-3));
}

TEST_CASE("uniqueness probe") {
    UniquenessConfig u1{1, {1.3, 1.7}, 0.2, 0.05};
    TK0Result r1 = build_TK0(u1, 10.0, 8);
    CHECK(r1.min_singular > 1e-8);
    CHECK(r1.A.rows() == 4);
    CHECK(r1.A.cols() == 2);
    UniquenessConfig u2{2, {1.6, 1.9, 2.3, 2.6}, 0.2, 0.05};
    CHECK(build_TK0(u2, 10.0, 8).min_singular > 1e-8);
    UniquenessConfig bad{1, {std::sqrt(2.0), 1.7}, 0.2, 0.05};
    CHECK_THROWS_AS(build_TK0(bad), InvalidArgument);
    UniquenessConfig order{1, {1.7, 1.3}, 0.2, 0.05};
    CHECK_THROWS_AS(validate(order), InvalidArgument);
}

TEST_CASE("powers of integers") {
    std::vector<double> e = powers_eps(0.2, 0.05, 200);
    // |eps_n| <~ n^{-3/2}: the weighted sup stays far below any delta used here
    for (int n = 10; n <= 200; ++n) CHECK(std::abs(e[static_cast<std::size_t>(n)]) * std::pow(n, 1.5) < 1e-5);
    PowersReport a = powers_experiment(0.2, 0.05, 200);
    CHECK(a.exponent == doctest::Approx(-2.0));
    CHECK(a.pass);
    CHECK(!powers_experiment(0.3, 0.05, 200).pass);
    CHECK(!powers_experiment(2.0 / 9.0, 0.05, 200).pass);
    CHECK_THROWS_AS(powers_eps(0.6, 0.05, 10), InvalidArgument);
}

TEST_CASE("Descartes rule") {
    std::vector<double> grid;
    for (int k = 0; k < 200; ++k) grid.push_back(-0.9 + 10.9 * k / 199.0);
    LaplaceSample e1{[](double t) { return std::exp(-t); }, -1.0, 0.0};
    DescartesResult r1 = descartes_count(e1, grid);
    CHECK(r1.sign_changes == 0);
    CHECK(r1.zeros_found == 0);
    LaplaceSample e2{[](double t) { return (t - 1.0) * std::exp(-t); }, -1.0, 0.0};
    CHECK(laplace_transform(e2, 1.0) == doctest::Approx(-0.25).epsilon(1e-12));
    DescartesResult r2 = descartes_count(e2, grid);
    CHECK(r2.sign_changes == 1);
    REQUIRE(r2.zeros_found == 1);
    CHECK(std::abs(r2.zeros[0]) < 1e-6);
    // (t-1)(t-2) e^{-t}: transform 2/(s+1)^3 - 3/(s+1)^2 + 2/(s+1)
    LaplaceSample e3{[](double t) { return (t - 1.0) * (t - 2.0) * std::exp(-t); }, -1.0, 0.0};
    double s = 0.5, q = 1.0 / (s + 1.0);
    CHECK(laplace_transform(e3, s) == doctest::Approx(2 * q * q * q - 3 * q * q + 2 * q).epsilon(1e-12));
    DescartesResult r3 = descartes_count(e3, grid);
    CHECK(r3.sign_changes == 2);
    CHECK(r3.zeros_found <= 2);
    CHECK_THROWS_AS(descartes_count(e1, {-2.0, 0.0}), InvalidArgument);
}
