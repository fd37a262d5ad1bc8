#include "pif/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "pif/errors.hpp"
#include "pif/hilbert.hpp"
#include "pif/modular.hpp"
#include "pif/qseries.hpp"
#include "pif/rvperturb.hpp"
#include "pif/theta.hpp"

namespace pif {

namespace {

constexpr double pi = std::numbers::pi;
using nlohmann::json;

struct Spec {
    int id;
    const char* name;
    const char* module;
    const char* tolerance;
    double runtime_limit;  // seconds, 0 = none
    std::function<bool(json&)> run;
};

bool in_open(double x, double a, double b) { return x > a && x < b; }

bool c1(json& m) {
    double root = kadec_threshold(1e-6);
    double b = kadec_bound(0.239);
    m = {{"root", root}, {"bound_0.239", b}};
    return in_open(root, 0.239, 0.245) && b < 1.0;
}

bool c2(json& m) {
    double root = vaaler_threshold(1e-6);
    double b = vaaler_bound(0.111);
    m = {{"root", root}, {"bound_0.111", b}};
    return in_open(root, 0.111, 0.117) && b < 1.0;
}

bool c3(json& m) {
    double e1 = std::abs(hp0_norm(1) - pi);
    double e2 = std::abs(hp0_norm(2) - pi * pi / 3.0);
    double e3 = std::abs(hp0_norm(3) - pi * pi * pi / (9.0 * std::sqrt(3.0)));
    double s2 = std::abs(sq_norm(2) - pi * pi / 3.0);
    double s4 = std::abs(sq_norm(4) - std::pow(pi, 4) / 45.0);
    IndexWindow w = IndexWindow::two_sided(-2000, 2000);
    std::vector<double> ratio;
    for (int p = 1; p <= 3; ++p) {
        HilbertKernelSpec spec;
        spec.p = p;
        spec.profile = profile_from_eps(w, std::vector<double>(w.size(), 0.0));
        TruncatedOperator H = heps_assemble(spec, w);
        double est;
        try {
            est = op_norm_power(H, 1e-7, 400).bound;
        } catch (const ConvergenceFailure& e) {
            est = e.best_estimate;
        }
        ratio.push_back(est / hp0_norm(p));
    }
    m = {{"hp0_err", {e1, e2, e3}}, {"sq_err", {s2, s4}}, {"power_ratio", ratio}};
    return e1 < 1e-14 && e2 < 1e-14 && e3 < 1e-14 && s2 < 1e-12 && s4 < 1e-12 &&
           ratio[0] >= 0.98 && ratio[0] <= 1.0 + 1e-12 && ratio[1] >= 0.995 &&
           ratio[1] <= 1.0 + 1e-12 && ratio[2] >= 0.995 && ratio[2] <= 1.0 + 1e-12;
}

bool c4(json& m) {
    ZSeries lam = lambda_series(6);
    std::vector<std::string> got;
    const long want[] = {16, -128, 704};
    bool ok = true;
    for (long k = 1; k <= 3; ++k) {
        got.push_back(lam.coeff(k).get_str());
        ok = ok && lam.coeff(k) == want[k - 1];
    }
    m = {{"coeffs", got}, {"expected", {"16", "-128", "704"}}};
    return ok;
}

bool c5(json& m) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(0.3, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        ThetaTriple t = theta_nulls({re(rng), im(rng)});
        worst = std::max(worst, std::abs(std::pow(t.t3, 4) - std::pow(t.t2, 4) - std::pow(t.t4, 4)));
    }
    LambdaJ lj = lambda_J_eval({0.0, 1.0});
    double el = std::abs(lj.lambda - 0.5), eJ = std::abs(lj.J - 1.0 / 64.0);
    m = {{"jacobi_max", worst}, {"lambda_i_err", el}, {"J_i_err", eJ}};
    return worst < 1e-12 && el < 1e-12 && eJ < 1e-12;
}

bool c6(json& m) {
    double worst = 0.0, worst_pos = 0.0;
    json bad = json::array();
    for (int n = 0; n <= 8; ++n)
        for (int mm = 0; mm <= 8; ++mm) {
            auto [a, ah] = an_eval(n, std::sqrt(static_cast<double>(mm)), 1e-10);
            double e = std::abs(a - (n == mm ? 1.0 : 0.0));
            if (n >= 1) e = std::max(e, std::abs(ah));
            worst = std::max(worst, e);
            if (mm > 0) worst_pos = std::max(worst_pos, e);
            if (e >= 1e-6) bad.push_back({{"n", n}, {"m", mm}, {"a", a}, {"ahat", ah}});
        }
    m = {{"max_err", worst}, {"max_err_m_ge_1", worst_pos}, {"violations", bad}};
    return worst < 1e-6;
}

bool c7(json& m) {
    auto res = fourier_eigen_check(4, 6.0);
    double worst = 0.0;
    for (const auto& r : res) worst = std::max(worst, r.sup_error);
    m = {{"max_sup_error", worst}, {"checks", res.size()}};
    return worst < 1e-4;
}

bool c8(json& m) {
    std::vector<int> ns;
    for (int n = 1; n <= 16; ++n) ns.push_back(n);
    DecayReport d = decay_profile(ns, 0.5);
    double a0 = a0_weighted_sup(1.2, 12.0);
    m = {{"spread", d.spread}, {"spread_gaussian", d.spread_gaussian}, {"R", d.R},
         {"a0_weighted_sup", a0}};
    return d.pass && std::isfinite(a0) && a0 < 10.0;
}

bool c9(json& m) {
    SincFixture fx = make_sinc_fixture();
    Reconstruction r = shannon_reconstruct(fx.samples, 1e-12);
    double es = 0.0;
    for (long k = -100; k <= 100; ++k) {
        double want = std::abs(k) <= 50 ? fx.coeffs[static_cast<std::size_t>(k + 50)] : 0.0;
        es = std::max(es, std::abs(r.values[k] - want));
    }

    ProfileSpec ps;
    ps.kind = DecayClass::constant;
    ps.window = IndexWindow::two_sided(-200, 200);
    ps.amplitude = 0.1;
    PerturbationProfile prof = make_profile(ps);
    SampleSet v;
    v.profile = prof;
    v.band = Band::pw_2pi;
    v.values = RealSequence(ps.window);
    RealSequence d(ps.window);
    for (long n = -200; n <= 200; ++n) {
        double x = n + prof[n];
        v.values.at(n) = vaaler::g(x);
        d.at(n) = vaaler::dg(x);
    }
    v.derivs = d;
    Reconstruction rv = vaaler_reconstruct(v, 1e-12);
    double ev = 0.0;
    for (long k = -100; k <= 100; ++k) {
        ev = std::max(ev, std::abs(rv.values[k] - (k == 0 ? 1.0 : 0.0)));
        ev = std::max(ev, std::abs((*rv.derivs)[k] - vaaler::dg(static_cast<double>(k))));
    }
    m = {{"shannon_err", es}, {"vaaler_err", ev}};
    return es < 1e-6 && ev < 1e-6;
}

bool c10(json& m) {
    std::mt19937 rng(10);
    std::uniform_real_distribution<double> u(-1.0, 1.0), xs(-50.0, 50.0);
    IndexWindow w = IndexWindow::two_sided(-50, 50);
    RealSequence a(w);
    for (long k = -50; k <= 50; ++k) a.at(k) = u(rng);
    VaalerConversion conv = shannon_to_vaaler(a);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        double x = xs(rng);
        worst = std::max(worst, std::abs(conv(x) - eval_pw(a, Band::pw_pi, nullptr, x)));
    }
    m = {{"max_discrepancy", worst}};
    return worst < 1e-4;
}

bool c11(json& m) {
    RVOperatorConfig cfg = rv_config(0.01, 1.25, 64);
    NormCertificate sc = schur_certificate(cfg);
    NormCertificate hs = hs_certificate(cfg);
    double op = op_norm_power(build_T_tilde_reduced(cfg), 1e-12, 5000).bound;
    bool certified = sc.bound < 1.0 && hs.bound < 1.0;

    // the recovery checks run without the certificate gate so they are
    // reported either way; the criterion still requires the certificates
    RVOperatorConfig run = cfg;
    run.require_certificate = false;
    WeightedSeqPair smp;
    smp.x = RealSequence(IndexWindow::one_sided(64));
    smp.y = RealSequence(IndexWindow::one_sided(64));
    for (int k = 0; k <= 64; ++k) {
        double g = std::exp(-pi * (k + cfg.profile[k]));
        smp.x.at(k) = g;
        smp.y.at(k) = g;
    }
    RecoveryResult rec = recover_values(run, smp);
    double err = 0.0;
    for (int k = 0; k <= 16; ++k)
        err = std::max({err, std::abs(rec.values.x[k] - std::exp(-pi * k)),
                        std::abs(rec.values.y[k] - std::exp(-pi * k))});
    double interp = 0.0;
    for (double x : {0.3, 1.1, 2.4}) {
        PerturbedBasis b = perturbed_basis_all(run, x);
        double s = 0.0;
        for (int j = 0; j <= 64; ++j)
            s += smp.x[j] * b.theta[static_cast<std::size_t>(j)] + smp.y[j] * b.eta[static_cast<std::size_t>(j)];
        interp = std::max(interp, std::abs(s - std::exp(-pi * x * x)));
    }
    m = {{"schur", sc.bound}, {"hs", hs.bound}, {"op_norm", op},
         {"hs_half_sum", hs.detail["half_sum"]}, {"tail_term", sc.detail["tail_term"]},
         {"recovery_err", err}, {"interp_residual", interp}};
    return certified && err < 1e-4 && interp < 1e-3;
}

bool c12(json& m) {
    IndexWindow w = IndexWindow::one_sided(64);
    RealSequence x(w), y(w);
    for (long k = 0; k <= 64; ++k) {
        x.at(k) = std::exp(-2.0 * pi * k);
        y.at(k) = std::exp(-pi * k / 2.0) / std::sqrt(2.0);
    }
    double res = poisson_check(x, y);
    SignCheckReport sc = modular_sign_check({0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
    m = {{"poisson_residual", res}, {"sign_check", sc.to_json()}};
    return res < 1e-12 && sc.pass;
}

bool c13(json& m) {
    std::vector<double> grid;
    for (int k = 0; k < 400; ++k) grid.push_back(-0.9 + 10.9 * k / 399.0);
    LaplaceSample e1{[](double t) { return std::exp(-t); }, -1.0, 0.0};
    LaplaceSample e2{[](double t) { return (t - 1.0) * std::exp(-t); }, -1.0, 0.0};
    LaplaceSample e3{[](double t) { return (t - 1.0) * (t - 2.0) * std::exp(-t); }, -1.0, 0.0};
    DescartesResult r1 = descartes_count(e1, grid);
    DescartesResult r2 = descartes_count(e2, grid);
    DescartesResult r3 = descartes_count(e3, grid);
    bool ok = r1.zeros_found == 0 && r1.zeros_found <= r1.sign_changes &&
              r2.zeros_found == 1 && r2.zeros_found <= r2.sign_changes &&
              std::abs(r2.zeros[0]) < 1e-6 && r3.zeros_found <= 2 &&
              r3.zeros_found <= r3.sign_changes;

    std::mt19937 rng(13);
    std::uniform_real_distribution<double> root(0.2, 6.0);
    std::uniform_int_distribution<int> deg(0, 3);
    int violations = 0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> roots(static_cast<std::size_t>(deg(rng)));
        for (double& r : roots) r = root(rng);
        LaplaceSample s{[roots](double t) {
                            double v = std::exp(-t);
                            for (double r : roots) v *= (t - r);
                            return v;
                        },
                        -1.0, 0.0};
        DescartesResult r = descartes_count(s, grid);
        if (r.zeros_found > r.sign_changes) ++violations;
    }
    m = {{"fixture_zeros", {r1.zeros_found, r2.zeros_found, r3.zeros_found}},
         {"fixture_sign_changes", {r1.sign_changes, r2.sign_changes, r3.sign_changes}},
         {"zero_near_0", r2.zeros.empty() ? json(nullptr) : json(r2.zeros[0])},
         {"random_violations", violations}};
    return ok && violations == 0;
}

bool c14(json& m) {
    PowersReport a = powers_experiment(0.2, 0.05, 200);
    PowersReport b = powers_experiment(0.3, 0.05, 200);
    PowersReport c = powers_experiment(2.0 / 9.0, 0.05, 200);
    m = {{"alpha_0.2", a.to_json()}, {"alpha_0.3", b.to_json()}, {"alpha_2/9", c.to_json()}};
    return a.pass && !b.pass && !c.pass;
}

bool c15(json& m) {
    UniquenessConfig u1{1, {1.3, 1.7}, 0.2, 0.05};
    UniquenessConfig u2{2, {1.6, 1.9, 2.3, 2.6}, 0.2, 0.05};
    double s1 = build_TK0(u1, 10.0, 8).min_singular;
    double s2 = build_TK0(u2, 10.0, 8).min_singular;
    m = {{"K0=1", s1}, {"K0=2", s2}};
    return s1 > 1e-8 && s2 > 1e-8;
}

const std::vector<Spec>& specs() {
    static const std::vector<Spec> s = {
        {1, "kadec-threshold", "bandlimited", "root in (0.239, 0.245) at 1e-6; bound(0.239) < 1; < 1 s", 1.0, c1},
        {2, "vaaler-threshold", "bandlimited", "root in (0.111, 0.117); bound(0.111) < 1; < 1 s", 1.0, c2},
        {3, "closed-form-norms", "hilbert", "hp0 1e-14, sq 1e-12, power >= 98% / 99.5%; < 60 s", 60.0, c3},
        {4, "lambda-q-expansion", "modular", "exact 16, -128, 704; < 1 s", 1.0, c4},
        {5, "theta-identity", "modular", "Jacobi 1e-12 at 20 points, lambda(i), J(i) 1e-12; < 1 s", 1.0, c5},
        {6, "basis-delta-property", "modular", "|a_n(sqrt m) - delta| < 1e-6, |ahat_n(sqrt m)| < 1e-6, n,m <= 8; < 180 s", 180.0, c6},
        {7, "fourier-eigenrelation", "modular", "sup error < 1e-4 on [-6, 6], n <= 4", 0.0, c7},
        {8, "decay-profiles", "modular", "spread <= 10 for n <= 16, c = 0.5; a_0 e^{1.2x} bounded on [0, 12]", 0.0, c8},
        {9, "jittered-recovery", "bandlimited", "interior error < 1e-6 (Shannon L = 0.2, Vaaler L = 0.1)", 0.0, c9},
        {10, "shannon-to-vaaler", "bandlimited", "max discrepancy < 1e-4 at 100 points", 0.0, c10},
        {11, "rv-certificate-recovery", "rvperturb", "Schur, HS < 1; recovery < 1e-4; interpolation < 1e-3", 0.0, c11},
        {12, "poisson-crystalline", "rvperturb", "Gaussian pair < 1e-12; sign check passes", 0.0, c12},
        {13, "descartes-rule", "rvperturb", "zeros <= sign changes; one zero |s| < 1e-6", 0.0, c13},
        {14, "powers-experiment", "rvperturb", "pass at 0.2, fail at 0.3 and 2/9", 0.0, c14},
        {15, "uniqueness-probe", "rvperturb", "min singular > 1e-8 for K0 = 1, 2", 0.0, c15},
    };
    return s;
}

}  // namespace

std::vector<int> select_criteria(const std::string& only) {
    std::vector<int> ids;
    if (only.empty() || only == "all") {
        for (const auto& s : specs()) ids.push_back(s.id);
        return ids;
    }
    std::stringstream ss(only);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        bool matched = false;
        for (const auto& s : specs())
            if (tok == s.module || tok == s.name || tok == std::to_string(s.id)) {
                if (std::find(ids.begin(), ids.end(), s.id) == ids.end()) ids.push_back(s.id);
                matched = true;
            }
        if (!matched) throw InvalidArgument("unknown criterion or module: " + tok);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

CriterionResult run_criterion(int id) {
    for (const auto& s : specs()) {
        if (s.id != id) continue;
        CriterionResult r;
        r.id = s.id;
        r.name = s.name;
        r.module = s.module;
        r.tolerance = s.tolerance;
        auto t0 = std::chrono::steady_clock::now();
        try {
            r.pass = s.run(r.measured);
        } catch (const std::exception& e) {
            r.pass = false;
            r.measured["error"] = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (s.runtime_limit > 0.0 && r.seconds >= s.runtime_limit) {
            r.pass = false;
            r.measured["runtime_exceeded"] = true;
        }
        return r;
    }
    throw InvalidArgument("no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
    std::vector<CriterionResult> out;
    for (int id : ids) out.push_back(run_criterion(id));
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS " : "FAIL ") << (r.id < 10 ? " " : "") << r.id << ' ' << r.name
       << "  measured=" << r.measured.dump() << "  tolerance=" << r.tolerance;
    return os.str();
}

json summary_json(const std::vector<CriterionResult>& rs, bool with_timing) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : rs) {
        json j = {{"id", r.id}, {"name", r.name}, {"module", r.module}, {"pass", r.pass},
                  {"measured", r.measured}, {"tolerance", r.tolerance}};
        if (with_timing) j["seconds"] = r.seconds;
        arr.push_back(j);
        all = all && r.pass;
    }
    return {{"pass", all}, {"criteria", arr}};
}

double sinc_fixture_value(const std::vector<double>& coeffs, double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        s += coeffs[i] * sinc(x - (static_cast<double>(i) - 50.0));
    return s;
}

SincFixture make_sinc_fixture(unsigned seed, double L) {
    SincFixture fx;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    fx.coeffs.resize(101);
    for (double& c : fx.coeffs) c = u(rng);
    ProfileSpec ps;
    ps.kind = DecayClass::constant;
    ps.window = IndexWindow::two_sided(-200, 200);
    ps.amplitude = L;
    fx.samples.profile = make_profile(ps);
    fx.samples.band = Band::pw_pi;
    fx.samples.values = RealSequence(ps.window);
    for (long n = -200; n <= 200; ++n)
        fx.samples.values.at(n) = sinc_fixture_value(fx.coeffs, n + fx.samples.profile[n]);
    return fx;
}

}  // namespace pif
