#include "pif/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pif/acceptance.hpp"
#include "pif/bandlimited.hpp"
#include "pif/errors.hpp"
#include "pif/modular.hpp"
#include "pif/qseries.hpp"
#include "pif/rvperturb.hpp"

namespace pif {

namespace {

using nlohmann::json;

constexpr double pi = 3.141592653589793238462643383279502884;

int exit_for(const Error& e) {
    const std::string& k = e.kind();
    if (k == "invalid_argument" || k == "range_violation") return exit_usage;
    return exit_certified;
}

struct Output {
    std::ostream* os;
    std::ofstream file;
    Output(const std::string& path, std::ostream& fallback) : os(&fallback) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw InvalidArgument("cannot open output " + path);
            os = &file;
        }
    }
    std::ostream& operator*() { return *os; }
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open input " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("input is not valid JSON: ") + e.what());
    }
}

void csv_precision(std::ostream& os) { os << std::setprecision(17); }

// --- kadec ---
struct KadecOpts {
    double L = -1.0;
    bool threshold = false;
    double tol = 1e-6;
};

int cmd_kadec(const KadecOpts& o, std::ostream& out) {
    json j;
    if (o.threshold || o.L < 0.0) j["threshold"] = kadec_threshold(o.tol);
    if (o.L >= 0.0) {
        double b = kadec_bound(o.L);
        j["L"] = o.L;
        j["bound"] = b;
        j["certified"] = b < 1.0;
    }
    out << j.dump(2) << '\n';
    return exit_ok;
}

// --- reconstruct ---
struct ReconOpts {
    std::string input, output;
    double tol = 1e-12;
};

int cmd_reconstruct(const ReconOpts& o, std::ostream& out) {
    json in = read_json(o.input);
    SampleSet s = sample_set_from_json(in);
    Reconstruction r = s.band == Band::pw_pi ? shannon_reconstruct(s, o.tol) : vaaler_reconstruct(s, o.tol);
    std::optional<RealSequence> truth;
    if (in.contains("truth")) truth = RealSequence(s.profile.window, in["truth"].get<std::vector<double>>());

    Output os(o.output, out);
    csv_precision(*os);
    *os << "# method=" << (s.band == Band::pw_pi ? "shannon" : "vaaler") << '\n'
        << "# L=" << s.profile.L << '\n'
        << "# norm_bound=" << r.certificate.norm_bound << '\n'
        << "# inverse_norm_bound=" << r.certificate.inverse_norm_bound << '\n'
        << "# residual=" << r.residual << '\n';
    *os << "k,value";
    if (r.derivs) *os << ",deriv";
    if (truth) *os << ",f_true,err";
    *os << '\n';
    for (long k = s.profile.window.lo; k <= s.profile.window.hi; ++k) {
        *os << k << ',' << r.values[k];
        if (r.derivs) *os << ',' << (*r.derivs)[k];
        if (truth) *os << ',' << (*truth)[k] << ',' << std::abs(r.values[k] - (*truth)[k]);
        *os << '\n';
    }
    return exit_ok;
}

// --- fixture ---
struct FixtureOpts {
    std::string kind = "sinc", output;
    double L = 0.2;
    unsigned seed = 20240601;
};

int cmd_fixture(const FixtureOpts& o, std::ostream& out) {
    json j;
    if (o.kind == "sinc") {
        SincFixture fx = make_sinc_fixture(o.seed, o.L);
        j = to_json(fx.samples);
        std::vector<double> truth;
        for (long k = -200; k <= 200; ++k)
            truth.push_back(std::abs(k) <= 50 ? fx.coeffs[static_cast<std::size_t>(k + 50)] : 0.0);
        j["truth"] = truth;
        j["coeffs"] = fx.coeffs;
    } else if (o.kind == "zero") {
        // eps = 0: the recovered values equal the input
        SincFixture fx = make_sinc_fixture(o.seed, 0.0);
        j = to_json(fx.samples);
    } else {
        throw InvalidArgument("fixture kind must be sinc or zero");
    }
    Output os(o.output, out);
    *os << j.dump(1) << '\n';
    return exit_ok;
}

// --- rv ---
struct RVOpts {
    int n = 0;
    std::string grid = "0:4:0.1";
    double delta = 0.01, s = 10.0, theta = 0.05, p = 1.25, gaussian = 1.0;
    int N = 64;
    bool uncertified = false;
    std::string output;
};

int cmd_rv_basis(const RVOpts& o, std::ostream& out) {
    if (o.n < 0) throw InvalidArgument("--n must be >= 0");
    std::vector<double> xs = parse_grid(o.grid);
    std::vector<BasisRow> rows = an_table(o.n, xs);
    Output os(o.output, out);
    csv_precision(*os);
    *os << "# n=" << o.n << '\n' << "# grid=" << o.grid << '\n' << "x,a,ahat\n";
    for (const auto& r : rows) *os << r.x << ',' << r.a << ',' << r.ahat << '\n';
    return exit_ok;
}

int cmd_rv_certify(const RVOpts& o, std::ostream& out) {
    RVOperatorConfig cfg = rv_config(o.delta, o.p, o.N, o.s, o.theta);
    NormCertificate sc = schur_certificate(cfg);
    NormCertificate hs = hs_certificate(cfg);
    json j = {{"schur", certificate_json(sc, cfg)}, {"hs", certificate_json(hs, cfg)}};
    double best = std::min(sc.bound, hs.bound);
    j["bound"] = best;
    j["certified"] = best < 1.0;
    Output os(o.output, out);
    *os << j.dump(2) << '\n';
    return best < 1.0 ? exit_ok : exit_certified;
}

int cmd_rv_recover(const RVOpts& o, std::ostream& out) {
    if (!(o.gaussian > 0.0)) throw InvalidArgument("--gaussian must be positive");
    RVOperatorConfig cfg = rv_config(o.delta, o.p, o.N, o.s, o.theta);
    cfg.require_certificate = !o.uncertified;
    // f(x) = e^{-a pi x^2}, fhat(xi) = a^{-1/2} e^{-pi xi^2 / a}
    double a = o.gaussian;
    auto f = [a](double u) { return std::exp(-a * pi * u); };
    auto fh = [a](double u) { return std::exp(-pi * u / a) / std::sqrt(a); };
    WeightedSeqPair smp;
    smp.x = RealSequence(IndexWindow::one_sided(o.N));
    smp.y = RealSequence(IndexWindow::one_sided(o.N));
    for (int k = 0; k <= o.N; ++k) {
        double u = k + cfg.profile[k];
        smp.x.at(k) = f(u);
        smp.y.at(k) = fh(u);
    }
    RecoveryResult r = recover_values(cfg, smp);
    Output os(o.output, out);
    csv_precision(*os);
    *os << "# gaussian=" << a << '\n'
        << "# delta=" << o.delta << '\n'
        << "# certificate=" << method_name(r.certificate.method) << '\n'
        << "# bound=" << r.certificate.bound << '\n'
        << "# residual=" << r.residual << '\n'
        << "k,f_rec,fhat_rec,f_true,err\n";
    for (int k = 0; k <= o.N; ++k) {
        double t = f(k);
        double e = std::max(std::abs(r.values.x[k] - t), std::abs(r.values.y[k] - fh(k)));
        *os << k << ',' << r.values.x[k] << ',' << r.values.y[k] << ',' << t << ',' << e << '\n';
    }
    return exit_ok;
}

int cmd_rv_poisson(const RVOpts& o, std::ostream& out) {
    if (!(o.gaussian > 0.0)) throw InvalidArgument("--gaussian must be positive");
    double a = o.gaussian;
    IndexWindow w = IndexWindow::one_sided(o.N);
    RealSequence x(w), y(w);
    for (long k = 0; k <= o.N; ++k) {
        x.at(k) = std::exp(-a * pi * k);
        y.at(k) = std::exp(-pi * k / a) / std::sqrt(a);
    }
    json j = {{"gaussian", a}, {"N", o.N}, {"residual", poisson_check(x, y)}};
    out << j.dump(2) << '\n';
    return exit_ok;
}

// --- verify-all ---
struct VerifyOpts {
    std::string only;
    bool fault = false, timing = false, lines = false;
};

int cmd_verify_all(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<int> ids = select_criteria(o.only);
    testing::set_lambda_fault(o.fault);
    std::vector<CriterionResult> rs = run_acceptance(ids);
    testing::set_lambda_fault(false);
    bool all = true;
    for (const auto& r : rs) {
        if (o.lines) err << format_line(r) << '\n';
        all = all && r.pass;
    }
    out << summary_json(rs, o.timing).dump(2) << '\n';
    return all ? exit_ok : exit_verification;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> v;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ':')) {
        std::size_t pos = 0;
        double d;
        try {
            d = std::stod(part, &pos);
        } catch (const std::exception&) {
            throw InvalidArgument("grid must be min:max:step");
        }
        if (pos != part.size()) throw InvalidArgument("grid must be min:max:step");
        v.push_back(d);
    }
    if (v.size() != 3) throw InvalidArgument("grid must be min:max:step");
    double lo = v[0], hi = v[1], step = v[2];
    if (!(step > 0.0) || !(hi >= lo)) throw InvalidArgument("grid needs max >= min and step > 0");
    std::vector<double> xs;
    for (long i = 0;; ++i) {
        double x = lo + static_cast<double>(i) * step;
        // points within step/1e9 of max are replaced by max itself
        if (x >= hi - 1e-9 * step) break;
        xs.push_back(x);
        if (xs.size() > 10000000) throw InvalidArgument("grid too large");
    }
    xs.push_back(hi);
    return xs;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perturbed interpolation formulas: certificates, reconstructions, basis tables"};
    app.require_subcommand(1);

    KadecOpts ko;
    auto* kadec = app.add_subcommand("kadec", "Kadec-type bound and threshold for jittered integer samples");
    kadec->add_option("--L", ko.L, "jitter size, 0 <= L < 1/2");
    kadec->add_flag("--threshold", ko.threshold, "report the bisection threshold");
    kadec->add_option("--tol", ko.tol, "bisection tolerance");

    ReconOpts ro;
    auto* recon = app.add_subcommand("reconstruct", "recover integer samples from a SampleSet JSON");
    recon->add_option("--input,-i", ro.input, "SampleSet JSON")->required();
    recon->add_option("--output,-o", ro.output, "CSV output (default stdout)");
    recon->add_option("--tol", ro.tol, "solver residual tolerance");

    FixtureOpts fo;
    auto* fixture = app.add_subcommand("fixture", "write a sample-set fixture");
    fixture->add_option("--kind", fo.kind, "sinc or zero");
    fixture->add_option("--L", fo.L, "jitter size");
    fixture->add_option("--seed", fo.seed, "coefficient seed");
    fixture->add_option("--output,-o", fo.output, "JSON output (default stdout)");

    RVOpts vo;
    auto* rv = app.add_subcommand("rv", "perturbed Fourier interpolation at square roots");
    rv->require_subcommand(1);
    auto add_cfg = [&vo](CLI::App* c) {
        c->add_option("--delta", vo.delta, "power-law amplitude");
        c->add_option("--p", vo.p, "power-law exponent");
        c->add_option("--s", vo.s, "weight exponent");
        c->add_option("--theta", vo.theta, "Schur weight exponent");
        c->add_option("--N", vo.N, "truncation");
        c->add_option("--output,-o", vo.output, "output file");
    };
    auto* rv_basis = rv->add_subcommand("basis", "CSV of a_n, ahat_n on a grid");
    rv_basis->add_option("--n", vo.n, "basis index")->required();
    rv_basis->add_option("--grid", vo.grid, "min:max:step");
    rv_basis->add_option("--output,-o", vo.output, "output file");
    auto* rv_cert = rv->add_subcommand("certify", "Schur and Hilbert-Schmidt certificates");
    add_cfg(rv_cert);
    auto* rv_rec = rv->add_subcommand("recover", "recover Gaussian samples f(sqrt k), fhat(sqrt k)");
    add_cfg(rv_rec);
    rv_rec->add_option("--gaussian", vo.gaussian, "f(x) = exp(-a pi x^2)");
    rv_rec->add_flag("--uncertified", vo.uncertified, "solve even without a certificate below 1");
    auto* rv_poi = rv->add_subcommand("poisson", "Poisson residual for a Gaussian pair");
    rv_poi->add_option("--gaussian", vo.gaussian, "f(x) = exp(-a pi x^2)");
    rv_poi->add_option("--N", vo.N, "truncation");

    VerifyOpts va;
    auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
    verify->add_option("--only", va.only, "comma separated criterion ids or module names");
    verify->add_flag("--inject-lambda-fault", va.fault, "corrupt the lambda q-expansion (test hook)");
    verify->add_flag("--timing", va.timing, "include wall-clock seconds");
    verify->add_flag("--lines", va.lines, "print one PASS/FAIL line per criterion to stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*kadec) return cmd_kadec(ko, out);
        if (*recon) return cmd_reconstruct(ro, out);
        if (*fixture) return cmd_fixture(fo, out);
        if (*rv_basis) return cmd_rv_basis(vo, out);
        if (*rv_cert) return cmd_rv_certify(vo, out);
        if (*rv_rec) return cmd_rv_recover(vo, out);
        if (*rv_poi) return cmd_rv_poisson(vo, out);
        if (*verify) return cmd_verify_all(va, out, err);
    } catch (const Error& e) {
        int code = exit_for(e);
        json d = {{"error", e.kind()}, {"message", e.what()}};
        (code == exit_certified ? out : err) << d.dump() << '\n';
        return code;
    } catch (const std::exception& e) {
        err << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
        return exit_certified;
    }
    return exit_usage;
}

}  // namespace pif
