#include "pif/bandlimited.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/digamma.hpp>

#include "pif/errors.hpp"
#include "pif/hilbert.hpp"

namespace pif {

namespace {
constexpr double pi = std::numbers::pi;

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    // f(lo) < 1 < f(hi)
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) < 1.0) lo = mid;
        else hi = mid;
    }
    return lo;
}
}  // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-8) {
        double y = pi * x;
        return 1.0 - y * y / 6.0;
    }
    return std::sin(pi * x) / (pi * x);
}

double sinc_deriv(double x) {
    if (std::abs(x) < 1e-4) {
        double y = pi * x;
        return pi * (-y / 3.0 + y * y * y / 30.0);
    }
    return (pi * x * std::cos(pi * x) - std::sin(pi * x)) / (pi * x * x);
}

namespace vaaler {

double g(double x) {
    if (std::abs(x) < 1e-4) {
        double y = pi * pi * x * x;
        return 1.0 - y / 3.0 + 2.0 * y * y / 45.0 - y * y * y / 315.0;
    }
    double s = std::sin(pi * x);
    return s * s / (pi * pi * x * x);
}

double dg(double x) {
    if (std::abs(x) < 1e-4) {
        double y = pi * pi * x * x;
        return 2.0 * pi * pi * x * (-1.0 / 3.0 + 4.0 * y / 45.0 - y * y / 105.0);
    }
    double s = std::sin(pi * x), c = std::cos(pi * x);
    return 2.0 * s * (pi * x * c - s) / (pi * pi * x * x * x);
}

double h(double x) {
    if (std::abs(x) < 1e-4) return x * g(x);
    double s = std::sin(pi * x);
    return s * s / (pi * pi * x);
}

double dh(double x) {
    if (std::abs(x) < 1e-4) return g(x) + x * dg(x);
    double s = std::sin(pi * x), c = std::cos(pi * x);
    return s * (2.0 * pi * x * c - s) / (pi * pi * x * x);
}

}  // namespace vaaler

void validate(const SampleSet& s) {
    if (s.values.window != s.profile.window)
        throw InvalidArgument("sample window differs from profile window");
    if (s.band == Band::pw_2pi) {
        if (!s.derivs) throw InvalidArgument("pw_2pi samples need derivatives");
        if (s.derivs->window != s.values.window)
            throw InvalidArgument("derivative window differs from value window");
    } else if (s.derivs) {
        throw InvalidArgument("pw_pi samples carry no derivatives");
    }
}

nlohmann::json to_json(const SampleSet& s) {
    nlohmann::json j;
    j["profile"] = to_json(s.profile);
    j["band"] = s.band == Band::pw_pi ? "pw_pi" : "pw_2pi";
    j["values"] = s.values.values;
    if (s.derivs) j["derivs"] = s.derivs->values;
    return j;
}

SampleSet sample_set_from_json(const nlohmann::json& j) {
    SampleSet s;
    s.profile = profile_from_json(j.at("profile"));
    s.values = RealSequence(s.profile.window, j.at("values").get<std::vector<double>>());
    if (j.contains("derivs") && !j["derivs"].is_null()) {
        s.derivs = RealSequence(s.profile.window, j["derivs"].get<std::vector<double>>());
        s.band = Band::pw_2pi;
    }
    if (j.contains("band")) {
        std::string b = j["band"].get<std::string>();
        if (b == "pw_pi") s.band = Band::pw_pi;
        else if (b == "pw_2pi") s.band = Band::pw_2pi;
        else throw InvalidArgument("unknown band " + b);
    }
    validate(s);
    return s;
}

TruncatedOperator shannon_matrix(const PerturbationProfile& prof, const IndexWindow& w) {
    TruncatedOperator A(w, w);
    for (long n = w.lo; n <= w.hi; ++n) {
        double e = prof[n];
        for (long k = w.lo; k <= w.hi; ++k) A(n, k) = sinc(static_cast<double>(n - k) + e);
    }
    return A;
}

double kadec_bound(double L) {
    if (!(L >= 0.0 && L < 0.5)) throw RangeViolation("kadec_bound needs 0 <= L < 1/2");
    if (L == 0.0) return 0.0;
    double s = std::sin(pi * L);
    return 1.0 - sinc(L) + (pi / 3.0) * L * s / (1.0 - L) + s;
}

double kadec_bound_complex(double L) {
    if (!(L >= 0.0 && L < 0.5)) throw RangeViolation("kadec_bound needs 0 <= L < 1/2");
    if (L == 0.0) return 0.0;
    double s = std::sin(pi * L), sh = std::sinh(pi * L);
    double m = std::sqrt(s * s + sh * sh);
    return 1.0 - sinc(L) + (pi / 3.0) * L * m / (1.0 - L) + m;
}

double kadec_threshold(double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    return bisect(kadec_bound, 0.0, 0.5 - 1e-12, tol);
}

Reconstruction shannon_reconstruct(const SampleSet& samples, double tol) {
    validate(samples);
    if (samples.band != Band::pw_pi) throw InvalidArgument("shannon_reconstruct needs pw_pi samples");
    NormCertificate c;
    c.method = NormMethod::closed_form;
    c.bound = samples.profile.L < 0.5 ? kadec_bound(samples.profile.L) : INFINITY;
    c.detail = {{"L", samples.profile.L}};
    Reconstruction r;
    r.certificate = neumann_certificate(c);
    if (!r.certificate.invertible)
        throw NotCertified("perturbation bound >= 1; A_eps not certified invertible");
    TruncatedOperator A = shannon_matrix(samples.profile, samples.values.window);
    r.values = solve(A, samples.values, tol, &r.residual);
    return r;
}

double eval_pw(const RealSequence& coeffs, Band band, const RealSequence* derivs, double x) {
    const IndexWindow& w = coeffs.window;
    double acc = 0.0;
    if (band == Band::pw_pi) {
        for (long n = w.lo; n <= w.hi; ++n) acc += coeffs[n] * sinc(x - static_cast<double>(n));
        return acc;
    }
    if (!derivs) throw InvalidArgument("pw_2pi evaluation needs derivatives");
    for (long n = w.lo; n <= w.hi; ++n) {
        double d = x - static_cast<double>(n);
        acc += coeffs[n] * vaaler::g(d) + (*derivs)[n] * vaaler::h(d);
    }
    return acc;
}

VaalerConversion shannon_to_vaaler(const RealSequence& a, long b_margin) {
    VaalerConversion out;
    out.a = a;
    IndexWindow bw = IndexWindow::two_sided(a.window.lo - b_margin, a.window.hi + b_margin);
    out.b = RealSequence(bw);
    for (long k = bw.lo; k <= bw.hi; ++k) {
        double s = 0.0;
        for (long j = a.window.lo; j <= a.window.hi; ++j) {
            if (j == k) continue;
            double v = a[j] / static_cast<double>(k - j);
            s += ((k - j) % 2 == 0) ? v : -v;
        }
        out.b.values[bw.offset(k)] = s;
    }
    return out;
}

double VaalerConversion::operator()(double x) const {
    // (4 sin^2(pi x/2)/pi^2) sum_k [a_{2k}/(x-2k)^2 + b_{2k}/(x-2k)]
    long lo = b.window.lo, hi = b.window.hi;
    long m0 = (lo % 2 == 0) ? lo : lo + 1;
    double acc = 0.0;
    double near = 0.0;
    bool on_node = false;
    for (long m = m0; m <= hi; m += 2) {
        double d = x - static_cast<double>(m);
        if (std::abs(d) < 1e-7) {
            on_node = true;
            near = a[m] + b[m] * d;
            continue;
        }
        acc += a[m] / (d * d) + b[m] / d;
    }
    double s = std::sin(0.5 * pi * x);
    double pref = 4.0 * s * s / (pi * pi);
    if (on_node) {
        // remainder of the sum is smooth; the node term has a removable singularity
        return near + pref * acc;
    }
    return pref * acc;
}

double digamma_pair_sum(double z) {
    double r = std::round(z);
    if (r != 0.0 && std::abs(z - r) == 0.0) throw PoleError("pole at a nonzero integer");
    if (std::abs(z) < 1e-6) {
        // 2 zeta(2) + 2 zeta(4) z^2 + ...
        return pi * pi / 3.0 + z * z * std::pow(pi, 4) / 45.0;
    }
    return (boost::math::digamma(1.0 + z) - boost::math::digamma(1.0 - z)) / z;
}

TruncatedOperator vaaler_matrix(const PerturbationProfile& prof, const IndexWindow& w) {
    if (!(prof.L < 0.25)) throw RangeViolation("vaaler_matrix needs L < 1/4");
    TruncatedOperator A(w, w, 2);
    for (long n = w.lo; n <= w.hi; ++n) {
        double e = prof[n];
        for (long k = w.lo; k <= w.hi; ++k) {
            double d = static_cast<double>(n - k) + e;
            A.at(0, n, 0, k) = vaaler::g(d);
            A.at(0, n, 1, k) = vaaler::h(d);
            A.at(1, n, 0, k) = vaaler::dg(d);
            A.at(1, n, 1, k) = vaaler::dh(d);
        }
    }
    return A;
}

double vaaler_bound(double L) {
    if (!(L >= 0.0 && L < 0.25)) throw RangeViolation("vaaler_bound needs 0 <= L < 1/4");
    if (L == 0.0) return 0.0;
    double x = pi * L;
    double s = std::sin(x), c = std::cos(x);
    double t1, t2;
    if (L < 1e-3) {
        t1 = x * x - 2.0 * std::pow(x, 4) / 9.0;
        t2 = 2.0 * pi * (x / 3.0 - 4.0 * x * x * x / 45.0);
    } else {
        t1 = 1.0 - s * (2.0 * x * c - s) / (x * x);
        t2 = 2.0 * s * (s - x * c) / (pi * pi * L * L * L);
    }
    double r = (2.0 * x * c - s) / s;
    double t3 = (s * s / (pi * pi)) * gamma_p(2, L) * std::sqrt(2.0 * (1.0 + r * r));
    return t1 + t2 + t3;
}

double vaaler_threshold(double tol) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    return bisect(vaaler_bound, 0.0, 0.25 - 1e-12, tol);
}

Reconstruction vaaler_reconstruct(const SampleSet& samples, double tol) {
    validate(samples);
    if (samples.band != Band::pw_2pi) throw InvalidArgument("vaaler_reconstruct needs pw_2pi samples");
    NormCertificate c;
    c.method = NormMethod::closed_form;
    c.bound = samples.profile.L < 0.25 ? vaaler_bound(samples.profile.L) : INFINITY;
    c.detail = {{"L", samples.profile.L}};
    Reconstruction r;
    r.certificate = neumann_certificate(c);
    if (!r.certificate.invertible)
        throw NotCertified("perturbation bound >= 1; Vaaler system not certified invertible");
    const IndexWindow& w = samples.values.window;
    TruncatedOperator A = vaaler_matrix(samples.profile, w);
    Eigen::Index m = static_cast<Eigen::Index>(w.size());
    Eigen::VectorXd rhs(2 * m);
    for (long n = w.lo; n <= w.hi; ++n) {
        rhs(static_cast<Eigen::Index>(w.offset(n))) = samples.values[n];
        rhs(m + static_cast<Eigen::Index>(w.offset(n))) = (*samples.derivs)[n];
    }
    SolveResult sr = solve(A.entries, rhs, tol);
    r.residual = sr.residual;
    r.values = RealSequence(w, std::vector<double>(sr.x.data(), sr.x.data() + m));
    r.derivs = RealSequence(w, std::vector<double>(sr.x.data() + m, sr.x.data() + 2 * m));
    return r;
}

}  // namespace pif
