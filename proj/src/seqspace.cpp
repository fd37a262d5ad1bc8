#include "pif/seqspace.hpp"

#include <cmath>
#include <string>

#include "pif/errors.hpp"

namespace pif {

IndexWindow IndexWindow::two_sided(long lo, long hi) {
    if (lo > hi) throw InvalidArgument("window lo > hi");
    return {lo, hi, WindowKind::two_sided};
}

IndexWindow IndexWindow::one_sided(long hi) {
    if (hi < 0) throw InvalidArgument("one-sided window needs hi >= 0");
    return {0, hi, WindowKind::one_sided};
}

RealSequence::RealSequence(IndexWindow w) : window(w), values(w.size(), 0.0) {}

RealSequence::RealSequence(IndexWindow w, std::vector<double> v)
    : window(w), values(std::move(v)) {
    if (values.size() != window.size())
        throw InvalidArgument("sequence length does not match window");
}

double& RealSequence::at(long n) {
    if (!window.contains(n)) throw InvalidArgument("index outside window");
    return values[window.offset(n)];
}

double RealSequence::l2_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

static void validate_window(const IndexWindow& w) {
    if (w.lo > w.hi) throw InvalidArgument("window lo > hi");
    if (w.kind == WindowKind::one_sided && w.lo != 0)
        throw InvalidArgument("one-sided window must start at 0");
}

PerturbationProfile profile_from_eps(IndexWindow w, std::vector<double> eps,
                                     bool sqrt_nodes) {
    validate_window(w);
    if (eps.size() != w.size()) throw InvalidArgument("eps length does not match window");
    PerturbationProfile p;
    p.window = w;
    p.eps = std::move(eps);
    for (double e : p.eps) p.L = std::max(p.L, std::abs(e));
    if (sqrt_nodes) check_sqrt_node_profile(p);
    return p;
}

PerturbationProfile make_profile(const ProfileSpec& spec) {
    validate_window(spec.window);
    if (spec.amplitude < 0.0) throw InvalidArgument("profile amplitude must be nonnegative");
    const IndexWindow& w = spec.window;
    std::vector<double> eps(w.size(), 0.0);
    for (long n = w.lo; n <= w.hi; ++n) {
        double e = 0.0;
        switch (spec.kind) {
            case DecayClass::constant:
                e = spec.amplitude;
                if (spec.alternate && (n % 2 != 0)) e = -e;
                break;
            case DecayClass::power_law:
                e = spec.amplitude * std::pow(1.0 + static_cast<double>(n), -spec.exponent);
                break;
            case DecayClass::explicit_list:
                throw InvalidArgument("explicit profiles are built with profile_from_eps");
        }
        eps[w.offset(n)] = e;
    }
    bool zero_origin = spec.sqrt_nodes ||
                       (spec.kind == DecayClass::power_law && w.kind == WindowKind::one_sided);
    if (zero_origin && w.contains(0)) eps[w.offset(0)] = 0.0;

    PerturbationProfile p = profile_from_eps(w, std::move(eps), false);
    p.decay = spec.kind;
    if (spec.kind == DecayClass::power_law) {
        p.delta = spec.amplitude;
        p.p = spec.exponent;
    } else {
        p.delta = spec.amplitude;
    }
    if (spec.sqrt_nodes) check_sqrt_node_profile(p);
    return p;
}

void check_sqrt_node_profile(const PerturbationProfile& prof) {
    if (prof.window.contains(0) && prof[0] != 0.0)
        throw RangeViolation("sqrt-node profiles need eps_0 = 0");
    for (double e : prof.eps)
        if (!(std::abs(e) < 0.5))
            throw RangeViolation("sqrt-node perturbation outside (-1/2, 1/2)");
}

double weighted_norm(const WeightedSeqPair& p) {
    double acc = 0.0;
    auto add = [&](const RealSequence& seq) {
        for (long n = seq.window.lo; n <= seq.window.hi; ++n) {
            double v = seq[n];
            if (v == 0.0) continue;
            double w = std::pow(1.0 + static_cast<double>(n), p.s);
            acc += (w * v) * (w * v);
        }
    };
    add(p.x);
    add(p.y);
    return std::sqrt(acc);
}

RealSequence restrict(const RealSequence& seq, const IndexWindow& w) {
    RealSequence out(w);
    for (long n = w.lo; n <= w.hi; ++n) out.values[w.offset(n)] = seq[n];
    return out;
}

nlohmann::json to_json(const IndexWindow& w) {
    return {{"lo", w.lo},
            {"hi", w.hi},
            {"window", w.kind == WindowKind::one_sided ? "one_sided" : "two_sided"}};
}

IndexWindow window_from_json(const nlohmann::json& j) {
    IndexWindow w;
    w.lo = j.at("lo").get<long>();
    w.hi = j.at("hi").get<long>();
    w.kind = WindowKind::two_sided;
    if (j.contains("window") && j["window"].get<std::string>() == "one_sided")
        w.kind = WindowKind::one_sided;
    validate_window(w);
    return w;
}

static const char* kind_name(DecayClass k) {
    switch (k) {
        case DecayClass::constant: return "constant";
        case DecayClass::power_law: return "power_law";
        case DecayClass::explicit_list: return "explicit";
    }
    return "explicit";
}

nlohmann::json to_json(const PerturbationProfile& p) {
    nlohmann::json j = to_json(p.window);
    j["kind"] = kind_name(p.decay);
    j["eps"] = p.eps;
    if (p.decay == DecayClass::power_law) {
        j["delta"] = p.delta;
        j["p"] = p.p;
    }
    return j;
}

PerturbationProfile profile_from_json(const nlohmann::json& j) {
    IndexWindow w = window_from_json(j);
    std::string kind = j.value("kind", std::string("explicit"));
    if (j.contains("eps")) {
        PerturbationProfile p = profile_from_eps(w, j.at("eps").get<std::vector<double>>());
        if (kind == "constant") p.decay = DecayClass::constant;
        if (kind == "power_law") {
            p.decay = DecayClass::power_law;
            p.delta = j.value("delta", 0.0);
            p.p = j.value("p", 0.0);
        }
        return p;
    }
    ProfileSpec s;
    s.window = w;
    if (kind == "constant") {
        s.kind = DecayClass::constant;
        s.amplitude = j.at("L").get<double>();
    } else if (kind == "power_law") {
        s.kind = DecayClass::power_law;
        s.amplitude = j.at("delta").get<double>();
        s.exponent = j.at("p").get<double>();
    } else {
        throw InvalidArgument("profile JSON needs eps or a known kind");
    }
    return make_profile(s);
}

}  // namespace pif
