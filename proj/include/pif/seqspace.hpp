#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <json.hpp>

namespace pif {

enum class WindowKind { two_sided, one_sided };

struct IndexWindow {
    long lo = 0;
    long hi = 0;  // inclusive
    WindowKind kind = WindowKind::two_sided;

    static IndexWindow two_sided(long lo, long hi);
    static IndexWindow one_sided(long hi);

    std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
    bool contains(long n) const { return n >= lo && n <= hi; }
    std::size_t offset(long n) const { return static_cast<std::size_t>(n - lo); }
    bool operator==(const IndexWindow&) const = default;
};

struct RealSequence {
    IndexWindow window;
    std::vector<double> values;

    RealSequence() = default;
    explicit RealSequence(IndexWindow w);
    RealSequence(IndexWindow w, std::vector<double> v);

    // zero outside the window
    double operator[](long n) const {
        return window.contains(n) ? values[window.offset(n)] : 0.0;
    }
    double& at(long n);
    double l2_norm() const;
};

struct WeightedSeqPair {
    RealSequence x;
    RealSequence y;
    double s = 0.0;
};

enum class DecayClass { constant, power_law, explicit_list };

struct ProfileSpec {
    DecayClass kind = DecayClass::constant;
    IndexWindow window;
    double amplitude = 0.0;   // L for constant, delta for power_law
    double exponent = 0.0;    // p for power_law
    bool alternate = true;    // constant profiles: eps_n = (-1)^n L
    bool sqrt_nodes = false;  // enforce eps_0 = 0 and |eps_n| < 1/2
};

struct PerturbationProfile {
    IndexWindow window;
    std::vector<double> eps;
    double L = 0.0;
    DecayClass decay = DecayClass::explicit_list;
    double delta = 0.0;
    double p = 0.0;

    double operator[](long n) const {
        return window.contains(n) ? eps[window.offset(n)] : 0.0;
    }
};

PerturbationProfile make_profile(const ProfileSpec& spec);

// Wraps an explicit eps array; L is recomputed.
PerturbationProfile profile_from_eps(IndexWindow w, std::vector<double> eps,
                                     bool sqrt_nodes = false);

// Throws RangeViolation unless eps_0 = 0 and every |eps_n| < 1/2.
void check_sqrt_node_profile(const PerturbationProfile& prof);

double weighted_norm(const WeightedSeqPair& p);

RealSequence restrict(const RealSequence& seq, const IndexWindow& w);

nlohmann::json to_json(const IndexWindow& w);
IndexWindow window_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PerturbationProfile& p);
PerturbationProfile profile_from_json(const nlohmann::json& j);

}  // namespace pif
