#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pif/bandlimited.hpp"

namespace pif {

struct CriterionResult {
    int id = 0;
    std::string name;
    std::string module;
    bool pass = false;
    nlohmann::json measured = nlohmann::json::object();
    std::string tolerance;
    double seconds = 0.0;
};

constexpr int criterion_count = 15;

// "" or "all" selects everything; otherwise comma separated ids or module names.
std::vector<int> select_criteria(const std::string& only);

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids);

// "PASS  4 lambda-q-expansion  measured=... tolerance=..."
std::string format_line(const CriterionResult& r);
nlohmann::json summary_json(const std::vector<CriterionResult>& rs, bool with_timing = false);

// Jittered data for f = sum_{|j|<=50} c_j sinc(x - j): eps_n = (-1)^n L on [-200, 200].
struct SincFixture {
    std::vector<double> coeffs;  // c_{-50..50}
    SampleSet samples;
};
SincFixture make_sinc_fixture(unsigned seed = 20240601, double L = 0.2);
double sinc_fixture_value(const std::vector<double>& coeffs, double x);

}  // namespace pif
