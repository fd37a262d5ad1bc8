#pragma once

#include <vector>

#include <json.hpp>

#include "pif/qseries.hpp"

namespace pif {

enum class Sign { plus, minus };
inline const char* sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

// g_n^+ = theta^3 P_n^+(1/J), g_n^- = theta^3 (1 - 2 lambda) P_n^-(1/J), P monic of degree n.
// Plus: q^{-n} + O(q). Minus: P_n^-(0) = 0 and q^{-n} + c_0 + O(q), so g_0^- = 0.
struct RVBasis {
    int n = 0;
    Sign sign = Sign::plus;
    ZSeries g_series;
    std::vector<mpz_class> P;  // P[k] multiplies (1/J)^k
    long order = 0;
};

RVBasis gn_construct(int n, Sign sign, long order);

// All forms 0..N of one sign, sharing the powers of 1/J.
std::vector<RVBasis> gn_family(int N, Sign sign, long order);

// true if q^{-n+1} ... q^0 (plus) or q^{-n+1} ... q^{-1} (minus) vanish and the lead is q^{-n}
bool check_normalization(const RVBasis& b);

nlohmann::json to_json(const RVBasis& b);
RVBasis basis_from_json(const nlohmann::json& j);

}  // namespace pif
