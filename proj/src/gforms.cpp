#include "pif/gforms.hpp"

namespace pif {

std::vector<RVBasis> gn_family(int N, Sign sign, long order) {
    if (N < 0) throw InvalidArgument("n must be >= 0");
    if (order < N + 4) throw InvalidArgument("order must be >= n + 4");
    long work = order + N + 2;
    ZSeries th = theta_series(work);
    ZSeries base = th * th * th;
    if (sign == Sign::minus) {
        ZSeries lam = lambda_series(work);
        base = base * (ZSeries::constant(1, work) - mpz_class(2) * lam);
    }
    ZSeries w = invert(J_series(work));  // q^{-1} + 24 + 276 q + ...
    std::vector<ZSeries> U;  // U_k = base * w^k
    U.reserve(static_cast<std::size_t>(N + 1));
    U.push_back(base);
    for (int k = 1; k <= N; ++k) U.push_back(U.back() * w);

    std::vector<RVBasis> out;
    for (int n = 0; n <= N; ++n) {
        RVBasis b;
        b.n = n;
        b.sign = sign;
        b.order = order;
        b.P.assign(static_cast<std::size_t>(n + 1), 0);
        if (sign == Sign::minus && n == 0) {
            b.P[0] = 0;
            b.g_series = ZSeries(order + 1, order, {});
            out.push_back(std::move(b));
            continue;
        }
        b.P[static_cast<std::size_t>(n)] = 1;
        ZSeries g = U[static_cast<std::size_t>(n)];
        int jmin = sign == Sign::plus ? 0 : 1;
        for (int j = n - 1; j >= jmin; --j) {
            mpz_class c = g.coeff(-j);
            if (c == 0) continue;
            // U_j = q^{-j} + ..., so subtracting c U_j clears q^{-j}
            b.P[static_cast<std::size_t>(j)] = -c;
            g = g + mpz_class(-c) * U[static_cast<std::size_t>(j)];
        }
        b.g_series = g.truncated(order);
        if (!check_normalization(b))
            throw ConstructionFailure("normalization system did not clear the principal part");
        out.push_back(std::move(b));
    }
    return out;
}

RVBasis gn_construct(int n, Sign sign, long order) {
    std::vector<RVBasis> fam = gn_family(n, sign, order);
    return fam.back();
}

bool check_normalization(const RVBasis& b) {
    const ZSeries& g = b.g_series;
    if (b.sign == Sign::minus && b.n == 0) return g.is_zero();
    if (g.is_zero() || g.lead != -b.n || g.coeffs[0] != 1) return false;
    long top = b.sign == Sign::plus ? 0 : -1;
    for (long k = -b.n + 1; k <= top; ++k)
        if (g.coeff(k) != 0) return false;
    return true;
}

nlohmann::json to_json(const RVBasis& b) {
    nlohmann::json j;
    j["n"] = b.n;
    j["sign"] = sign_name(b.sign);
    j["lead"] = b.g_series.is_zero() ? -b.n : b.g_series.lead;
    j["order"] = b.order;
    std::vector<std::string> c, p;
    long lead = j["lead"].get<long>();
    for (long k = lead; k <= b.order; ++k) c.push_back(b.g_series.coeff(k).get_str());
    for (const auto& v : b.P) p.push_back(v.get_str());
    j["coeffs"] = c;
    j["P"] = p;
    return j;
}

RVBasis basis_from_json(const nlohmann::json& j) {
    RVBasis b;
    b.n = j.at("n").get<int>();
    std::string s = j.at("sign").get<std::string>();
    if (s == "plus") b.sign = Sign::plus;
    else if (s == "minus") b.sign = Sign::minus;
    else throw InvalidArgument("sign must be plus or minus");
    b.order = j.at("order").get<long>();
    long lead = j.at("lead").get<long>();
    std::vector<mpz_class> c;
    for (const auto& v : j.at("coeffs")) c.emplace_back(v.get<std::string>());
    b.g_series = ZSeries(lead, b.order, std::move(c));
    if (j.contains("P"))
        for (const auto& v : j["P"]) b.P.emplace_back(v.get<std::string>());
    return b;
}

}  // namespace pif
