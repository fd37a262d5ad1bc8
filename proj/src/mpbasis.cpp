#include "pif/mpbasis.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "pif/errors.hpp"

namespace pif {

namespace {

class Mp {
public:
    explicit Mp(mpfr_prec_t p) {
        mpfr_init2(v_, p);
        mpfr_set_zero(v_, 1);
    }
    Mp(mpfr_prec_t p, double d) {
        mpfr_init2(v_, p);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }
    Mp(const Mp& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mp& operator=(const Mp& o) {
        if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
        return *this;
    }
    Mp& operator=(Mp&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mp() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

constexpr mpfr_rnd_t R = MPFR_RNDN;
constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration at working precision.
struct GLRule {
    std::vector<Mp> x, w;
};

const GLRule& gl_rule(int M, mpfr_prec_t prec) {
    static std::map<std::pair<int, long>, GLRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(M, static_cast<long>(prec));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    GLRule rule;
    Mp x(prec), p0(prec), p1(prec), p2(prec), dp(prec), tmp(prec), dx(prec);
    for (int i = 0; i < M; ++i) {
        mpfr_set_d(x.get(), std::cos(kPi * (i + 0.75) / (M + 0.5)), R);
        for (int iter = 0; iter < 200; ++iter) {
            mpfr_set_ui(p0.get(), 1, R);
            mpfr_set(p1.get(), x.get(), R);
            for (int k = 1; k < M; ++k) {
                // p2 = ((2k+1) x p1 - k p0)/(k+1)
                mpfr_mul(tmp.get(), x.get(), p1.get(), R);
                mpfr_mul_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(2 * k + 1), R);
                mpfr_mul_ui(p2.get(), p0.get(), static_cast<unsigned long>(k), R);
                mpfr_sub(p2.get(), tmp.get(), p2.get(), R);
                mpfr_div_ui(p2.get(), p2.get(), static_cast<unsigned long>(k + 1), R);
                mpfr_swap(p0.get(), p1.get());
                mpfr_swap(p1.get(), p2.get());
            }
            // p1 = P_M, p0 = P_{M-1}; dp = M (x P_M - P_{M-1})/(x^2 - 1)
            mpfr_mul(dp.get(), x.get(), p1.get(), R);
            mpfr_sub(dp.get(), dp.get(), p0.get(), R);
            mpfr_mul_ui(dp.get(), dp.get(), static_cast<unsigned long>(M), R);
            mpfr_sqr(tmp.get(), x.get(), R);
            mpfr_sub_ui(tmp.get(), tmp.get(), 1, R);
            mpfr_div(dp.get(), dp.get(), tmp.get(), R);
            mpfr_div(dx.get(), p1.get(), dp.get(), R);
            mpfr_sub(x.get(), x.get(), dx.get(), R);
            if (mpfr_zero_p(dx.get()) || mpfr_get_exp(dx.get()) < -static_cast<long>(prec) + 4) {
                if (iter > 0) break;
            }
        }
        // recompute P'_M at the converged node for the weight
        mpfr_set_ui(p0.get(), 1, R);
        mpfr_set(p1.get(), x.get(), R);
        for (int k = 1; k < M; ++k) {
            mpfr_mul(tmp.get(), x.get(), p1.get(), R);
            mpfr_mul_ui(tmp.get(), tmp.get(), static_cast<unsigned long>(2 * k + 1), R);
            mpfr_mul_ui(p2.get(), p0.get(), static_cast<unsigned long>(k), R);
            mpfr_sub(p2.get(), tmp.get(), p2.get(), R);
            mpfr_div_ui(p2.get(), p2.get(), static_cast<unsigned long>(k + 1), R);
            mpfr_swap(p0.get(), p1.get());
            mpfr_swap(p1.get(), p2.get());
        }
        mpfr_mul(dp.get(), x.get(), p1.get(), R);
        mpfr_sub(dp.get(), dp.get(), p0.get(), R);
        mpfr_mul_ui(dp.get(), dp.get(), static_cast<unsigned long>(M), R);
        mpfr_sqr(tmp.get(), x.get(), R);
        mpfr_sub_ui(tmp.get(), tmp.get(), 1, R);
        mpfr_div(dp.get(), dp.get(), tmp.get(), R);
        // w = 2/((1-x^2) P'^2)
        Mp w(prec);
        mpfr_sqr(w.get(), dp.get(), R);
        mpfr_neg(tmp.get(), tmp.get(), R);
        mpfr_mul(w.get(), w.get(), tmp.get(), R);
        mpfr_ui_div(w.get(), 2, w.get(), R);
        rule.x.push_back(x);
        rule.w.push_back(w);
    }
    return cache.emplace(key, std::move(rule)).first->second;
}

struct Node {
    Mp t, wt, y;    // y = t (direct) or s = 1/t (inverted)
    bool inverted;  // node lies below t = 1 and theta is taken at i/t
};

// theta^3 (1+it), theta^3 (1-2 lambda), 1/J on the line.
struct LineMp {
    Mp base_plus, base_minus, w;
};

LineMp line_at(const Mp& y, bool inverted, mpfr_prec_t prec) {
    Mp q(prec), s2(prec), s3(prec), s4(prec), term(prec), step(prec), q2(prec), tmp(prec);
    mpfr_const_pi(q.get(), R);
    mpfr_mul(q.get(), q.get(), y.get(), R);
    mpfr_neg(q.get(), q.get(), R);
    mpfr_exp(q.get(), q.get(), R);  // e^{-pi y}
    mpfr_sqr(q2.get(), q.get(), R);
    long stop = -static_cast<long>(prec) - 8;
    // s3, s4: terms q^{m^2}, step q^{2m+1}
    mpfr_set_ui(s3.get(), 1, R);
    mpfr_set_ui(s4.get(), 1, R);
    mpfr_set(term.get(), q.get(), R);
    mpfr_mul(step.get(), q.get(), q2.get(), R);
    for (int m = 1; m < 10000; ++m) {
        mpfr_mul_2ui(tmp.get(), term.get(), 1, R);
        mpfr_add(s3.get(), s3.get(), tmp.get(), R);
        if (m % 2) mpfr_sub(s4.get(), s4.get(), tmp.get(), R);
        else mpfr_add(s4.get(), s4.get(), tmp.get(), R);
        mpfr_mul(term.get(), term.get(), step.get(), R);
        mpfr_mul(step.get(), step.get(), q2.get(), R);
        if (mpfr_zero_p(term.get()) || mpfr_get_exp(term.get()) < stop) break;
    }
    // s2 = 2 e^{-pi y/4} sum_{m>=0} q^{m(m+1)}, step q^{2m+2}
    mpfr_set_ui(s2.get(), 0, R);
    mpfr_set_ui(term.get(), 1, R);
    mpfr_set(step.get(), q2.get(), R);
    for (int m = 0; m < 10000; ++m) {
        mpfr_add(s2.get(), s2.get(), term.get(), R);
        mpfr_mul(term.get(), term.get(), step.get(), R);
        mpfr_mul(step.get(), step.get(), q2.get(), R);
        if (mpfr_zero_p(term.get()) || mpfr_get_exp(term.get()) < stop) break;
    }
    mpfr_const_pi(tmp.get(), R);
    mpfr_mul(tmp.get(), tmp.get(), y.get(), R);
    mpfr_div_ui(tmp.get(), tmp.get(), 4, R);
    mpfr_neg(tmp.get(), tmp.get(), R);
    mpfr_exp(tmp.get(), tmp.get(), R);
    mpfr_mul(s2.get(), s2.get(), tmp.get(), R);
    mpfr_mul_2ui(s2.get(), s2.get(), 1, R);

    Mp th(prec), ratio(prec);
    if (!inverted) {
        // theta(1+it) = Theta4(it), lambda = -(Theta2/Theta4)^4
        mpfr_set(th.get(), s4.get(), R);
        mpfr_div(ratio.get(), s2.get(), s4.get(), R);
    } else {
        // Theta4(it) = sqrt(s) Theta2(is), Theta2(it) = sqrt(s) Theta4(is)
        mpfr_sqrt(tmp.get(), y.get(), R);
        mpfr_mul(th.get(), tmp.get(), s2.get(), R);
        mpfr_div(ratio.get(), s4.get(), s2.get(), R);
    }
    LineMp out{Mp(prec), Mp(prec), Mp(prec)};
    Mp lam(prec);
    mpfr_sqr(lam.get(), ratio.get(), R);
    mpfr_sqr(lam.get(), lam.get(), R);
    mpfr_neg(lam.get(), lam.get(), R);
    mpfr_sqr(out.base_plus.get(), th.get(), R);
    mpfr_mul(out.base_plus.get(), out.base_plus.get(), th.get(), R);
    // 1 - 2 lambda
    mpfr_mul_2ui(tmp.get(), lam.get(), 1, R);
    mpfr_ui_sub(tmp.get(), 1, tmp.get(), R);
    mpfr_mul(out.base_minus.get(), out.base_plus.get(), tmp.get(), R);
    // 1/J = 16/(lambda (1 - lambda))
    mpfr_ui_sub(tmp.get(), 1, lam.get(), R);
    mpfr_mul(tmp.get(), tmp.get(), lam.get(), R);
    mpfr_ui_div(out.w.get(), 16, tmp.get(), R);
    return out;
}

void horner(Mp& out, const std::vector<Mp>& P, const Mp& w) {
    mpfr_set(out.get(), P.back().get(), R);
    for (std::size_t k = P.size() - 1; k-- > 0;) mpfr_fma(out.get(), out.get(), w.get(), P[k].get(), R);
}

double ln_abs(const mpz_class& z) {
    if (z == 0) return -INFINITY;
    long e;
    double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::abs(m)) + static_cast<double>(e) * std::numbers::ln2;
}

}  // namespace

struct BasisFamily::Impl {
    int N = 0;
    double u_max = 0.0;
    mpfr_prec_t prec = 128;
    long K = 0;
    double quad_err = 0.0;
    std::vector<RVBasis> fam[2];
    std::vector<std::vector<Mp>> P[2];     // P[s][n][k]
    std::vector<std::vector<Mp>> coef[2];  // coef[s][n][i] for q^{-n+i}
    std::vector<Mp> ek;                    // (-1)^k e^{-pi k}, index k + N
    std::vector<Node> nodes;
    std::vector<std::vector<Mp>> G[2];  // G[s][n][j]

    Mp pi() const {
        Mp p(prec);
        mpfr_const_pi(p.get(), R);
        return p;
    }

    void plan_nodes(double scale, std::vector<Node>& out) const;
    void add_panel(std::vector<Node>& out, double a, double b, int M, bool inverted) const;
    Mp g_at(const Node& nd, int n, int s) const;
    Mp integrate(const std::vector<Node>& nds, int n, int s, double u, bool cached) const;
};

void BasisFamily::Impl::add_panel(std::vector<Node>& out, double a, double b, int M, bool inverted) const {
    const GLRule& gl = gl_rule(M, prec);
    Mp half(prec), mid(prec), tmp(prec);
    mpfr_set_d(half.get(), b, R);
    mpfr_sub_d(half.get(), half.get(), a, R);
    mpfr_div_2ui(half.get(), half.get(), 1, R);
    mpfr_set_d(mid.get(), a, R);
    mpfr_add(mid.get(), mid.get(), half.get(), R);
    for (int i = 0; i < M; ++i) {
        Node nd{Mp(prec), Mp(prec), Mp(prec), inverted};
        mpfr_fma(nd.y.get(), half.get(), gl.x[static_cast<std::size_t>(i)].get(), mid.get(), R);
        mpfr_mul(nd.wt.get(), half.get(), gl.w[static_cast<std::size_t>(i)].get(), R);
        if (inverted) {
            // t = 1/s, dt = ds/s^2
            mpfr_ui_div(nd.t.get(), 1, nd.y.get(), R);
            mpfr_sqr(tmp.get(), nd.t.get(), R);
            mpfr_mul(nd.wt.get(), nd.wt.get(), tmp.get(), R);
        } else {
            mpfr_set(nd.t.get(), nd.y.get(), R);
        }
        out.push_back(std::move(nd));
    }
}

// Panel width from the Gauss-Legendre bound (R h e / (8M))^{2M} <= 10^{-D}
// for an integrand growing like e^{R t}; `scale` < 1 refines.
static double panel_width(double rate, int M, double digits) {
    return 8.0 * M / (rate * std::numbers::e) * std::pow(10.0, -digits / (2.0 * M));
}

void BasisFamily::Impl::plan_nodes(double scale, std::vector<Node>& out) const {
    double dA = 1.3644 * N + 32.0;
    int MA = std::clamp(static_cast<int>(std::ceil(dA / 8.0)) * 8, 32, 160);
    double rateA = kPi * (std::max<double>(N, u_max) + 2.0);
    double hA = std::min(0.75, panel_width(rateA, MA, dA)) * scale;
    int nA = static_cast<int>(std::ceil(0.75 / hA));
    for (int i = 0; i < nA; ++i) add_panel(out, 0.25 + 0.75 * i / nA, 0.25 + 0.75 * (i + 1) / nA, MA, false);

    // below t = 1/4 the integrand is at most amp * e^{-3 pi s/4} in s = 1/t
    double lnamp = std::log(8.0);
    for (int s = 0; s < 2; ++s)
        for (const auto& b : fam[s]) {
            if (s == 0) lnamp = std::max(lnamp, std::log(8.0) + ln_abs(b.P[0]));
            else if (b.P.size() > 1) lnamp = std::max(lnamp, std::log(8.0 * 256.0) + ln_abs(b.P[1]));
        }
    double smax = 4.0;
    while (lnamp - 0.5 * std::log(smax) - 0.75 * kPi * smax > -74.0) smax += 0.5;
    double dB = 34.0 + lnamp / std::numbers::ln10;
    const int MB = 32;
    double s0 = 4.0;
    while (s0 < smax) {
        double rate = kPi * u_max / (s0 * s0) + 4.5;
        double h = std::min(4.0, panel_width(rate, MB, dB)) * scale;
        double s1 = std::min(smax, s0 + h);
        add_panel(out, s0, s1, MB, true);
        s0 = s1;
    }
}

Mp BasisFamily::Impl::g_at(const Node& nd, int n, int s) const {
    LineMp L = line_at(nd.y, nd.inverted, prec);
    Mp v(prec);
    horner(v, P[s][static_cast<std::size_t>(n)], L.w);
    mpfr_mul(v.get(), v.get(), s == 0 ? L.base_plus.get() : L.base_minus.get(), R);
    return v;
}

Mp BasisFamily::Impl::integrate(const std::vector<Node>& nds, int n, int s, double u, bool cached) const {
    Mp acc(prec), e(prec), npu(prec);
    mpfr_const_pi(npu.get(), R);
    mpfr_mul_d(npu.get(), npu.get(), -u, R);
    for (std::size_t j = 0; j < nds.size(); ++j) {
        mpfr_mul(e.get(), npu.get(), nds[j].t.get(), R);
        mpfr_exp(e.get(), e.get(), R);
        mpfr_mul(e.get(), e.get(), nds[j].wt.get(), R);
        if (cached) {
            mpfr_fma(acc.get(), e.get(), G[s][static_cast<std::size_t>(n)][j].get(), acc.get(), R);
        } else {
            Mp g = g_at(nds[j], n, s);
            mpfr_fma(acc.get(), e.get(), g.get(), acc.get(), R);
        }
    }
    return acc;
}

BasisFamily::BasisFamily(int N, double u_max) : impl_(std::make_unique<Impl>()) {
    if (N < 0) throw InvalidArgument("N must be >= 0");
    if (!(u_max >= 0.0)) throw InvalidArgument("u_max must be >= 0");
    Impl& m = *impl_;
    m.N = N;
    m.u_max = u_max;
    double dA = 1.3644 * N + 32.0;
    m.prec = static_cast<mpfr_prec_t>(std::ceil((dA + 25.0) * 3.3220));

    // q-expansion order: the last term c_K e^{-pi K} must be negligible
    long K = static_cast<long>(std::ceil(4.8 * N + 40.0));
    for (int attempt = 0;; ++attempt) {
        m.fam[0] = gn_family(N, Sign::plus, K);
        m.fam[1] = gn_family(N, Sign::minus, K);
        double worst = -INFINITY;
        for (int s = 0; s < 2; ++s)
            for (long k = K - 4; k <= K; ++k)
                worst = std::max(worst, ln_abs(m.fam[s][static_cast<std::size_t>(N)].g_series.coeff(k)) - kPi * k);
        if (worst < -74.0) break;
        if (attempt > 6) throw ConstructionFailure("q-expansion tail did not become negligible");
        K = static_cast<long>(std::ceil(K * 1.25)) + 10;
    }
    m.K = K;

    for (int s = 0; s < 2; ++s) {
        m.P[s].resize(static_cast<std::size_t>(N + 1));
        m.coef[s].resize(static_cast<std::size_t>(N + 1));
        for (int n = 0; n <= N; ++n) {
            const RVBasis& b = m.fam[s][static_cast<std::size_t>(n)];
            for (const auto& p : b.P) {
                Mp v(m.prec);
                mpfr_set_z(v.get(), p.get_mpz_t(), R);
                m.P[s][static_cast<std::size_t>(n)].push_back(std::move(v));
            }
            for (long k = -n; k <= K; ++k) {
                Mp v(m.prec);
                mpfr_set_z(v.get(), b.g_series.coeff(k).get_mpz_t(), R);
                m.coef[s][static_cast<std::size_t>(n)].push_back(std::move(v));
            }
        }
    }
    {
        Mp pi = m.pi();
        for (long k = -N; k <= K; ++k) {
            Mp v(m.prec);
            mpfr_mul_si(v.get(), pi.get(), -k, R);
            mpfr_exp(v.get(), v.get(), R);
            if (k % 2) mpfr_neg(v.get(), v.get(), R);
            m.ek.push_back(std::move(v));
        }
    }

    m.plan_nodes(1.0, m.nodes);
    for (int s = 0; s < 2; ++s)
        m.G[s].assign(static_cast<std::size_t>(N + 1), std::vector<Mp>());
    for (const Node& nd : m.nodes) {
        LineMp L = line_at(nd.y, nd.inverted, m.prec);
        for (int s = 0; s < 2; ++s)
            for (int n = 0; n <= N; ++n) {
                Mp v(m.prec);
                horner(v, m.P[s][static_cast<std::size_t>(n)], L.w);
                mpfr_mul(v.get(), v.get(), s == 0 ? L.base_plus.get() : L.base_minus.get(), R);
                m.G[s][static_cast<std::size_t>(n)].push_back(std::move(v));
            }
    }

    // error estimate: same panels split in two, at a few (n, u) probes
    std::vector<Node> fine;
    m.plan_nodes(0.5, fine);
    std::vector<std::pair<int, int>> probes = {{0, 0}, {N, 0}};
    if (N >= 1) probes.push_back({N, 1});
    if (N >= 2) probes.push_back({1, 1});
    std::vector<double> us = {0.3, 0.5 * u_max + 0.1, u_max};
    Mp diff(m.prec);
    for (auto [n, s] : probes)
        for (double u : us) {
            Mp a = m.integrate(m.nodes, n, s, u, true);
            Mp b = m.integrate(fine, n, s, u, false);
            mpfr_sub(diff.get(), a.get(), b.get(), R);
            m.quad_err = std::max(m.quad_err, std::abs(diff.d()));
        }
    m.quad_err += 1e-30;
}

BasisFamily::~BasisFamily() = default;

int BasisFamily::N() const { return impl_->N; }
double BasisFamily::u_max() const { return impl_->u_max; }
long BasisFamily::precision_bits() const { return static_cast<long>(impl_->prec); }
long BasisFamily::series_order() const { return impl_->K; }
std::size_t BasisFamily::node_count() const { return impl_->nodes.size(); }
double BasisFamily::quadrature_error() const { return impl_->quad_err; }

const RVBasis& BasisFamily::basis(int n, Sign s) const {
    if (n < 0 || n > impl_->N) throw InvalidArgument("basis index outside the family");
    return impl_->fam[s == Sign::plus ? 0 : 1][static_cast<std::size_t>(n)];
}

BasisFamily::Values BasisFamily::eval(double u) const {
    const Impl& m = *impl_;
    if (!(u >= 0.0) || u > m.u_max * (1.0 + 1e-12) + 1e-12)
        throw InvalidArgument("u outside the family's range");
    Values out;
    out.plus.assign(static_cast<std::size_t>(m.N + 1), 0.0);
    out.minus.assign(static_cast<std::size_t>(m.N + 1), 0.0);

    long ui = std::lround(u);
    double f = u - static_cast<double>(ui);
    if (f == 0.0) {
        // sin(pi u) = 0: only the q^{-u} term of the top segment survives
        for (int s = 0; s < 2; ++s)
            for (int n = 0; n <= m.N; ++n) {
                double v = n >= ui ? m.fam[s][static_cast<std::size_t>(n)].g_series.coeff(-ui).get_d() : 0.0;
                (s == 0 ? out.plus : out.minus)[static_cast<std::size_t>(n)] = v;
            }
        return out;
    }

    const mpfr_prec_t p = m.prec;
    Mp pi = m.pi(), sinpu(p), pref(p), tmp(p), uk(p);
    mpfr_mul_d(sinpu.get(), pi.get(), f, R);
    mpfr_sin(sinpu.get(), sinpu.get(), R);
    if (ui % 2) mpfr_neg(sinpu.get(), sinpu.get(), R);
    // pref = e^{-pi u} sin(pi u)/pi
    mpfr_mul_d(pref.get(), pi.get(), -u, R);
    mpfr_exp(pref.get(), pref.get(), R);
    mpfr_mul(pref.get(), pref.get(), sinpu.get(), R);
    mpfr_div(pref.get(), pref.get(), pi.get(), R);

    // fk = (-1)^k e^{-pi k}/(u+k)
    std::vector<Mp> fk;
    fk.reserve(m.ek.size());
    for (long k = -m.N; k <= m.K; ++k) {
        Mp v(p);
        mpfr_set_d(uk.get(), u, R);
        mpfr_add_si(uk.get(), uk.get(), k, R);
        mpfr_div(v.get(), m.ek[static_cast<std::size_t>(k + m.N)].get(), uk.get(), R);
        fk.push_back(std::move(v));
    }
    // E_j = w_j e^{-pi u t_j}
    std::vector<Mp> E;
    E.reserve(m.nodes.size());
    Mp npu(p);
    mpfr_mul_d(npu.get(), pi.get(), -u, R);
    for (const Node& nd : m.nodes) {
        Mp v(p);
        mpfr_mul(v.get(), npu.get(), nd.t.get(), R);
        mpfr_exp(v.get(), v.get(), R);
        mpfr_mul(v.get(), v.get(), nd.wt.get(), R);
        E.push_back(std::move(v));
    }
    Mp top(p), I(p);
    for (int s = 0; s < 2; ++s)
        for (int n = 0; n <= m.N; ++n) {
            const auto& c = m.coef[s][static_cast<std::size_t>(n)];
            mpfr_set_zero(top.get(), 1);
            for (std::size_t i = 0; i < c.size(); ++i)
                mpfr_fma(top.get(), c[i].get(), fk[static_cast<std::size_t>(m.N - n) + i].get(), top.get(), R);
            mpfr_mul(top.get(), top.get(), pref.get(), R);
            const auto& g = m.G[s][static_cast<std::size_t>(n)];
            mpfr_set_zero(I.get(), 1);
            for (std::size_t j = 0; j < g.size(); ++j) mpfr_fma(I.get(), E[j].get(), g[j].get(), I.get(), R);
            mpfr_fma(top.get(), sinpu.get(), I.get(), top.get(), R);
            (s == 0 ? out.plus : out.minus)[static_cast<std::size_t>(n)] = top.d();
        }
    return out;
}

double BasisFamily::eval_laplace(int n, Sign sign, double u, double* err_estimate) const {
    const Impl& m = *impl_;
    if (n < 0 || n > m.N) throw InvalidArgument("basis index outside the family");
    if (!(u > n)) throw InvalidArgument("Laplace route needs x^2 > n");
    if (u > m.u_max * (1.0 + 1e-12) + 1e-12) throw InvalidArgument("u outside the family's range");
    int s = sign == Sign::plus ? 0 : 1;
    if (s == 1 && n == 0) {
        if (err_estimate) *err_estimate = 0.0;
        return 0.0;
    }
    const mpfr_prec_t p = m.prec;
    Mp total = m.integrate(m.nodes, n, s, u, true);

    // [1, T] numerically; beyond T the integrand is below e^{-pi (u-n) T}
    double gap = u - n;
    double T = 1.0 + 76.0 / (kPi * gap);
    const int MC = 40;
    auto tail = [&](double scale) {
        double rate = kPi * (u + n + 4.0);
        double h = std::min(2.0, panel_width(rate, MC, 34.0)) * scale;
        int np = static_cast<int>(std::ceil((T - 1.0) / h));
        std::vector<Node> nds;
        for (int i = 0; i < np; ++i)
            m.add_panel(nds, 1.0 + (T - 1.0) * i / np, 1.0 + (T - 1.0) * (i + 1) / np, MC, false);
        return m.integrate(nds, n, s, u, false);
    };
    Mp c1 = tail(1.0);
    if (err_estimate) {
        Mp c2 = tail(0.5), d(p);
        mpfr_sub(d.get(), c1.get(), c2.get(), R);
        *err_estimate = m.quad_err + std::abs(d.d()) + 1e-30;
    }
    mpfr_add(total.get(), total.get(), c1.get(), R);
    Mp sinpu(p);
    long ui = std::lround(u);
    double f = u - static_cast<double>(ui);
    mpfr_const_pi(sinpu.get(), R);
    mpfr_mul_d(sinpu.get(), sinpu.get(), f, R);
    mpfr_sin(sinpu.get(), sinpu.get(), R);
    if (ui % 2) mpfr_neg(sinpu.get(), sinpu.get(), R);
    mpfr_mul(total.get(), total.get(), sinpu.get(), R);
    return total.d();
}

std::shared_ptr<const BasisFamily> shared_family(int N, double u_max) {
    static std::vector<std::shared_ptr<const BasisFamily>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& f : cache)
        if (f->N() >= N && f->u_max() >= u_max && f->N() <= 2 * N + 8) return f;
    // round the range up so nearby requests share one build
    double cap = std::max(u_max, N + 2.0);
    cap = std::ceil(cap / 16.0) * 16.0;
    auto f = std::make_shared<const BasisFamily>(N, cap);
    cache.push_back(f);
    return f;
}

}  // namespace pif
