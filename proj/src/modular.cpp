#include "pif/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "pif/errors.hpp"

namespace pif {

namespace {

constexpr double pi = std::numbers::pi;

// composite 20-point Gauss-Legendre over equal panels
template <class F>
auto gl_composite(F&& f, double a, double b, int panels) -> decltype(f(a)) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    decltype(f(a)) acc{};
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h, half = 0.5 * h;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0) {
                acc += w[i] * half * f(mid);
            } else {
                acc += w[i] * half * (f(mid - half * x[i]) + f(mid + half * x[i]));
            }
        }
    }
    return acc;
}

std::shared_ptr<const BasisFamily> family_for(int n, double u) {
    return shared_family(std::max(n, 2), std::max(u, 1.0));
}

void check_matches(const RVBasis& b, const BasisFamily& F) {
    const RVBasis& ref = F.basis(b.n, b.sign);
    long top = std::min<long>(b.order, -b.n + 12);
    for (long k = -b.n; k <= top; ++k)
        if (b.g_series.coeff(k) != ref.g_series.coeff(k))
            throw InvalidArgument("basis does not match the standard normalization");
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

double bn_eval(const RVBasis& basis, double x, double tol, Route route) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    double u = x * x;
    auto F = family_for(basis.n, u);
    check_matches(basis, *F);
    if (route == Route::automatic) route = u > basis.n + 0.5 ? Route::laplace : Route::contour;
    double err = 0.0, v = 0.0;
    if (route == Route::laplace) {
        v = F->eval_laplace(basis.n, basis.sign, u, &err);
    } else {
        auto vals = F->eval(u);
        v = (basis.sign == Sign::plus ? vals.plus : vals.minus)[static_cast<std::size_t>(basis.n)];
        err = F->quadrature_error();
    }
    if (err > tol) throw QuadratureFailure("quadrature error estimate above tolerance", err);
    return v;
}

std::pair<double, double> an_eval(int n, double x, double tol) {
    if (n < 0) throw InvalidArgument("n must be >= 0");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    auto F = family_for(n, x * x);
    if (F->quadrature_error() > tol)
        throw QuadratureFailure("quadrature error estimate above tolerance", F->quadrature_error());
    auto v = F->eval(x * x);
    double bp = v.plus[static_cast<std::size_t>(n)], bm = v.minus[static_cast<std::size_t>(n)];
    return {0.5 * (bp + bm), 0.5 * (bp - bm)};
}

std::vector<BasisRow> an_table(int n, const std::vector<double>& xs) {
    if (n < 0) throw InvalidArgument("n must be >= 0");
    double umax = 1.0;
    for (double x : xs) umax = std::max(umax, x * x);
    auto F = family_for(n, umax);
    std::vector<BasisRow> rows;
    for (double x : xs) {
        auto v = F->eval(x * x);
        double bp = v.plus[static_cast<std::size_t>(n)], bm = v.minus[static_cast<std::size_t>(n)];
        rows.push_back({x, 0.5 * (bp + bm), 0.5 * (bp - bm)});
    }
    return rows;
}

double d0_eval(double x) {
    double ax = std::abs(x);
    if (ax < 1e-4) return x * (1.0 - pi * pi * x * x / 6.0);
    if (ax > 200.0) return 0.0;
    return std::sin(pi * x * x) / std::sinh(pi * x);
}

nlohmann::json SignCheckReport::to_json() const {
    return {{"pass", pass},
            {"min_theta_cubed", min_theta_cubed},
            {"min_one_minus_2lambda", min_one_minus_2lambda},
            {"max_inv_J", max_inv_J},
            {"max_lambda", max_lambda},
            {"inv_J_decreasing", inv_J_decreasing},
            {"max_rel_imag", max_rel_imag}};
}

SignCheckReport modular_sign_check(const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw InvalidArgument("empty grid");
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > 0.0)) throw InvalidArgument("grid must be positive");
        if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("grid must be increasing");
    }
    SignCheckReport r;
    r.min_theta_cubed = INFINITY;
    r.min_one_minus_2lambda = INFINITY;
    r.max_inv_J = -INFINITY;
    r.max_lambda = -INFINITY;
    double prev = INFINITY;
    for (double t : t_grid) {
        LineValues lv = line_values(t);
        r.min_theta_cubed = std::min(r.min_theta_cubed, lv.theta_cubed);
        r.min_one_minus_2lambda = std::min(r.min_one_minus_2lambda, 1.0 - 2.0 * lv.lambda);
        r.max_inv_J = std::max(r.max_inv_J, lv.inv_J);
        r.max_lambda = std::max(r.max_lambda, lv.lambda);
        if (!(lv.inv_J < prev)) r.inv_J_decreasing = false;
        prev = lv.inv_J;

        UpperHalfPoint z{1.0, t};
        ThetaTriple th = theta_nulls(z);
        LambdaJ lj = lambda_J_eval(z);
        cplx t3 = th.t3 * th.t3 * th.t3;
        cplx one = 1.0 - 2.0 * lj.lambda;
        cplx invj = 1.0 / lj.J;
        for (cplx v : {t3, one, invj, lj.lambda})
            r.max_rel_imag = std::max(r.max_rel_imag, std::abs(v.imag()) / std::max(1.0, std::abs(v)));
    }
    r.pass = r.min_theta_cubed >= 0.0 && r.min_one_minus_2lambda >= 1.0 && r.max_inv_J <= 0.0 &&
             r.max_lambda <= 0.0 && r.inv_J_decreasing && r.max_rel_imag < 1e-12;
    return r;
}

nlohmann::json DecayReport::to_json() const {
    return {{"n", ns}, {"R", R}, {"R_gaussian", R_gaussian}, {"spread", spread},
            {"spread_gaussian", spread_gaussian}, {"pass", pass}};
}

DecayReport decay_profile(const std::vector<int>& ns, double c, double step) {
    if (!(c > 0.0)) throw InvalidArgument("decay constant c must be positive");
    if (ns.empty()) throw InvalidArgument("no indices given");
    if (!(step > 0.0)) throw InvalidArgument("step must be positive");
    int nmax = 0;
    for (int n : ns) {
        if (n < 1) throw InvalidArgument("decay profile needs n >= 1");
        nmax = std::max(nmax, n);
    }
    double xmax = 4.0 * std::sqrt(static_cast<double>(nmax));
    auto F = family_for(nmax, xmax * xmax);
    DecayReport rep;
    rep.ns = ns;
    rep.R.assign(ns.size(), 0.0);
    rep.R_gaussian.assign(ns.size(), 0.0);
    long steps = static_cast<long>(std::floor(xmax / step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        double x = i * step;
        auto v = F->eval(x * x);
        for (std::size_t k = 0; k < ns.size(); ++k) {
            double n = ns[k];
            if (x > 4.0 * std::sqrt(n) + 1e-12) continue;
            double b = std::max(std::abs(v.plus[static_cast<std::size_t>(ns[k])]),
                                std::abs(v.minus[static_cast<std::size_t>(ns[k])]));
            double norm = std::pow(n, 0.25) * std::pow(std::log1p(n), 1.5);
            rep.R[k] = std::max(rep.R[k], b * std::exp(c * x / std::sqrt(n)) / norm);
            if (x < n) rep.R_gaussian[k] = std::max(rep.R_gaussian[k], b * std::exp(c * x * x / n) / norm);
        }
    }
    double med = median(rep.R), medg = median(rep.R_gaussian);
    rep.spread = *std::max_element(rep.R.begin(), rep.R.end()) / med;
    rep.spread_gaussian = *std::max_element(rep.R_gaussian.begin(), rep.R_gaussian.end()) / medg;
    rep.pass = rep.spread <= 10.0 && rep.spread_gaussian <= 10.0;
    return rep;
}

double a0_weighted_sup(double rate, double x_max, double step) {
    auto F = family_for(2, x_max * x_max);
    double sup = 0.0;
    long steps = static_cast<long>(std::floor(x_max / step + 1e-9));
    for (long i = 0; i <= steps; ++i) {
        double x = i * step;
        auto v = F->eval(x * x);
        double a0 = 0.5 * (v.plus[0] + v.minus[0]);
        sup = std::max(sup, std::abs(a0) * std::exp(rate * x));
    }
    return sup;
}

std::vector<FourierCheck> fourier_eigen_check(int n_max, double xi_max, double X) {
    if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
    auto F = family_for(n_max, X * X);
    // tabulate b on the quadrature nodes of [0, X]
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    int panels = static_cast<int>(std::ceil(X / 0.05));
    double h = X / panels;
    std::vector<double> xs, ws;
    for (int p = 0; p < panels; ++p) {
        double mid = (p + 0.5) * h, half = 0.5 * h;
        for (std::size_t i = 0; i < ab.size(); ++i) {
            xs.push_back(mid + half * ab[i]);
            ws.push_back(wt[i] * half);
            if (ab[i] != 0.0) {
                xs.push_back(mid - half * ab[i]);
                ws.push_back(wt[i] * half);
            }
        }
    }
    std::vector<BasisFamily::Values> vals;
    vals.reserve(xs.size());
    for (double x : xs) vals.push_back(F->eval(x * x));

    std::vector<double> xis;
    for (double xi = 0.0; xi <= xi_max + 1e-12; xi += 0.05) xis.push_back(xi);
    std::vector<FourierCheck> out;
    for (int n = 0; n <= n_max; ++n)
        for (Sign s : {Sign::plus, Sign::minus}) {
            if (s == Sign::minus && n == 0) continue;
            double eps = s == Sign::plus ? 1.0 : -1.0;
            double sup = 0.0;
            for (double xi : xis) {
                double acc = 0.0;
                for (std::size_t j = 0; j < xs.size(); ++j) {
                    const auto& b = s == Sign::plus ? vals[j].plus : vals[j].minus;
                    acc += ws[j] * b[static_cast<std::size_t>(n)] * std::cos(2.0 * pi * xs[j] * xi);
                }
                double ft = 2.0 * acc;  // b is even
                auto bv = F->eval(xi * xi);
                double direct = (s == Sign::plus ? bv.plus : bv.minus)[static_cast<std::size_t>(n)];
                sup = std::max(sup, std::abs(ft - eps * direct));
            }
            out.push_back({n, s, sup});
        }
    return out;
}

cplx kernel(Sign s, UpperHalfPoint tau, UpperHalfPoint z) {
    ThetaTriple tt = theta_nulls(tau), tz = theta_nulls(z);
    LambdaJ lt = lambda_J_eval(tau), lz = lambda_J_eval(z);
    cplx denom = lz.J - lt.J;
    if (std::abs(denom) < 1e-14 * std::max(1.0, std::abs(lz.J))) throw KernelPole("tau lies on the pole set");
    cplx th3 = tz.t3 * tz.t3 * tz.t3;
    if (s == Sign::plus) return tt.t3 * (1.0 - 2.0 * lt.lambda) * th3 * lz.J / denom;
    return tt.t3 * lt.J * th3 * (1.0 - 2.0 * lz.lambda) / denom;
}

double verify_generating(Sign s, UpperHalfPoint tau, double x, int N) {
    if (!(tau.im > 1.0)) throw InvalidArgument("generating identity needs Im(tau) > 1");
    if (N < 1) throw InvalidArgument("N must be >= 1");
    // the path lies in the closed fundamental domain; the kernel's poles there
    // are at the reduced point tau'
    ReductionResult red = reduce_to_fundamental(tau);
    double dist = std::min({std::abs(red.I - 1.0), std::abs(std::abs(red.tau_prime.re) - 1.0)});
    if (dist < 1e-3) throw KernelPole("tau is too close to the integration path orbit");

    ThetaTriple tt = theta_nulls(tau);
    LambdaJ lt = lambda_J_eval(tau);
    double u = x * x;
    const cplx I(0.0, 1.0);

    auto top = [&](double xi) {
        UpperHalfPoint z{xi, 1.0};
        return kernel(s, tau, z) * std::exp(I * pi * u * cplx(xi, 1.0));
    };
    cplx F = 0.5 * gl_composite(top, -1.0, 1.0, 16);

    // sides: sin(pi u) int_0^1 K(tau, 1+it) e^{-pi u t} dt; below t = 0.01 the kernel is < e^{-200}
    auto side = [&](double t) {
        LineValues lv = line_values(t);
        cplx d = 1.0 - lt.J * lv.inv_J;
        cplx k;
        if (s == Sign::plus) k = tt.t3 * (1.0 - 2.0 * lt.lambda) * lv.theta_cubed / d;
        else k = tt.t3 * lt.J * lv.theta_cubed * (1.0 - 2.0 * lv.lambda) * lv.inv_J / d;
        return k * std::exp(-pi * u * t);
    };
    cplx V = 0.0;
    double a = 0.01;
    while (a < 1.0) {
        double b = std::min(1.0, 2.0 * a);
        V += gl_composite(side, a, b, 4);
        a = b;
    }
    F += std::sin(pi * u) * V;

    auto fam = family_for(N, u);
    auto v = fam->eval(u);
    cplx sum = 0.0;
    for (int n = 0; n <= N; ++n) {
        double b = (s == Sign::plus ? v.plus : v.minus)[static_cast<std::size_t>(n)];
        sum += b * std::exp(I * pi * static_cast<double>(n) * tau.z());
    }
    return std::abs(sum - F);
}

}  // namespace pif
