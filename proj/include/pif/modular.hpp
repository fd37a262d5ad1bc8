#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "pif/gforms.hpp"
#include "pif/mpbasis.hpp"
#include "pif/qseries.hpp"
#include "pif/theta.hpp"

namespace pif {

enum class Route { automatic, laplace, contour };

// b_n^{sign}(x). Automatic: Laplace route for x^2 > n + 1/2, contour otherwise.
double bn_eval(const RVBasis& basis, double x, double tol, Route route = Route::automatic);

// (a_n(x), \hat a_n(x)) = ((b^+ + b^-)/2, (b^+ - b^-)/2)
std::pair<double, double> an_eval(int n, double x, double tol);

struct BasisRow {
    double x, a, ahat;
};
std::vector<BasisRow> an_table(int n, const std::vector<double>& xs);

// sin(pi x^2)/sinh(pi x)
double d0_eval(double x);

struct SignCheckReport {
    bool pass = true;
    double min_theta_cubed = 0.0;
    double min_one_minus_2lambda = 0.0;
    double max_inv_J = 0.0;
    double max_lambda = 0.0;
    bool inv_J_decreasing = true;
    double max_rel_imag = 0.0;  // complex evaluation at 1+it, relative imaginary parts
    nlohmann::json to_json() const;
};
SignCheckReport modular_sign_check(const std::vector<double>& t_grid);

struct DecayReport {
    std::vector<int> ns;
    std::vector<double> R;           // max_x |b_n^{+-}(x)| e^{c|x|/sqrt n} / (n^{1/4} log^{3/2}(1+n))
    std::vector<double> R_gaussian;  // max_x |b_n^{+-}(x)| e^{c x^2/n}
    double spread = 0.0;             // max R / median R
    double spread_gaussian = 0.0;
    bool pass = false;
    nlohmann::json to_json() const;
};
// grid |x| <= 4 sqrt(n) with the given step
DecayReport decay_profile(const std::vector<int>& ns, double c, double step = 0.02);

// sup_{0 <= x <= x_max} |a_0(x)| e^{rate x}
double a0_weighted_sup(double rate, double x_max, double step = 0.01);

struct FourierCheck {
    int n;
    Sign sign;
    double sup_error;  // sup over xi of |F b(xi) - sign * b(xi)|
};
// Fourier transform of b_n^{+-} by quadrature on [0, X], compared on |xi| <= xi_max.
std::vector<FourierCheck> fourier_eigen_check(int n_max, double xi_max, double X = 9.0);

// Generating kernels K_+(tau, z), K_-(tau, z).
cplx kernel(Sign s, UpperHalfPoint tau, UpperHalfPoint z);

// |sum_{n<=N} b_n(x) e^{i pi n tau} - (1/2) int_{-1}^{1} K(tau, z) e^{i pi x^2 z} dz|
double verify_generating(Sign s, UpperHalfPoint tau, double x, int N);

}  // namespace pif
