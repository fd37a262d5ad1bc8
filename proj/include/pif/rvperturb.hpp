#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "pif/linop.hpp"
#include "pif/seqspace.hpp"

namespace pif {

struct RVOperatorConfig {
    double s = 10.0;
    double theta = 0.05;
    int N = 64;
    PerturbationProfile profile;  // one-sided, eps_0 = 0
    double c = 0.5;               // decay constant of the tail model
    // recovery and the perturbed basis refuse to run without a certificate < 1
    bool require_certificate = true;
};

// power_law(delta, p) profile on 0..N: eps_k = delta (1+k)^{-p}, eps_0 = 0
RVOperatorConfig rv_config(double delta, double p = 1.25, int N = 64, double s = 10.0,
                           double theta = 0.05);

void validate(const RVOperatorConfig& cfg, bool schur);

// Block matrix B of T~ - I in weighted coordinates:
// A_ij = (a_j(sqrt(i+eps_i)) - delta_ij) ((1+i)/(1+j))^s, Ahat_ij likewise; row 0 is zero.
TruncatedOperator build_T_tilde(const RVOperatorConfig& cfg);

// B with row and column 0 of both blocks removed (zeroed); the certified part.
TruncatedOperator build_T_tilde_reduced(const RVOperatorConfig& cfg);

// T~ itself in unweighted coordinates.
TruncatedOperator build_T_tilde_raw(const RVOperatorConfig& cfg);

// Schur test with p_i = q_i = (1+i)^theta on indices i, j >= 1 of both blocks
// (index 0 is the identity row); detail.bound_with_col0 keeps column 0.
NormCertificate schur_certificate(const RVOperatorConfig& cfg);

// Frobenius norm of B on indices >= 1. detail.half_sum is the square root of the
// two-term double sum over n > 0, which counts A and Ahat once: bound = sqrt(2) half_sum.
NormCertificate hs_certificate(const RVOperatorConfig& cfg);

// Model bound for the entries outside the truncation:
// C eps_i / sqrt(i) j^{3/4} e^{-c sqrt(i/j)} ((1+i)/(1+j))^s, C fitted on the computed
// block; the returned value is the Schur bound of the model on [0, factor*N]^2 \ [0, N]^2.
double tail_term(const RVOperatorConfig& cfg, int factor = 8);

nlohmann::json certificate_json(const NormCertificate& c, const RVOperatorConfig& cfg);

struct RecoveryResult {
    WeightedSeqPair values;  // (f(sqrt k), fhat(sqrt k))
    double residual = 0.0;
    NormCertificate certificate;
};

// samples.x = f(sqrt(k+eps_k)), samples.y = fhat(sqrt(k+eps_k)), k = 0..N
RecoveryResult recover_values(const RVOperatorConfig& cfg, const WeightedSeqPair& samples,
                              double tol = 1e-10);

struct PerturbedBasis {
    std::vector<double> theta, eta;  // index j = 0..N
    double residual = 0.0;
    double tail = 0.0;
};
PerturbedBasis perturbed_basis_all(const RVOperatorConfig& cfg, double x);
std::pair<double, double> perturbed_basis_eval(const RVOperatorConfig& cfg, int j, double x);

// |sum_{n in Z} x_{n^2} - sum_{n in Z} y_{n^2}| over the window
double poisson_check(const RealSequence& x, const RealSequence& y);

struct UniquenessConfig {
    int K0 = 1;
    std::vector<double> t;
    double alpha = 0.2;
    double c = 0.05;
};
void validate(const UniquenessConfig& u);

struct TK0Result {
    TruncatedOperator op;          // rows 0..N+K0, cols 0..N, two blocks, weighted by ((1+r)/(1+k))^s
    Eigen::MatrixXd A;             // 4K0 x 2K0
    double min_singular = 0.0;
};
TK0Result build_TK0(const UniquenessConfig& u, double s = 10.0, int N = 16);

struct PowersReport {
    double alpha = 0.0, c = 0.0;
    int N = 0;
    double exponent = 0.0;         // (alpha - 1)/(2 alpha)
    bool exponent_ok = false;      // exponent < -7/4 strictly
    double sup_weighted_eps = 0.0; // max_{1<=n<=N} |eps_n| (1+n)^{5/4}
    double delta = 0.0;
    double schur_bound = 0.0;      // at delta
    double certified_delta = 0.0;  // largest tested delta with Schur bound < 1
    bool sign_check = false;
    bool pass = false;
    nlohmann::json to_json() const;
};
// eps_n = c^2 m^{2 alpha} - n with m = floor((n/c^2)^{1/(2 alpha)})
std::vector<double> powers_eps(double alpha, double c, int N);
// delta_ref if certified, else a smaller delta with Schur bound < 1 (0 if none found)
double certified_delta(double delta_ref = 0.01, double p = 1.25, int N = 64);
PowersReport powers_experiment(double alpha, double c, int N, double delta = 0.01);

struct LaplaceSample {
    std::function<double(double)> phi;
    double s0 = 0.0;
    double T = 0.0;  // 0 means (0, inf)
};
struct DescartesResult {
    int sign_changes = 0;
    int zeros_found = 0;
    std::vector<double> zeros;  // refined by bisection
};
double laplace_transform(const LaplaceSample& sample, double s);
DescartesResult descartes_count(const LaplaceSample& sample, const std::vector<double>& s_grid);

}  // namespace pif
