#pragma once

#include <complex>
#include <vector>

namespace pif {

using cplx = std::complex<double>;

struct UpperHalfPoint {
    double re = 0.0;
    double im = 1.0;
    cplx z() const { return {re, im}; }
};

enum class ThetaKind { two, three, four };

struct ThetaTriple {
    cplx t2, t3, t4;
};

// gamma_0 = tau - 2*shift, gamma_i = -1/gamma_{i-1} - 2 n_i until gamma_m lies in
// the closed fundamental domain {|z| >= 1, |Re z| <= 1} of Gamma_theta.
struct ReductionResult {
    UpperHalfPoint tau_prime;
    int steps = 0;
    std::vector<long> word;  // n_1 ... n_m
    long shift = 0;
    double I = 0.0;  // Im(tau')
    std::vector<cplx> path;  // gamma_0 ... gamma_m
};

ReductionResult reduce_to_fundamental(UpperHalfPoint tau, double tol = 1e-12);
// Maps tau' back through the recorded word.
cplx replay(const ReductionResult& r);

ThetaTriple theta_nulls(UpperHalfPoint z);
cplx theta_eval(ThetaKind which, UpperHalfPoint z);

struct LambdaJ {
    cplx lambda;
    cplx J;
};
LambdaJ lambda_J_eval(UpperHalfPoint z);

// theta(1+it)^3, lambda(1+it) and 1/J(1+it); all real on this line.
struct LineValues {
    double theta_cubed;
    double lambda;
    double inv_J;
};
LineValues line_values(double t);

}  // namespace pif
