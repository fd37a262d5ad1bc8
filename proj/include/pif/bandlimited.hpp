#pragma once

#include <functional>
#include <optional>

#include <json.hpp>

#include "pif/linop.hpp"
#include "pif/seqspace.hpp"

namespace pif {

enum class Band { pw_pi, pw_2pi };

struct SampleSet {
    PerturbationProfile profile;
    RealSequence values;                 // f(n + eps_n)
    std::optional<RealSequence> derivs;  // f'(n + eps_n), pw_2pi only
    Band band = Band::pw_pi;
};

void validate(const SampleSet& s);
nlohmann::json to_json(const SampleSet& s);
SampleSet sample_set_from_json(const nlohmann::json& j);

double sinc(double x);
double sinc_deriv(double x);

// Vaaler basis: g = sinc^2, h = sin^2(pi x)/(pi^2 x), and derivatives.
namespace vaaler {
double g(double x);
double h(double x);
double dg(double x);
double dh(double x);
}  // namespace vaaler

TruncatedOperator shannon_matrix(const PerturbationProfile& prof, const IndexWindow& w);

double kadec_bound(double L);
// sin(pi L) replaced by |sin(pi L (1+i))|; experimental complex-jitter variant
double kadec_bound_complex(double L);
double kadec_threshold(double tol);

struct Reconstruction {
    RealSequence values;
    std::optional<RealSequence> derivs;
    NeumannCertificate certificate;
    double residual = 0.0;
};

Reconstruction shannon_reconstruct(const SampleSet& samples, double tol);

// Truncated cardinal series: sinc for pw_pi, Vaaler g/h for pw_2pi.
double eval_pw(const RealSequence& coeffs, Band band, const RealSequence* derivs, double x);

struct VaalerConversion {
    RealSequence b;  // b_k = f'(k)
    RealSequence a;
    double operator()(double x) const;
};

// b_k = sum_{j != k} a_j (-1)^{k-j}/(k-j), computed on a.window widened by
// `b_margin` on each side; the evaluator sums the even-index terms.
VaalerConversion shannon_to_vaaler(const RealSequence& a, long b_margin = 1L << 20);

// sum_{j != 0} 1/(j (j + z)) = (psi(1+z) - psi(1-z))/z
double digamma_pair_sum(double z);

TruncatedOperator vaaler_matrix(const PerturbationProfile& prof, const IndexWindow& w);
double vaaler_bound(double L);
double vaaler_threshold(double tol);

Reconstruction vaaler_reconstruct(const SampleSet& samples, double tol);

}  // namespace pif
