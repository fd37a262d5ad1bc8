#pragma once

#include <memory>
#include <vector>

#include "pif/gforms.hpp"

namespace pif {

// Multiprecision evaluator for the whole family b_n^+, b_n^- (n <= N) at
// u = x^2 in [0, u_max].
//
// Contour route: the top segment Im z = 1 is integrated termwise from the exact
// q-expansion, the two vertical sides combine to sin(pi u) int_0^1 g(1+it) e^{-pi u t} dt,
// done by composite Gauss-Legendre (t in [1/4, 1], and s = 1/t in [4, S] below).
// Laplace route: sin(pi u) int_0^inf g(1+it) e^{-pi u t} dt with the same nodes on
// (0, 1] and an extra numeric piece on [1, T], valid for u > n.
//
// Working precision grows like 4.5 N bits: the q^{-n} term reaches e^{pi n} on t = 1
// and cancels down to O(1).
class BasisFamily {
public:
    BasisFamily(int N, double u_max);
    ~BasisFamily();

    int N() const;
    double u_max() const;
    long precision_bits() const;
    long series_order() const;
    std::size_t node_count() const;
    // absolute error estimate for every b_n, from a refined rule at probe points
    double quadrature_error() const;

    struct Values {
        std::vector<double> plus, minus;  // index n
    };
    Values eval(double u) const;

    double eval_laplace(int n, Sign s, double u, double* err_estimate = nullptr) const;

    const RVBasis& basis(int n, Sign s) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Cached family covering n <= N and u <= u_max; built on first use.
std::shared_ptr<const BasisFamily> shared_family(int N, double u_max);

}  // namespace pif
