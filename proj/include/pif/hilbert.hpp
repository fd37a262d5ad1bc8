#pragma once

#include "pif/linop.hpp"
#include "pif/seqspace.hpp"

namespace pif {

struct HilbertKernelSpec {
    int p = 1;
    PerturbationProfile profile;
    bool alternating = false;  // multiply by (-1)^{n-k}
};

// a[n,k] = sigma(n,k) / (n + eps_n - k)^p off the diagonal, 0 on it.
TruncatedOperator heps_assemble(const HilbertKernelSpec& spec, const IndexWindow& w);

// a[n,k] = 1/|n-k|^q off the diagonal.
TruncatedOperator sq_assemble(int q, const IndexWindow& w);

// ||H^p_0|| on l^2(Z) for p = 1, 2, 3.
double hp0_norm(int p);

// 2 zeta(q), q >= 2, by summation plus an Euler-Maclaurin tail.
double sq_norm(int q);
double zeta(int q);

// ||H^p_0|| + ((1+L)^p - 1)/(1-L)^p * ||S^{p+1}||
double gamma_p(int p, double L);

}  // namespace pif
