#pragma once

#include <iosfwd>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "pif/seqspace.hpp"

namespace pif {

// Dense truncation of an infinite matrix. A block operator (blocks > 1) acts on
// the product of `blocks` copies of the window; row index r*|rows| + offset(n).
struct TruncatedOperator {
    IndexWindow row_window;
    IndexWindow col_window;
    int blocks = 1;
    Eigen::MatrixXd entries;

    TruncatedOperator() = default;
    TruncatedOperator(IndexWindow rows, IndexWindow cols, int blocks = 1);

    static TruncatedOperator identity(IndexWindow w, int blocks = 1);

    double& operator()(long n, long k) {
        return entries(static_cast<Eigen::Index>(row_window.offset(n)),
                       static_cast<Eigen::Index>(col_window.offset(k)));
    }
    double operator()(long n, long k) const {
        return entries(static_cast<Eigen::Index>(row_window.offset(n)),
                       static_cast<Eigen::Index>(col_window.offset(k)));
    }
    // block-aware access
    double& at(int br, long n, int bc, long k);
    double at(int br, long n, int bc, long k) const;

    bool square() const { return row_window == col_window; }
};

enum class NormMethod { closed_form, power_iteration, schur, hilbert_schmidt };
const char* method_name(NormMethod m);

struct NormCertificate {
    NormMethod method = NormMethod::closed_form;
    double bound = 0.0;
    nlohmann::json detail = nlohmann::json::object();
};

struct NeumannCertificate {
    bool invertible = false;
    double inverse_norm_bound = 0.0;
    double norm_bound = 0.0;
};

// Input/output of block operators are block-stacked vectors.
Eigen::VectorXd apply(const TruncatedOperator& A, const Eigen::VectorXd& a);
RealSequence apply(const TruncatedOperator& A, const RealSequence& a);

NormCertificate op_norm_power(const TruncatedOperator& A, double tol, int max_iter);
NormCertificate op_norm_power(const Eigen::MatrixXd& A, double tol, int max_iter);

NormCertificate hs_norm(const TruncatedOperator& A);
NormCertificate hs_norm(const Eigen::MatrixXd& A);

// p weights the columns, q the rows (block-stacked when blocks > 1).
NormCertificate schur_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& p,
                            const Eigen::VectorXd& q);
NormCertificate schur_bound(const TruncatedOperator& A, const RealSequence& p,
                            const RealSequence& q);

NeumannCertificate neumann_certificate(const NormCertificate& diff_norm);

struct SolveResult {
    Eigen::VectorXd x;
    double residual = 0.0;  // relative, ||Ax-b|| / ||b||
};

SolveResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol);
RealSequence solve(const TruncatedOperator& A, const RealSequence& b, double tol,
                   double* residual = nullptr);

// row,col,value triples with window indices
void write_csv(const TruncatedOperator& A, std::ostream& os);

}  // namespace pif
