#include "pif/linop.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "pif/errors.hpp"

namespace pif {

TruncatedOperator::TruncatedOperator(IndexWindow rows, IndexWindow cols, int nblocks)
    : row_window(rows), col_window(cols), blocks(nblocks) {
    if (nblocks < 1) throw InvalidArgument("block count must be positive");
    entries = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()) * nblocks,
                                    static_cast<Eigen::Index>(cols.size()) * nblocks);
}

TruncatedOperator TruncatedOperator::identity(IndexWindow w, int nblocks) {
    TruncatedOperator A(w, w, nblocks);
    A.entries.setIdentity();
    return A;
}

double& TruncatedOperator::at(int br, long n, int bc, long k) {
    return entries(static_cast<Eigen::Index>(br * row_window.size() + row_window.offset(n)),
                   static_cast<Eigen::Index>(bc * col_window.size() + col_window.offset(k)));
}

double TruncatedOperator::at(int br, long n, int bc, long k) const {
    return entries(static_cast<Eigen::Index>(br * row_window.size() + row_window.offset(n)),
                   static_cast<Eigen::Index>(bc * col_window.size() + col_window.offset(k)));
}

const char* method_name(NormMethod m) {
    switch (m) {
        case NormMethod::closed_form: return "closed_form";
        case NormMethod::power_iteration: return "power_iteration";
        case NormMethod::schur: return "schur";
        case NormMethod::hilbert_schmidt: return "hilbert_schmidt";
    }
    return "unknown";
}

Eigen::VectorXd apply(const TruncatedOperator& A, const Eigen::VectorXd& a) {
    if (a.size() != A.entries.cols()) throw InvalidArgument("apply: size mismatch");
    return A.entries * a;
}

RealSequence apply(const TruncatedOperator& A, const RealSequence& a) {
    if (A.blocks != 1) throw InvalidArgument("apply(RealSequence) needs a single-block operator");
    Eigen::VectorXd v(static_cast<Eigen::Index>(A.col_window.size()));
    for (long k = A.col_window.lo; k <= A.col_window.hi; ++k)
        v(static_cast<Eigen::Index>(A.col_window.offset(k))) = a[k];
    Eigen::VectorXd r = A.entries * v;
    return RealSequence(A.row_window, std::vector<double>(r.data(), r.data() + r.size()));
}

NormCertificate op_norm_power(const Eigen::MatrixXd& A, double tol, int max_iter) {
    if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
    NormCertificate c;
    c.method = NormMethod::power_iteration;
    if (A.size() == 0) return c;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols());
    v.normalize();
    double sigma = 0.0, change = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = A * v;
        double s_new = w.norm();
        if (s_new == 0.0) {
            c.bound = 0.0;
            c.detail = {{"iterations", it}, {"residual", 0.0}};
            return c;
        }
        Eigen::VectorXd u = A.transpose() * w;
        double un = u.norm();
        v = u / un;
        change = std::abs(s_new - sigma);
        sigma = s_new;
        if (change <= tol * sigma) {
            // ||A^T A v|| bounds the norm from the other side; use it when larger
            c.bound = std::max(sigma, std::sqrt(un));
            c.detail = {{"iterations", it}, {"residual", change}};
            return c;
        }
    }
    throw ConvergenceFailure("power iteration did not converge", sigma);
}

NormCertificate op_norm_power(const TruncatedOperator& A, double tol, int max_iter) {
    return op_norm_power(A.entries, tol, max_iter);
}

NormCertificate hs_norm(const Eigen::MatrixXd& A) {
    NormCertificate c;
    c.method = NormMethod::hilbert_schmidt;
    c.bound = A.norm();
    return c;
}

NormCertificate hs_norm(const TruncatedOperator& A) { return hs_norm(A.entries); }

NormCertificate schur_bound(const Eigen::MatrixXd& A, const Eigen::VectorXd& p,
                            const Eigen::VectorXd& q) {
    if (p.size() != A.cols() || q.size() != A.rows())
        throw InvalidArgument("schur_bound: weight size mismatch");
    for (Eigen::Index i = 0; i < p.size(); ++i)
        if (!(p(i) > 0.0)) throw InvalidArgument("schur weights must be positive");
    for (Eigen::Index i = 0; i < q.size(); ++i)
        if (!(q(i) > 0.0)) throw InvalidArgument("schur weights must be positive");
    Eigen::MatrixXd absA = A.cwiseAbs();
    Eigen::VectorXd col = absA.transpose() * q;  // sum_i |a_ij| q_i
    Eigen::VectorXd row = absA * p;              // sum_j |a_ij| p_j
    Eigen::Index jmax = 0, imax = 0;
    double lambda = 0.0, mu = 0.0;
    for (Eigen::Index j = 0; j < col.size(); ++j)
        if (col(j) / p(j) > lambda) {
            lambda = col(j) / p(j);
            jmax = j;
        }
    for (Eigen::Index i = 0; i < row.size(); ++i)
        if (row(i) / q(i) > mu) {
            mu = row(i) / q(i);
            imax = i;
        }
    NormCertificate c;
    c.method = NormMethod::schur;
    c.bound = std::sqrt(mu * lambda);
    c.detail = {{"lambda", lambda}, {"mu", mu}, {"argmax_col", jmax}, {"argmax_row", imax}};
    return c;
}

NormCertificate schur_bound(const TruncatedOperator& A, const RealSequence& p,
                            const RealSequence& q) {
    Eigen::VectorXd pv(A.entries.cols()), qv(A.entries.rows());
    for (int b = 0; b < A.blocks; ++b) {
        for (long k = A.col_window.lo; k <= A.col_window.hi; ++k)
            pv(static_cast<Eigen::Index>(b * A.col_window.size() + A.col_window.offset(k))) = p[k];
        for (long n = A.row_window.lo; n <= A.row_window.hi; ++n)
            qv(static_cast<Eigen::Index>(b * A.row_window.size() + A.row_window.offset(n))) = q[n];
    }
    return schur_bound(A.entries, pv, qv);
}

NeumannCertificate neumann_certificate(const NormCertificate& diff_norm) {
    NeumannCertificate c;
    c.norm_bound = diff_norm.bound;
    c.invertible = diff_norm.bound < 1.0;
    c.inverse_norm_bound = c.invertible ? 1.0 / (1.0 - diff_norm.bound) : INFINITY;
    return c;
}

SolveResult solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, double tol) {
    if (A.rows() != A.cols()) throw InvalidArgument("solve needs a square operator");
    if (b.size() != A.rows()) throw InvalidArgument("solve: size mismatch");
    SolveResult r;
    double bn = b.norm();
    if (bn == 0.0) {
        r.x = Eigen::VectorXd::Zero(A.cols());
        return r;
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    r.x = lu.solve(b);
    r.residual = (A * r.x - b).norm() / bn;
    if (!std::isfinite(r.residual) || r.residual > tol)
        throw SolveFailure("residual above tolerance", r.residual);
    return r;
}

RealSequence solve(const TruncatedOperator& A, const RealSequence& b, double tol,
                   double* residual) {
    if (!A.square() || A.blocks != 1) throw InvalidArgument("solve needs a square single-block operator");
    Eigen::VectorXd bv(static_cast<Eigen::Index>(A.row_window.size()));
    for (long n = A.row_window.lo; n <= A.row_window.hi; ++n)
        bv(static_cast<Eigen::Index>(A.row_window.offset(n))) = b[n];
    SolveResult r = solve(A.entries, bv, tol);
    if (residual) *residual = r.residual;
    return RealSequence(A.col_window, std::vector<double>(r.x.data(), r.x.data() + r.x.size()));
}

void write_csv(const TruncatedOperator& A, std::ostream& os) {
    os << "# rows " << A.row_window.lo << ":" << A.row_window.hi << " cols " << A.col_window.lo
       << ":" << A.col_window.hi << " blocks " << A.blocks << "\n";
    os << (A.blocks > 1 ? "row_block,row,col_block,col,value\n" : "row,col,value\n");
    os << std::setprecision(17);
    for (int br = 0; br < A.blocks; ++br)
        for (long n = A.row_window.lo; n <= A.row_window.hi; ++n)
            for (int bc = 0; bc < A.blocks; ++bc)
                for (long k = A.col_window.lo; k <= A.col_window.hi; ++k) {
                    double v = A.at(br, n, bc, k);
                    if (v == 0.0) continue;
                    if (A.blocks > 1) os << br << "," << n << "," << bc << "," << k << "," << v << "\n";
                    else os << n << "," << k << "," << v << "\n";
                }
}

}  // namespace pif
