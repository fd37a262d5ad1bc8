#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pif/errors.hpp"
#include "pif/linop.hpp"

using namespace pif;

TEST_CASE("identity and apply") {
    TruncatedOperator I = TruncatedOperator::identity(IndexWindow::two_sided(-2, 2));
    RealSequence a(IndexWindow::two_sided(-2, 2), {1, 2, 3, 4, 5});
    RealSequence b = apply(I, a);
    CHECK(b.values == a.values);
}

TEST_CASE("norms of a 2x2 matrix") {
    Eigen::MatrixXd A(2, 2);
    A << 3, 0, 4, 5;  // singular values sqrt(45), sqrt(5)
    CHECK(op_norm_power(A, 1e-14, 1000).bound == doctest::Approx(std::sqrt(45.0)).epsilon(1e-10));
    CHECK(hs_norm(A).bound == doctest::Approx(std::sqrt(50.0)));
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
    NormCertificate s = schur_bound(A, ones, ones);
    // row sums 3, 9; column sums 7, 5 -> sqrt(9 * 7)
    CHECK(s.bound == doctest::Approx(std::sqrt(63.0)));
    CHECK(s.bound >= std::sqrt(45.0));
    CHECK(s.detail["argmax_row"] == 1);
    CHECK(s.detail["argmax_col"] == 0);
}

TEST_CASE("schur rejects nonpositive weights") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd p(2);
    p << 1.0, 0.0;
    CHECK_THROWS_AS(schur_bound(A, p, p), InvalidArgument);
}

TEST_CASE("neumann certificate") {
    NormCertificate c;
    c.bound = 0.25;
    NeumannCertificate n = neumann_certificate(c);
    CHECK(n.invertible);
    CHECK(n.inverse_norm_bound == doctest::Approx(4.0 / 3.0));
    c.bound = 1.0;
    CHECK(!neumann_certificate(c).invertible);
}

TEST_CASE("solve") {
    Eigen::MatrixXd A(2, 2);
    A << 2, 1, 1, 3;
    Eigen::VectorXd b(2);
    b << 3, 5;
    SolveResult r = solve(A, b, 1e-12);
    CHECK(r.x(0) == doctest::Approx(0.8));
    CHECK(r.x(1) == doctest::Approx(1.4));
    CHECK(r.residual < 1e-14);
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2, 2);
    CHECK_THROWS(solve(S, b, 1e-12));
}

TEST_CASE("block access and csv") {
    TruncatedOperator B(IndexWindow::one_sided(1), IndexWindow::one_sided(1), 2);
    B.at(1, 0, 0, 1) = 7.0;
    CHECK(B.entries(2, 1) == 7.0);
    std::ostringstream os;
    write_csv(TruncatedOperator::identity(IndexWindow::one_sided(1)), os);
    CHECK(os.str().find("1,1,1") != std::string::npos);
}
