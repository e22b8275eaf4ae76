#include "qbf/error.hpp"
#include "qbf/mask.hpp"
#include "qbf/qmatrix.hpp"
#include "support/testing.hpp"

#include <doctest.h>

using namespace qbf;
using qbf::testing::Gen;
using qbf::testing::max_abs_diff;
using qbf::testing::naive_adjoint;
using qbf::testing::naive_fro;
using qbf::testing::naive_matmul;

TEST_CASE("matmul agrees with the triple loop") {
    Gen g(21);
    for (int t = 0; t < 100; ++t) {
        const Index m = g.index(1, 12);
        const Index k = g.index(1, 12);
        const Index n = g.index(1, 12);
        const QMatrix a = g.qmatrix(m, k);
        const QMatrix b = g.qmatrix(k, n);
        const QMatrix ref = naive_matmul(a, b);
        CHECK(max_abs_diff(matmul(a, b), ref) <= 1e-12 * (naive_fro(a) * naive_fro(b) + 1.0));
    }
}

TEST_CASE("matmul shape errors and empty inner dimension") {
    CHECK_THROWS_AS(matmul(QMatrix(2, 3), QMatrix(2, 3)), DimensionError);
    const QMatrix z = matmul(QMatrix(3, 0), QMatrix(0, 4));
    CHECK(z.rows() == 3);
    CHECK(z.cols() == 4);
    CHECK(naive_fro(z) == 0.0);
}

TEST_CASE("conjugate transpose") {
    Gen g(22);
    const QMatrix a = g.qmatrix(4, 7);
    CHECK(conj_transpose(a) == naive_adjoint(a));
    CHECK(conj_transpose(conj_transpose(a)) == a);
    const QMatrix b = g.qmatrix(7, 3);
    CHECK(max_abs_diff(conj_transpose(matmul(a, b)), matmul(conj_transpose(b), conj_transpose(a))) <= 1e-12 * 50);
}

TEST_CASE("complex adjoint is a *-homomorphism") {
    Gen g(23);
    for (int t = 0; t < 100; ++t) {
        const Index m = g.index(1, 9);
        const Index k = g.index(1, 9);
        const Index n = g.index(1, 9);
        const QMatrix a = g.qmatrix(m, k);
        const QMatrix b = g.qmatrix(k, n);
        const ComplexMatrix lhs = complex_adjoint(naive_matmul(a, b));
        const ComplexMatrix rhs = complex_adjoint(a) * complex_adjoint(b);
        CHECK((lhs - rhs).norm() <= 1e-12 * rhs.norm());
        CHECK((complex_adjoint(naive_adjoint(a)) - complex_adjoint(a).adjoint()).norm() == 0.0);
        const QMatrix c = g.qmatrix(m, k);
        CHECK((complex_adjoint(a + c) - (complex_adjoint(a) + complex_adjoint(c))).norm() <= 1e-14 * rhs.norm());
    }
}

TEST_CASE("complex adjoint layout and inverse") {
    QMatrix a(1, 1);
    a(0, 0) = {1.0, 2.0, 3.0, 4.0};
    const ComplexMatrix c = complex_adjoint(a);
    CHECK(c(0, 0) == std::complex<double>(1.0, 2.0));
    CHECK(c(0, 1) == std::complex<double>(3.0, 4.0));
    CHECK(c(1, 0) == std::complex<double>(-3.0, 4.0));
    CHECK(c(1, 1) == std::complex<double>(1.0, -2.0));

    Gen g(24);
    const QMatrix b = g.qmatrix(5, 3);
    CHECK(from_complex_adjoint(complex_adjoint(b)) == b);
    ComplexMatrix broken = complex_adjoint(b);
    broken(6, 0) += 1.0;
    CHECK_THROWS_AS(from_complex_adjoint(broken), StructureError);
    CHECK_THROWS_AS(from_complex_adjoint(ComplexMatrix(3, 2)), StructureError);
}

TEST_CASE("Cayley-Dickson split round trip") {
    Gen g(25);
    const QMatrix a = g.qmatrix(6, 4);
    const CayleyDickson cd = cayley_dickson(a);
    CHECK(from_cayley_dickson(cd.a, cd.b) == a);
    CHECK(cd.a(2, 3) == std::complex<double>(a(2, 3).q0, a(2, 3).q1));
    CHECK(cd.b(2, 3) == std::complex<double>(a(2, 3).q2, a(2, 3).q3));
}

TEST_CASE("Frobenius norm, trace and real inner product") {
    Gen g(26);
    const QMatrix a = g.qmatrix(5, 5);
    const QMatrix b = g.qmatrix(5, 5);
    CHECK(std::abs(frobenius_norm(a) - naive_fro(a)) <= 1e-14 * naive_fro(a));
    // Re tr(AᴴB) through the triple loop.
    const Quaternion tr = trace(naive_matmul(naive_adjoint(a), b));
    CHECK(std::abs(real_inner(a, b) - tr.q0) <= 1e-12 * naive_fro(a) * naive_fro(b));
    CHECK(std::abs(real_inner(a, a) - squared_frobenius_norm(a)) <= 1e-12 * squared_frobenius_norm(a));
}

TEST_CASE("scalar and quaternion scaling") {
    Gen g(27);
    const QMatrix a = g.qmatrix(3, 4);
    const Quaternion q = g.quaternion();
    QMatrix diag(1, 1);
    diag(0, 0) = q;
    const QMatrix left = q * a;
    const QMatrix right = a * q;
    for (Index r = 0; r < 3; ++r) {
        for (Index c = 0; c < 4; ++c) {
            CHECK(left(r, c) == qbf::testing::hamilton(q, a(r, c)));
            CHECK(right(r, c) == qbf::testing::hamilton(a(r, c), q));
        }
    }
    const std::vector<double> s{1.0, -2.0, 0.5, 3.0};
    const QMatrix scaled = scale_columns(a, s);
    CHECK(scaled(2, 1) == a(2, 1) * -2.0);
    CHECK(max_abs_diff(2.0 * a - a, a) == 0.0);
}

TEST_CASE("identity, diagonal and components") {
    const QMatrix i = QMatrix::identity(3, 2);
    CHECK(i(0, 0) == Quaternion::one());
    CHECK(i(1, 1) == Quaternion::one());
    CHECK(i(2, 1) == Quaternion());
    const std::vector<double> d{2.0, 3.0};
    CHECK(QMatrix::diagonal(d)(1, 1) == Quaternion(3.0));
    Gen g(28);
    const QMatrix a = g.qmatrix(3, 3);
    CHECK(QMatrix::from_components(a.component(0), a.component(1), a.component(2), a.component(3)) == a);
    CHECK(a.left_columns(2)(2, 1) == a(2, 1));
    CHECK_THROWS_AS(a.left_columns(4), DimensionError);
}

TEST_CASE("hermitian_solve solves X·H = B") {
    Gen g(29);
    for (int t = 0; t < 20; ++t) {
        const Index d = g.index(1, 8);
        const Index m = g.index(1, 10);
        const QMatrix w = g.qmatrix(d + 3, d);
        QMatrix h = naive_matmul(naive_adjoint(w), w);
        h = 0.5 * (h + naive_adjoint(h));
        for (Index i = 0; i < d; ++i) {
            h(i, i) += Quaternion(0.5);
        }
        const QMatrix b = g.qmatrix(m, d);
        const QMatrix x = hermitian_solve(h, b);
        CHECK(max_abs_diff(naive_matmul(x, h), b) <= 1e-10 * (naive_fro(b) + 1.0));
    }
}

TEST_CASE("hermitian_solve rejects bad input") {
    QMatrix h(2, 2);
    h(0, 0) = Quaternion(1.0);
    h(0, 1) = Quaternion::i();
    h(1, 0) = Quaternion::i();
    h(1, 1) = Quaternion(1.0);
    CHECK_THROWS_AS(hermitian_solve(h, QMatrix(1, 2)), NumericalError);
    CHECK_THROWS_AS(hermitian_solve(QMatrix(2, 2), QMatrix(1, 2)), NumericalError);
    CHECK_THROWS_AS(hermitian_solve(QMatrix(2, 3), QMatrix(1, 3)), DimensionError);
    CHECK_THROWS_AS(hermitian_solve(QMatrix::identity(2), QMatrix(1, 3)), DimensionError);
}

TEST_CASE("observation mask and projections") {
    ObservationMask m(2, 3);
    CHECK(m.observed_count() == 0);
    CHECK(m.missing_ratio() == 1.0);
    m.set_observed(0, 1, true);
    m.set_observed(1, 2, true);
    CHECK(m.observed_count() == 2);
    CHECK(m.missing_count() == 4);
    CHECK(m.complement().observed_count() == 4);
    CHECK(ObservationMask::full(2, 3).missing_ratio() == 0.0);

    Gen g(30);
    const QMatrix a = g.qmatrix(2, 3);
    const QMatrix p = project_omega(a, m);
    const QMatrix q = project_complement(a, m);
    CHECK(p(0, 1) == a(0, 1));
    CHECK(p(0, 0) == Quaternion());
    CHECK(q(0, 0) == a(0, 0));
    CHECK(q(1, 2) == Quaternion());
    CHECK(p + q == a);
    CHECK_THROWS_AS(project_omega(a, ObservationMask(3, 2)), DimensionError);
}
