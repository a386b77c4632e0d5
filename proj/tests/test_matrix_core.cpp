#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sphalu/decomp.hpp"
#include "test_util.hpp"

using namespace sphalu;
using testutil::make_matrix;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_unitary;

namespace {

Matrix conjugate(const Matrix& q, const Matrix& d) { return q.adjoint() * d * q; }

double reconstruction_residual(const Matrix& a, const EigenDecomposition& e) {
    Matrix lam = Matrix::diagonal([&] {
        std::vector<cplx> v(e.eigenvalues.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = e.eigenvalues[i];
        return v;
    }());
    return (a - e.vectors * lam * e.vectors.adjoint()).frobenius_norm();
}

double svd_residual(const Matrix& a, const SvdDecomposition& s) {
    Matrix sigma(a.rows(), a.cols());
    for (size_t i = 0; i < s.singular_values.size(); ++i)
        sigma(static_cast<int>(i), static_cast<int>(i)) = s.singular_values[i];
    return (a - s.u * sigma * s.v.adjoint()).frobenius_norm();
}

}  // namespace

TEST_CASE("hermitian eigendecomposition of a diagonal matrix") {
    const auto e = hermitian_eigendecompose(Matrix::diagonal({3.0, 1.0}));
    REQUIRE(e.eigenvalues.size() == 2);
    CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
    // eigenvector columns are a permutation of the identity columns
    CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian eigendecomposition of the 2x2 flip") {
    const auto e = hermitian_eigendecompose(make_matrix({{0.0, 1.0}, {1.0, 0.0}}));
    CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian eigendecomposition recovers planted spectra") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 6;
        const std::vector<double> planted = {-2.5, -1.0, 0.0, 0.75, 3.0, 10.0};
        const Matrix q = random_unitary(rng, d);
        const Matrix a = conjugate(q, Matrix::diagonal([&] {
            std::vector<cplx> v(planted.begin(), planted.end());
            return v;
        }()));
        const auto e = hermitian_eigendecompose(a);
        for (int i = 0; i < d; ++i)
            CHECK(e.eigenvalues[i] == doctest::Approx(planted[i]).epsilon(1e-11));
        CHECK(reconstruction_residual(a, e) <= 1e-11 * (1.0 + a.frobenius_norm()));
        CHECK((e.vectors.adjoint() * e.vectors - Matrix::identity(d)).frobenius_norm() <=
              1e-12 * d);
    }
}

TEST_CASE("hermitian eigendecomposition input checks") {
    CHECK_THROWS_AS(hermitian_eigendecompose(Matrix(2, 3)), NotSquare);
    CHECK_THROWS_AS(hermitian_eigendecompose(make_matrix({{0.0, 1.0}, {0.0, 0.0}})),
                    NotHermitian);
}

TEST_CASE("svd of the zero matrix") {
    const auto s = svd(Matrix(3, 2));
    REQUIRE(s.singular_values.size() == 2);
    CHECK(s.singular_values[0] == 0.0);
    CHECK(s.singular_values[1] == 0.0);
}

TEST_CASE("svd of a signed diagonal sorts absolute values") {
    const auto s = svd(Matrix::diagonal({2.0, -3.0}));
    CHECK(s.singular_values[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.singular_values[1] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("svd recovers planted singular values including tiny ones") {
    Rng rng(202);
    for (int trial = 0; trial < 10; ++trial) {
        const int m = 5, n = 3;
        const std::vector<double> planted = {5.0, 1.0, 1e-3};
        const Matrix u = random_unitary(rng, m);
        const Matrix v = random_unitary(rng, n);
        Matrix sigma(m, n);
        for (int i = 0; i < n; ++i) sigma(i, i) = planted[i];
        const Matrix a = u * sigma * v.adjoint();
        const auto s = svd(a);
        for (int i = 0; i < n; ++i)
            CHECK(s.singular_values[i] ==
                  doctest::Approx(planted[i]).epsilon(1e-10));
        CHECK(svd_residual(a, s) <= 1e-11 * (1.0 + a.frobenius_norm()));
        CHECK(std::is_sorted(s.singular_values.rbegin(), s.singular_values.rend()));
    }
}

TEST_CASE("svd of rectangular matrices reconstructs both orientations") {
    Rng rng(203);
    for (const auto [m, n] : {std::pair{6, 3}, std::pair{3, 6}, std::pair{4, 4}}) {
        const Matrix a = random_matrix(rng, m, n);
        const auto s = svd(a);
        CHECK(svd_residual(a, s) <= 1e-11 * (1.0 + a.frobenius_norm()));
        CHECK((s.u.adjoint() * s.u - Matrix::identity(m)).frobenius_norm() <= 1e-12 * m);
        CHECK((s.v.adjoint() * s.v - Matrix::identity(n)).frobenius_norm() <= 1e-12 * n);
    }
}

TEST_CASE("numerical rank basics") {
    CHECK(numerical_rank(Matrix::identity(4)) == 4);

    Rng rng(303);
    const Matrix x = random_matrix(rng, 5, 1);
    const Matrix y = random_matrix(rng, 1, 5);
    CHECK(numerical_rank(x * y) == 1);
}

TEST_CASE("numerical rank default cutoff drops planted 1e-20") {
    Rng rng(304);
    const Matrix u = random_unitary(rng, 3);
    const Matrix v = random_unitary(rng, 3);
    Matrix sigma(3, 3);
    sigma(0, 0) = 1.0;
    sigma(1, 1) = 1e-20;
    CHECK(numerical_rank(u * sigma * v.adjoint()) == 1);
}

TEST_CASE("numerical rank is invariant under unitary multiplication") {
    Rng rng(305);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 2 + trial % 5;
        const int r = 1 + trial % d;
        const Matrix a = random_matrix(rng, d, r) * random_matrix(rng, r, d);
        const int base = numerical_rank(a);
        CHECK(base == r);
        const Matrix q1 = random_unitary(rng, d);
        const Matrix q2 = random_unitary(rng, d);
        CHECK(numerical_rank(q1 * a * q2) == base);
    }
}

TEST_CASE("psd square root basics") {
    const Matrix s = psd_sqrt(Matrix::diagonal({4.0, 9.0}));
    CHECK(std::abs(s(0, 0) - cplx(2.0, 0.0)) <= 1e-14);
    CHECK(std::abs(s(1, 1) - cplx(3.0, 0.0)) <= 1e-14);
    CHECK(psd_sqrt(Matrix(3, 3)).frobenius_norm() == 0.0);
}

TEST_CASE("psd square root of planted spectra squares back") {
    Rng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix q = random_unitary(rng, 3);
        const Matrix a = conjugate(q, Matrix::diagonal({1.0, 2.0, 5.0}));
        const Matrix s = psd_sqrt(a);
        CHECK((s * s - a).frobenius_norm() <= 1e-10 * (1.0 + a.frobenius_norm()));
        CHECK((s - s.adjoint()).frobenius_norm() <= 1e-12);
    }
}

TEST_CASE("psd square root squaring holds on random PSD matrices") {
    Rng rng(405);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + trial % 6;
        const Matrix b = random_matrix(rng, d, d);
        const Matrix a = b.adjoint() * b;
        const Matrix s = psd_sqrt(a);
        CHECK((s * s - a).frobenius_norm() <= 1e-10 * (1.0 + a.frobenius_norm()));
    }
}

TEST_CASE("psd square root rejects indefinite input") {
    CHECK_THROWS_AS(psd_sqrt(Matrix::diagonal({1.0, -1.0})), NotPsd);
}

TEST_CASE("pseudo-inverse basics") {
    CHECK((pseudo_inverse(Matrix::identity(3)) - Matrix::identity(3)).frobenius_norm() <=
          1e-14);
    const Matrix p = pseudo_inverse(Matrix::diagonal({2.0, 0.0}));
    CHECK(std::abs(p(0, 0) - cplx(0.5, 0.0)) <= 1e-14);
    CHECK(std::abs(p(1, 1)) == 0.0);
}

TEST_CASE("pseudo-inverse satisfies the Moore-Penrose identities on planted ranks") {
    Rng rng(505);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(rng, 4, 2) * random_matrix(rng, 2, 4);
        const Matrix p = pseudo_inverse(a);
        const double bound = 1e-9 * (1.0 + a.frobenius_norm() * p.frobenius_norm());
        CHECK((a * p * a - a).frobenius_norm() <= bound);
        CHECK((p * a * p - p).frobenius_norm() <= bound);
        CHECK((a * p - (a * p).adjoint()).frobenius_norm() <= bound);
        CHECK((p * a - (p * a).adjoint()).frobenius_norm() <= bound);

        // double pseudo-inverse returns the (already rank-truncated) original
        CHECK((pseudo_inverse(p) - a).frobenius_norm() <= 1e-8 * (1.0 + a.frobenius_norm()));
    }
}

TEST_CASE("svd and eigendecomposition agree on Hermitian PSD input") {
    Rng rng(606);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 5;
        const Matrix b = random_matrix(rng, d, d);
        const Matrix a = b.adjoint() * b;
        const auto e = hermitian_eigendecompose(a);
        const auto s = svd(a);
        for (int i = 0; i < d; ++i) {
            const double ev = e.eigenvalues[d - 1 - i];  // descending
            CHECK(std::abs(s.singular_values[i] - ev) <=
                  1e-10 * (1.0 + std::abs(ev)) + 1e-12 * a.frobenius_norm());
        }
    }
}

TEST_CASE("schur decomposition triangularizes with a unitary") {
    Rng rng(707);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + trial % 7;
        const Matrix a = random_matrix(rng, d, d);
        const auto s = schur_decompose(a);
        CHECK((s.q * s.t * s.q.adjoint() - a).frobenius_norm() <=
              1e-12 * (1.0 + a.frobenius_norm()));
        CHECK((s.q.adjoint() * s.q - Matrix::identity(d)).frobenius_norm() <= 1e-13 * d);
        for (int i = 1; i < d; ++i)
            for (int j = 0; j < i; ++j) CHECK(s.t(i, j) == cplx(0.0, 0.0));
    }
}

TEST_CASE("schur decomposition leaves exactly triangular input untouched") {
    const Matrix a = make_matrix({{1.0, 2.0, 3.0}, {0.0, 4.0, 5.0}, {0.0, 0.0, 6.0}});
    const auto s = schur_decompose(a);
    CHECK((s.q - Matrix::identity(3)).frobenius_norm() == 0.0);
    CHECK((s.t - a).frobenius_norm() == 0.0);
}

TEST_CASE("eigenvalues handle repeated zeros of rank-deficient matrices") {
    Rng rng(808);
    const Matrix a = random_matrix(rng, 8, 2) * random_matrix(rng, 2, 8);
    const auto ev = eigenvalues(a);
    int near_zero = 0;
    for (const cplx& z : ev)
        if (std::abs(z) <= 1e-10 * (1.0 + a.frobenius_norm())) ++near_zero;
    CHECK(near_zero >= 6);
}

TEST_CASE("spectral radius and norm on a known matrix") {
    const Matrix a = make_matrix({{0.0, 2.0}, {0.0, 0.0}});
    CHECK(spectral_norm(a) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(spectral_radius(a) <= 1e-12);
}
