#include <cmath>
#include <limits>

#include "sphalu/decomp.hpp"

namespace sphalu {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

// Householder reduction to upper Hessenberg form, accumulating the unitary.
// Columns that are already zero below the subdiagonal are left untouched, so
// an exactly triangular input passes through bit-for-bit.
void hessenberg(Matrix& a, Matrix& q) {
    const int d = a.rows();
    for (int k = 0; k + 2 < d; ++k) {
        const int m = d - k - 1;
        std::vector<cplx> v(m);
        double norm2 = 0.0;
        for (int i = 0; i < m; ++i) {
            v[i] = a(k + 1 + i, k);
            norm2 += std::norm(v[i]);
        }
        const double norm = std::sqrt(norm2);
        if (norm < kTiny) continue;
        const cplx x0 = v[0];
        const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
        const cplx alpha = -phase * norm;
        v[0] -= alpha;
        double vnorm2 = 0.0;
        for (const cplx& z : v) vnorm2 += std::norm(z);
        if (vnorm2 < kTiny) continue;
        const double beta = 2.0 / vnorm2;

        // A <- H A  (rows k+1..d-1)
        for (int j = 0; j < d; ++j) {
            cplx dot = 0.0;
            for (int i = 0; i < m; ++i) dot += std::conj(v[i]) * a(k + 1 + i, j);
            dot *= beta;
            for (int i = 0; i < m; ++i) a(k + 1 + i, j) -= dot * v[i];
        }
        // A <- A H  (cols k+1..d-1)
        for (int i = 0; i < d; ++i) {
            cplx dot = 0.0;
            for (int j = 0; j < m; ++j) dot += a(i, k + 1 + j) * v[j];
            dot *= beta;
            for (int j = 0; j < m; ++j) a(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        // Q <- Q H
        for (int i = 0; i < d; ++i) {
            cplx dot = 0.0;
            for (int j = 0; j < m; ++j) dot += q(i, k + 1 + j) * v[j];
            dot *= beta;
            for (int j = 0; j < m; ++j) q(i, k + 1 + j) -= dot * std::conj(v[j]);
        }
        a(k + 1, k) = alpha;
        for (int i = k + 2; i < d; ++i) a(i, k) = 0.0;
    }
}

struct Givens {
    double c;  // real
    cplx s;
};

// G = [[c, s], [-conj(s), c]] with G (a; b)^T = (r; 0)^T.
Givens make_givens(cplx a, cplx b) {
    if (std::abs(b) == 0.0) return {1.0, 0.0};
    if (std::abs(a) == 0.0) return {0.0, std::conj(b) / std::abs(b)};
    const double r = std::hypot(std::abs(a), std::abs(b));
    return {std::abs(a) / r, (a / std::abs(a)) * std::conj(b) / r};
}

cplx wilkinson_shift(const Matrix& h, int hi) {
    const cplx a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
    const cplx c = h(hi, hi - 1), d = h(hi, hi);
    const cplx tr = a + d;
    const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    const cplx e1 = 0.5 * (tr + disc), e2 = 0.5 * (tr - disc);
    return (std::abs(e1 - d) < std::abs(e2 - d)) ? e1 : e2;
}

}  // namespace

SchurDecomposition schur_decompose(const Matrix& input) {
    if (!input.is_square()) throw NotSquare("schur_decompose: matrix not square");
    const int d = input.rows();
    Matrix h = input;
    Matrix q = Matrix::identity(d);
    if (d <= 1) return {std::move(q), std::move(h)};

    hessenberg(h, q);
    const double hnorm = h.frobenius_norm();

    int hi = d - 1;
    int iters_at_hi = 0;
    long total_iters = 0;
    const long iter_cap = 60L * d;

    while (hi > 0) {
        // Deflate negligible subdiagonals. The neighbor-relative test keeps
        // graded matrices accurate; the norm floor keeps clusters of (near-)
        // zero eigenvalues from stalling, where both neighbors vanish.
        for (int k = 0; k < hi; ++k) {
            const double thresh = kEps * std::max(std::abs(h(k, k)) + std::abs(h(k + 1, k + 1)),
                                                  0.5 * hnorm);
            if (std::abs(h(k + 1, k)) <= thresh + kTiny) h(k + 1, k) = 0.0;
        }
        if (h(hi, hi - 1) == cplx(0.0, 0.0)) {
            --hi;
            iters_at_hi = 0;
            continue;
        }
        int lo = hi;
        while (lo > 0 && h(lo, lo - 1) != cplx(0.0, 0.0)) --lo;

        if (++total_iters > iter_cap)
            throw ConvergenceFailure("schur_decompose: QR iteration cap exceeded");

        cplx mu = wilkinson_shift(h, hi);
        if (++iters_at_hi % 12 == 0)
            mu = h(hi, hi) + cplx(1.5, 0.0) * std::abs(h(hi, hi - 1));  // exceptional shift

        for (int j = lo; j <= hi; ++j) h(j, j) -= mu;
        std::vector<Givens> rot(hi - lo);
        for (int j = lo; j < hi; ++j) {
            const Givens g = make_givens(h(j, j), h(j + 1, j));
            rot[j - lo] = g;
            for (int col = 0; col < d; ++col) {
                const cplx x = h(j, col), y = h(j + 1, col);
                h(j, col) = g.c * x + g.s * y;
                h(j + 1, col) = -std::conj(g.s) * x + g.c * y;
            }
        }
        for (int j = lo; j < hi; ++j) {
            const Givens g = rot[j - lo];
            for (int row = 0; row < d; ++row) {
                const cplx x = h(row, j), y = h(row, j + 1);
                h(row, j) = g.c * x + std::conj(g.s) * y;
                h(row, j + 1) = -g.s * x + g.c * y;
            }
            for (int row = 0; row < d; ++row) {
                const cplx x = q(row, j), y = q(row, j + 1);
                q(row, j) = g.c * x + std::conj(g.s) * y;
                q(row, j + 1) = -g.s * x + g.c * y;
            }
        }
        for (int j = lo; j <= hi; ++j) h(j, j) += mu;
    }

    // Clean the strictly lower part left behind by deflation.
    for (int i = 1; i < d; ++i)
        for (int j = 0; j < i; ++j) h(i, j) = 0.0;
    return {std::move(q), std::move(h)};
}

}  // namespace sphalu
