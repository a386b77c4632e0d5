#include "sphalu/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sphalu {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Complex Jacobi rotation diagonalizing the Hermitian 2x2
//   [[alpha, beta], [conj(beta), gamma]],  alpha, gamma real.
// Returns (c, s, phase) for the unitary J with columns
//   (c, -s*conj(phase)) and (s, c*conj(phase)),  phase = beta/|beta|,
// so that J* M J is diagonal.
struct JacobiRotation {
    double c;
    double s;
    cplx phase;
};

JacobiRotation make_rotation(double alpha, double gamma, cplx beta) {
    const double b = std::abs(beta);
    const cplx phase = beta / b;
    const double tau = (gamma - alpha) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    return {c, t * c, phase};
}

void sort_ascending(std::vector<double>& values, Matrix& vectors) {
    const int d = static_cast<int>(values.size());
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return values[i] < values[j]; });
    std::vector<double> sorted(d);
    Matrix permuted(vectors.rows(), d);
    for (int k = 0; k < d; ++k) {
        sorted[k] = values[order[k]];
        for (int i = 0; i < vectors.rows(); ++i) permuted(i, k) = vectors(i, order[k]);
    }
    values = std::move(sorted);
    vectors = std::move(permuted);
}

}  // namespace

EigenDecomposition hermitian_eigendecompose(const Matrix& input) {
    if (!input.is_square()) throw NotSquare("hermitian_eigendecompose: matrix not square");
    const int d = input.rows();
    const double norm_in = input.frobenius_norm();
    if ((input - input.adjoint()).frobenius_norm() > 1e-10 * (1.0 + norm_in))
        throw NotHermitian("hermitian_eigendecompose: matrix not Hermitian within tolerance");

    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    Matrix a(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
        a(i, i) = cplx(a(i, i).real(), 0.0);
    }

    Matrix u = Matrix::identity(d);
    const double thresh = std::max(0.5e-15 * norm_in, std::numeric_limits<double>::min());

    bool converged = (d <= 1);
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        int rotations = 0;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const cplx beta = a(p, q);
                if (std::abs(beta) <= thresh) continue;
                ++rotations;
                const JacobiRotation r =
                    make_rotation(a(p, p).real(), a(q, q).real(), beta);
                const cplx pc = std::conj(r.phase);
                // A <- J* A J
                for (int j = 0; j < d; ++j) {
                    const cplx ap = a(p, j), aq = a(q, j);
                    a(p, j) = r.c * ap - r.s * r.phase * aq;
                    a(q, j) = r.s * ap + r.c * r.phase * aq;
                }
                for (int i = 0; i < d; ++i) {
                    const cplx ap = a(i, p), aq = a(i, q);
                    a(i, p) = r.c * ap - r.s * pc * aq;
                    a(i, q) = r.s * ap + r.c * pc * aq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);
                // U <- U J
                for (int i = 0; i < d; ++i) {
                    const cplx up = u(i, p), uq = u(i, q);
                    u(i, p) = r.c * up - r.s * pc * uq;
                    u(i, q) = r.s * up + r.c * pc * uq;
                }
            }
        }
        converged = (rotations == 0);
    }
    if (!converged) throw ConvergenceFailure("hermitian_eigendecompose: Jacobi sweep cap exceeded");

    std::vector<double> values(d);
    for (int i = 0; i < d; ++i) values[i] = a(i, i).real();
    sort_ascending(values, u);
    return {std::move(values), std::move(u)};
}

namespace {

// One-sided Jacobi on the columns of b, accumulating the rotations into v.
void one_sided_jacobi(Matrix& b, Matrix& v) {
    const int m = b.rows(), n = b.cols();
    // Noise floor: inner products between numerical-null-space columns are
    // rounding noise of size ~eps^2 * sigma_max^2 and must not keep the
    // sweep spinning.
    double scale2 = 0.0;
    for (int j = 0; j < n; ++j) {
        double cn = 0.0;
        for (int i = 0; i < m; ++i) cn += std::norm(b(i, j));
        scale2 = std::max(scale2, cn);
    }
    const double floor = kEps * kEps * static_cast<double>(n) * scale2;
    for (int sweep = 0; sweep < 60; ++sweep) {
        int rotations = 0;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += std::norm(b(i, p));
                    aqq += std::norm(b(i, q));
                    apq += std::conj(b(i, p)) * b(i, q);
                }
                if (std::abs(apq) <= kEps * std::sqrt(app * aqq) + floor ||
                    apq == cplx(0.0, 0.0))
                    continue;
                ++rotations;
                const JacobiRotation r = make_rotation(app, aqq, apq);
                const cplx pc = std::conj(r.phase);
                for (int i = 0; i < m; ++i) {
                    const cplx bp = b(i, p), bq = b(i, q);
                    b(i, p) = r.c * bp - r.s * pc * bq;
                    b(i, q) = r.s * bp + r.c * pc * bq;
                }
                for (int i = 0; i < n; ++i) {
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = r.c * vp - r.s * pc * vq;
                    v(i, q) = r.s * vp + r.c * pc * vq;
                }
            }
        }
        if (rotations == 0) return;
    }
    throw ConvergenceFailure("svd: one-sided Jacobi sweep cap exceeded");
}

double column_norm(const Matrix& b, int j) {
    double s = 0.0;
    for (int i = 0; i < b.rows(); ++i) s += std::norm(b(i, j));
    return std::sqrt(s);
}

// Fill columns [filled, m) of u with an orthonormal completion.
void complete_basis(Matrix& u, int filled) {
    const int m = u.rows();
    int next = filled;
    for (int k = 0; k < m && next < m; ++k) {
        std::vector<cplx> v(m, 0.0);
        v[k] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < next; ++j) {
                cplx proj = 0.0;
                for (int i = 0; i < m; ++i) proj += std::conj(u(i, j)) * v[i];
                for (int i = 0; i < m; ++i) v[i] -= proj * u(i, j);
            }
        }
        double nrm = 0.0;
        for (const cplx& z : v) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm < 0.1) continue;
        for (int i = 0; i < m; ++i) u(i, next) = v[i] / nrm;
        ++next;
    }
}

}  // namespace

SvdDecomposition svd(const Matrix& a) {
    if (a.rows() < a.cols()) {
        SvdDecomposition s = svd(a.adjoint());
        return {std::move(s.v), std::move(s.singular_values), std::move(s.u)};
    }
    const int m = a.rows(), n = a.cols();
    if (n == 0) return {Matrix::identity(m), {}, Matrix::identity(0)};

    // Seed the right singular basis from a*a, then refine one-sidedly.
    EigenDecomposition eig = hermitian_eigendecompose(a.adjoint() * a);
    Matrix v(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) v(i, j) = eig.vectors(i, n - 1 - j);
    Matrix b = a * v;
    one_sided_jacobi(b, v);

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = column_norm(b, j);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma[i] > sigma[j]; });

    Matrix v_sorted(n, n), b_sorted(m, n);
    std::vector<double> sv(n);
    for (int j = 0; j < n; ++j) {
        sv[j] = sigma[order[j]];
        for (int i = 0; i < n; ++i) v_sorted(i, j) = v(i, order[j]);
        for (int i = 0; i < m; ++i) b_sorted(i, j) = b(i, order[j]);
    }

    const double cutoff = sv.empty() ? 0.0 : sv[0] * static_cast<double>(m) * kEps;
    Matrix u(m, m);
    int filled = 0;
    for (int j = 0; j < n; ++j) {
        if (sv[j] <= cutoff) break;
        for (int i = 0; i < m; ++i) u(i, filled) = b_sorted(i, j) / sv[j];
        ++filled;
    }
    complete_basis(u, filled);
    return {std::move(u), std::move(sv), std::move(v_sorted)};
}

double default_rank_tol(int rows, int cols, double sigma_max) {
    return static_cast<double>(std::max(rows, cols)) * kEps * sigma_max;
}

int numerical_rank(const SvdDecomposition& s, int rows, int cols, std::optional<double> tol) {
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    const double tau = tol ? *tol : default_rank_tol(rows, cols, sigma_max);
    int rank = 0;
    for (double sv : s.singular_values)
        if (sv > tau) ++rank;
    return rank;
}

int numerical_rank(const Matrix& a, std::optional<double> tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    return numerical_rank(svd(a), a.rows(), a.cols(), tol);
}

Matrix psd_sqrt(const Matrix& a) {
    const double norm_a = a.frobenius_norm();
    EigenDecomposition eig = hermitian_eigendecompose(a);  // NotSquare/NotHermitian propagate
    for (double lam : eig.eigenvalues)
        if (lam < -1e-10 * norm_a)
            throw NotPsd("psd_sqrt: eigenvalue below PSD clamping threshold");

    const int d = a.rows();
    Matrix s(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            cplx acc = 0.0;
            for (int k = 0; k < d; ++k) {
                const double lam = eig.eigenvalues[k];
                if (lam <= 0.0) continue;  // clamp
                acc += std::sqrt(lam) * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
            }
            s(i, j) = acc;
        }
    }
    // Hermitize to remove rounding skew.
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const cplx avg = 0.5 * (s(i, j) + std::conj(s(j, i)));
            s(i, j) = avg;
            s(j, i) = std::conj(avg);
        }
        s(i, i) = cplx(s(i, i).real(), 0.0);
    }
    return s;
}

Matrix pseudo_inverse(const Matrix& a, std::optional<double> tol) {
    const int m = a.rows(), n = a.cols();
    SvdDecomposition s = svd(a);
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    const double tau = tol ? *tol : default_rank_tol(m, n, sigma_max);

    // a+ = v * sigma+ * u*
    Matrix w(n, m);  // sigma+ u*
    const int k = static_cast<int>(s.singular_values.size());
    for (int j = 0; j < k; ++j) {
        if (s.singular_values[j] <= tau) continue;
        const double inv = 1.0 / s.singular_values[j];
        for (int i = 0; i < m; ++i) w(j, i) = inv * std::conj(s.u(i, j));
    }
    return s.v * w;
}

std::vector<cplx> eigenvalues(const Matrix& a) {
    SchurDecomposition s = schur_decompose(a);
    std::vector<cplx> ev(a.rows());
    for (int i = 0; i < a.rows(); ++i) ev[i] = s.t(i, i);
    return ev;
}

double spectral_norm(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    SvdDecomposition s = svd(a);
    return s.singular_values.empty() ? 0.0 : s.singular_values.front();
}

double spectral_radius(const Matrix& a) {
    double r = 0.0;
    for (const cplx& ev : eigenvalues(a)) r = std::max(r, std::abs(ev));
    return r;
}

}  // namespace sphalu
