#pragma once

#include <optional>
#include <vector>

#include "sphalu/matrix.hpp"

namespace sphalu {

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    Matrix vectors;                   // columns: orthonormal eigenvectors
};

struct SvdDecomposition {
    Matrix u;                            // rows x rows, unitary
    std::vector<double> singular_values; // min(rows, cols), descending
    Matrix v;                            // cols x cols, unitary
};

// Hermitian eigendecomposition by cyclic Jacobi with a fixed sweep order.
// The input is symmetrized as (a + a*)/2 before iterating.
EigenDecomposition hermitian_eigendecompose(const Matrix& a);

// Full SVD: eigendecomposition of a*a seeds the right singular basis, then
// one-sided Jacobi sweeps refine it so small singular values keep relative
// accuracy.
SvdDecomposition svd(const Matrix& a);

// Default rank cutoff: max(m, n) * eps * sigma_max.
double default_rank_tol(int rows, int cols, double sigma_max);

// Count of singular values strictly above the cutoff.
int numerical_rank(const Matrix& a, std::optional<double> tol = std::nullopt);
int numerical_rank(const SvdDecomposition& s, int rows, int cols,
                   std::optional<double> tol = std::nullopt);

// PSD square root via eigendecomposition; eigenvalues below -1e-10*||a||_F
// raise NotPsd, small negatives are clamped to zero.
Matrix psd_sqrt(const Matrix& a);

// Moore-Penrose pseudo-inverse with the numerical_rank cutoff rule.
Matrix pseudo_inverse(const Matrix& a, std::optional<double> tol = std::nullopt);

struct SchurDecomposition {
    Matrix q;  // unitary
    Matrix t;  // upper triangular, a = q t q*
};

// Complex Schur form via Householder Hessenberg reduction and shifted QR.
// Exactly upper-triangular inputs pass through untouched (q = I).
SchurDecomposition schur_decompose(const Matrix& a);

std::vector<cplx> eigenvalues(const Matrix& a);

// Largest singular value.
double spectral_norm(const Matrix& a);

// Largest eigenvalue modulus.
double spectral_radius(const Matrix& a);

}  // namespace sphalu
