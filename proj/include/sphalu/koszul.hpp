#pragma once

#include <optional>
#include <vector>

#include "sphalu/transforms.hpp"

namespace sphalu {

// Chain of boundary matrices D_0..D_{n-1} of the Koszul complex of
// (T_1 - lambda_1, ..., T_n - lambda_n); D_k maps H (x) Lambda^k C^n to
// H (x) Lambda^{k+1} C^n in the lexicographic index-set basis.
struct KoszulComplexRep {
    int n = 0;
    int d = 0;
    std::vector<cplx> lambda;
    std::vector<Matrix> boundaries;
};

// Homology dimensions h_0..h_n computed by rank arithmetic; a single rank
// tolerance is used for every boundary.
struct HomologyProfile {
    std::vector<int> dims;
    std::vector<int> ranks;
    double tol_used = 0.0;
};

KoszulComplexRep build_koszul(const OperatorTuple& t, const std::vector<cplx>& lambda);

HomologyProfile homology_dimensions(const KoszulComplexRep& k,
                                    std::optional<double> tol = std::nullopt);

bool is_taylor_invertible_at(const OperatorTuple& t, const std::vector<cplx>& lambda,
                             std::optional<double> tol = std::nullopt);

// Exactness at the left stage: the stacked column (T_1; ...; T_n) has full
// column rank. Closed range is automatic in finite dimensions.
bool is_left_invertible(const OperatorTuple& t, std::optional<double> tol = std::nullopt);

// Alternating sum of homology dimensions; identically zero in finite
// dimensions. A negative homology dimension signals an inconsistent rank
// tolerance and raises IndexAnomalous.
int fredholm_index_at(const OperatorTuple& t, const std::vector<cplx>& lambda,
                      std::optional<double> tol = std::nullopt);

// Adopted convention for the left k-spectral systems: membership iff some
// h_j != 0 with j <= k. Monotone in k; k = n recovers the Taylor spectrum.
bool slodkowski_left_k_member(const OperatorTuple& t, const std::vector<cplx>& lambda, int k,
                              std::optional<double> tol = std::nullopt);

// The n*d x d column operator (T_1 - lambda_1; ...; T_n - lambda_n).
Matrix stacked_column(const OperatorTuple& t, const std::vector<cplx>& lambda);

long binomial(int n, int k);

}  // namespace sphalu
