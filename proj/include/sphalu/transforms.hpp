#pragma once

#include <optional>
#include <vector>

#include "sphalu/decomp.hpp"
#include "sphalu/matrix.hpp"

namespace sphalu {

// A commuting n-tuple of d x d operators with its commutativity certificate.
struct OperatorTuple {
    int dim = 0;
    int n = 0;
    std::vector<Matrix> operators;
    double commutator_defect = 0.0;
};

// Parts of the canonical joint polar decomposition T_i = V_i P.
struct JointPolar {
    Matrix p;                       // sqrt(sum T_i* T_i), Hermitian PSD
    std::vector<Matrix> isometries; // V_1..V_n, jointly a partial isometry
    Matrix p_sqrt;                  // sqrt(P), cached
};

// Two same-shape tuples; neither is required to commute.
struct TuplePair {
    std::vector<Matrix> a;
    std::vector<Matrix> b;
};

struct CrissCrossReport {
    bool commutes = false;
    double defect = 0.0;  // max over all criss-cross words
    double bound = 0.0;
};

// Builds an OperatorTuple, throwing NotCommuting when the commutator defect
// exceeds ctol * (1 + max_i ||T_i||_F)^2, default ctol = 1e-10.
OperatorTuple validate_commuting(std::vector<Matrix> operators,
                                 std::optional<double> ctol = std::nullopt);

double max_frobenius_norm(const std::vector<Matrix>& ops);

JointPolar joint_polar_decompose(const OperatorTuple& t);

// (sqrt(P) V_1 sqrt(P), ..., sqrt(P) V_n sqrt(P)). The output is revalidated
// with the same ctol; a violation aborts with NotCommuting, since the
// transform of a commuting tuple commutes identically.
OperatorTuple spherical_aluthge(const OperatorTuple& t,
                                std::optional<double> ctol = std::nullopt);

// |T|^{1/2} V |T|^{1/2} for the canonical polar decomposition T = V|T|.
Matrix classical_aluthge(const Matrix& a);

// A_i B_j A_k = A_k B_j A_i and B_i A_j B_k = B_k A_j B_i for all i, j, k.
CrissCrossReport is_crisscross_commuting(const TuplePair& pair,
                                         std::optional<double> tol = std::nullopt);

// The canonical criss-cross pair: A = (sqrt(P), ..., sqrt(P)),
// B = (V_1 sqrt(P), ..., V_n sqrt(P)); then AB is the spherical Aluthge
// transform and BA recovers the original tuple.
TuplePair canonical_crisscross_pair(const JointPolar& polar);

}  // namespace sphalu
