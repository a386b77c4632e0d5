#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sphalu/koszul.hpp"
#include "sphalu/transforms.hpp"

namespace sphalu {

using Point = std::vector<cplx>;  // a point of C^n

// Finite joint spectrum with multiplicities and optional homology
// certificates; polydisc_radii are the spectral radii r(T_i).
struct JointSpectrum {
    std::vector<Point> points;
    std::vector<int> multiplicities;
    std::vector<HomologyProfile> homology_profiles;  // empty when uncertified
    std::vector<double> polydisc_radii;
};

struct SpectrumComparison {
    JointSpectrum left;
    JointSpectrum right;
    bool matched = false;
    double hausdorff_distance = 0.0;
    std::vector<Point> unmatched_points;
};

struct LeftInvertibilityVerdict {
    bool hypothesis = false;  // T or its transform left invertible
    int rank_p = 0;
    int dim = 0;
    bool pass = false;
};

struct OriginEquivalenceVerdict {
    bool original_invertible = false;
    bool transformed_invertible = false;
    bool pass = false;
};

// Matching tolerance delta = 1e-6 * (1 + max_i ||T_i||_2).
double matching_tolerance(const OperatorTuple& t);

double point_distance(const Point& a, const Point& b);

// Symmetric Hausdorff distance between point sets; infinity when exactly one
// side is empty, 0 when both are.
double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b);

// Simultaneous triangularization by the Schur unitary of a random
// unit-sphere combination (seeded); diagonal values clustered within delta.
JointSpectrum joint_eigenvalues(const OperatorTuple& t, uint64_t seed);

// joint_eigenvalues plus a homology certificate per point and the polydisc
// containment check.
JointSpectrum taylor_spectrum(const OperatorTuple& t, uint64_t seed);

// Set comparison of the Taylor spectra of T and of its spherical Aluthge
// transform.
SpectrumComparison compare_taylor_spectra(const OperatorTuple& t, uint64_t seed);

// Set comparison of sigma_T(AB) \ {0} and sigma_T(BA) \ {0} for a
// criss-cross commuting pair with AB commuting.
SpectrumComparison crisscross_spectrum_check(const TuplePair& pair, uint64_t seed);

// Left invertibility of T or of its transform implies rank(P) = dim.
LeftInvertibilityVerdict verify_left_invertibility_implies_p(const OperatorTuple& t);

// Taylor invertibility at the origin holds for T iff it holds for the
// transform.
OriginEquivalenceVerdict verify_origin_equivalence(const OperatorTuple& t);

}  // namespace sphalu
