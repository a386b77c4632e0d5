#include "sphalu/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sphalu/rng.hpp"

namespace sphalu {

namespace {

double strict_lower_norm(const Matrix& a) {
    double s = 0.0;
    for (int i = 1; i < a.rows(); ++i)
        for (int j = 0; j < i; ++j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double max_spectral_norm(const OperatorTuple& t) {
    double m = 0.0;
    for (const Matrix& op : t.operators) m = std::max(m, spectral_norm(op));
    return m;
}

// Rank tolerance for the invertibility verdicts: well above the accuracy of
// the computed transform, well below the invertibility margins of desk-scale
// inputs.
double verdict_tolerance(const OperatorTuple& t) {
    return 1e-9 * (1.0 + max_spectral_norm(t));
}

}  // namespace

double matching_tolerance(const OperatorTuple& t) {
    return 1e-6 * (1.0 + max_spectral_norm(t));
}

double point_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

double hausdorff_distance(const std::vector<Point>& a, const std::vector<Point>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    double h = 0.0;
    const auto directed = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
        for (const Point& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point& q : to) best = std::min(best, point_distance(p, q));
            h = std::max(h, best);
        }
    };
    directed(a, b);
    directed(b, a);
    return h;
}

JointSpectrum joint_eigenvalues(const OperatorTuple& t, uint64_t seed) {
    const int d = t.dim, n = t.n;
    const double delta = matching_tolerance(t);
    const double residual_bound = 1e-8 * (1.0 + max_frobenius_norm(t.operators));

    Rng rng(seed);
    std::vector<Matrix> triangularized;
    bool accepted = false;
    for (int attempt = 0; attempt < 9 && !accepted; ++attempt) {
        const std::vector<cplx> c = rng.unit_vector(n);
        Matrix m(d, d);
        for (int i = 0; i < n; ++i) m = m + c[i] * t.operators[i];
        SchurDecomposition schur = schur_decompose(m);
        const Matrix q_adj = schur.q.adjoint();
        std::vector<Matrix> rotated;
        rotated.reserve(n);
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            rotated.push_back(q_adj * t.operators[i] * schur.q);
            residual = std::max(residual, strict_lower_norm(rotated.back()));
        }
        if (residual <= residual_bound) {
            triangularized = std::move(rotated);
            accepted = true;
        }
    }
    if (!accepted)
        throw TriangularizationFailure(
            "joint_eigenvalues: off-triangular residual above bound after retries; "
            "commutator defect too large for simultaneous triangularization");

    JointSpectrum spectrum;
    for (int k = 0; k < d; ++k) {
        Point p(n);
        for (int i = 0; i < n; ++i) p[i] = triangularized[i](k, k);
        bool merged = false;
        for (size_t c = 0; c < spectrum.points.size() && !merged; ++c) {
            if (point_distance(spectrum.points[c], p) <= delta) {
                ++spectrum.multiplicities[c];
                merged = true;
            }
        }
        if (!merged) {
            spectrum.points.push_back(std::move(p));
            spectrum.multiplicities.push_back(1);
        }
    }
    spectrum.polydisc_radii.reserve(n);
    for (int i = 0; i < n; ++i) spectrum.polydisc_radii.push_back(spectral_radius(t.operators[i]));
    return spectrum;
}

JointSpectrum taylor_spectrum(const OperatorTuple& t, uint64_t seed) {
    JointSpectrum spectrum = joint_eigenvalues(t, seed);
    const double delta = matching_tolerance(t);

    if (spectrum.points.empty())
        throw CertificationFailure("taylor_spectrum: empty spectrum on a nonzero space");
    for (size_t i = 0; i < spectrum.points.size(); ++i) {
        for (int j = 0; j < t.n; ++j) {
            const double r = spectrum.polydisc_radii[j];
            if (std::abs(spectrum.points[i][j]) > r + 1e-8 * (1.0 + r))
                throw CertificationFailure(
                    "taylor_spectrum: spectrum point escapes the polydisc of spectral radii");
        }
    }

    spectrum.homology_profiles.reserve(spectrum.points.size());
    for (const Point& p : spectrum.points) {
        HomologyProfile profile = homology_dimensions(build_koszul(t, p), delta);
        const bool nonzero =
            std::any_of(profile.dims.begin(), profile.dims.end(), [](int h) { return h != 0; });
        if (!nonzero)
            throw CertificationFailure(
                "taylor_spectrum: candidate point has all-zero homology (tolerance "
                "inconsistency)");
        spectrum.homology_profiles.push_back(std::move(profile));
    }
    return spectrum;
}

namespace {

SpectrumComparison compare_spectra(JointSpectrum left, JointSpectrum right, double delta) {
    SpectrumComparison cmp;
    cmp.hausdorff_distance = hausdorff_distance(left.points, right.points);
    cmp.matched = cmp.hausdorff_distance <= delta;
    if (!cmp.matched) {
        const auto collect = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
            for (const Point& p : from) {
                double best = std::numeric_limits<double>::infinity();
                for (const Point& q : to) best = std::min(best, point_distance(p, q));
                if (best > delta) cmp.unmatched_points.push_back(p);
            }
        };
        collect(left.points, right.points);
        collect(right.points, left.points);
    }
    cmp.left = std::move(left);
    cmp.right = std::move(right);
    return cmp;
}

}  // namespace

SpectrumComparison compare_taylor_spectra(const OperatorTuple& t, uint64_t seed) {
    const OperatorTuple transformed = spherical_aluthge(t);
    const double delta = std::max(matching_tolerance(t), matching_tolerance(transformed));
    return compare_spectra(taylor_spectrum(t, seed), taylor_spectrum(transformed, seed), delta);
}

SpectrumComparison crisscross_spectrum_check(const TuplePair& pair, uint64_t seed) {
    const CrissCrossReport cc = is_crisscross_commuting(pair);
    if (!cc.commutes)
        throw NotCrissCross("crisscross_spectrum_check: pair does not criss-cross commute",
                            cc.defect);

    const size_t n = pair.a.size();
    std::vector<Matrix> ab_ops, ba_ops;
    for (size_t i = 0; i < n; ++i) {
        ab_ops.push_back(pair.a[i] * pair.b[i]);
        ba_ops.push_back(pair.b[i] * pair.a[i]);
    }
    OperatorTuple ab, ba;
    try {
        ab = validate_commuting(std::move(ab_ops));
    } catch (const NotCommuting& e) {
        throw ProductNotCommuting("crisscross_spectrum_check: AB is not commuting", e.defect);
    }
    try {
        ba = validate_commuting(std::move(ba_ops));
    } catch (const NotCommuting& e) {
        // Criss-cross commutativity plus AB commuting forces BA commuting;
        // a violation here is a numerical failure, not a usage error.
        throw ProductNotCommuting("crisscross_spectrum_check: BA failed the commutativity check",
                                  e.defect);
    }

    JointSpectrum left = taylor_spectrum(ab, seed);
    JointSpectrum right = taylor_spectrum(ba, seed);
    const double scale = std::max(max_spectral_norm(ab), max_spectral_norm(ba));
    const double exclusion = 1e-8 * (1.0 + scale);
    const Point origin(n, cplx(0.0, 0.0));
    const auto drop_origin = [&](JointSpectrum& s) {
        for (size_t i = s.points.size(); i-- > 0;) {
            if (point_distance(s.points[i], origin) <= exclusion) {
                s.points.erase(s.points.begin() + i);
                s.multiplicities.erase(s.multiplicities.begin() + i);
                if (!s.homology_profiles.empty())
                    s.homology_profiles.erase(s.homology_profiles.begin() + i);
            }
        }
    };
    drop_origin(left);
    drop_origin(right);

    const double delta = std::max(matching_tolerance(ab), matching_tolerance(ba));
    return compare_spectra(std::move(left), std::move(right), delta);
}

LeftInvertibilityVerdict verify_left_invertibility_implies_p(const OperatorTuple& t) {
    const double tol = verdict_tolerance(t);
    const JointPolar polar = joint_polar_decompose(t);
    const OperatorTuple transformed = spherical_aluthge(t);
    LeftInvertibilityVerdict verdict;
    verdict.dim = t.dim;
    verdict.rank_p = numerical_rank(polar.p, tol);
    verdict.hypothesis = is_left_invertible(t, tol) || is_left_invertible(transformed, tol);
    verdict.pass = !verdict.hypothesis || verdict.rank_p == t.dim;
    return verdict;
}

OriginEquivalenceVerdict verify_origin_equivalence(const OperatorTuple& t) {
    const double tol = verdict_tolerance(t);
    const std::vector<cplx> origin(t.n, cplx(0.0, 0.0));
    const OperatorTuple transformed = spherical_aluthge(t);
    OriginEquivalenceVerdict verdict;
    verdict.original_invertible = is_taylor_invertible_at(t, origin, tol);
    verdict.transformed_invertible = is_taylor_invertible_at(transformed, origin, tol);
    verdict.pass = verdict.original_invertible == verdict.transformed_invertible;
    return verdict;
}

}  // namespace sphalu
