#include "sphalu/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sphalu/rng.hpp"

namespace sphalu {

namespace {

using nlohmann::json;

uint64_t mix_seed(uint64_t base, uint64_t salt) {
    uint64_t x = base ^ (salt * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
}

double smallest_nonzero_singular_value(const Matrix& a) {
    const SvdDecomposition s = svd(a);
    const double sigma_max = s.singular_values.empty() ? 0.0 : s.singular_values.front();
    const double tau = default_rank_tol(a.rows(), a.cols(), sigma_max);
    double smallest = 0.0;
    for (double sv : s.singular_values)
        if (sv > tau) smallest = sv;
    return smallest;
}

// Exterior sample outside the polydisc of operator norms, where the Koszul
// complex is invertible with margin >= 1.
Point exterior_point(const OperatorTuple& t, Rng& rng) {
    Point p(t.n);
    for (int i = 0; i < t.n; ++i) {
        const double radius = spectral_norm(t.operators[i]) + 1.0 + rng.uniform();
        const double theta = 2.0 * M_PI * rng.uniform();
        p[i] = std::polar(radius, theta);
    }
    return p;
}

CaseResult run_case(const GeneratorSpec& spec, std::optional<double> rank_tol) {
    CaseResult result;
    result.spec = spec;
    try {
        const OperatorTuple tuple = generate_commuting_tuple(spec);
        const JointPolar polar = joint_polar_decompose(tuple);
        const OperatorTuple transformed = spherical_aluthge(tuple);
        const TuplePair pair = canonical_crisscross_pair(polar);

        result.rank_p = numerical_rank(polar.p, rank_tol);
        result.singular_p = result.rank_p < tuple.dim;

        // The canonical pair criss-cross commutes.
        const CrissCrossReport cc = is_crisscross_commuting(pair);
        const double p_scale = 1.0 + polar.p.frobenius_norm();
        result.crisscross_identity.defect = cc.defect;
        result.crisscross_identity.pass = cc.defect <= 1e-9 * p_scale * p_scale * p_scale;

        // AB recovers the transform, BA the original tuple.
        double ba_defect = 0.0;
        for (int i = 0; i < tuple.n; ++i) {
            const double ba = (pair.b[i] * pair.a[i] - tuple.operators[i]).frobenius_norm() /
                              (1.0 + tuple.operators[i].frobenius_norm());
            const double ab = (pair.a[i] * pair.b[i] - transformed.operators[i]).frobenius_norm() /
                              (1.0 + transformed.operators[i].frobenius_norm());
            ba_defect = std::max({ba_defect, ba, ab});
        }
        result.ba_identity.defect = ba_defect;
        result.ba_identity.pass = ba_defect <= 1e-9;

        const LeftInvertibilityVerdict basic = verify_left_invertibility_implies_p(tuple);
        result.left_invertible_hypothesis = basic.hypothesis;
        result.rank_implication.pass = basic.pass;
        result.rank_implication.defect = static_cast<double>(tuple.dim - basic.rank_p);

        const OriginEquivalenceVerdict origin = verify_origin_equivalence(tuple);
        result.origin_equivalence.pass = origin.pass;

        const uint64_t spectra_seed = mix_seed(spec.seed, 0xa1);
        const SpectrumComparison th8 = compare_taylor_spectra(tuple, spectra_seed);
        result.spectrum_match.pass = th8.matched;
        result.spectrum_match.defect = th8.hausdorff_distance;
        result.spectrum_size = static_cast<int>(th8.left.points.size());

        // Polydisc containment and nonemptiness of sigma_T(T).
        result.polydisc.pass = !th8.left.points.empty();
        for (size_t i = 0; i < th8.left.points.size(); ++i) {
            for (int j = 0; j < tuple.n; ++j) {
                const double r = th8.left.polydisc_radii[j];
                const double excess = std::abs(th8.left.points[i][j]) - (r + 1e-8 * (1.0 + r));
                result.polydisc.defect = std::max(result.polydisc.defect, excess);
                if (excess > 0.0) result.polydisc.pass = false;
            }
        }

        const SpectrumComparison lem7 = crisscross_spectrum_check(pair, mix_seed(spec.seed, 0xb2));
        result.product_spectra.pass = lem7.matched;
        result.product_spectra.defect = lem7.hausdorff_distance;

        // Index sweep: spectrum points and exterior points, both tuples.
        Rng rng(mix_seed(spec.seed, 0xc3));
        result.index_sweep.pass = true;
        const auto sweep = [&](const OperatorTuple& t, const JointSpectrum& s) {
            for (const Point& p : s.points) {
                if (fredholm_index_at(t, p) != 0) result.index_sweep.pass = false;
                ++result.index_evaluations;
            }
            for (int j = 0; j < 5; ++j) {
                if (fredholm_index_at(t, exterior_point(t, rng)) != 0)
                    result.index_sweep.pass = false;
                ++result.index_evaluations;
            }
        };
        sweep(tuple, th8.left);
        sweep(transformed, th8.right);
    } catch (const Error& e) {
        result.error = e.what();
    }
    return result;
}

// --- n = 1 sweep: classical Aluthge preserves the spectrum ---

Matrix n1_instance(const std::string& kind, int dim, Rng& rng) {
    if (kind == "dense") {
        Matrix a(dim, dim);
        for (cplx& z : a.data()) z = rng.complex_gaussian();
        return a;
    }
    if (kind == "singular") {
        const int rank = rng.uniform_int(1, std::max(1, dim - 1));
        Matrix x(dim, rank), y(rank, dim);
        for (cplx& z : x.data()) z = rng.complex_gaussian();
        for (cplx& z : y.data()) z = rng.complex_gaussian();
        return x * y;
    }
    if (kind == "nilpotent") {
        // Weighted shift: stays exactly bidiagonal through the transform.
        Matrix a(dim, dim);
        for (int k = 0; k + 1 < dim; ++k)
            if (rng.uniform() > 0.25) a(k, k + 1) = rng.complex_gaussian();
        return a;
    }
    // normal: unitary conjugation of a diagonal by Householder reflections
    Matrix a = Matrix::diagonal([&] {
        std::vector<cplx> d(dim);
        for (cplx& z : d) z = rng.complex_gaussian();
        return d;
    }());
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<cplx> v(dim);
        double norm2 = 0.0;
        for (cplx& z : v) {
            z = rng.complex_gaussian();
            norm2 += std::norm(z);
        }
        Matrix h = Matrix::identity(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) h(i, j) -= 2.0 / norm2 * v[i] * std::conj(v[j]);
        a = h * a * h;  // h is unitary and Hermitian
    }
    return a;
}

std::vector<N1Case> run_n1_sweep(int count, uint64_t seed) {
    const std::vector<std::string> kinds = {"dense", "singular", "nilpotent", "normal"};
    std::vector<N1Case> cases;
    for (int i = 0; i < count; ++i) {
        N1Case c;
        c.kind = kinds[i % kinds.size()];
        c.dim = 2 + (i / static_cast<int>(kinds.size())) % 7;
        c.seed = mix_seed(seed, 0xd4 + static_cast<uint64_t>(i));
        Rng rng(c.seed);
        const Matrix a = n1_instance(c.kind, c.dim, rng);
        const Matrix transformed = classical_aluthge(a);
        std::vector<Point> left, right;
        for (const cplx& ev : eigenvalues(a)) left.push_back({ev});
        for (const cplx& ev : eigenvalues(transformed)) right.push_back({ev});
        const double delta = 1e-6 * (1.0 + spectral_norm(a));
        c.hausdorff = hausdorff_distance(left, right);
        c.pass = c.hausdorff <= delta;
        cases.push_back(std::move(c));
    }
    return cases;
}

// --- Koszul structural checks on exactly commuting integer tuples ---

KoszulCheck run_koszul_check(uint64_t seed) {
    KoszulCheck check;
    check.chain_exact = true;
    constexpr TupleKind kinds[] = {TupleKind::Diagonal, TupleKind::Triangular,
                                   TupleKind::PolynomialInOne, TupleKind::Nilpotent};
    uint64_t salt = 0xe5;
    for (int n = 1; n <= 3; ++n) {
        for (TupleKind kind : kinds) {
            for (int dim : {2, 3, 5}) {
                GeneratorSpec spec{kind, dim, n, mix_seed(seed, salt++), 1.0, false};
                const OperatorTuple t = generate_commuting_tuple(spec);
                Rng rng(mix_seed(seed, salt++));
                std::vector<cplx> lambda(n);
                for (cplx& z : lambda)
                    z = cplx(static_cast<double>(rng.uniform_int(-2, 2)),
                             static_cast<double>(rng.uniform_int(-2, 2)));
                for (const std::vector<cplx>& lam :
                     {std::vector<cplx>(n, cplx(0.0, 0.0)), lambda}) {
                    const KoszulComplexRep k = build_koszul(t, lam);
                    for (int j = 0; j + 1 < n; ++j) {
                        const double norm = (k.boundaries[j + 1] * k.boundaries[j]).frobenius_norm();
                        check.max_chain_norm = std::max(check.max_chain_norm, norm);
                        if (norm != 0.0) check.chain_exact = false;
                    }
                }
            }
        }
    }
    check.zero_tuple_homology = true;
    for (int d = 1; d <= 8; ++d) {
        const OperatorTuple zero = validate_commuting({Matrix(d, d), Matrix(d, d)});
        const HomologyProfile h =
            homology_dimensions(build_koszul(zero, {cplx(0, 0), cplx(0, 0)}));
        if (h.dims != std::vector<int>{d, 2 * d, d}) check.zero_tuple_homology = false;
    }
    return check;
}

}  // namespace

std::vector<ShiftDemoCase> truncated_shift_demo(const std::vector<int>& dims) {
    std::vector<ShiftDemoCase> out;
    for (int n : dims) {
        if (n < 3) throw InvalidSpec("truncated_shift_demo: dimensions must be >= 3");
        Matrix t(n, n);
        for (int k = 0; k + 1 < n; ++k) t(k, k + 1) = 1.0;  // T e_{k+1} = e_k
        const Matrix transformed = classical_aluthge(t);
        ShiftDemoCase c;
        c.n = n;
        c.corank = n - numerical_rank(t);
        c.corank_transformed = n - numerical_rank(transformed);
        c.sigma_min = smallest_nonzero_singular_value(t);
        c.sigma_min_transformed = smallest_nonzero_singular_value(transformed);
        c.sigma_ratio = c.sigma_min > 0.0 ? c.sigma_min_transformed / c.sigma_min : 0.0;
        out.push_back(c);
    }
    return out;
}

VerificationReport run_verification_suite(const SuiteConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.config = config;

    for (int i = 0; i < config.count; ++i) {
        GeneratorSpec spec;
        spec.kind = config.kinds[i % config.kinds.size()];
        spec.dim = config.dims[(i / config.kinds.size()) % config.dims.size()];
        spec.n = config.n;
        spec.seed = mix_seed(config.seed, static_cast<uint64_t>(i) + 1);
        spec.unitary_conjugate = (i % 2 == 1);
        report.cases.push_back(run_case(spec, config.tol));
    }
    report.n1_cases = run_n1_sweep(config.n1_count, config.seed);
    report.shift_demo = truncated_shift_demo(config.shift_dims);
    report.koszul = run_koszul_check(config.seed);

    report.all_pass = true;
    for (size_t i = 0; i < report.cases.size(); ++i) {
        const CaseResult& c = report.cases[i];
        if (c.singular_p) ++report.singular_p_count;
        if (c.left_invertible_hypothesis) ++report.hypothesis_count;
        report.index_evaluations += c.index_evaluations;
        const std::pair<const char*, const CheckResult*> checks[] = {
            {"crisscross_identity", &c.crisscross_identity},           {"ba_identity", &c.ba_identity},
            {"rank_implication", &c.rank_implication},       {"origin_equivalence", &c.origin_equivalence},
            {"spectrum_match", &c.spectrum_match},       {"product_spectra", &c.product_spectra},
            {"index_sweep", &c.index_sweep}, {"polydisc", &c.polydisc}};
        for (const auto& [name, res] : checks) {
            if (!res->pass) {
                report.failures.push_back("case " + std::to_string(i) + " (" +
                                          to_string(c.spec.kind) + ", dim " +
                                          std::to_string(c.spec.dim) + ", seed " +
                                          std::to_string(c.spec.seed) + "): " + name);
                report.all_pass = false;
            }
        }
        if (!c.error.empty()) {
            report.failures.push_back("case " + std::to_string(i) + " (seed " +
                                      std::to_string(c.spec.seed) + "): error: " + c.error);
            report.all_pass = false;
        }
    }
    for (const N1Case& c : report.n1_cases) {
        if (!c.pass) {
            report.failures.push_back("n1 case (" + c.kind + ", dim " + std::to_string(c.dim) +
                                      ", seed " + std::to_string(c.seed) + ")");
            report.all_pass = false;
        }
    }
    for (const ShiftDemoCase& c : report.shift_demo) {
        if (!(c.corank == 1 && c.corank_transformed == 2)) {
            report.failures.push_back("shift demo N = " + std::to_string(c.n));
            report.all_pass = false;
        }
    }
    if (!report.koszul.chain_exact || !report.koszul.zero_tuple_homology) {
        report.failures.push_back("koszul structural check");
        report.all_pass = false;
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

// --- JSON emission ---

namespace {

json spec_json(const GeneratorSpec& s) {
    return {{"kind", to_string(s.kind)}, {"dim", s.dim},     {"n", s.n},
            {"seed", s.seed},            {"scale", s.scale}, {"unitary_conjugate", s.unitary_conjugate}};
}

json check_json(const CheckResult& c) {
    return {{"pass", c.pass},
            {"defect", std::isfinite(c.defect) ? json(c.defect) : json("inf")}};
}

json point_json(const Point& p) {
    json out = json::array();
    for (const cplx& z : p) out.push_back(json::array({z.real(), z.imag()}));
    return out;
}

json spectrum_json(const JointSpectrum& s) {
    json points = json::array();
    for (size_t i = 0; i < s.points.size(); ++i) {
        json entry = {{"point", point_json(s.points[i])},
                      {"multiplicity", s.multiplicities[i]}};
        if (i < s.homology_profiles.size()) {
            entry["homology"] = s.homology_profiles[i].dims;
            entry["ranks"] = s.homology_profiles[i].ranks;
        }
        points.push_back(std::move(entry));
    }
    return {{"points", std::move(points)}, {"polydisc_radii", s.polydisc_radii}};
}

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_timings) {
    json cases = json::array();
    for (const CaseResult& c : report.cases) {
        cases.push_back({{"spec", spec_json(c.spec)},
                         {"rank_p", c.rank_p},
                         {"singular_p", c.singular_p},
                         {"left_invertible_hypothesis", c.left_invertible_hypothesis},
                         {"spectrum_size", c.spectrum_size},
                         {"index_evaluations", c.index_evaluations},
                         {"crisscross_identity", check_json(c.crisscross_identity)},
                         {"ba_identity", check_json(c.ba_identity)},
                         {"rank_implication", check_json(c.rank_implication)},
                         {"origin_equivalence", check_json(c.origin_equivalence)},
                         {"spectrum_match", check_json(c.spectrum_match)},
                         {"product_spectra", check_json(c.product_spectra)},
                         {"index_sweep", check_json(c.index_sweep)},
                         {"polydisc", check_json(c.polydisc)},
                         {"error", c.error}});
    }
    json n1 = json::array();
    for (const N1Case& c : report.n1_cases)
        n1.push_back({{"kind", c.kind},
                      {"dim", c.dim},
                      {"seed", c.seed},
                      {"hausdorff", c.hausdorff},
                      {"pass", c.pass}});
    json shift = json::array();
    for (const ShiftDemoCase& c : report.shift_demo)
        shift.push_back({{"n", c.n},
                         {"corank", c.corank},
                         {"corank_transformed", c.corank_transformed},
                         {"sigma_min", c.sigma_min},
                         {"sigma_min_transformed", c.sigma_min_transformed},
                         {"sigma_ratio", c.sigma_ratio}});

    std::map<std::string, int> by_kind;
    std::map<std::string, int> by_dim;
    for (const CaseResult& c : report.cases) {
        ++by_kind[to_string(c.spec.kind)];
        ++by_dim[std::to_string(c.spec.dim)];
    }

    json doc = {
        {"config",
         {{"count", report.config.count},
          {"dims", report.config.dims},
          {"kinds",
           [&] {
               json k = json::array();
               for (TupleKind kind : report.config.kinds) k.push_back(to_string(kind));
               return k;
           }()},
          {"n", report.config.n},
          {"seed", report.config.seed},
          {"tol", report.config.tol ? json(*report.config.tol) : json(nullptr)},
          {"ctol", report.config.ctol ? json(*report.config.ctol) : json(nullptr)},
          {"n1_count", report.config.n1_count},
          {"shift_dims", report.config.shift_dims}}},
        {"cases", std::move(cases)},
        {"n1_cases", std::move(n1)},
        {"shift_demo", std::move(shift)},
        {"koszul",
         {{"chain_exact", report.koszul.chain_exact},
          {"max_chain_norm", report.koszul.max_chain_norm},
          {"zero_tuple_homology", report.koszul.zero_tuple_homology}}},
        {"summary",
         {{"all_pass", report.all_pass},
          {"by_kind", by_kind},
          {"by_dim", by_dim},
          {"singular_p_count", report.singular_p_count},
          {"hypothesis_count", report.hypothesis_count},
          {"index_evaluations", report.index_evaluations},
          {"failures", report.failures}}}};
    if (include_timings) doc["timings"] = {{"elapsed_seconds", report.elapsed_seconds}};
    return doc.dump(2) + "\n";
}

std::string spectrum_to_json(const JointSpectrum& s) { return spectrum_json(s).dump(2) + "\n"; }

std::string spectrum_to_csv(const JointSpectrum& s) {
    std::ostringstream out;
    const size_t n = s.points.empty() ? 0 : s.points.front().size();
    for (size_t i = 0; i < n; ++i) out << "re_" << i + 1 << ",im_" << i + 1 << ",";
    out << "multiplicity\n";
    out.precision(17);
    for (size_t i = 0; i < s.points.size(); ++i) {
        for (const cplx& z : s.points[i]) out << z.real() << "," << z.imag() << ",";
        out << s.multiplicities[i] << "\n";
    }
    return out.str();
}

std::string comparison_to_json(const SpectrumComparison& c) {
    json unmatched = json::array();
    for (const Point& p : c.unmatched_points) unmatched.push_back(point_json(p));
    json doc = {{"left", spectrum_json(c.left)},
                {"right", spectrum_json(c.right)},
                {"matched", c.matched},
                {"hausdorff_distance", std::isfinite(c.hausdorff_distance)
                                           ? json(c.hausdorff_distance)
                                           : json("inf")},
                {"unmatched_points", std::move(unmatched)}};
    return doc.dump(2) + "\n";
}

std::string homology_to_json(const HomologyProfile& h, const std::vector<cplx>& lambda) {
    json lam = json::array();
    for (const cplx& z : lambda) lam.push_back(json::array({z.real(), z.imag()}));
    json doc = {{"lambda", std::move(lam)},
                {"dims", h.dims},
                {"ranks", h.ranks},
                {"tol_used", h.tol_used}};
    return doc.dump(2) + "\n";
}

}  // namespace sphalu
