#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphalu/generator.hpp"
#include "sphalu/spectra.hpp"

namespace sphalu {

struct SuiteConfig {
    int count = 200;
    std::vector<int> dims = {2, 3, 4, 5, 6, 7, 8};
    std::vector<TupleKind> kinds = {TupleKind::Diagonal, TupleKind::Triangular,
                                    TupleKind::PolynomialInOne, TupleKind::Nilpotent,
                                    TupleKind::JointKernel};
    int n = 2;
    uint64_t seed = 42;
    std::optional<double> tol;   // rank tolerance override for explicit rank reads
    std::optional<double> ctol;  // commutativity tolerance override
    int n1_count = 120;          // single-operator Aluthge spectrum sweep size
    std::vector<int> shift_dims = {3, 4, 8, 16, 32, 64};
};

struct CheckResult {
    bool pass = true;
    double defect = 0.0;
};

// One corpus case; carries the full GeneratorSpec needed to reproduce it.
struct CaseResult {
    GeneratorSpec spec;
    int rank_p = 0;
    bool singular_p = false;
    bool left_invertible_hypothesis = false;
    CheckResult crisscross_identity;       // canonical pair criss-cross defect
    CheckResult ba_identity;  // AB = transform, BA = original
    CheckResult rank_implication;
    CheckResult origin_equivalence;
    CheckResult spectrum_match;  // Hausdorff distance of the two Taylor spectra
    CheckResult product_spectra;    // spectra of AB and BA away from 0
    CheckResult index_sweep;
    CheckResult polydisc;
    int index_evaluations = 0;
    int spectrum_size = 0;
    std::string error;  // nonempty when a check aborted with an exception
};

struct N1Case {
    std::string kind;
    int dim = 0;
    uint64_t seed = 0;
    double hausdorff = 0.0;
    bool pass = false;
};

struct ShiftDemoCase {
    int n = 0;
    int corank = 0;
    int corank_transformed = 0;
    double sigma_min = 0.0;
    double sigma_min_transformed = 0.0;
    double sigma_ratio = 0.0;
};

struct KoszulCheck {
    bool chain_exact = false;       // ||D_{k+1} D_k||_F == 0 on integer tuples
    double max_chain_norm = 0.0;
    bool zero_tuple_homology = false;  // (0,0) on C^d gives (d, 2d, d)
};

struct VerificationReport {
    SuiteConfig config;
    std::vector<CaseResult> cases;
    std::vector<N1Case> n1_cases;
    std::vector<ShiftDemoCase> shift_demo;
    KoszulCheck koszul;
    // summary
    bool all_pass = false;
    int singular_p_count = 0;
    int hypothesis_count = 0;
    long index_evaluations = 0;
    std::vector<std::string> failures;
    double elapsed_seconds = 0.0;
};

// Finite-rank echo of the unilateral-shift counterexample: the corank of the
// truncated shift adjoint strictly increases under the Aluthge transform.
std::vector<ShiftDemoCase> truncated_shift_demo(const std::vector<int>& dims);

VerificationReport run_verification_suite(const SuiteConfig& config);

// JSON document; timings are kept in a separate key so reports can be
// compared with them stripped.
std::string report_to_json(const VerificationReport& report, bool include_timings = true);

std::string spectrum_to_json(const JointSpectrum& s);
std::string spectrum_to_csv(const JointSpectrum& s);
std::string comparison_to_json(const SpectrumComparison& c);
std::string homology_to_json(const HomologyProfile& h, const std::vector<cplx>& lambda);

}  // namespace sphalu
