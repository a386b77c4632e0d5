// Acceptance gate: the eleven suite-level criteria, each printed as a single
// [PASS]/[FAIL] line. Exit status is nonzero when any criterion fails.

#include <cstdio>
#include <string>
#include <vector>

#include "sphalu/verify.hpp"

using namespace sphalu;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

bool all(const std::vector<CaseResult>& cases, const CheckResult CaseResult::* check) {
    for (const CaseResult& c : cases)
        if (!(c.*check).pass || !c.error.empty()) return false;
    return true;
}

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

}  // namespace

int main() {
    SuiteConfig config;  // 200 tuples, dims 2-8, all five kinds, seed 42
    config.shift_dims = {3, 4, 8, 16, 32, 64};

    const VerificationReport r = run_verification_suite(config);
    const VerificationReport r2 = run_verification_suite(config);

    const int total = static_cast<int>(r.cases.size());
    double max_hausdorff = 0.0;
    for (const CaseResult& c : r.cases)
        if (c.spectrum_match.defect > max_hausdorff) max_hausdorff = c.spectrum_match.defect;

    // 1. Taylor-spectrum invariance under the spherical transform, with at
    //    least a fifth of the corpus having singular P.
    report(1, "spectrum invariance over 200-tuple corpus",
           total >= 200 && all(r.cases, &CaseResult::spectrum_match) &&
               r.singular_p_count * 5 >= total && r.elapsed_seconds <= 120.0,
           std::to_string(total) + " tuples, " + std::to_string(r.singular_p_count) +
               " singular P, max Hausdorff " + fmt("%.3e", max_hausdorff) + ", " +
               fmt("%.2f s", r.elapsed_seconds));

    // 2. Invertibility at the origin is equivalent for T and its transform.
    report(2, "origin invertibility equivalence",
           all(r.cases, &CaseResult::origin_equivalence),
           "100% of corpus incl. joint-kernel cases");

    // 3. Left invertibility of T or its transform forces rank(P) = d; the
    //    hypothesis must be non-vacuous on at least 30 cases.
    report(3, "left invertibility implies full-rank P",
           all(r.cases, &CaseResult::rank_implication) && r.hypothesis_count >= 30,
           std::to_string(r.hypothesis_count) + " non-vacuous cases, 0 counterexamples");

    // 4. Canonical pair criss-cross commutes and factors both tuples.
    bool c4 = true;
    double max_cc = 0.0, max_ba = 0.0;
    for (const CaseResult& c : r.cases) {
        c4 = c4 && c.crisscross_identity.pass && c.ba_identity.pass && c.error.empty();
        if (c.crisscross_identity.defect > max_cc) max_cc = c.crisscross_identity.defect;
        if (c.ba_identity.defect > max_ba) max_ba = c.ba_identity.defect;
    }
    report(4, "canonical criss-cross pair identities", c4,
           "max criss-cross defect " + fmt("%.3e", max_cc) + ", max AB/BA defect " +
               fmt("%.3e", max_ba));

    // 5. Spectra of AB and BA agree away from zero for the canonical pair.
    report(5, "product spectra agree off zero", all(r.cases, &CaseResult::product_spectra),
           "every corpus tuple");

    // 6. Fredholm index identically zero at spectrum and exterior points.
    report(6, "index zero everywhere sampled",
           all(r.cases, &CaseResult::index_sweep) && r.index_evaluations >= 2000,
           std::to_string(r.index_evaluations) + " evaluations, zero anomalies");

    // 7. Every computed spectrum is nonempty and inside its polydisc.
    report(7, "polydisc containment and nonemptiness",
           all(r.cases, &CaseResult::polydisc), "1e-8 slack");

    // 8. Koszul chain products vanish exactly on integer tuples; zero pair
    //    on C^d has homology (d, 2d, d) for d = 1..8.
    report(8, "Koszul chain exactness and zero-tuple homology",
           r.koszul.chain_exact && r.koszul.max_chain_norm == 0.0 &&
               r.koszul.zero_tuple_homology,
           "max chain norm " + fmt("%.1e", r.koszul.max_chain_norm));

    // 9. Truncated shift adjoint: corank 1 -> 2 for N in {3,4,8,16,32,64}.
    bool c9 = r.shift_demo.size() == 6;
    for (const ShiftDemoCase& c : r.shift_demo)
        c9 = c9 && c.corank == 1 && c.corank_transformed == 2;
    report(9, "shift demo corank growth 1 -> 2", c9, "N in {3,4,8,16,32,64}");

    // 10. Single-operator transform preserves eigenvalue sets, including
    //     singular and nilpotent instances.
    bool c10 = r.n1_cases.size() >= 100;
    int singular_like = 0;
    for (const N1Case& c : r.n1_cases) {
        c10 = c10 && c.pass;
        if (c.kind == "singular" || c.kind == "nilpotent") ++singular_like;
    }
    report(10, "single-operator spectrum equality", c10 && singular_like >= 40,
           std::to_string(r.n1_cases.size()) + " matrices, " +
               std::to_string(singular_like) + " singular/nilpotent");

    // 11. Bitwise determinism of the report with timings stripped.
    report(11, "deterministic reports at fixed seed",
           report_to_json(r, false) == report_to_json(r2, false),
           "two seed-42 runs compared");

    if (failures == 0) {
        std::printf("all 11 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
