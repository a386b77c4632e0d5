#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sphalu/generator.hpp"
#include "sphalu/koszul.hpp"
#include "sphalu/tuple_io.hpp"
#include "sphalu/verify.hpp"
#include "test_util.hpp"

using namespace sphalu;
using testutil::make_matrix;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/sphalu_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("generated tuples are reproduced bit-for-bit from their spec") {
    const GeneratorSpec spec{TupleKind::Diagonal, 3, 2, 7, 1.0, false};
    const OperatorTuple a = generate_commuting_tuple(spec);
    const OperatorTuple b = generate_commuting_tuple(spec);
    for (int i = 0; i < a.n; ++i)
        for (size_t k = 0; k < a.operators[i].data().size(); ++k)
            CHECK(a.operators[i].data()[k] == b.operators[i].data()[k]);
}

TEST_CASE("every generator kind commutes within the construction bound") {
    for (TupleKind kind : {TupleKind::Diagonal, TupleKind::Triangular,
                           TupleKind::PolynomialInOne, TupleKind::Nilpotent,
                           TupleKind::JointKernel}) {
        for (uint64_t seed : {1u, 2u, 3u, 4u}) {
            for (double scale : {1.0, 0.25}) {
                const OperatorTuple t =
                    generate_commuting_tuple({kind, 5, 2, seed, scale, seed % 2 == 1});
                CHECK(t.commutator_defect <= 1e-12 * scale * scale);
            }
        }
    }
}

TEST_CASE("joint-kernel tuples have singular P and a nontrivial joint kernel") {
    for (uint64_t seed : {10u, 20u, 30u}) {
        const OperatorTuple t =
            generate_commuting_tuple({TupleKind::JointKernel, 4, 2, seed, 1.0, false});
        const auto polar = joint_polar_decompose(t);
        CHECK(numerical_rank(polar.p) < t.dim);
        CHECK(numerical_rank(stacked_column(t, {0.0, 0.0})) < t.dim);
    }
}

TEST_CASE("polynomial-in-one tuples commute exactly in floating point") {
    for (uint64_t seed : {5u, 15u, 25u}) {
        const OperatorTuple t =
            generate_commuting_tuple({TupleKind::PolynomialInOne, 5, 2, seed, 1.0, false});
        CHECK(t.commutator_defect == 0.0);
    }
}

TEST_CASE("generator rejects invalid specs") {
    CHECK_THROWS_AS(generate_commuting_tuple({TupleKind::Diagonal, 0, 2, 1, 1.0, false}),
                    InvalidSpec);
    CHECK_THROWS_AS(generate_commuting_tuple({TupleKind::Diagonal, 65, 2, 1, 1.0, false}),
                    InvalidSpec);
    CHECK_THROWS_AS(generate_commuting_tuple({TupleKind::Diagonal, 3, 5, 1, 1.0, false}),
                    InvalidSpec);
    CHECK_THROWS_AS(generate_commuting_tuple({TupleKind::Diagonal, 3, 2, 1, 0.0, false}),
                    InvalidSpec);
    CHECK_THROWS_AS(kind_from_string("weird"), InvalidSpec);
    CHECK(kind_from_string(to_string(TupleKind::JointKernel)) == TupleKind::JointKernel);
}

TEST_CASE("truncated shift demo coranks at small sizes match hand computation") {
    const auto demo = truncated_shift_demo({3, 4, 8, 16, 32});
    REQUIRE(demo.size() == 5);
    for (const auto& c : demo) {
        CHECK(c.corank == 1);
        CHECK(c.corank_transformed == 2);
        CHECK(c.sigma_min > 0.0);
        CHECK(c.sigma_min_transformed > 0.0);
        CHECK(c.sigma_ratio > 0.0);
    }
    CHECK_THROWS_AS(truncated_shift_demo({2}), InvalidSpec);
}

TEST_CASE("tuple save/load round trip is byte-identical") {
    const OperatorTuple t =
        generate_commuting_tuple({TupleKind::Triangular, 4, 2, 99, 1.0, true});
    TempFile f1("roundtrip1.json"), f2("roundtrip2.json");
    save_tuple(t, f1.path);
    const OperatorTuple loaded = load_tuple(f1.path);
    save_tuple(loaded, f2.path);
    CHECK(slurp(f1.path) == slurp(f2.path));
    for (int i = 0; i < t.n; ++i)
        for (size_t k = 0; k < t.operators[i].data().size(); ++k)
            CHECK(t.operators[i].data()[k] == loaded.operators[i].data()[k]);
}

TEST_CASE("malformed tuple files raise ParseError naming the matrix") {
    TempFile f("malformed.json");
    {
        std::ofstream out(f.path);
        out << R"({"dim": 2, "n": 1, "operators": [{"rows": 2, "cols": 2,)"
            << R"( "entries": [[1, 0], [0, 0], [0, 0]]}]})";
    }
    bool threw = false;
    try {
        load_tuple(f.path);
    } catch (const ParseError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("operator 0") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("non-commuting tuple files raise NotCommuting with the defect") {
    TempFile f("noncommuting.json");
    {
        std::ofstream out(f.path);
        out << R"({"dim": 2, "n": 2, "operators": [)"
            << R"({"rows": 2, "cols": 2, "entries": [[0,0],[1,0],[0,0],[0,0]]},)"
            << R"({"rows": 2, "cols": 2, "entries": [[0,0],[0,0],[1,0],[0,0]]}]})";
    }
    bool threw = false;
    try {
        load_tuple(f.path);
    } catch (const NotCommuting& e) {
        threw = true;
        CHECK(e.defect > 0.5);
    }
    CHECK(threw);
}

TEST_CASE("verification suite passes on a reduced corpus and is deterministic") {
    SuiteConfig config;
    config.count = 25;
    config.n1_count = 12;
    config.shift_dims = {3, 4};
    config.seed = 2024;

    const VerificationReport a = run_verification_suite(config);
    CHECK(a.all_pass);
    CHECK(a.failures.empty());
    CHECK(a.cases.size() == 25);
    CHECK(a.n1_cases.size() == 12);

    const VerificationReport b = run_verification_suite(config);
    CHECK(report_to_json(a, false) == report_to_json(b, false));

    // timings live in a separate key and never affect the comparison payload
    CHECK(report_to_json(a, true).find("timings") != std::string::npos);
    CHECK(report_to_json(a, false).find("timings") == std::string::npos);
}

TEST_CASE("verification report records reproduction specs per case") {
    SuiteConfig config;
    config.count = 6;
    config.n1_count = 0;
    config.shift_dims = {3};
    const VerificationReport r = run_verification_suite(config);
    for (const CaseResult& c : r.cases) {
        const OperatorTuple again = generate_commuting_tuple(c.spec);
        CHECK(again.dim == c.spec.dim);
    }
    const std::string json = report_to_json(r);
    CHECK(json.find("\"seed\"") != std::string::npos);
    CHECK(json.find("\"kind\"") != std::string::npos);
}

TEST_CASE("spectrum CSV export carries one row per point") {
    const OperatorTuple t =
        validate_commuting({Matrix::diagonal({1.0, 2.0}), Matrix::diagonal({3.0, 4.0})});
    const JointSpectrum s = taylor_spectrum(t, 5);
    const std::string csv = spectrum_to_csv(s);
    CHECK(csv.find("re_1,im_1,re_2,im_2,multiplicity") == 0);
    int newlines = 0;
    for (char ch : csv) newlines += (ch == '\n');
    CHECK(newlines == 1 + static_cast<int>(s.points.size()));
}
