// Command-line driver: transform / spectrum / compare / koszul / verify /
// demo shift. Exit codes: 0 success, 1 verification failure, 2 input or
// parse error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphalu/generator.hpp"
#include "sphalu/koszul.hpp"
#include "sphalu/spectra.hpp"
#include "sphalu/transforms.hpp"
#include "sphalu/tuple_io.hpp"
#include "sphalu/verify.hpp"

namespace {

using namespace sphalu;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalFailure = 3;

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << text;
}

std::vector<TupleKind> parse_kinds(const std::vector<std::string>& names) {
    std::vector<TupleKind> kinds;
    for (const std::string& name : names) kinds.push_back(kind_from_string(name));
    return kinds;
}

struct CommonOpts {
    std::optional<double> tol;
    std::optional<double> ctol;

    void attach(CLI::App* app) {
        app->add_option_function<double>(
            "--tol", [this](double v) { tol = v; }, "rank tolerance override");
        app->add_option_function<double>(
            "--ctol", [this](double v) { ctol = v; }, "commutativity tolerance override");
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Spherical Aluthge transforms, Koszul complexes and Taylor "
                 "spectra of commuting matrix tuples"};
    app.require_subcommand(1);

    // --- transform ---
    auto* transform = app.add_subcommand(
        "transform", "Joint polar decomposition and spherical Aluthge transform of a tuple");
    std::string transform_input;
    std::string transform_out = "transform";
    CommonOpts transform_opts;
    transform->add_option("input", transform_input, "tuple JSON file")->required();
    transform->add_option("--out", transform_out, "output path prefix");
    transform_opts.attach(transform);
    transform->callback([&] {
        const OperatorTuple t = load_tuple(transform_input, transform_opts.ctol);
        const JointPolar polar = joint_polar_decompose(t);
        const OperatorTuple transformed = spherical_aluthge(t, transform_opts.ctol);
        save_matrix(polar.p, transform_out + "_p.json");
        for (int i = 0; i < t.n; ++i)
            save_matrix(polar.isometries[i], transform_out + "_v" + std::to_string(i) + ".json");
        save_tuple(transformed, transform_out + "_transformed.json");
        std::cout << "wrote " << transform_out << "_p.json, " << t.n
                  << " isometry file(s) and " << transform_out << "_transformed.json\n";
    });

    // --- spectrum ---
    auto* spectrum = app.add_subcommand("spectrum", "Taylor spectrum of a tuple");
    std::string spectrum_input, spectrum_out, spectrum_format = "json";
    uint64_t spectrum_seed = 42;
    CommonOpts spectrum_opts;
    spectrum->add_option("input", spectrum_input, "tuple JSON file")->required();
    spectrum->add_option("--seed", spectrum_seed, "triangularization seed");
    spectrum->add_option("--out", spectrum_out, "output path (default stdout)");
    spectrum->add_option("--format", spectrum_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    spectrum_opts.attach(spectrum);
    spectrum->callback([&] {
        const OperatorTuple t = load_tuple(spectrum_input, spectrum_opts.ctol);
        const JointSpectrum s = taylor_spectrum(t, spectrum_seed);
        write_text(spectrum_out,
                   spectrum_format == "csv" ? spectrum_to_csv(s) : spectrum_to_json(s));
    });

    // --- compare ---
    auto* compare = app.add_subcommand(
        "compare", "Compare the Taylor spectra of a tuple and of its transform");
    std::string compare_input, compare_out;
    uint64_t compare_seed = 42;
    CommonOpts compare_opts;
    bool compare_matched = true;
    compare->add_option("input", compare_input, "tuple JSON file")->required();
    compare->add_option("--seed", compare_seed, "triangularization seed");
    compare->add_option("--out", compare_out, "output path (default stdout)");
    compare_opts.attach(compare);
    compare->callback([&] {
        const OperatorTuple t = load_tuple(compare_input, compare_opts.ctol);
        const SpectrumComparison c = compare_taylor_spectra(t, compare_seed);
        write_text(compare_out, comparison_to_json(c));
        compare_matched = c.matched;
    });

    // --- koszul ---
    auto* koszul = app.add_subcommand(
        "koszul", "Homology profile of the Koszul complex of (T - lambda)");
    std::string koszul_input, koszul_out;
    std::vector<double> koszul_lambda;
    CommonOpts koszul_opts;
    koszul->add_option("input", koszul_input, "tuple JSON file")->required();
    koszul->add_option("--lambda", koszul_lambda,
                       "base point as re,im pairs (2n values, default 0)")
        ->delimiter(',');
    koszul->add_option("--out", koszul_out, "output path (default stdout)");
    koszul_opts.attach(koszul);
    koszul->callback([&] {
        const OperatorTuple t = load_tuple(koszul_input, koszul_opts.ctol);
        std::vector<cplx> lambda(t.n, cplx(0.0, 0.0));
        if (!koszul_lambda.empty()) {
            if (static_cast<int>(koszul_lambda.size()) != 2 * t.n)
                throw ParseError("--lambda needs exactly " + std::to_string(2 * t.n) +
                                 " values for n = " + std::to_string(t.n));
            for (int i = 0; i < t.n; ++i)
                lambda[i] = cplx(koszul_lambda[2 * i], koszul_lambda[2 * i + 1]);
        }
        const HomologyProfile h =
            homology_dimensions(build_koszul(t, lambda), koszul_opts.tol);
        write_text(koszul_out, homology_to_json(h, lambda));
    });

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "Run the verification suite over a corpus");
    SuiteConfig config;
    std::vector<std::string> verify_kinds;
    std::string verify_out;
    CommonOpts verify_opts;
    bool verify_all_pass = true;
    verify->add_option("--seed", config.seed, "corpus master seed");
    verify->add_option("--count", config.count, "number of corpus tuples")
        ->check(CLI::PositiveNumber);
    verify->add_option("--dims", config.dims, "dimensions to cycle through")->delimiter(',');
    verify->add_option("--kinds", verify_kinds,
                       "generator kinds: diagonal, triangular, polynomial-in-one, "
                       "nilpotent, joint-kernel")
        ->delimiter(',');
    verify->add_option("--out", verify_out, "report path (default stdout)");
    verify_opts.attach(verify);
    verify->callback([&] {
        if (!verify_kinds.empty()) config.kinds = parse_kinds(verify_kinds);
        config.tol = verify_opts.tol;
        config.ctol = verify_opts.ctol;
        const VerificationReport report = run_verification_suite(config);
        write_text(verify_out, report_to_json(report));
        std::cerr << (report.all_pass ? "all checks passed" : "FAILURES:") << "\n";
        for (const std::string& f : report.failures) std::cerr << "  " << f << "\n";
        verify_all_pass = report.all_pass;
    });

    // --- demo shift ---
    auto* demo = app.add_subcommand("demo", "Demonstrations");
    demo->require_subcommand(1);
    auto* shift = demo->add_subcommand(
        "shift", "Corank growth of the truncated shift adjoint under the Aluthge transform");
    std::vector<int> shift_dims = {3, 4, 8, 16, 32, 64};
    std::string shift_out;
    shift->add_option("--dims", shift_dims, "matrix sizes, each >= 3")->delimiter(',');
    shift->add_option("--out", shift_out, "output path (default stdout)");
    bool shift_pass = true;
    shift->callback([&] {
        std::ostringstream text;
        text << "N,corank,corank_transformed,sigma_min,sigma_min_transformed,sigma_ratio\n";
        text.precision(17);
        for (const ShiftDemoCase& c : truncated_shift_demo(shift_dims)) {
            text << c.n << "," << c.corank << "," << c.corank_transformed << ","
                 << c.sigma_min << "," << c.sigma_min_transformed << "," << c.sigma_ratio
                 << "\n";
            if (!(c.corank_transformed > c.corank)) shift_pass = false;
        }
        write_text(shift_out, text.str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    if (!compare_matched || !verify_all_pass || !shift_pass) return kExitVerificationFailure;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InvalidSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const NotSquare& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const KOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const NotCommuting& e) {
        std::cerr << "error: " << e.what() << " (defect " << e.defect << ")\n";
        return kExitInputError;
    } catch (const Error& e) {
        // convergence, certification, triangularization, anomalous index, ...
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
}
