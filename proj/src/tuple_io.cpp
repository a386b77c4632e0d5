#include "sphalu/tuple_io.hpp"

#include <fstream>

#include <json.hpp>

namespace sphalu {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            entries.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw ParseError(where + ": expected object with rows/cols/entries");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows < 1 || cols < 1) throw ParseError(where + ": rows and cols must be positive");
    const json& entries = j.at("entries");
    if (!entries.is_array() ||
        entries.size() != static_cast<size_t>(rows) * static_cast<size_t>(cols))
        throw ParseError(where + ": entry count " + std::to_string(entries.size()) +
                         " does not match rows*cols = " + std::to_string(rows * cols));
    Matrix m(rows, cols);
    size_t idx = 0;
    for (int i = 0; i < rows; ++i) {
        for (int j2 = 0; j2 < cols; ++j2, ++idx) {
            const json& e = entries[idx];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw ParseError(where + ": entry " + std::to_string(idx) +
                                 " is not a [re, im] pair");
            m(i, j2) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!m.all_finite()) throw ParseError(where + ": non-finite entry");
    return m;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

}  // namespace

OperatorTuple load_tuple(const std::string& path, std::optional<double> ctol) {
    const json j = read_file(path);
    if (!j.contains("dim") || !j.contains("n") || !j.contains("operators"))
        throw ParseError(path + ": expected dim/n/operators");
    const int dim = j.at("dim").get<int>();
    const int n = j.at("n").get<int>();
    const json& ops_json = j.at("operators");
    if (!ops_json.is_array() || static_cast<int>(ops_json.size()) != n)
        throw ParseError(path + ": operators array length does not match n");
    std::vector<Matrix> ops;
    for (int i = 0; i < n; ++i) {
        Matrix m = matrix_from_json(ops_json[i], path + ": operator " + std::to_string(i));
        if (m.rows() != dim || m.cols() != dim)
            throw DimensionMismatch(path + ": operator " + std::to_string(i) +
                                    " is not dim x dim");
        ops.push_back(std::move(m));
    }
    return validate_commuting(std::move(ops), ctol);  // NotCommuting carries the defect
}

void save_tuple(const OperatorTuple& t, const std::string& path) {
    json ops = json::array();
    for (const Matrix& m : t.operators) ops.push_back(matrix_to_json(m));
    write_file({{"dim", t.dim}, {"n", t.n}, {"operators", std::move(ops)}}, path);
}

Matrix load_matrix(const std::string& path) { return matrix_from_json(read_file(path), path); }

void save_matrix(const Matrix& m, const std::string& path) { write_file(matrix_to_json(m), path); }

}  // namespace sphalu
