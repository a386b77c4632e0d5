#pragma once

#include <optional>
#include <string>

#include "sphalu/transforms.hpp"

namespace sphalu {

// Tuple file schema:
//   { "dim": d, "n": n,
//     "operators": [ { "rows": d, "cols": d, "entries": [[re, im], ...] }, ... ] }
// Entries are row-major IEEE-754 doubles; canonical formatting is the
// shortest round-trip representation, so save/load is bit-exact.

OperatorTuple load_tuple(const std::string& path, std::optional<double> ctol = std::nullopt);
void save_tuple(const OperatorTuple& t, const std::string& path);

Matrix load_matrix(const std::string& path);
void save_matrix(const Matrix& m, const std::string& path);

}  // namespace sphalu
