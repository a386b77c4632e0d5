#pragma once

#include <cstdint>
#include <string>

#include "sphalu/transforms.hpp"

namespace sphalu {

enum class TupleKind {
    Diagonal,
    Triangular,
    PolynomialInOne,
    Nilpotent,
    JointKernel,
};

std::string to_string(TupleKind kind);
TupleKind kind_from_string(const std::string& name);  // throws InvalidSpec

// Everything needed to reproduce a generated tuple bit-for-bit.
struct GeneratorSpec {
    TupleKind kind = TupleKind::Diagonal;
    int dim = 2;
    int n = 2;
    uint64_t seed = 0;
    double scale = 1.0;
    bool unitary_conjugate = false;
};

// Exactly commuting constructions over Gaussian integers, so commutators
// cancel to the last bit and downstream chain conditions hold exactly.
// Nilpotent tuples are scaled monomials in the basic shift; they stay
// strictly upper triangular through the whole transform pipeline, which
// keeps their (defective) spectra computable at desk tolerances.
OperatorTuple generate_commuting_tuple(const GeneratorSpec& spec);

}  // namespace sphalu
