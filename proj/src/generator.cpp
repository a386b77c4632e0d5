#include "sphalu/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sphalu/decomp.hpp"
#include "sphalu/rng.hpp"

namespace sphalu {

std::string to_string(TupleKind kind) {
    switch (kind) {
        case TupleKind::Diagonal: return "diagonal";
        case TupleKind::Triangular: return "triangular";
        case TupleKind::PolynomialInOne: return "polynomial-in-one";
        case TupleKind::Nilpotent: return "nilpotent";
        case TupleKind::JointKernel: return "joint-kernel";
    }
    throw InvalidSpec("unknown tuple kind");
}

TupleKind kind_from_string(const std::string& name) {
    if (name == "diagonal") return TupleKind::Diagonal;
    if (name == "triangular") return TupleKind::Triangular;
    if (name == "polynomial-in-one") return TupleKind::PolynomialInOne;
    if (name == "nilpotent") return TupleKind::Nilpotent;
    if (name == "joint-kernel") return TupleKind::JointKernel;
    throw InvalidSpec("unknown tuple kind: " + name);
}

namespace {

cplx gauss_int(Rng& rng, int lo, int hi) {
    return {static_cast<double>(rng.uniform_int(lo, hi)),
            static_cast<double>(rng.uniform_int(lo, hi))};
}

cplx gauss_int_nonzero(Rng& rng, int lo, int hi) {
    for (;;) {
        const cplx z = gauss_int(rng, lo, hi);
        if (z != cplx(0.0, 0.0)) return z;
    }
}

Matrix int_poly(const std::vector<Matrix>& powers, const std::vector<cplx>& coeffs) {
    Matrix r(powers[0].rows(), powers[0].cols());
    for (size_t k = 0; k < coeffs.size(); ++k) r = r + coeffs[k] * powers[k];
    return r;
}

std::vector<Matrix> make_diagonal(Rng& rng, int dim, int n) {
    std::vector<Matrix> ops;
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> diag(dim);
        for (cplx& z : diag) z = (i == 0) ? gauss_int_nonzero(rng, -3, 3) : gauss_int(rng, -3, 3);
        ops.push_back(Matrix::diagonal(diag));
    }
    return ops;
}

// Block upper-triangular: one base triangular matrix per block with distinct
// integer diagonal (keeps every block diagonalizable), the other operators
// are small integer polynomials in it.
std::vector<Matrix> make_triangular(Rng& rng, int dim, int n) {
    std::vector<Matrix> ops(n, Matrix(dim, dim));
    int offset = 0;
    while (offset < dim) {
        const int size = std::min(dim - offset, rng.uniform_int(1, 4));
        Matrix base(size, size);
        std::vector<int> pool(13);
        std::iota(pool.begin(), pool.end(), -6);
        for (int i = 0; i < size; ++i) {
            const int pick = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
            base(i, i) = static_cast<double>(pool[pick]);
            pool.erase(pool.begin() + pick);
        }
        for (int i = 0; i < size; ++i)
            for (int j = i + 1; j < size; ++j) base(i, j) = gauss_int(rng, -2, 2);

        const std::vector<Matrix> powers = {Matrix::identity(size), base, base * base};
        for (int i = 0; i < n; ++i) {
            Matrix block;
            if (i == 0) {
                block = base;
            } else {
                std::vector<cplx> coeffs(3);
                for (cplx& c : coeffs) c = gauss_int(rng, -2, 2);
                block = int_poly(powers, coeffs);
            }
            ops[i].set_block(offset, offset, block);
        }
        offset += size;
    }
    return ops;
}

std::vector<Matrix> make_polynomial_in_one(Rng& rng, int dim, int n) {
    Matrix m;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 60)
            throw InvalidSpec("generate_commuting_tuple: no well-separated base matrix found");
        m = Matrix(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = gauss_int(rng, -2, 2);
        if (dim == 1) break;
        const std::vector<cplx> evs = eigenvalues(m);
        double min_gap = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < evs.size(); ++i)
            for (size_t j = i + 1; j < evs.size(); ++j)
                min_gap = std::min(min_gap, std::abs(evs[i] - evs[j]));
        if (min_gap >= 1e-3 * (1.0 + m.frobenius_norm())) break;
    }
    const std::vector<Matrix> powers = {Matrix::identity(dim), m, m * m, m * m * m};
    std::vector<Matrix> ops;
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> coeffs(4);
        for (cplx& c : coeffs) c = gauss_int(rng, -2, 2);
        // A nonzero linear term keeps the base matrix recoverable from any
        // member, so random combinations triangularize the whole tuple.
        while (coeffs[1] == cplx(0.0, 0.0))
            coeffs[1] = cplx(static_cast<double>(rng.uniform_int(-2, 2)), 0.0);
        ops.push_back(int_poly(powers, coeffs));
    }
    return ops;
}

// Scaled monomials in the basic shift. Single-entry rows/columns keep the
// joint polar decomposition diagonal, so the transform of such a tuple is
// computed with an exactly strictly-upper-triangular result.
std::vector<Matrix> make_nilpotent(Rng& rng, int dim, int n) {
    std::vector<Matrix> ops;
    for (int i = 0; i < n; ++i) {
        Matrix op(dim, dim);
        if (dim > 1) {
            const int power = rng.uniform_int(1, dim - 1);
            const cplx weight = gauss_int_nonzero(rng, -3, 3);
            for (int k = 0; k + power < dim; ++k) op(k, k + power) = weight;
        }
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<Matrix> make_kind(Rng& rng, TupleKind kind, int dim, int n);

std::vector<Matrix> make_joint_kernel(Rng& rng, int dim, int n) {
    if (dim < 2) throw InvalidSpec("joint-kernel kind needs dim >= 2");
    const int pad = 1 + rng.uniform_int(0, std::min(2, dim - 1) - 1);
    constexpr TupleKind bases[] = {TupleKind::Diagonal, TupleKind::Triangular,
                                   TupleKind::PolynomialInOne, TupleKind::Nilpotent};
    const TupleKind base_kind = bases[rng.uniform_int(0, 3)];
    const std::vector<Matrix> base = make_kind(rng, base_kind, dim - pad, n);
    std::vector<Matrix> ops;
    for (const Matrix& b : base) {
        Matrix op(dim, dim);
        op.set_block(0, 0, b);
        ops.push_back(std::move(op));
    }
    return ops;
}

std::vector<Matrix> make_kind(Rng& rng, TupleKind kind, int dim, int n) {
    switch (kind) {
        case TupleKind::Diagonal: return make_diagonal(rng, dim, n);
        case TupleKind::Triangular: return make_triangular(rng, dim, n);
        case TupleKind::PolynomialInOne: return make_polynomial_in_one(rng, dim, n);
        case TupleKind::Nilpotent: return make_nilpotent(rng, dim, n);
        case TupleKind::JointKernel: return make_joint_kernel(rng, dim, n);
    }
    throw InvalidSpec("unknown tuple kind");
}

}  // namespace

OperatorTuple generate_commuting_tuple(const GeneratorSpec& spec) {
    if (spec.dim < 1 || spec.dim > 64) throw InvalidSpec("generator: dim must lie in [1, 64]");
    if (spec.n < 1 || spec.n > 4) throw InvalidSpec("generator: n must lie in [1, 4]");
    if (!(spec.scale > 0.0)) throw InvalidSpec("generator: scale must be positive");

    Rng rng(spec.seed);
    std::vector<Matrix> ops = make_kind(rng, spec.kind, spec.dim, spec.n);

    if (spec.unitary_conjugate) {
        // Exact unitary conjugation by a diagonal of fourth roots of unity;
        // preserves integrality and triangular structure.
        constexpr cplx units[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        std::vector<cplx> phase(spec.dim);
        for (cplx& p : phase) p = units[rng.uniform_int(0, 3)];
        for (Matrix& op : ops)
            for (int i = 0; i < spec.dim; ++i)
                for (int j = 0; j < spec.dim; ++j)
                    op(i, j) *= std::conj(phase[i]) * phase[j];
    }
    if (spec.scale != 1.0)
        for (Matrix& op : ops)
            for (cplx& z : op.data()) z *= spec.scale;

    return validate_commuting(std::move(ops));
}

}  // namespace sphalu
