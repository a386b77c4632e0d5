#include "sphalu/transforms.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace {

std::string sci(double v) {
    std::ostringstream out;
    out.precision(6);
    out << std::scientific << v;
    return out.str();
}

}  // namespace

namespace sphalu {

double max_frobenius_norm(const std::vector<Matrix>& ops) {
    double m = 0.0;
    for (const Matrix& op : ops) m = std::max(m, op.frobenius_norm());
    return m;
}

OperatorTuple validate_commuting(std::vector<Matrix> operators, std::optional<double> ctol) {
    if (operators.empty()) throw DimensionMismatch("validate_commuting: empty tuple");
    const int d = operators.front().rows();
    if (d < 1) throw DimensionMismatch("validate_commuting: dimension must be >= 1");
    for (const Matrix& op : operators) {
        if (!op.is_square() || op.rows() != d)
            throw DimensionMismatch("validate_commuting: operators must be square of common dimension");
        if (!op.all_finite())
            throw DimensionMismatch("validate_commuting: non-finite entry");
    }
    double defect = 0.0;
    for (size_t i = 0; i < operators.size(); ++i)
        for (size_t j = i + 1; j < operators.size(); ++j)
            defect = std::max(defect, commutator_norm(operators[i], operators[j]));

    const double scale = 1.0 + max_frobenius_norm(operators);
    const double bound = ctol.value_or(1e-10) * scale * scale;
    if (defect > bound)
        throw NotCommuting("validate_commuting: commutator defect " + sci(defect) +
                               " exceeds bound " + sci(bound),
                           defect);
    return {d, static_cast<int>(operators.size()), std::move(operators), defect};
}

JointPolar joint_polar_decompose(const OperatorTuple& t) {
    Matrix gram(t.dim, t.dim);
    for (const Matrix& op : t.operators) gram = gram + op.adjoint() * op;
    Matrix p = psd_sqrt(gram);
    Matrix p_pinv = pseudo_inverse(p);
    std::vector<Matrix> isometries;
    isometries.reserve(t.operators.size());
    for (const Matrix& op : t.operators) isometries.push_back(op * p_pinv);
    Matrix p_sqrt = psd_sqrt(p);
    return {std::move(p), std::move(isometries), std::move(p_sqrt)};
}

OperatorTuple spherical_aluthge(const OperatorTuple& t, std::optional<double> ctol) {
    JointPolar polar = joint_polar_decompose(t);
    std::vector<Matrix> transformed;
    transformed.reserve(t.operators.size());
    for (const Matrix& v : polar.isometries)
        transformed.push_back(polar.p_sqrt * v * polar.p_sqrt);
    try {
        return validate_commuting(std::move(transformed), ctol);
    } catch (const NotCommuting& e) {
        throw NotCommuting(
            "spherical_aluthge: output failed the commutativity check, which signals a "
            "numerical-tolerance failure upstream (defect " +
                std::to_string(e.defect) + ")",
            e.defect);
    }
}

Matrix classical_aluthge(const Matrix& a) {
    if (!a.is_square()) throw NotSquare("classical_aluthge: matrix not square");
    // |T| = sqrt(T*T), V = T |T|^+, result |T|^{1/2} V |T|^{1/2}.
    Matrix modulus = psd_sqrt(a.adjoint() * a);
    Matrix v = a * pseudo_inverse(modulus);
    Matrix half = psd_sqrt(modulus);
    return half * v * half;
}

CrissCrossReport is_crisscross_commuting(const TuplePair& pair, std::optional<double> tol) {
    if (pair.a.size() != pair.b.size() || pair.a.empty())
        throw DimensionMismatch("is_crisscross_commuting: tuples must have equal nonzero length");
    const int d = pair.a.front().rows();
    for (const Matrix& m : pair.a)
        if (!m.is_square() || m.rows() != d)
            throw DimensionMismatch("is_crisscross_commuting: shape mismatch in A");
    for (const Matrix& m : pair.b)
        if (!m.is_square() || m.rows() != d)
            throw DimensionMismatch("is_crisscross_commuting: shape mismatch in B");

    const size_t n = pair.a.size();
    double defect = 0.0;
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = i + 1; k < n; ++k) {
            for (size_t j = 0; j < n; ++j) {
                defect = std::max(defect, (pair.a[i] * pair.b[j] * pair.a[k] -
                                           pair.a[k] * pair.b[j] * pair.a[i])
                                              .frobenius_norm());
                defect = std::max(defect, (pair.b[i] * pair.a[j] * pair.b[k] -
                                           pair.b[k] * pair.a[j] * pair.b[i])
                                              .frobenius_norm());
            }
        }
    }
    const double scale = 1.0 + std::max(max_frobenius_norm(pair.a), max_frobenius_norm(pair.b));
    const double bound = tol.value_or(1e-10) * scale * scale * scale;
    return {defect <= bound, defect, bound};
}

TuplePair canonical_crisscross_pair(const JointPolar& polar) {
    TuplePair pair;
    for (const Matrix& v : polar.isometries) {
        pair.a.push_back(polar.p_sqrt);
        pair.b.push_back(v * polar.p_sqrt);
    }
    return pair;
}

}  // namespace sphalu
