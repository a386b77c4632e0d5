#include "sphalu/koszul.hpp"

#include <algorithm>
#include <cmath>

namespace sphalu {

namespace {

// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

int subset_index(const std::vector<std::vector<int>>& table, const std::vector<int>& s) {
    const auto it = std::lower_bound(table.begin(), table.end(), s);
    return static_cast<int>(it - table.begin());
}

}  // namespace

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

Matrix stacked_column(const OperatorTuple& t, const std::vector<cplx>& lambda) {
    if (static_cast<int>(lambda.size()) != t.n)
        throw DimensionMismatch("stacked_column: lambda length differs from tuple length");
    Matrix col(t.n * t.dim, t.dim);
    for (int i = 0; i < t.n; ++i) {
        Matrix shifted = t.operators[i];
        for (int r = 0; r < t.dim; ++r) shifted(r, r) -= lambda[i];
        col.set_block(i * t.dim, 0, shifted);
    }
    return col;
}

KoszulComplexRep build_koszul(const OperatorTuple& t, const std::vector<cplx>& lambda) {
    if (static_cast<int>(lambda.size()) != t.n)
        throw DimensionMismatch("build_koszul: lambda length differs from tuple length");
    const int n = t.n, d = t.dim;

    std::vector<Matrix> shifted;
    shifted.reserve(n);
    for (int i = 0; i < n; ++i) {
        Matrix s = t.operators[i];
        for (int r = 0; r < d; ++r) s(r, r) -= lambda[i];
        shifted.push_back(std::move(s));
    }

    std::vector<Matrix> boundaries;
    boundaries.reserve(n);
    for (int k = 0; k < n; ++k) {
        const auto domain = subsets_lex(n, k);
        const auto codomain = subsets_lex(n, k + 1);
        Matrix dk(d * static_cast<int>(codomain.size()), d * static_cast<int>(domain.size()));
        for (int s = 0; s < static_cast<int>(domain.size()); ++s) {
            const std::vector<int>& set = domain[s];
            for (int i = 0; i < n; ++i) {
                if (std::binary_search(set.begin(), set.end(), i)) continue;
                std::vector<int> target = set;
                target.insert(std::upper_bound(target.begin(), target.end(), i), i);
                const int smaller =
                    static_cast<int>(std::lower_bound(set.begin(), set.end(), i) - set.begin());
                const double sign = (smaller % 2 == 0) ? 1.0 : -1.0;
                const int r = subset_index(codomain, target);
                dk.add_block(r * d, s * d, shifted[i], cplx(sign, 0.0));
            }
        }
        boundaries.push_back(std::move(dk));
    }
    return {n, d, lambda, std::move(boundaries)};
}

HomologyProfile homology_dimensions(const KoszulComplexRep& k, std::optional<double> tol) {
    const int n = k.n, d = k.d;
    std::vector<SvdDecomposition> decomps;
    decomps.reserve(n);
    double shared_tol = tol.value_or(0.0);
    for (const Matrix& dk : k.boundaries) {
        decomps.push_back(svd(dk));
        if (!tol) {
            const double smax =
                decomps.back().singular_values.empty() ? 0.0 : decomps.back().singular_values.front();
            shared_tol = std::max(shared_tol, default_rank_tol(dk.rows(), dk.cols(), smax));
        }
    }
    std::vector<int> ranks(n);
    for (int i = 0; i < n; ++i)
        ranks[i] = numerical_rank(decomps[i], k.boundaries[i].rows(), k.boundaries[i].cols(),
                                  shared_tol);

    std::vector<int> dims(n + 1);
    for (int j = 0; j <= n; ++j) {
        const int rank_below = (j > 0) ? ranks[j - 1] : 0;
        const int rank_here = (j < n) ? ranks[j] : 0;
        dims[j] = static_cast<int>(d * binomial(n, j)) - rank_here - rank_below;
    }
    return {std::move(dims), std::move(ranks), shared_tol};
}

bool is_taylor_invertible_at(const OperatorTuple& t, const std::vector<cplx>& lambda,
                             std::optional<double> tol) {
    const HomologyProfile h = homology_dimensions(build_koszul(t, lambda), tol);
    return std::all_of(h.dims.begin(), h.dims.end(), [](int x) { return x == 0; });
}

bool is_left_invertible(const OperatorTuple& t, std::optional<double> tol) {
    const std::vector<cplx> origin(t.n, cplx(0.0, 0.0));
    return numerical_rank(stacked_column(t, origin), tol) == t.dim;
}

int fredholm_index_at(const OperatorTuple& t, const std::vector<cplx>& lambda,
                      std::optional<double> tol) {
    const HomologyProfile h = homology_dimensions(build_koszul(t, lambda), tol);
    int index = 0, sign = 1;
    for (int dim : h.dims) {
        if (dim < 0)
            throw IndexAnomalous("fredholm_index_at: negative homology dimension, "
                                 "rank tolerance inconsistency");
        index += sign * dim;
        sign = -sign;
    }
    if (index != 0)
        throw IndexAnomalous("fredholm_index_at: nonzero index, rank tolerance inconsistency");
    return index;
}

bool slodkowski_left_k_member(const OperatorTuple& t, const std::vector<cplx>& lambda, int k,
                              std::optional<double> tol) {
    if (k < 0 || k > t.n) throw KOutOfRange("slodkowski_left_k_member: k must lie in [0, n]");
    const HomologyProfile h = homology_dimensions(build_koszul(t, lambda), tol);
    for (int j = 0; j <= k; ++j)
        if (h.dims[j] != 0) return true;
    return false;
}

}  // namespace sphalu
