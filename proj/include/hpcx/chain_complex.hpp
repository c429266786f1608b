#pragma once

#include <map>
#include <string>
#include <vector>

#include "simplicial.hpp"
#include "sparse.hpp"

namespace hpcx {

/// Chain in a fixed degree, indexed by flat basis positions.
struct Chain {
    int degree = 0;
    std::map<int, Rational> coef;  // flat index -> coefficient

    bool is_zero() const { return coef.empty(); }
};

/// Graded based chain complex over the rationals, stored flat: the bases of
/// all degrees are concatenated and operators act on the whole space. Each
/// basis element carries a control point (its simplex barycenter).
struct GradedChainComplex {
    int n = 0;                                   // top degree
    std::vector<int> offset;                     // size n+2, offset[p]..offset[p+1) = degree p
    std::vector<std::vector<double>> control;    // per flat index
    std::vector<std::string> label;              // per flat index (reporting)
    SparseQ b;                                   // flat differential, degree p -> p-1

    int size() const { return offset.empty() ? 0 : offset.back(); }
    int dim_of(int p) const { return (p < 0 || p > n) ? 0 : offset[p + 1] - offset[p]; }
    int degree_of(int i) const {
        for (int p = 0; p <= n; ++p)
            if (i < offset[p + 1]) return p;
        throw std::out_of_range("flat index");
    }
    std::vector<int> degree_indices(int p) const {
        std::vector<int> idx;
        if (p < 0 || p > n) return idx;
        for (int i = offset[p]; i < offset[p + 1]; ++i) idx.push_back(i);
        return idx;
    }

    /// Diagonal operator with scalar f(p) on the degree-p block.
    template <class T, class F>
    SparseMat<T> degree_diagonal(F f) const {
        SparseMat<T> d(size(), size());
        for (int p = 0; p <= n; ++p) {
            T v = f(p);
            for (int i = offset[p]; i < offset[p + 1]; ++i) d.set(i, i, v);
        }
        return d;
    }

    std::vector<int> degrees_vector() const {
        std::vector<int> d(size());
        for (int p = 0; p <= n; ++p)
            for (int i = offset[p]; i < offset[p + 1]; ++i) d[i] = p;
        return d;
    }

    /// b restricted to a single degree block: rows = degree p-1, cols = degree p.
    SparseQ boundary_block(int p) const {
        return b.submatrix(degree_indices(p - 1), degree_indices(p));
    }

    bool check_b_squared_zero() const { return (b * b).is_zero(); }
};

/// Simplicial chain complex with the alternating-sum boundary and barycenter
/// control map. Basis per degree follows the complex's sorted simplex order.
inline GradedChainComplex chain_complex(const SimplicialComplex& K) {
    GradedChainComplex E;
    E.n = K.dim;
    E.offset.assign(K.dim + 2, 0);
    for (int p = 0; p <= K.dim; ++p)
        E.offset[p + 1] = E.offset[p] + (int)K.simplices[p].size();
    E.control.resize(E.size());
    E.label.resize(E.size());
    for (int p = 0; p <= K.dim; ++p)
        for (int i = 0; i < (int)K.simplices[p].size(); ++i) {
            E.control[E.offset[p] + i] = K.barycenter(K.simplices[p][i].v);
            E.label[E.offset[p] + i] = simplex_name(K.simplices[p][i].v);
        }
    E.b = SparseQ(E.size(), E.size());
    for (int p = 1; p <= K.dim; ++p) {
        for (int i = 0; i < (int)K.simplices[p].size(); ++i) {
            const Simplex& s = K.simplices[p][i];
            auto faces = detail::faces_of(s.v);
            for (int j = 0; j < (int)faces.size(); ++j) {
                int fi = K.simplex_index(p - 1, faces[j]);
                int fsign = K.simplices[p - 1][fi].sign;
                Rational coef = Rational(s.sign * fsign * ((j % 2 == 0) ? 1 : -1));
                E.b.add(E.offset[p - 1] + fi, E.offset[p] + i, coef);
            }
        }
    }
    return E;
}

/// Block direct sum M (+) N; returns the complex plus the flat index offset
/// of the N block per degree (N basis follows M basis inside each degree).
struct DisjointUnion {
    GradedChainComplex E;
    std::vector<int> m_index;  // flat index in E of each M basis element
    std::vector<int> n_index;  // flat index in E of each N basis element
};

inline DisjointUnion disjoint_union(const GradedChainComplex& M, const GradedChainComplex& N) {
    if (M.n != N.n) throw Error(ErrorKind::DimensionMismatch, "disjoint union needs equal dimensions");
    DisjointUnion out;
    GradedChainComplex& E = out.E;
    E.n = M.n;
    E.offset.assign(M.n + 2, 0);
    for (int p = 0; p <= M.n; ++p)
        E.offset[p + 1] = E.offset[p] + M.dim_of(p) + N.dim_of(p);
    E.control.resize(E.size());
    E.label.resize(E.size());
    out.m_index.resize(M.size());
    out.n_index.resize(N.size());
    for (int p = 0; p <= M.n; ++p) {
        int base = E.offset[p];
        for (int i = 0; i < M.dim_of(p); ++i) {
            int src = M.offset[p] + i;
            out.m_index[src] = base + i;
            E.control[base + i] = M.control[src];
            E.label[base + i] = "M" + M.label[src];
        }
        for (int i = 0; i < N.dim_of(p); ++i) {
            int src = N.offset[p] + i;
            out.n_index[src] = base + M.dim_of(p) + i;
            E.control[base + M.dim_of(p) + i] = N.control[src];
            E.label[base + M.dim_of(p) + i] = "N" + N.label[src];
        }
    }
    E.b = SparseQ(E.size(), E.size());
    for (int c = 0; c < M.size(); ++c)
        for (auto& [r, v] : M.b.column(c)) E.b.add(out.m_index[r], out.m_index[c], v);
    for (int c = 0; c < N.size(); ++c)
        for (auto& [r, v] : N.b.column(c)) E.b.add(out.n_index[r], out.n_index[c], v);
    return out;
}

/// Pushes an operator on M (or N) to the union block.
inline SparseQ embed_block(const SparseQ& op, const std::vector<int>& idx, int total) {
    SparseQ out(total, total);
    for (int c = 0; c < op.cols(); ++c)
        for (auto& [r, v] : op.column(c)) out.add(idx[r], idx[c], v);
    return out;
}

/// Subcomplex (or sub-quotient) spanned by a flagged subset of the basis,
/// regraded to the given top degree; flat_index maps back into the parent.
struct Restriction {
    GradedChainComplex E;
    std::vector<int> flat_index;
};

inline Restriction restrict_complex(const GradedChainComplex& E, const std::vector<char>& keep,
                                    int new_top) {
    Restriction out;
    auto deg = E.degrees_vector();
    std::vector<std::vector<int>> by_deg(new_top + 1);
    for (int i = 0; i < E.size(); ++i)
        if (keep[i]) {
            if (deg[i] > new_top)
                throw Error(ErrorKind::DimensionMismatch, "restriction exceeds its top degree");
            by_deg[deg[i]].push_back(i);
        }
    out.E.n = new_top;
    out.E.offset.assign(new_top + 2, 0);
    for (int p = 0; p <= new_top; ++p) {
        out.E.offset[p + 1] = out.E.offset[p] + (int)by_deg[p].size();
        for (int i : by_deg[p]) out.flat_index.push_back(i);
    }
    out.E.control.resize(out.flat_index.size());
    out.E.label.resize(out.flat_index.size());
    for (std::size_t k = 0; k < out.flat_index.size(); ++k) {
        out.E.control[k] = E.control[out.flat_index[k]];
        out.E.label[k] = E.label[out.flat_index[k]];
    }
    out.E.b = E.b.submatrix(out.flat_index, out.flat_index);
    return out;
}

/// Chain-level tensor product with Koszul signs:
///   (M (x) N)_k = sum_{p+q=k} M_p (x) N_q,  b = b_M (x) 1 + (-1)^p 1 (x) b_N.
struct TensorProduct {
    GradedChainComplex E;
    // flat index of basis pair (i in M, j in N)
    std::vector<std::vector<int>> pair_index;
};

inline TensorProduct tensor_product(const GradedChainComplex& M, const GradedChainComplex& N,
                                    std::size_t size_cap = 200000) {
    std::size_t total = std::size_t(M.size()) * std::size_t(N.size());
    if (total > size_cap)
        throw Error(ErrorKind::SizeLimitExceeded,
                    "tensor basis of size " + std::to_string(total) + " exceeds cap " +
                        std::to_string(size_cap));
    TensorProduct out;
    GradedChainComplex& E = out.E;
    E.n = M.n + N.n;
    out.pair_index.assign(M.size(), std::vector<int>(N.size(), -1));
    E.offset.assign(E.n + 2, 0);
    int cur = 0;
    for (int k = 0; k <= E.n; ++k) {
        E.offset[k] = cur;
        for (int p = 0; p <= std::min(k, M.n); ++p) {
            int q = k - p;
            if (q > N.n) continue;
            for (int i = M.offset[p]; i < M.offset[p + 1]; ++i)
                for (int j = N.offset[q]; j < N.offset[q + 1]; ++j)
                    out.pair_index[i][j] = cur++;
        }
    }
    E.offset[E.n + 1] = cur;
    E.control.resize(cur);
    E.label.resize(cur);
    for (int i = 0; i < M.size(); ++i)
        for (int j = 0; j < N.size(); ++j) {
            int f = out.pair_index[i][j];
            std::vector<double> c = M.control[i];
            c.insert(c.end(), N.control[j].begin(), N.control[j].end());
            E.control[f] = std::move(c);
            E.label[f] = M.label[i] + "x" + N.label[j];
        }
    E.b = SparseQ(cur, cur);
    auto degM = M.degrees_vector();
    for (int i = 0; i < M.size(); ++i) {
        for (int j = 0; j < N.size(); ++j) {
            int f = out.pair_index[i][j];
            for (auto& [r, v] : M.b.column(i)) E.b.add(out.pair_index[r][j], f, v);
            Rational koszul((degM[i] % 2 == 0) ? 1 : -1);
            for (auto& [r, v] : N.b.column(j)) E.b.add(out.pair_index[i][r], f, koszul * v);
        }
    }
    return out;
}

}  // namespace hpcx
