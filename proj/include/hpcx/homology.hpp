#pragma once

#include <map>
#include <optional>
#include <vector>

#include "chain_complex.hpp"
#include "sparse.hpp"

namespace hpcx {

/// Exact column elimination over the rationals with pivot = lowest nonzero
/// row of largest index. Tracks the column operations so kernels and
/// preimages come out alongside ranks.
class Elimination {
  public:
    explicit Elimination(const SparseQ& A) : rows_(A.rows()), ncols_(0) {
        for (int c = 0; c < A.cols(); ++c) add_column(A.column(c));
    }

    Elimination(int rows) : rows_(rows), ncols_(0) {}

    /// Appends one column, returns its index.
    int add_column(const std::map<int, Rational>& col) {
        std::map<int, Rational> r = col, v;
        v[ncols_] = Rational(1);
        reduce_inplace(r, &v);
        R_.push_back(r);
        V_.push_back(v);
        if (!r.empty()) pivot_of_row_[r.rbegin()->first] = (int)R_.size() - 1;
        return ncols_++;
    }

    int rank() const {
        int k = 0;
        for (auto& r : R_)
            if (!r.empty()) ++k;
        return k;
    }

    /// Kernel basis in terms of the original columns.
    std::vector<std::map<int, Rational>> kernel() const {
        std::vector<std::map<int, Rational>> out;
        for (std::size_t j = 0; j < R_.size(); ++j)
            if (R_[j].empty()) out.push_back(V_[j]);
        return out;
    }

    /// Solves A x = y; returns x over original column indices, or nullopt.
    std::optional<std::map<int, Rational>> solve(const std::map<int, Rational>& y) const {
        std::map<int, Rational> r = y, combo;
        reduce_const(r, combo);
        if (!r.empty()) return std::nullopt;
        // x = sum_j combo_j * V_j
        std::map<int, Rational> x;
        for (auto& [j, c] : combo)
            for (auto& [i, v] : V_[j]) {
                auto it = x.find(i);
                if (it == x.end()) x[i] = c * v;
                else {
                    it->second += c * v;
                    if (it->second == 0) x.erase(it);
                }
            }
        return x;
    }

    bool in_image(const std::map<int, Rational>& y) const {
        std::map<int, Rational> r = y, combo;
        reduce_const(r, combo);
        return r.empty();
    }

    int rows() const { return rows_; }
    int cols() const { return ncols_; }

  private:
    static void axpy(std::map<int, Rational>& dst, const Rational& s,
                     const std::map<int, Rational>& src) {
        for (auto& [i, v] : src) {
            auto it = dst.find(i);
            if (it == dst.end()) {
                Rational nv = s * v;
                if (nv != 0) dst[i] = nv;
            } else {
                it->second += s * v;
                if (it->second == 0) dst.erase(it);
            }
        }
    }

    void reduce_inplace(std::map<int, Rational>& r, std::map<int, Rational>* v) {
        while (!r.empty()) {
            int low = r.rbegin()->first;
            auto it = pivot_of_row_.find(low);
            if (it == pivot_of_row_.end()) break;
            int j = it->second;
            Rational s = -r.rbegin()->second / R_[j].rbegin()->second;
            axpy(r, s, R_[j]);
            if (v) axpy(*v, s, V_[j]);
        }
    }

    void reduce_const(std::map<int, Rational>& r, std::map<int, Rational>& combo) const {
        while (!r.empty()) {
            int low = r.rbegin()->first;
            auto it = pivot_of_row_.find(low);
            if (it == pivot_of_row_.end()) break;
            int j = it->second;
            Rational s = -r.rbegin()->second / R_[j].rbegin()->second;
            axpy(r, s, R_[j]);
            auto ct = combo.find(j);
            if (ct == combo.end()) combo[j] = -s;
            else {
                ct->second -= s;
                if (ct->second == 0) combo.erase(ct);
            }
        }
    }

    int rows_, ncols_;
    std::vector<std::map<int, Rational>> R_, V_;
    std::map<int, int> pivot_of_row_;
};

inline int rank_of(const SparseQ& A) { return Elimination(A).rank(); }

/// Homology of a flat graded complex over Q: cycle representatives per degree
/// plus the machinery to express any cycle in the representative basis
/// modulo boundaries.
class Homology {
  public:
    explicit Homology(const GradedChainComplex& E) : E_(&E) {
        reps_.resize(E.n + 1);
        expressers_.reserve(E.n + 1);
        for (int p = 0; p <= E.n; ++p) {
            auto rows = E.degree_indices(p - 1);
            auto cols = E.degree_indices(p);
            SparseQ bp = E.b.submatrix(rows, cols);                 // b_p
            auto colsUp = E.degree_indices(p + 1);
            SparseQ bp1 = E.b.submatrix(cols, colsUp);              // b_{p+1}
            Elimination elim_p(bp);
            auto ker = elim_p.kernel();   // cycles, in degree-local indices
            // boundaries first, then pick kernel vectors independent mod them
            Elimination ex((int)cols.size());
            for (int c = 0; c < bp1.cols(); ++c) ex.add_column(bp1.column(c));
            int nb = ex.cols();
            std::vector<std::map<int, Rational>> reps;
            for (auto& z : ker) {
                int before = ex.rank();
                ex.add_column(z);
                if (ex.rank() > before) reps.push_back(z);
            }
            // rebuild expresser with exactly [boundaries | reps] columns so
            // coordinates of a cycle land on the reps block deterministically
            Elimination expr((int)cols.size());
            for (int c = 0; c < bp1.cols(); ++c) expr.add_column(bp1.column(c));
            for (auto& z : reps) expr.add_column(z);
            n_boundary_cols_.push_back(nb);
            reps_[p] = std::move(reps);
            expressers_.push_back(std::move(expr));
        }
    }

    int rank(int p) const {
        if (p < 0 || p > E_->n) return 0;
        return (int)reps_[p].size();
    }

    std::vector<int> ranks() const {
        std::vector<int> r;
        for (int p = 0; p <= E_->n; ++p) r.push_back(rank(p));
        return r;
    }

    /// Representative cycles in degree-local indices.
    const std::vector<std::map<int, Rational>>& representatives(int p) const { return reps_[p]; }

    /// Class of the local-index cycle z in the representative basis, or
    /// nullopt if z is not a cycle-in-span (should not happen for cycles).
    std::optional<std::vector<Rational>> coords(int p, const std::map<int, Rational>& z) const {
        auto sol = expressers_[p].solve(z);
        if (!sol) return std::nullopt;
        std::vector<Rational> out(reps_[p].size(), Rational(0));
        int nb = n_boundary_cols_[p];
        for (auto& [j, v] : *sol)
            if (j >= nb) out[j - nb] = v;
        return out;
    }

  private:
    const GradedChainComplex* E_;
    std::vector<std::vector<std::map<int, Rational>>> reps_;
    std::vector<Elimination> expressers_;
    std::vector<int> n_boundary_cols_;
};

inline std::vector<int> homology_ranks(const GradedChainComplex& E) {
    std::vector<int> out;
    for (int p = 0; p <= E.n; ++p) {
        SparseQ bp = E.b.submatrix(E.degree_indices(p - 1), E.degree_indices(p));
        SparseQ bp1 = E.b.submatrix(E.degree_indices(p), E.degree_indices(p + 1));
        int zp = E.dim_of(p) - rank_of(bp);
        out.push_back(zp - rank_of(bp1));
    }
    return out;
}

/// The dual complex (E_{n-*}, b^*): degree q holds the dual of E_{n-q}.
/// to_primal[i] maps a dual flat index to the flat index in E it dualizes.
struct DualComplex {
    GradedChainComplex E;
    std::vector<int> to_primal;
};

inline DualComplex dual_complex(const GradedChainComplex& E) {
    DualComplex out;
    GradedChainComplex& D = out.E;
    D.n = E.n;
    D.offset.assign(E.n + 2, 0);
    for (int q = 0; q <= E.n; ++q) D.offset[q + 1] = D.offset[q] + E.dim_of(E.n - q);
    D.control.resize(D.size());
    D.label.resize(D.size());
    out.to_primal.resize(D.size());
    for (int q = 0; q <= E.n; ++q) {
        int p = E.n - q;
        for (int i = 0; i < E.dim_of(p); ++i) {
            int di = D.offset[q] + i;
            int pi = E.offset[p] + i;
            out.to_primal[di] = pi;
            D.control[di] = E.control[pi];
            D.label[di] = E.label[pi] + "*";
        }
    }
    std::vector<int> d_of_primal(E.size());
    for (int i = 0; i < D.size(); ++i) d_of_primal[out.to_primal[i]] = i;
    // dual differential: d(e_i*) = sum_j <e_i*, b e_j> e_j* = b^t column
    SparseQ bt = E.b.adjoint();
    D.b = SparseQ(D.size(), D.size());
    for (int c = 0; c < E.size(); ++c)
        for (auto& [r, v] : bt.column(c)) D.b.add(d_of_primal[r], d_of_primal[c], v);
    return out;
}

/// Matrix of the map a chain map phi: C -> D induces on homology, from
/// degree p_src of C into degree p_dst of D (p_dst = p_src unless the map
/// shifts the stored grading).
inline SparseQ induced_on_homology(const SparseQ& phi, const GradedChainComplex& C,
                                   const GradedChainComplex& D, const Homology& HC,
                                   const Homology& HD, int p_src, int p_dst) {
    const int p = p_src;
    auto colsC = C.degree_indices(p_src);
    auto colsD = D.degree_indices(p_dst);
    SparseQ block = phi.submatrix(colsD, colsC);
    SparseQ out(HD.rank(p_dst), HC.rank(p_src));
    for (int j = 0; j < HC.rank(p); ++j) {
        // push representative through phi
        std::map<int, Rational> img;
        for (auto& [i, v] : HC.representatives(p)[j])
            for (auto& [r, w] : block.column(i)) {
                auto it = img.find(r);
                if (it == img.end()) img[r] = w * v;
                else {
                    it->second += w * v;
                    if (it->second == 0) img.erase(it);
                }
            }
        auto co = HD.coords(p_dst, img);
        if (!co) throw Error(ErrorKind::InputError, "induced_on_homology: image is not a cycle");
        for (int i = 0; i < (int)co->size(); ++i) out.set(i, j, (*co)[i]);
    }
    return out;
}

inline SparseQ induced_on_homology(const SparseQ& phi, const GradedChainComplex& C,
                                   const GradedChainComplex& D, const Homology& HC,
                                   const Homology& HD, int p) {
    return induced_on_homology(phi, C, D, HC, HD, p, p);
}

inline bool matrix_invertible(const SparseQ& m) {
    return m.rows() == m.cols() && rank_of(m) == m.rows();
}

}  // namespace hpcx
