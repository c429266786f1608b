#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "chain_complex.hpp"
#include "sparse.hpp"

namespace hpcx {

/// Chain contraction of a complex onto its homology by repeated elementary
/// cancellations (algebraic Morse reduction over Q). Cancelling a pair
/// (a, b) with pivot u = <b*, d a> != 0 removes both cells and reroutes the
/// differential through the pivot; over a field the process terminates with
/// zero differential and the surviving cells span the homology.
///
/// The steps are recorded so that the contraction f: C -> H and its
/// adjoint-inverse data can be applied to vectors in O(total fill) instead
/// of materialized as a full matrix.
class MorseContraction {
  public:
    explicit MorseContraction(const GradedChainComplex& E) : E_(&E) {
        build();
    }

    const std::vector<int>& critical() const { return critical_; }

    /// Homology-sized complex with zero differential; critical cells keep
    /// their degree and control point.
    GradedChainComplex reduced_complex() const {
        GradedChainComplex H;
        H.n = E_->n;
        H.offset.assign(E_->n + 2, 0);
        std::vector<std::vector<int>> by_deg(E_->n + 1);
        auto deg = E_->degrees_vector();
        for (int c : critical_) by_deg[deg[c]].push_back(c);
        for (int p = 0; p <= E_->n; ++p) H.offset[p + 1] = H.offset[p] + (int)by_deg[p].size();
        H.control.resize(H.offset.back());
        H.label.resize(H.offset.back());
        int k = 0;
        for (int p = 0; p <= E_->n; ++p)
            for (int c : by_deg[p]) {
                H.control[k] = E_->control[c];
                H.label[k] = E_->label[c];
                ++k;
            }
        H.b = SparseQ(H.offset.back(), H.offset.back());
        return H;
    }

    /// f: C -> H applied to a vector (flat original coordinates in, critical
    /// coordinates out, ordered like reduced_complex()).
    std::vector<Rational> project(std::vector<Rational> v) const {
        for (const Step& s : steps_) {
            Rational mu = v[s.b];
            if (mu != 0) {
                Rational scale = mu / s.pivot;
                for (auto& [i, w] : s.da) v[i] -= scale * w;
            }
            v[s.a] = 0;
            v[s.b] = 0;
        }
        std::vector<Rational> out(critical_.size());
        for (std::size_t k = 0; k < critical_.size(); ++k) out[k] = v[critical_[k]];
        return out;
    }

    /// f^*: H -> C applied to a vector (adjoint of project).
    std::vector<Rational> project_adjoint(const std::vector<Rational>& w) const {
        std::vector<Rational> v(E_->size(), Rational(0));
        for (std::size_t k = 0; k < critical_.size(); ++k) v[critical_[k]] = w[k];
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            // adjoint of the rank-one correction: v -= (<da, v>/pivot) e_b
            Rational ip(0);
            for (auto& [i, x] : it->da) ip += x * v[i];
            if (ip != 0) v[it->b] -= ip / it->pivot;
        }
        return v;
    }

    /// g: H -> C (homotopy inverse of project) applied to a vector.
    std::vector<Rational> include(const std::vector<Rational>& w) const {
        std::vector<Rational> v(E_->size(), Rational(0));
        for (std::size_t k = 0; k < critical_.size(); ++k) v[critical_[k]] = w[k];
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            // g: x -> x - (<b* , d x>/pivot) a, with d the differential at
            // the time of the step (its b-row was recorded)
            Rational ip(0);
            for (auto& [i, x] : it->brow) ip += x * v[i];
            if (ip != 0) v[it->a] -= ip / it->pivot;
        }
        return v;
    }

    /// Conjugates a flat operator on C down to H: f . Op . f^*.
    SparseQ conjugate(const SparseQ& op) const {
        int h = (int)critical_.size();
        SparseQ out(h, h);
        for (int j = 0; j < h; ++j) {
            std::vector<Rational> w(h, Rational(0));
            w[j] = Rational(1);
            auto col = project(op.apply(project_adjoint(w)));
            for (int i = 0; i < h; ++i)
                if (col[i] != 0) out.set(i, j, col[i]);
        }
        return out;
    }

    /// Pushes a flat vector on H back to C through g and evaluates op there,
    /// then projects; same as conjugate but with g instead of f^*.
    SparseQ conjugate_via_inverse(const SparseQ& op) const {
        int h = (int)critical_.size();
        SparseQ out(h, h);
        for (int j = 0; j < h; ++j) {
            std::vector<Rational> w(h, Rational(0));
            w[j] = Rational(1);
            auto col = project(op.apply(include(w)));
            for (int i = 0; i < h; ++i)
                if (col[i] != 0) out.set(i, j, col[i]);
        }
        return out;
    }

  private:
    struct Step {
        int a, b;                                  // cancelled pair, deg(a) = deg(b)+1
        Rational pivot;                            // <b*, d a>
        std::vector<std::pair<int, Rational>> da;  // column d a at step time
        std::vector<std::pair<int, Rational>> brow;  // row b^T d at step time
    };

    void build() {
        const int n = E_->size();
        // mutable differential with row and column access
        std::vector<std::map<int, Rational>> col(n), row(n);
        for (int c = 0; c < n; ++c)
            for (auto& [r, v] : E_->b.column(c)) {
                col[c][r] = v;
                row[r][c] = v;
            }
        std::vector<bool> alive(n, true);

        // greedy cancellation, unit pivots first (they exist in simplicial
        // boundaries and keep fill small)
        auto cancel = [&](int a, int b) {
            Rational u = col[a].at(b);
            Step st;
            st.a = a;
            st.b = b;
            st.pivot = u;
            for (auto& [i, v] : col[a]) st.da.emplace_back(i, v);
            for (auto& [j, v] : row[b]) st.brow.emplace_back(j, v);
            // reroute: for every x != a with <b*, d x> = mu: d x -= (mu/u) d a
            std::vector<std::pair<int, Rational>> targets;
            for (auto& [x, mu] : row[b])
                if (x != a) targets.emplace_back(x, mu);
            for (auto& [x, mu] : targets) {
                Rational scale = mu / u;
                for (auto& [i, v] : st.da) {
                    if (i == b) continue;
                    auto it = col[x].find(i);
                    if (it == col[x].end()) {
                        Rational nv = -scale * v;
                        if (nv != 0) {
                            col[x][i] = nv;
                            row[i][x] = nv;
                        }
                    } else {
                        it->second -= scale * v;
                        if (it->second == 0) {
                            col[x].erase(it);
                            row[i].erase(x);
                        } else {
                            row[i][x] = it->second;
                        }
                    }
                }
                col[x].erase(b);
                row[b].erase(x);
            }
            // remove a and b entirely
            for (auto& [i, v] : col[a]) row[i].erase(a);
            for (auto& [j, v] : row[a]) col[j].erase(a);
            for (auto& [i, v] : col[b]) row[i].erase(b);
            for (auto& [j, v] : row[b]) col[j].erase(b);
            col[a].clear();
            row[a].clear();
            col[b].clear();
            row[b].clear();
            alive[a] = alive[b] = false;
            steps_.push_back(std::move(st));
        };

        // sweep-based pivoting: repeatedly pass over the columns, cancelling
        // in place. Unit pivots with the sparsest row are preferred; a second
        // kind of pass accepts any nonzero pivot so the reduction always
        // finishes with zero differential over Q.
        auto sweep = [&](bool unit_only) {
            bool any = false;
            for (int a = 0; a < n; ++a) {
                if (!alive[a] || col[a].empty()) continue;
                int pick = -1;
                std::size_t best_row = 0;
                for (auto& [b, v] : col[a]) {
                    if (unit_only && !(v == 1 || v == -1)) continue;
                    if (pick < 0 || row[b].size() < best_row) {
                        pick = b;
                        best_row = row[b].size();
                    }
                }
                if (pick >= 0) {
                    cancel(a, pick);
                    any = true;
                }
            }
            return any;
        };
        while (sweep(true)) {}
        while (sweep(false)) { while (sweep(true)) {} }
        for (int c = 0; c < n; ++c)
            if (alive[c] && !col[c].empty())
                throw Error(ErrorKind::InputError, "Morse reduction left a nonzero differential");
        for (int i = 0; i < n; ++i)
            if (alive[i]) critical_.push_back(i);
        // order critical cells by degree then index, matching reduced_complex
        auto deg = E_->degrees_vector();
        std::stable_sort(critical_.begin(), critical_.end(),
                         [&](int x, int y) { return deg[x] < deg[y]; });
    }

    const GradedChainComplex* E_;
    std::vector<Step> steps_;
    std::vector<int> critical_;
};

}  // namespace hpcx
