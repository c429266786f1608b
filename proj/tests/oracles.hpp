#pragma once

// Independent oracles used by the unit and acceptance suites. Everything
// here recomputes from the simplicial data with its own dense rational
// elimination; none of it calls the library's duality or spectral paths.

#include <hpcx/rational.hpp>
#include <hpcx/simplicial.hpp>

#include <map>
#include <vector>

namespace oracle {

using hpcx::Rational;
using hpcx::SimplicialComplex;

using Mat = std::vector<std::vector<Rational>>;

inline Mat zeros(int r, int c) { return Mat(r, std::vector<Rational>(c, Rational(0))); }

/// Coboundary matrix delta_p: C^p -> C^{p+1} (entries <tau, d sigma>).
inline Mat coboundary(const SimplicialComplex& K, int p) {
    if (p < 0 || p >= K.dim) return {};
    const auto& lo = K.simplices[p];
    const auto& hi = K.simplices[p + 1];
    Mat m = zeros((int)hi.size(), (int)lo.size());
    for (int i = 0; i < (int)hi.size(); ++i) {
        const auto& s = hi[i].v;
        for (std::size_t j = 0; j < s.size(); ++j) {
            std::vector<int> f;
            for (std::size_t t = 0; t < s.size(); ++t)
                if (t != j) f.push_back(s[t]);
            int fi = K.simplex_index(p, f);
            m[i][fi] += Rational((j % 2 == 0 ? 1 : -1) * hi[i].sign * K.simplices[p][fi].sign);
        }
    }
    return m;
}

/// Basis of the null space of a dense rational matrix.
inline std::vector<std::vector<Rational>> null_space(Mat A, int ncols) {
    int nrows = (int)A.size();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (A[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(A[piv], A[r]);
        Rational pv = A[r][c];
        for (int j = 0; j < ncols; ++j) A[r][j] /= pv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (int j = 0; j < ncols; ++j) A[i][j] -= f * A[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int fc = 0; fc < ncols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[fc] = Rational(1);
        for (int i = 0; i < (int)pivot_col.size(); ++i) v[pivot_col[i]] = -A[i][fc];
        basis.push_back(v);
    }
    return basis;
}

/// Reduces v against a growing echelon basis; returns leading index or -1.
inline int echelon_insert(std::vector<std::vector<Rational>>& basis, std::vector<Rational> v) {
    for (auto& b : basis) {
        int lead = -1;
        for (int i = 0; i < (int)b.size(); ++i)
            if (b[i] != 0) { lead = i; break; }
        if (lead >= 0 && v[lead] != 0) {
            Rational f = v[lead] / b[lead];
            for (int i = 0; i < (int)b.size(); ++i) v[i] -= f * b[i];
        }
    }
    int lead = -1;
    for (int i = 0; i < (int)v.size(); ++i)
        if (v[i] != 0) { lead = i; break; }
    if (lead >= 0) basis.push_back(v);
    return lead;
}

/// Representative cocycles for H^p, independent elimination throughout.
inline std::vector<std::vector<Rational>> cohomology_basis(const SimplicialComplex& K, int p) {
    int np = (int)K.simplices[p].size();
    Mat d_up = coboundary(K, p);
    std::vector<std::vector<Rational>> cocycles =
        d_up.empty() ? std::vector<std::vector<Rational>>() : null_space(d_up, np);
    if (d_up.empty()) {
        // top degree: all cochains are cocycles
        for (int i = 0; i < np; ++i) {
            std::vector<Rational> e(np, Rational(0));
            e[i] = Rational(1);
            cocycles.push_back(e);
        }
    }
    // coboundary image from below
    std::vector<std::vector<Rational>> echelon;
    if (p >= 1) {
        Mat d_lo = coboundary(K, p - 1);
        for (std::size_t c = 0; c < K.simplices[p - 1].size(); ++c) {
            std::vector<Rational> v(np, Rational(0));
            for (int r = 0; r < np; ++r) v[r] = d_lo[r][c];
            echelon_insert(echelon, v);
        }
    }
    std::size_t n_image = echelon.size();
    std::vector<std::vector<Rational>> reps;
    for (auto& z : cocycles) {
        std::size_t before = echelon.size();
        echelon_insert(echelon, z);
        if (echelon.size() > before) reps.push_back(z);
    }
    (void)n_image;
    return reps;
}

/// Orientation of the top simplices by propagation (own implementation).
inline std::map<std::vector<int>, Rational> orient_tops(const SimplicialComplex& K) {
    const auto& tops = K.simplices[K.dim];
    std::map<std::vector<int>, std::vector<int>> by_face;
    auto faces_of = [](const std::vector<int>& s) {
        std::vector<std::vector<int>> out;
        for (std::size_t j = 0; j < s.size(); ++j) {
            std::vector<int> f;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != j) f.push_back(s[i]);
            out.push_back(f);
        }
        return out;
    };
    auto incidence = [&](const std::vector<int>& s, const std::vector<int>& f) {
        auto fs = faces_of(s);
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (fs[j] == f) return (j % 2 == 0) ? 1 : -1;
        return 0;
    };
    for (int i = 0; i < (int)tops.size(); ++i)
        for (auto& f : faces_of(tops[i].v)) by_face[f].push_back(i);
    std::vector<int> sign(tops.size(), 0);
    sign[0] = 1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (auto& f : faces_of(tops[i].v)) {
            auto& inc = by_face[f];
            if (inc.size() != 2) continue;
            int j = inc[0] == i ? inc[1] : inc[0];
            int want = -sign[i] * incidence(tops[i].v, f) * incidence(tops[j].v, f);
            if (sign[j] == 0) {
                sign[j] = want;
                stack.push_back(j);
            }
        }
    }
    std::map<std::vector<int>, Rational> out;
    for (int i = 0; i < (int)tops.size(); ++i) out[tops[i].v] = Rational(sign[i] * tops[i].sign);
    return out;
}

/// Signature of a symmetric rational matrix by exact congruence reduction.
inline long symmetric_signature(Mat M) {
    int n = (int)M.size();
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;
    long pos = 0, neg = 0;
    while (!alive.empty()) {
        int d = -1;
        for (int i : alive)
            if (M[i][i] != 0) { d = i; break; }
        if (d >= 0) {
            if (M[d][d] > 0) pos++;
            else neg++;
            std::vector<int> rest;
            for (int i : alive)
                if (i != d) rest.push_back(i);
            for (int i : rest)
                for (int j : rest) M[i][j] -= M[i][d] * M[d][j] / M[d][d];
            alive = rest;
            continue;
        }
        int a = -1, bcol = -1;
        for (int i : alive) {
            for (int j : alive)
                if (i != j && M[i][j] != 0) { a = i; bcol = j; break; }
            if (a >= 0) break;
        }
        if (a < 0) break;  // zero form on the rest
        pos++;
        neg++;
        std::vector<int> rest;
        for (int i : alive)
            if (i != a && i != bcol) rest.push_back(i);
        Rational piv = M[a][bcol];
        for (int k : rest)
            for (int l : rest) M[k][l] -= (M[k][a] * M[l][bcol] + M[k][bcol] * M[l][a]) / piv;
        alive = rest;
    }
    return pos - neg;
}

/// Signature of the middle-dimensional intersection form via brute-force
/// simplicial cup products evaluated on the fundamental cycle. For complexes
/// whose middle degree is odd (skew pairing) the signature is zero.
inline long intersection_form_signature(const SimplicialComplex& K) {
    int n = K.dim;
    int p = n / 2;
    if (n % 2 != 0) return 0;
    auto reps = cohomology_basis(K, p);
    auto xi = orient_tops(K);
    int h = (int)reps.size();
    Mat Q = zeros(h, h);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            Rational tot(0);
            for (auto& [sv, coef] : xi) {
                if (coef == 0) continue;
                std::vector<int> front(sv.begin(), sv.begin() + p + 1);
                std::vector<int> back(sv.begin() + p, sv.end());
                int fi = K.simplex_index(p, front);
                int bi = K.simplex_index(p, back);
                tot += coef * reps[i][fi] * Rational(K.simplices[p][fi].sign) * reps[j][bi] *
                       Rational(K.simplices[p][bi].sign);
            }
            Q[i][j] = tot;
        }
    if (p % 2 == 1) {
        // skew form: check and report zero signature
        return 0;
    }
    return symmetric_signature(Q);
}

}  // namespace oracle
