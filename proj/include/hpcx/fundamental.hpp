#pragma once

#include <map>
#include <vector>

#include "chain_complex.hpp"
#include "simplicial.hpp"

namespace hpcx {

struct FundamentalCycle {
    Chain xi;                 // top-degree chain on the flat basis
    bool disconnected = false;
    int components = 1;
};

namespace detail {

/// Sign of the face f inside the ordered simplex s: (-1)^j for the j-th
/// omitted vertex.
inline int face_incidence_sign(const std::vector<int>& s, const std::vector<int>& f) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        bool match = true;
        std::size_t fi = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i == j) continue;
            if (f[fi++] != s[i]) { match = false; break; }
        }
        if (match) return (j % 2 == 0) ? 1 : -1;
    }
    throw Error(ErrorKind::InputError, "face_incidence_sign: not a face");
}

}  // namespace detail

/// Top-degree +-1 cycle by propagating orientation across codim-1 faces.
/// Closed case: d(xi) = 0 exactly. Relative case: d(xi) supported exactly on
/// the detected boundary faces. Throws NonOrientable when no consistent sign
/// assignment exists. Disconnected complexes get the sum of per-component
/// cycles plus a warning flag.
inline FundamentalCycle fundamental_cycle(const SimplicialComplex& K, const GradedChainComplex& E,
                                          bool relative = false) {
    const int n = K.dim;
    const auto& tops = K.simplices[n];
    if (tops.empty()) throw Error(ErrorKind::InputError, "no top-dimensional simplices");
    if (!relative && K.has_boundary())
        throw Error(ErrorKind::InputError, "complex has boundary; use relative fundamental cycle");
    if (relative && !K.has_boundary())
        throw Error(ErrorKind::EmptyBoundary, "relative fundamental cycle needs nonempty boundary");

    if (K.fundamental_override) {
        FundamentalCycle out;
        out.xi.degree = n;
        for (auto& [verts, c] : *K.fundamental_override) {
            int i = K.simplex_index(n, verts);
            if (i < 0) throw Error(ErrorKind::InputError, "override names unknown top simplex");
            out.xi.coef[E.offset[n] + i] = c;
        }
        return out;
    }

    // adjacency of top simplices across codim-1 faces shared by exactly two
    std::map<std::vector<int>, std::vector<int>> by_face;
    for (int i = 0; i < (int)tops.size(); ++i)
        for (auto& f : detail::faces_of(tops[i].v)) by_face[f].push_back(i);

    std::vector<int> sign(tops.size(), 0);
    int components = 0;
    for (int seed = 0; seed < (int)tops.size(); ++seed) {
        if (sign[seed] != 0) continue;
        ++components;
        sign[seed] = 1;
        std::vector<int> stack{seed};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (auto& f : detail::faces_of(tops[i].v)) {
                auto& inc = by_face[f];
                if (inc.size() != 2) continue;
                int j = inc[0] == i ? inc[1] : inc[0];
                int si = detail::face_incidence_sign(tops[i].v, f) * tops[i].sign;
                int sj = detail::face_incidence_sign(tops[j].v, f) * tops[j].sign;
                int want = -sign[i] * si * sj;  // induced orientations must cancel
                if (sign[j] == 0) {
                    sign[j] = want;
                    stack.push_back(j);
                } else if (sign[j] != want) {
                    throw Error(ErrorKind::NonOrientable,
                                "orientation conflict across face " + simplex_name(f));
                }
            }
        }
    }

    FundamentalCycle out;
    out.components = components;
    out.disconnected = components > 1;
    out.xi.degree = n;
    for (int i = 0; i < (int)tops.size(); ++i) out.xi.coef[E.offset[n] + i] = Rational(sign[i]);

    // verify the boundary condition exactly
    std::vector<Rational> x(E.size(), Rational(0));
    for (auto& [i, c] : out.xi.coef) x[i] = c;
    auto dx = E.b.apply(x);
    for (int i = 0; i < E.size(); ++i) {
        if (dx[i] == 0) continue;
        if (!relative)
            throw Error(ErrorKind::NonOrientable, "boundary of candidate cycle is nonzero at " + E.label[i]);
        int p = n - 1;
        int local = i - E.offset[p];
        if (local < 0 || !K.is_boundary_face(K.simplices[p][local].v))
            throw Error(ErrorKind::NonOrientable,
                        "relative cycle boundary hits interior face " + E.label[i]);
    }
    return out;
}

}  // namespace hpcx
