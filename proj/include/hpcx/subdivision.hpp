#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "chain_complex.hpp"
#include "homology.hpp"
#include "simplicial.hpp"

namespace hpcx {

enum class SubdivisionMethod { Barycentric, Edge };

/// One refinement step together with its chain-level equivalence data:
/// pr o sd = id exactly, and sd o pr - id = b' h + h b' exactly.
struct Subdivision {
    SimplicialComplex refined;
    GradedChainComplex E_coarse, E_fine;
    SparseQ sd;  // C(K)  -> C(K')
    SparseQ pr;  // C(K') -> C(K)
    SparseQ h;   // C(K') -> C(K'), degree +1
    double mesh_before = 0, mesh_after = 0;
};

namespace detail {

/// Sign of the exact determinant of a small rational matrix.
inline int det_sign(std::vector<std::vector<Rational>> m) {
    int n = (int)m.size();
    int sign = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (m[r][c] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            sign = -sign;
        }
        if (m[c][c] < 0) sign = -sign;
        for (int r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            Rational f = m[r][c] / m[c][c];
            for (int c2 = c; c2 < n; ++c2) m[r][c2] -= f * m[c][c2];
        }
    }
    return sign;
}

/// A cell of the subdivision of one simplex, with vertices given in exact
/// barycentric coordinates of that simplex.
struct SubCell {
    std::vector<std::vector<Rational>> bary;  // per vertex, length = |sigma|
};

/// Orientation of the cell (ordered as listed) against the ambient simplex.
inline int cell_orientation(const SubCell& cell) {
    // affine determinant of barycentric coordinate columns
    std::vector<std::vector<Rational>> m(cell.bary.size(),
                                         std::vector<Rational>(cell.bary.size()));
    for (std::size_t j = 0; j < cell.bary.size(); ++j)
        for (std::size_t i = 0; i < cell.bary.size(); ++i) m[i][j] = cell.bary[j][i];
    return det_sign(std::move(m));
}

inline std::vector<Rational> bary_vertex(int i, int k) {
    std::vector<Rational> e(k, Rational(0));
    e[i] = Rational(1);
    return e;
}

inline std::vector<Rational> bary_midpoint(int i, int j, int k) {
    std::vector<Rational> e(k, Rational(0));
    e[i] += Rational(1, 2);
    e[j] += Rational(1, 2);
    return e;
}

/// Midpoint subdivision schemes through dimension 3. Cells are listed with
/// local vertex descriptors: (i,i) is the i-th original vertex, (i,j) the
/// midpoint of edge ij. The octahedron of a tetrahedron splits along the
/// (m02, m13) diagonal.
inline std::vector<std::vector<std::pair<int, int>>> edge_cells(int d) {
    using P = std::pair<int, int>;
    switch (d) {
        case 0:
            return {{P{0, 0}}};
        case 1:
            return {{P{0, 0}, P{0, 1}}, {P{0, 1}, P{1, 1}}};
        case 2:
            return {{P{0, 0}, P{0, 1}, P{0, 2}},
                    {P{1, 1}, P{0, 1}, P{1, 2}},
                    {P{2, 2}, P{0, 2}, P{1, 2}},
                    {P{0, 1}, P{0, 2}, P{1, 2}}};
        case 3:
            return {{P{0, 0}, P{0, 1}, P{0, 2}, P{0, 3}},
                    {P{1, 1}, P{0, 1}, P{1, 2}, P{1, 3}},
                    {P{2, 2}, P{0, 2}, P{1, 2}, P{2, 3}},
                    {P{3, 3}, P{0, 3}, P{1, 3}, P{2, 3}},
                    {P{0, 2}, P{1, 3}, P{0, 1}, P{0, 3}},
                    {P{0, 2}, P{1, 3}, P{0, 3}, P{2, 3}},
                    {P{0, 2}, P{1, 3}, P{2, 3}, P{1, 2}},
                    {P{0, 2}, P{1, 3}, P{1, 2}, P{0, 1}}};
        default:
            throw Error(ErrorKind::ParameterOutOfRange,
                        "edge subdivision implemented through dimension 3; use barycentric");
    }
}

/// All strictly increasing face chains of sigma ending anywhere (for
/// barycentric subdivision cells we take chains of each length).
inline void flags_of(const std::vector<int>& sigma, std::vector<std::vector<std::vector<int>>>& out) {
    // enumerate nonempty faces of sigma, then chains in the face poset
    std::vector<std::vector<int>> faces;
    int k = (int)sigma.size();
    for (int mask = 1; mask < (1 << k); ++mask) {
        std::vector<int> f;
        for (int i = 0; i < k; ++i)
            if (mask & (1 << i)) f.push_back(sigma[i]);
        faces.push_back(f);
    }
    std::sort(faces.begin(), faces.end(), [](auto& a, auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    auto contains = [](const std::vector<int>& big, const std::vector<int>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::vector<std::vector<int>> chain;
    std::function<void(int)> rec = [&](int from) {
        if (!chain.empty()) out.push_back(chain);
        for (int i = from; i < (int)faces.size(); ++i) {
            if (!chain.empty() &&
                (faces[i].size() <= chain.back().size() || !contains(faces[i], chain.back())))
                continue;
            chain.push_back(faces[i]);
            rec(i + 1);
            chain.pop_back();
        }
    };
    rec(0);
}

}  // namespace detail

/// One level of subdivision with the full chain-equivalence package.
inline Subdivision subdivide_once(const SimplicialComplex& K, SubdivisionMethod method) {
    Subdivision out;
    out.mesh_before = K.mesh();
    SimplicialComplex& R = out.refined;
    R.dim = K.dim;

    // --- vertex bookkeeping -------------------------------------------------
    // new vertex ids: original ids are kept for original vertices; derived
    // vertices (midpoints / barycenters of positive-dimensional faces) get
    // fresh ids above the current maximum.
    int next_id = K.vertex_ids.empty() ? 0 : K.vertex_ids.back() + 1;
    std::map<std::vector<int>, int> vertex_of_face;  // face -> new vertex id
    std::vector<std::pair<int, std::vector<double>>> new_vertices;
    for (int id : K.vertex_ids) {
        vertex_of_face[{id}] = id;
        new_vertices.emplace_back(id, K.coords[K.vertex_index(id)]);
    }
    auto face_vertex = [&](const std::vector<int>& f) {
        auto it = vertex_of_face.find(f);
        if (it != vertex_of_face.end()) return it->second;
        int id = next_id++;
        vertex_of_face[f] = id;
        new_vertices.emplace_back(id, K.barycenter(f));
        return id;
    };

    // --- refined cells + the sd chain map ----------------------------------
    // For every simplex of K we produce the cells of its subdivision with
    // exact orientation signs; cells of faces are shared automatically via
    // their sorted vertex tuples.
    struct PendingCell {
        std::vector<int> verts;  // sorted new-vertex ids
    };
    std::vector<std::set<std::vector<int>>> cells(K.dim + 1);
    // sd entries recorded as (p, coarse local index, cell verts, sign)
    std::vector<std::tuple<int, int, std::vector<int>, int>> sd_entries;

    for (int p = 0; p <= K.dim; ++p) {
        for (int si = 0; si < (int)K.simplices[p].size(); ++si) {
            const auto& sigma = K.simplices[p][si].v;
            std::vector<detail::SubCell> subcells;
            std::vector<std::vector<int>> subcell_vids;
            if (method == SubdivisionMethod::Edge) {
                for (auto& cell : detail::edge_cells(p)) {
                    detail::SubCell sc;
                    std::vector<int> vids;
                    for (auto& [i, j] : cell) {
                        if (i == j) {
                            sc.bary.push_back(detail::bary_vertex(i, p + 1));
                            vids.push_back(face_vertex({sigma[i]}));
                        } else {
                            sc.bary.push_back(detail::bary_midpoint(i, j, p + 1));
                            std::vector<int> f{sigma[i], sigma[j]};
                            std::sort(f.begin(), f.end());
                            vids.push_back(face_vertex(f));
                        }
                    }
                    subcells.push_back(sc);
                    subcell_vids.push_back(vids);
                }
            } else {
                // maximal flags sigma_0 < ... < sigma_p = sigma
                std::vector<std::vector<std::vector<int>>> chains;
                detail::flags_of(sigma, chains);
                for (auto& chain : chains) {
                    if ((int)chain.size() != p + 1 || chain.back() != sigma) continue;
                    detail::SubCell sc;
                    std::vector<int> vids;
                    bool full = true;
                    for (int q = 0; q <= p; ++q) {
                        if ((int)chain[q].size() != q + 1) { full = false; break; }
                        std::vector<Rational> b(p + 1, Rational(0));
                        for (int v : chain[q]) {
                            int pos = int(std::lower_bound(sigma.begin(), sigma.end(), v) - sigma.begin());
                            b[pos] += Rational(1, (long)chain[q].size());
                        }
                        sc.bary.push_back(b);
                        vids.push_back(face_vertex(chain[q]));
                    }
                    if (!full) continue;
                    subcells.push_back(sc);
                    subcell_vids.push_back(vids);
                }
            }
            for (std::size_t c = 0; c < subcells.size(); ++c) {
                int orient = detail::cell_orientation(subcells[c]);
                // sort vertex ids, tracking the permutation sign
                std::vector<int> order(subcell_vids[c].size());
                std::iota(order.begin(), order.end(), 0);
                std::sort(order.begin(), order.end(),
                          [&](int a, int b) { return subcell_vids[c][a] < subcell_vids[c][b]; });
                int perm_sign = 1;
                {
                    std::vector<int> o = order;
                    for (std::size_t i = 0; i < o.size(); ++i)
                        for (std::size_t j = i + 1; j < o.size(); ++j)
                            if (o[i] > o[j]) { std::swap(o[i], o[j]); perm_sign = -perm_sign; }
                }
                std::vector<int> sorted_vids;
                for (int idx : order) sorted_vids.push_back(subcell_vids[c][idx]);
                cells[p].insert(sorted_vids);
                sd_entries.emplace_back(p, si, sorted_vids,
                                        orient * perm_sign * K.simplices[p][si].sign);
            }
        }
    }

    // close the collected cells under faces: cells interior to a face of K
    // (a midpoint 0-cell, say) are not top cells of any subdivided simplex
    for (int p = K.dim; p >= 1; --p)
        for (auto& c : cells[p])
            for (auto& f : detail::faces_of(c)) cells[p - 1].insert(f);

    // assemble the refined complex
    std::sort(new_vertices.begin(), new_vertices.end());
    for (auto& [id, c] : new_vertices) {
        R.vertex_ids.push_back(id);
        R.coords.push_back(c);
    }
    R.simplices.assign(K.dim + 1, {});
    for (int p = 0; p <= K.dim; ++p)
        for (auto& v : cells[p]) R.simplices[p].push_back(Simplex{v, 1});
    // markers carry over: each marked face is replaced by its subdivided cells
    for (auto& [label, faces] : K.boundary_markers) {
        std::set<std::vector<int>> marked;
        for (auto& f0 : faces) {
            std::vector<int> f = f0;
            std::sort(f.begin(), f.end());
            for (auto& [p, si, cverts, sg] : sd_entries) {
                if (p != K.dim - 1) continue;
                if (K.simplices[p][si].v == f) marked.insert(cverts);
            }
        }
        R.boundary_markers[label] = std::vector<std::vector<int>>(marked.begin(), marked.end());
    }
    validate_complex(R);
    out.mesh_after = R.mesh();

    out.E_coarse = chain_complex(K);
    out.E_fine = chain_complex(R);

    // sd as a flat matrix
    out.sd = SparseQ(out.E_fine.size(), out.E_coarse.size());
    for (auto& [p, si, cverts, sg] : sd_entries) {
        int fi = R.simplex_index(p, cverts);
        out.sd.add(out.E_fine.offset[p] + fi, out.E_coarse.offset[p] + si, Rational(sg));
    }

    // pr: simplicial projection sending each derived vertex to the largest
    // vertex of its carrier face; degenerate images vanish at chain level
    std::map<int, int> proj;
    for (auto& [f, id] : vertex_of_face) proj[id] = *std::max_element(f.begin(), f.end());
    out.pr = SparseQ(out.E_coarse.size(), out.E_fine.size());
    for (int p = 0; p <= K.dim; ++p) {
        for (int fi = 0; fi < (int)R.simplices[p].size(); ++fi) {
            std::vector<int> img;
            for (int v : R.simplices[p][fi].v) img.push_back(proj.at(v));
            std::vector<int> sorted = img;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
            int perm_sign = 1;
            {
                std::vector<int> o = img;
                for (std::size_t i = 0; i < o.size(); ++i)
                    for (std::size_t j = i + 1; j < o.size(); ++j)
                        if (o[i] > o[j]) { std::swap(o[i], o[j]); perm_sign = -perm_sign; }
            }
            int ci = K.simplex_index(p, sorted);
            if (ci < 0)
                throw Error(ErrorKind::InputError, "projection image is not a simplex of K");
            out.pr.add(out.E_coarse.offset[p] + ci, out.E_fine.offset[p] + fi,
                       Rational(perm_sign * K.simplices[p][ci].sign));
        }
    }

    // --- homotopy sd o pr - id = b' h + h b' via acyclic carriers ----------
    // carrier of a refined cell = the subdivision of the smallest K-simplex
    // containing it; solve degree by degree inside the carrier.
    std::map<std::vector<int>, std::vector<int>> carrier_face;  // cell -> K-face
    {
        // face of K carrying each refined vertex
        std::map<int, std::vector<int>> face_of_vertex;
        for (auto& [f, id] : vertex_of_face) face_of_vertex[id] = f;
        for (int p = 0; p <= K.dim; ++p)
            for (auto& s : R.simplices[p]) {
                std::set<int> u;
                for (int v : s.v)
                    for (int w : face_of_vertex[v]) u.insert(w);
                carrier_face[s.v] = std::vector<int>(u.begin(), u.end());
            }
    }
    // cells of the subdivision of each K-simplex, all dimensions
    std::map<std::vector<int>, std::vector<std::vector<int>>> cells_in;  // K-face -> refined cells
    for (int p = 0; p <= K.dim; ++p)
        for (auto& s : R.simplices[p]) {
            // s lies in the subdivision of exactly those K-faces containing
            // its carrier face
            const auto& cf = carrier_face[s.v];
            for (int q = (int)cf.size() - 1; q <= K.dim; ++q) {
                if (q < 0) continue;
                for (auto& t : K.simplices[q]) {
                    if (std::includes(t.v.begin(), t.v.end(), cf.begin(), cf.end()))
                        cells_in[t.v].push_back(s.v);
                }
            }
        }

    out.h = SparseQ(out.E_fine.size(), out.E_fine.size());
    SparseQ sdpr = out.sd * out.pr;
    // process refined cells by increasing dimension
    for (int q = 0; q <= K.dim; ++q) {
        // group by carrier to reuse eliminations
        std::map<std::vector<int>, std::vector<int>> by_carrier;  // K-face -> fine flat idx
        for (int fi = 0; fi < (int)R.simplices[q].size(); ++fi)
            by_carrier[carrier_face[R.simplices[q][fi].v]].push_back(out.E_fine.offset[q] + fi);
        for (auto& [cf, flats] : by_carrier) {
            if (q == K.dim) {
                // h vanishes in the top degree only if rhs does; top cells of
                // the carrier still need a solve when q < dim K. For q = dim,
                // C_{q+1} inside the carrier is empty, so rhs must be zero.
                for (int flat : flats) {
                    std::vector<Rational> x(out.E_fine.size(), Rational(0));
                    x[flat] = Rational(1);
                    auto rhs1 = sdpr.apply(x);
                    rhs1[flat] -= Rational(1);
                    auto hb = out.h.apply(out.E_fine.b.apply(x));
                    bool zero = true;
                    for (int i = 0; i < out.E_fine.size(); ++i)
                        if (rhs1[i] - hb[i] != 0) { zero = false; break; }
                    if (!zero)
                        throw Error(ErrorKind::InputError,
                                    "carrier homotopy has no room in top degree");
                }
                continue;
            }
            // carrier (q+1)-cells as columns, q-cells as rows, both in flat idx
            std::vector<int> col_flats, row_flats;
            for (auto& cell : cells_in[cf]) {
                int d = (int)cell.size() - 1;
                if (d == q + 1) col_flats.push_back(out.E_fine.offset[d] + R.simplex_index(d, cell));
                if (d == q) row_flats.push_back(out.E_fine.offset[d] + R.simplex_index(d, cell));
            }
            std::sort(col_flats.begin(), col_flats.end());
            std::sort(row_flats.begin(), row_flats.end());
            col_flats.erase(std::unique(col_flats.begin(), col_flats.end()), col_flats.end());
            row_flats.erase(std::unique(row_flats.begin(), row_flats.end()), row_flats.end());
            SparseQ local_b = out.E_fine.b.submatrix(row_flats, col_flats);
            Elimination elim(local_b);
            std::map<int, int> row_pos;
            for (int i = 0; i < (int)row_flats.size(); ++i) row_pos[row_flats[i]] = i;
            for (int flat : flats) {
                std::vector<Rational> x(out.E_fine.size(), Rational(0));
                x[flat] = Rational(1);
                auto rhs1 = sdpr.apply(x);
                rhs1[flat] -= Rational(1);
                auto hb = out.h.apply(out.E_fine.b.apply(x));
                std::map<int, Rational> rhs_local;
                for (int i = 0; i < out.E_fine.size(); ++i) {
                    Rational v = rhs1[i] - hb[i];
                    if (v == 0) continue;
                    auto it = row_pos.find(i);
                    if (it == row_pos.end())
                        throw Error(ErrorKind::InputError, "homotopy rhs escapes its carrier");
                    rhs_local[it->second] = v;
                }
                auto sol = elim.solve(rhs_local);
                if (!sol)
                    throw Error(ErrorKind::InputError, "carrier solve failed (carrier not acyclic?)");
                for (auto& [j, v] : *sol) out.h.add(col_flats[j], flat, v);
            }
        }
    }
    return out;
}

/// Composite of several refinement levels. The homotopy for a composite
/// (f2 f1, g1 g2) is h2 + f2 h1 g2.
struct SubdivisionTower {
    std::vector<Subdivision> levels;
    // composite equivalence between level 0 and the finest level
    SparseQ sd, pr, h;
    const GradedChainComplex& coarse() const { return levels.front().E_coarse; }
    const GradedChainComplex& fine() const { return levels.back().E_fine; }
    std::vector<double> mesh_per_level() const {
        std::vector<double> m{levels.front().mesh_before};
        for (auto& l : levels) m.push_back(l.mesh_after);
        return m;
    }
};

inline SubdivisionTower subdivide(const SimplicialComplex& K, SubdivisionMethod method, int levels) {
    if (levels < 1) throw Error(ErrorKind::ParameterOutOfRange, "levels must be >= 1");
    SubdivisionTower tower;
    const SimplicialComplex* cur = &K;
    for (int l = 0; l < levels; ++l) {
        tower.levels.push_back(subdivide_once(*cur, method));
        cur = &tower.levels.back().refined;
    }
    tower.sd = tower.levels[0].sd;
    tower.pr = tower.levels[0].pr;
    tower.h = tower.levels[0].h;
    for (std::size_t l = 1; l < tower.levels.size(); ++l) {
        const Subdivision& s = tower.levels[l];
        tower.h = s.h + s.sd * tower.h * s.pr;
        tower.sd = s.sd * tower.sd;
        tower.pr = tower.pr * s.pr;
    }
    return tower;
}

}  // namespace hpcx
