#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace hpcx {

/// A simplex stored as a sorted vertex-id tuple with an orientation sign
/// relative to that sorted order.
struct Simplex {
    std::vector<int> v;  // sorted, distinct vertex ids
    int sign = 1;

    bool operator<(const Simplex& o) const { return v < o.v; }
    bool operator==(const Simplex& o) const { return v == o.v; }
};

inline std::string simplex_name(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

/// Finite oriented simplicial complex with vertex coordinates as control map.
struct SimplicialComplex {
    int dim = 0;
    std::vector<int> vertex_ids;                       // sorted
    std::vector<std::vector<double>> coords;           // by vertex index
    std::vector<std::vector<Simplex>> simplices;       // per dimension, sorted
    std::map<std::string, std::vector<std::vector<int>>> boundary_markers;
    std::optional<std::vector<std::pair<std::vector<int>, Rational>>> fundamental_override;

    // filled by validate()
    int bounded_geometry_k = 0;
    bool non_manifold_warning = false;
    std::vector<std::vector<int>> boundary_faces;      // codim-1 faces on the boundary

    int vertex_index(int id) const {
        auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), id);
        if (it == vertex_ids.end() || *it != id)
            throw Error(ErrorKind::InputError, "unknown vertex id " + std::to_string(id));
        return int(it - vertex_ids.begin());
    }

    int simplex_index(int p, const std::vector<int>& verts) const {
        if (p < 0 || p > dim) return -1;
        Simplex key{verts, 1};
        auto& lst = simplices[p];
        auto it = std::lower_bound(lst.begin(), lst.end(), key);
        if (it == lst.end() || !(it->v == verts)) return -1;
        return int(it - lst.begin());
    }

    std::vector<double> barycenter(const std::vector<int>& verts) const {
        std::size_t d = coords.empty() ? 0 : coords[0].size();
        std::vector<double> c(d, 0.0);
        for (int id : verts) {
            const auto& x = coords[vertex_index(id)];
            for (std::size_t i = 0; i < d; ++i) c[i] += x[i];
        }
        for (auto& x : c) x /= double(verts.size());
        return c;
    }

    std::vector<int> f_vector() const {
        std::vector<int> f;
        for (auto& lst : simplices) f.push_back((int)lst.size());
        return f;
    }

    double simplex_diameter(const std::vector<int>& verts) const {
        double m = 0.0;
        for (std::size_t a = 0; a < verts.size(); ++a)
            for (std::size_t b = a + 1; b < verts.size(); ++b) {
                const auto& x = coords[vertex_index(verts[a])];
                const auto& y = coords[vertex_index(verts[b])];
                double s = 0;
                for (std::size_t i = 0; i < x.size(); ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
                m = std::max(m, s);
            }
        return std::sqrt(m);
    }

    /// Max simplex diameter.
    double mesh() const {
        double m = 0.0;
        for (auto& lst : simplices)
            for (auto& s : lst) m = std::max(m, simplex_diameter(s.v));
        return m;
    }

    bool is_boundary_face(const std::vector<int>& verts) const {
        auto it = std::lower_bound(boundary_faces.begin(), boundary_faces.end(), verts);
        return it != boundary_faces.end() && *it == verts;
    }

    bool has_boundary() const { return !boundary_faces.empty(); }
};

namespace detail {

inline std::vector<std::vector<int>> faces_of(const std::vector<int>& s) {
    std::vector<std::vector<int>> out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        std::vector<int> f;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != j) f.push_back(s[i]);
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace detail

/// Validates closure, duplicates, bounded geometry; detects boundary faces.
/// Throws on structural errors; records NonManifoldWarning instead of failing.
inline void validate_complex(SimplicialComplex& K) {
    if ((int)K.simplices.size() != K.dim + 1)
        throw Error(ErrorKind::InputError, "simplices list does not match dimension");

    for (int p = 0; p <= K.dim; ++p) {
        auto& lst = K.simplices[p];
        for (auto& s : lst) {
            if ((int)s.v.size() != p + 1)
                throw Error(ErrorKind::InputError, "simplex " + simplex_name(s.v) +
                                                       " has wrong vertex count for dimension " +
                                                       std::to_string(p));
            if (!std::is_sorted(s.v.begin(), s.v.end()) ||
                std::adjacent_find(s.v.begin(), s.v.end()) != s.v.end())
                throw Error(ErrorKind::InputError,
                            "simplex " + simplex_name(s.v) + " has unsorted or repeated vertices");
            if (s.sign != 1 && s.sign != -1)
                throw Error(ErrorKind::InputError, "simplex sign must be +-1");
            for (int id : s.v) K.vertex_index(id);  // throws on unknown id
        }
        if (std::adjacent_find(lst.begin(), lst.end()) != lst.end())
            throw Error(ErrorKind::DuplicateSimplex, "repeated simplex in dimension " + std::to_string(p));
    }

    // closure under faces
    for (int p = 1; p <= K.dim; ++p)
        for (auto& s : K.simplices[p])
            for (auto& f : detail::faces_of(s.v))
                if (K.simplex_index(p - 1, f) < 0)
                    throw Error(ErrorKind::ClosureViolation,
                                "face " + simplex_name(f) + " of " + simplex_name(s.v) + " is missing");

    // bounded geometry constant: max number of simplices containing a vertex
    std::map<int, int> count;
    for (auto& lst : K.simplices)
        for (auto& s : lst)
            for (int id : s.v) count[id]++;
    K.bounded_geometry_k = 0;
    for (auto& [id, c] : count) K.bounded_geometry_k = std::max(K.bounded_geometry_k, c);

    // boundary detection: codim-1 faces incident to exactly one top simplex
    K.boundary_faces.clear();
    K.non_manifold_warning = false;
    if (K.dim >= 1) {
        std::map<std::vector<int>, int> incid;
        for (auto& top : K.simplices[K.dim])
            for (auto& f : detail::faces_of(top.v)) incid[f]++;
        for (auto& [f, c] : incid) {
            if (c == 1) K.boundary_faces.push_back(f);
            if (c > 2) K.non_manifold_warning = true;
        }
        std::sort(K.boundary_faces.begin(), K.boundary_faces.end());
    }

    // markers, when present, must cover exactly the boundary codim-1 faces
    if (!K.boundary_markers.empty()) {
        std::set<std::vector<int>> covered;
        for (auto& [label, faces] : K.boundary_markers)
            for (auto& f : faces) {
                std::vector<int> g = f;
                std::sort(g.begin(), g.end());
                if (!K.is_boundary_face(g))
                    throw Error(ErrorKind::MarkerCoverageError,
                                "marker '" + label + "' face " + simplex_name(g) + " is not a boundary face");
                covered.insert(g);
            }
        for (auto& f : K.boundary_faces)
            if (!covered.count(f))
                throw Error(ErrorKind::MarkerCoverageError,
                            "boundary face " + simplex_name(f) + " not covered by markers");
    }
}

/// All faces of the given boundary piece (the subcomplex spanned by the
/// marked codim-1 faces), as a sorted set of vertex tuples per dimension.
inline std::set<std::vector<int>> marker_support(const SimplicialComplex& K,
                                                 const std::vector<std::vector<int>>& faces) {
    std::set<std::vector<int>> supp;
    std::vector<std::vector<int>> stack;
    for (auto& f : faces) {
        std::vector<int> g = f;
        std::sort(g.begin(), g.end());
        stack.push_back(g);
    }
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        if (!supp.insert(s).second) continue;
        if (s.size() > 1)
            for (auto& f : detail::faces_of(s)) stack.push_back(f);
    }
    return supp;
}

/// Support of the whole topological boundary.
inline std::set<std::vector<int>> boundary_support(const SimplicialComplex& K) {
    return marker_support(K, K.boundary_faces);
}

}  // namespace hpcx
