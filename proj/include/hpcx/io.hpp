#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "simplicial.hpp"

namespace hpcx {

using nlohmann::json;

inline Rational rational_from_json(const json& v) {
    if (v.is_number_integer()) return Rational((long)v.get<long long>());
    if (v.is_string()) return rational_from_string(v.get<std::string>());
    throw Error(ErrorKind::InputError, "expected integer or \"p/q\" string");
}

/// Loads a triangulation document. Structural validation (closure,
/// duplicates, bounded geometry, boundary detection, marker coverage) runs
/// before the complex is returned.
inline SimplicialComplex load_complex_json(const json& doc) {
    SimplicialComplex K;
    try {
        K.dim = doc.at("dimension").get<int>();
        std::vector<std::pair<int, std::vector<double>>> verts;
        for (auto& v : doc.at("vertices")) {
            std::vector<double> c;
            for (auto& x : v.at("coords")) c.push_back(x.get<double>());
            verts.emplace_back(v.at("id").get<int>(), c);
        }
        std::sort(verts.begin(), verts.end());
        for (std::size_t i = 1; i < verts.size(); ++i)
            if (verts[i].first == verts[i - 1].first)
                throw Error(ErrorKind::InputError, "duplicate vertex id");
        for (auto& [id, c] : verts) {
            K.vertex_ids.push_back(id);
            K.coords.push_back(c);
        }
        K.simplices.assign(K.dim + 1, {});
        for (auto& [key, lst] : doc.at("simplices").items()) {
            int p = std::stoi(key);
            if (p < 0 || p > K.dim)
                throw Error(ErrorKind::InputError, "simplex dimension " + key + " out of range");
            for (auto& item : lst) {
                Simplex s;
                if (item.is_array()) {
                    for (auto& x : item) s.v.push_back(x.get<int>());
                } else {
                    for (auto& x : item.at("v")) s.v.push_back(x.get<int>());
                    if (item.contains("s")) s.sign = item.at("s").get<int>();
                }
                std::sort(s.v.begin(), s.v.end());
                K.simplices[p].push_back(std::move(s));
            }
            std::sort(K.simplices[p].begin(), K.simplices[p].end());
        }
        if (doc.contains("boundary_markers"))
            for (auto& [label, faces] : doc.at("boundary_markers").items()) {
                std::vector<std::vector<int>> fs;
                for (auto& f : faces) {
                    std::vector<int> g;
                    for (auto& x : f) g.push_back(x.get<int>());
                    std::sort(g.begin(), g.end());
                    fs.push_back(g);
                }
                K.boundary_markers[label] = fs;
            }
        if (doc.contains("fundamental_cycle")) {
            std::vector<std::pair<std::vector<int>, Rational>> fc;
            for (auto& item : doc.at("fundamental_cycle")) {
                std::vector<int> verts2;
                for (auto& x : item.at("simplex")) verts2.push_back(x.get<int>());
                std::sort(verts2.begin(), verts2.end());
                fc.emplace_back(verts2, rational_from_json(item.at("coef")));
            }
            K.fundamental_override = fc;
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InputError, std::string("malformed triangulation document: ") + e.what());
    }
    validate_complex(K);
    return K;
}

inline SimplicialComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InputError, "cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InputError, std::string("parse failure in ") + path + ": " + e.what());
    }
    return load_complex_json(doc);
}

inline json complex_to_json(const SimplicialComplex& K) {
    json doc;
    doc["dimension"] = K.dim;
    doc["vertices"] = json::array();
    for (std::size_t i = 0; i < K.vertex_ids.size(); ++i)
        doc["vertices"].push_back({{"id", K.vertex_ids[i]}, {"coords", K.coords[i]}});
    json sx = json::object();
    for (int p = 0; p <= K.dim; ++p) {
        json lst = json::array();
        for (auto& s : K.simplices[p]) {
            if (s.sign == 1) lst.push_back(s.v);
            else lst.push_back({{"v", s.v}, {"s", s.sign}});
        }
        sx[std::to_string(p)] = lst;
    }
    doc["simplices"] = sx;
    if (!K.boundary_markers.empty()) {
        json m = json::object();
        for (auto& [label, faces] : K.boundary_markers) m[label] = faces;
        doc["boundary_markers"] = m;
    }
    return doc;
}

inline void save_complex(const SimplicialComplex& K, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InputError, "cannot write " + path);
    out << complex_to_json(K).dump(1) << "\n";
}

}  // namespace hpcx
