#pragma once
// ISOV-SSET JSON v1 and the companion map documents. Keys are sorted and the
// cell order is kept, so equal structures print to equal bytes.
//
//   {"format": "ISOV-SSET", "version": 1, "max_n": 2,
//    "cells": [{"name": ..., "degree": "2,1",
//               "faces": {"d1_0": {"cell": 3}, "d0_1": {...}, "d0_2": {"cell": 5, "epi": [0, 0]}},
//               "sigma": 10}, ...]}
//
// A face is named after the coface that produces it: d1_i for a free vertex
// i, d0_i for a real one. "epi" lists the indices of a degenerate face's
// pure epi and is omitted for non-degenerate faces.

#include <json.hpp>

#include <string>

#include "anodyne.hpp"
#include "realization.hpp"

namespace isovar {

using json = nlohmann::json;

constexpr int kDocumentVersion = 1;

inline std::string degree_str(const SimplexObject& o) { return std::to_string(o.n) + "," + std::to_string(o.k); }

inline SimplexObject parse_degree(const std::string& s) {
    const auto comma = s.find(',');
    SimplexObject o{-1, -1};
    try {
        if (comma == std::string::npos) throw std::invalid_argument(s);
        std::size_t used = 0;
        o.n = std::stoi(s.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument(s);
        const std::string rest = s.substr(comma + 1);
        o.k = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidInput, "degree must read n,k: " + s);
    }
    if (!o.valid()) throw Error(ErrorKind::InvalidObject, "no object " + s);
    return o;
}

inline std::string face_key(const SimplexObject& o, int i) {
    return "d" + std::to_string(i < o.k ? 1 : 0) + "_" + std::to_string(i);
}

/// "3" for a real vertex, "0e" / "0s" for the two copies of a free one.
inline Vertex parse_vertex(const SimplexObject& o, const std::string& s) {
    try {
        std::size_t used = 0;
        const int j = std::stoi(s, &used);
        Branch b = Branch::e;
        if (used + 1 == s.size() && (s[used] == 'e' || s[used] == 's'))
            b = s[used] == 's' ? Branch::s : Branch::e;
        else if (used != s.size())
            throw std::invalid_argument(s);
        if (j < 0 || j > o.n) throw Error(ErrorKind::IndexOutOfRange, "vertex " + s + " of " + o.str());
        if (j < o.k && used == s.size()) throw Error(ErrorKind::NonCanonicalVertex, "free vertex needs a branch: " + s);
        if (j >= o.k && used != s.size()) throw Error(ErrorKind::NonCanonicalVertex, "real vertex has no branch: " + s);
        return {j, b};
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::InvalidInput, "bad vertex " + s);
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::InvalidInput, "bad vertex " + s);
    }
}

// ---------------------------------------------------------------------------
// Objects

inline json simplex_json(const Simplex& s) {
    json j;
    j["cell"] = s.cell;
    if (!s.nondegenerate()) {
        json epi = json::array();
        for (const auto& v : s.epi.e_images()) epi.push_back(v.index);
        j["epi"] = epi;
    }
    return j;
}

inline json to_json(const IsoSSet& X, const std::string& provenance = {}) {
    json doc;
    doc["format"] = "ISOV-SSET";
    doc["version"] = kDocumentVersion;
    doc["max_n"] = X.max_dim();
    if (!provenance.empty()) doc["provenance"] = provenance;
    json cells = json::array();
    for (int c = 0; c < X.size(); ++c) {
        const SimplexObject o = X.degree(c);
        json cell;
        cell["name"] = X.cells[c].name;
        cell["degree"] = degree_str(o);
        json faces = json::object();
        for (int i = 0; i < static_cast<int>(X.faces[c].size()); ++i) faces[face_key(o, i)] = simplex_json(X.faces[c][i]);
        cell["faces"] = faces;
        if (o.k > 0) cell["sigma"] = X.swap[c];
        cells.push_back(cell);
    }
    doc["cells"] = cells;
    return doc;
}

inline std::string serialize(const IsoSSet& X, const std::string& provenance = {}) {
    return to_json(X, provenance).dump(2) + "\n";
}

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::InvalidInput, std::string("missing field ") + key);
    return j.at(key);
}

inline int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) throw Error(ErrorKind::InvalidInput, std::string("field ") + key + " is not an integer");
    return v.get<int>();
}

inline std::string str_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw Error(ErrorKind::InvalidInput, std::string("field ") + key + " is not a string");
    return v.get<std::string>();
}

inline void require_header(const json& doc, const char* format) {
    if (str_field(doc, "format") != format)
        throw Error(ErrorKind::InvalidInput, std::string("expected a ") + format + " document");
    if (int_field(doc, "version") != kDocumentVersion) throw Error(ErrorKind::InvalidInput, "unsupported version");
}

/// A simplex of X given as {"cell", "epi"?} in degree deg.
inline Simplex simplex_from_json(const json& j, const IsoSSet& X, const SimplexObject& deg) {
    const int cell = int_field(j, "cell");
    if (cell < 0 || cell >= X.size()) throw Error(ErrorKind::InvalidInput, "cell index out of range");
    const SimplexObject to = X.degree(cell);
    if (!j.contains("epi")) {
        if (to != deg) throw Error(ErrorKind::InvalidInput, "face degree mismatch at cell " + std::to_string(cell));
        return X.cell_simplex(cell);
    }
    const json& e = j.at("epi");
    if (!e.is_array() || static_cast<int>(e.size()) != deg.n + 1)
        throw Error(ErrorKind::InvalidInput, "epi has the wrong length");
    std::vector<Vertex> imgs;
    for (const auto& x : e) {
        if (!x.is_number_integer()) throw Error(ErrorKind::InvalidInput, "epi entries are indices");
        const int idx = x.get<int>();
        if (idx < 0 || idx > to.n) throw Error(ErrorKind::InvalidInput, "epi index out of range");
        imgs.push_back({idx, Branch::e});
    }
    const GDeltaMap epi = make_map(deg, to, imgs);
    if (!is_epi(epi) || epi == identity(deg)) throw Error(ErrorKind::InvalidInput, "face epi is not a proper epi");
    return {cell, epi};
}

}  // namespace detail

/// Parses and validates; throws Error(InvalidInput) on any defect.
inline std::shared_ptr<IsoSSet> sset_from_json(const json& doc) {
    detail::require_header(doc, "ISOV-SSET");
    const json& cells = detail::field(doc, "cells");
    if (!cells.is_array()) throw Error(ErrorKind::InvalidInput, "cells must be a list");
    auto X = std::make_shared<IsoSSet>();
    for (const auto& c : cells) {
        X->add_cell(parse_degree(detail::str_field(c, "degree")), detail::str_field(c, "name"));
    }
    for (int id = 0; id < X->size(); ++id) {
        const json& c = cells[id];
        const SimplexObject o = X->degree(id);
        const json& faces = detail::field(c, "faces");
        if (!faces.is_object() || static_cast<int>(faces.size()) != (o.n >= 1 ? o.n + 1 : 0))
            throw Error(ErrorKind::InvalidInput, "cell " + std::to_string(id) + " needs one face per vertex");
        for (int i = 0; o.n >= 1 && i <= o.n; ++i) {
            const std::string key = face_key(o, i);
            if (!faces.contains(key)) throw Error(ErrorKind::InvalidInput, "cell " + std::to_string(id) + " lacks " + key);
            X->faces[id].push_back(detail::simplex_from_json(faces.at(key), *X, face_into(o, i).src()));
        }
        if (o.k > 0) {
            const int s = detail::int_field(c, "sigma");
            if (s < 0 || s >= X->size()) throw Error(ErrorKind::InvalidInput, "sigma out of range");
            X->swap[id] = s;
        } else if (c.contains("sigma") && c.at("sigma") != id) {
            throw Error(ErrorKind::InvalidInput, "a cell without free vertices is its own swap");
        }
    }
    const ValidationReport rep = validate(*X);
    if (!rep.ok()) throw Error(ErrorKind::InvalidInput, "document fails validation: " + rep.violations.front());
    if (doc.contains("max_n") && doc.at("max_n") != X->max_dim())
        throw Error(ErrorKind::InvalidInput, "max_n does not match the cells");
    return X;
}

inline json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidInput, std::string("not JSON: ") + e.what());
    }
}

inline std::shared_ptr<IsoSSet> parse_sset(const std::string& text) { return sset_from_json(parse_json(text)); }

// ---------------------------------------------------------------------------
// Maps

inline json gdelta_json(const GDeltaMap& f) {
    json doc;
    doc["format"] = "ISOV-MAP";
    doc["version"] = kDocumentVersion;
    doc["kind"] = "gdelta";
    doc["src"] = degree_str(f.src());
    doc["tgt"] = degree_str(f.tgt());
    json imgs = json::array();
    for (const auto& v : f.e_images()) imgs.push_back(vertex_name(f.tgt(), v));
    doc["images"] = imgs;
    return doc;
}

inline GDeltaMap gdelta_from_json(const json& doc) {
    detail::require_header(doc, "ISOV-MAP");
    if (detail::str_field(doc, "kind") != "gdelta") throw Error(ErrorKind::InvalidInput, "expected a gdelta map");
    const SimplexObject src = parse_degree(detail::str_field(doc, "src"));
    const SimplexObject tgt = parse_degree(detail::str_field(doc, "tgt"));
    const json& imgs = detail::field(doc, "images");
    if (!imgs.is_array() || static_cast<int>(imgs.size()) != src.n + 1)
        throw Error(ErrorKind::InvalidInput, "one image per source index");
    std::vector<Vertex> v;
    for (const auto& x : imgs) {
        if (!x.is_string()) throw Error(ErrorKind::InvalidInput, "images are vertex names");
        v.push_back(parse_vertex(tgt, x.get<std::string>()));
    }
    return make_map(src, tgt, v);
}

/// A presheaf map; source and target are embedded documents.
inline json presheaf_map_json(const PresheafMap& F) {
    json doc;
    doc["format"] = "ISOV-MAP";
    doc["version"] = kDocumentVersion;
    doc["kind"] = "presheaf";
    doc["src"] = to_json(*F.src);
    doc["tgt"] = to_json(*F.tgt);
    json a = json::array();
    for (const auto& s : F.assign) a.push_back(simplex_json(s));
    doc["assign"] = a;
    return doc;
}

inline PresheafMap presheaf_map_from_json(const json& doc) {
    detail::require_header(doc, "ISOV-MAP");
    if (detail::str_field(doc, "kind") != "presheaf") throw Error(ErrorKind::InvalidInput, "expected a presheaf map");
    PresheafMap F{sset_from_json(detail::field(doc, "src")), sset_from_json(detail::field(doc, "tgt")), {}};
    const json& a = detail::field(doc, "assign");
    if (!a.is_array() || static_cast<int>(a.size()) != F.src->size())
        throw Error(ErrorKind::InvalidInput, "one image per source cell");
    for (int c = 0; c < F.src->size(); ++c) F.assign.push_back(detail::simplex_from_json(a[c], *F.tgt, F.src->degree(c)));
    if (const std::string err = check_map(F); !err.empty()) throw Error(ErrorKind::InvalidInput, "not a map: " + err);
    return F;
}

/// Witness homotopy as a map block out of the cylinder total.
inline json homotopy_json(const Homotopy& H) {
    json doc;
    doc["map"] = presheaf_map_json(H.map);
    json from = json::array(), to = json::array();
    for (const auto& s : H.from.assign) from.push_back(simplex_json(s));
    for (const auto& s : H.to.assign) to.push_back(simplex_json(s));
    doc["from"] = from;
    doc["to"] = to;
    return doc;
}

// ---------------------------------------------------------------------------
// Reports

inline json mesh_json(const Mesh& M) {
    json doc;
    doc["ambient"] = M.ambient;
    json vs = json::array(), fs = json::array();
    for (const auto& v : M.vertices) vs.push_back({{"id", v.id}, {"coords", v.coords}, {"origin", v.origin}});
    for (const auto& f : M.facets) fs.push_back({{"vertices", f.vertices}, {"origin", f.origin}});
    doc["vertices"] = vs;
    doc["facets"] = fs;
    doc["census"] = M.census();
    return doc;
}

inline json derivation_json(const Derivation& d) {
    json doc{{"rule", d.rule}, {"label", d.label}, {"ok", d.ok}};
    json kids = json::array();
    for (const auto& c : d.children) kids.push_back(derivation_json(c));
    doc["children"] = kids;
    return doc;
}

}  // namespace isovar
