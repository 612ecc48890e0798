#pragma once
// Faces, boundaries and horns as subobjects of representables, and the
// angle-bracket notation for cells of a representable.

#include <sstream>
#include <string>
#include <vector>

#include "nerve.hpp"

namespace isovar {

/// Image of the coface omitting vertex i; eps must match the band of i.
inline CellMask face_image(int n, int k, int i, int eps) {
    const SimplexObject o{n, k};
    require_valid(o);
    if (n < 1 || i < 0 || i > n || eps != (i < k ? 1 : 0))
        throw Error(ErrorKind::IndexOutOfRange, "face " + std::to_string(i) + " eps " + std::to_string(eps) + " of " + o.str());
    return image(yoneda_map(face_into(o, i)));
}

inline CellMask face_image(int n, int k, int i) { return face_image(n, k, i, i < k ? 1 : 0); }

inline CellMask boundary(int n, int k) {
    const Representable& R = representable(n, k);
    CellMask m(R.object()->size(), 0);
    for (int i = 0; i < n + 1 && n >= 1; ++i) m = mask_union(m, face_image(n, k, i));
    return m;
}

/// Union of every face except the l-th.
inline CellMask horn(int n, int k, int l) {
    if (n < 1 || l < 0 || l > n) throw Error(ErrorKind::IndexOutOfRange, "horn index");
    const Representable& R = representable(n, k);
    CellMask m(R.object()->size(), 0);
    for (int i = 0; i <= n; ++i)
        if (i != l) m = mask_union(m, face_image(n, k, i));
    return m;
}

/// Horn by the membership rule: a simplex belongs iff its image misses some
/// vertex other than the pair at index l.
inline CellMask horn_by_predicate(int n, int k, int l) {
    if (n < 1 || l < 0 || l > n) throw Error(ErrorKind::IndexOutOfRange, "horn index");
    const Representable& R = representable(n, k);
    const SimplexObject o{n, k};
    return nerve_mask(*R.nerve, [&](const Chain& c) {
        std::vector<char> hit(o.vertex_count(), 0);
        for (int x : c) {
            hit[x] = 1;
            hit[vertex_id(o, act_sigma(o, vertex_at(o, x)))] = 1;
        }
        for (int v = 0; v < o.vertex_count(); ++v)
            if (vertex_at(o, v).index != l && !hit[v]) return true;
        return false;
    });
}

/// "<v0^c v1^c | v2^r v3^r>", with a trailing "^σ" when the non-real part
/// runs along the s branch.
inline std::string notation(const GDeltaMap& cell_mono) {
    std::string nonreal, real;
    bool twisted = false;
    for (int j = 0; j <= cell_mono.src().n; ++j) {
        const Vertex v = cell_mono.image(j);
        if (v.index < cell_mono.tgt().k) {
            if (!nonreal.empty()) nonreal += " ";
            nonreal += "v" + std::to_string(v.index) + "^c";
            twisted = v.branch == Branch::s;
        } else {
            if (!real.empty()) real += " ";
            real += "v" + std::to_string(v.index) + "^r";
        }
    }
    std::string s = "⟨" + nonreal;
    if (!nonreal.empty() && !real.empty()) s += " | ";
    s += real + "⟩";
    if (twisted) s += "^σ";
    return s;
}

inline std::string notation(const Representable& R, int cell) { return notation(R.mono_of(cell)); }

/// Inverse of notation for cells of [n]_k.
inline GDeltaMap parse_notation(const std::string& text, int n, int k) {
    const SimplexObject o{n, k};
    const std::string open = "⟨", close = "⟩", twist = "^σ";
    auto a = text.find(open), b = text.rfind(close);
    if (a == std::string::npos || b == std::string::npos || b < a) throw Error(ErrorKind::InvalidInput, "bad notation: " + text);
    const bool twisted = text.substr(b + close.size()) == twist;
    if (!twisted && b + close.size() != text.size()) throw Error(ErrorKind::InvalidInput, "bad notation suffix: " + text);
    std::istringstream in(text.substr(a + open.size(), b - a - open.size()));
    std::string tok;
    std::vector<Vertex> imgs;
    int l = 0;
    while (in >> tok) {
        if (tok == "|") continue;
        if (tok.size() < 4 || tok[0] != 'v') throw Error(ErrorKind::InvalidInput, "bad token " + tok);
        const auto caret = tok.find('^');
        const int idx = std::stoi(tok.substr(1, caret - 1));
        const char kind = tok[caret + 1];
        if (kind == 'c') {
            ++l;
            imgs.push_back({idx, twisted ? Branch::s : Branch::e});
        } else {
            imgs.push_back({idx, Branch::e});
        }
    }
    if (imgs.empty()) throw Error(ErrorKind::InvalidInput, "empty notation");
    return make_map({static_cast<int>(imgs.size()) - 1, l}, o, imgs);
}

}  // namespace isovar
