#pragma once
// Reference description of the cylinder of a subobject K of a representable
// N(P): its cells are the chains w of N(th P) whose projection to P is a
// simplex of K. compare_with_oracle checks that the glued cylinder built by
// the library matches this set cell by cell, with faces and swaps.

#include <isovar/cylinder.hpp>

#include <string>

namespace oracle {

using namespace isovar;

inline CellMask oracle_cylinder_mask(int n, int k, const CellMask& K) {
    const Representable& R = representable(n, k);
    const auto thN = interval_nerve({n, k});
    return nerve_mask(*thN, [&](const Chain& w) {
        Chain proj;
        for (int e : w)
            if (proj.empty() || proj.back() != th_base(e)) proj.push_back(th_base(e));
        const int c = R.nerve->cell_of(proj);
        return c >= 0 && K[c];
    });
}

/// Empty string on success.
inline std::string compare_with_oracle(int n, int k, const CellMask& K) {
    const Representable& R = representable(n, k);
    const auto thN = interval_nerve({n, k});
    const IsoSSet& T = *thN->sset;
    const Materialized M = materialize(R.object(), K);
    std::vector<int> ambient(M.object->size(), -1);
    for (std::size_t c = 0; c < M.to_sub.size(); ++c)
        if (M.to_sub[c] >= 0) ambient[M.to_sub[c]] = static_cast<int>(c);
    const CylinderBundle B = cylinder(M.object);
    const CellMask expect = oracle_cylinder_mask(n, k, K);

    auto to_oracle = [&](int id) {
        const auto& [x, u] = B.rep[id];
        const Chain& cx = R.nerve->chains[ambient[x]];
        const SimplexObject o = M.object->degree(x);
        Chain w;
        for (int e : u) {
            const Vertex v = vertex_at(o, th_base(e));
            const int p = v.branch == Branch::s ? R.nerve->poset->inv[cx[v.index]] : cx[v.index];
            w.push_back(th_elem(p, th_level(e)));
        }
        return T.cells.size() ? thN->cell_of(w) : -1;
    };
    std::vector<int> fwd(B.total->size());
    std::vector<char> hit(T.size(), 0);
    for (int id = 0; id < B.total->size(); ++id) {
        const int w = to_oracle(id);
        if (w < 0 || !expect[w]) return "cell " + B.total->cells[id].name + " outside the oracle set";
        if (hit[w]) return "two cells land on " + T.cells[w].name;
        if (T.degree(w) != B.total->degree(id)) return "degree differs at " + T.cells[w].name;
        hit[w] = 1;
        fwd[id] = w;
    }
    if (mask_count(expect) != B.total->size()) return "oracle has cells the cylinder misses";
    for (int id = 0; id < B.total->size(); ++id) {
        const int w = fwd[id];
        if (fwd[B.total->swap[id]] != T.swap[w]) return "swap differs at " + T.cells[w].name;
        for (std::size_t i = 0; i < B.total->faces[id].size(); ++i) {
            const Simplex& f = B.total->faces[id][i];
            const Simplex& g = T.faces[w][i];
            if (fwd[f.cell] != g.cell || !(f.epi == g.epi)) return "face differs at " + T.cells[w].name;
        }
    }
    return {};
}

}  // namespace oracle
