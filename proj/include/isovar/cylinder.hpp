#pragma once
// The interval presheaves I^{n,k} (nerves of thickenings) and the cylinder
// of a finite object. A cell of the cylinder of X is a pair (x, u): x a
// non-degenerate cell of X and u an injective chain in th(deg x) whose
// projection hits every index of deg x. The pairs (x, u) and (swap x, sigma u)
// name the same cell; the lexicographically smaller one is kept.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "nerve.hpp"

namespace isovar {

inline std::shared_ptr<const Nerve> interval_nerve(const SimplexObject& o) {
    thread_local std::map<SimplexObject, std::shared_ptr<const Nerve>> cache;
    auto it = cache.find(o);
    if (it != cache.end()) return it->second;
    require_valid(o);
    auto N = nerve(thicken(*to_gposet(o)));
    cache.emplace(o, N);
    return N;
}

inline SSetPtr interval_of_representable(int n, int k) { return interval_nerve({n, k})->sset; }

/// Top cells of I^{n,k} counted per sigma orbit: (degree (n+1,k), degree (n+1,k+1)).
inline std::pair<int, int> interval_top_census(int n, int k) {
    const auto X = interval_of_representable(n, k);
    int real = 0, mixed = 0;
    for (int c = 0; c < X->size(); ++c) {
        if (X->swap[c] < c) continue;
        if (X->degree(c) == SimplexObject{n + 1, k}) ++real;
        if (X->degree(c) == SimplexObject{n + 1, k + 1}) ++mixed;
    }
    return {real, mixed};
}

struct CylinderBundle {
    SSetPtr base;
    SSetPtr total;
    PresheafMap d0;
    PresheafMap d1;
    PresheafMap rho;
    std::vector<std::pair<int, Chain>> rep;     // chosen representative of each total cell
    std::map<std::pair<int, Chain>, int> index;  // both representatives -> cell

    const PresheafMap& end(int eps) const { return eps == 0 ? d0 : d1; }

    /// The simplex of the total named by a base cell x and an arbitrary
    /// isovariant map deg -> th(deg x), given by its e-images.
    Simplex normalize(int x, Chain e_images, const SimplexObject& deg) const {
        const IsoSSet& X = *base;
        SimplexObject o = X.degree(x);
        while (true) {
            std::vector<char> hit(o.n + 1, 0);
            for (int e : e_images) hit[vertex_at(o, e / 2).index] = 1;
            std::vector<int> S;
            for (int j = 0; j <= o.n; ++j)
                if (hit[j]) S.push_back(j);
            if (static_cast<int>(S.size()) == o.n + 1) break;
            // factor through the face spanned by S and restrict x there
            int bk = 0;
            std::vector<Vertex> mono_imgs;
            std::vector<int> pos(o.n + 1, -1);
            for (std::size_t p = 0; p < S.size(); ++p) {
                pos[S[p]] = static_cast<int>(p);
                bk += S[p] < o.k;
                mono_imgs.push_back({S[p], Branch::e});
            }
            const SimplexObject mid{static_cast<int>(S.size()) - 1, bk};
            const GDeltaMap mu = GDeltaMap::raw(mid, o, mono_imgs);
            const Simplex xm = apply(X, X.cell_simplex(x), mu);
            const SimplexObject tgt = X.degree(xm.cell);
            for (int& e : e_images) {
                const Vertex v = vertex_at(o, e / 2);
                const Vertex w = xm.epi(canonical(mid, {pos[v.index], v.branch}));
                e = th_elem(vertex_id(tgt, w), th_level(e));
            }
            x = xm.cell;
            o = tgt;
        }
        Chain c;
        std::vector<Vertex> epi;
        int l = 0;
        for (int j = 0; j <= deg.n; ++j) {
            if (c.empty() || c.back() != e_images[j]) {
                c.push_back(e_images[j]);
                if (j < deg.k) ++l;
            }
            epi.push_back({static_cast<int>(c.size()) - 1, Branch::e});
        }
        auto it = index.find({x, c});
        if (it == index.end()) throw Error(ErrorKind::InvalidInput, "no cylinder cell for this chain");
        return {it->second, GDeltaMap::raw(deg, {static_cast<int>(c.size()) - 1, l}, epi)};
    }

    int cell_of(int x, const Chain& u) const {
        auto it = index.find({x, u});
        return it == index.end() ? -1 : it->second;
    }
};

namespace detail {

inline bool covers_all_indices(const SimplexObject& o, const Chain& c) {
    std::vector<char> hit(o.n + 1, 0);
    for (int e : c) hit[vertex_at(o, e / 2).index] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

inline Chain sigma_chain(const FinGPoset& P, const Chain& c) {
    Chain out;
    for (int e : c) out.push_back(P.inv[e]);
    return out;
}

inline Chain level_chain(const SimplexObject& o, int level) {
    Chain c;
    for (int j = 0; j <= o.n; ++j) c.push_back(th_elem(vertex_id(o, canonical(o, {j, Branch::e})), level));
    return c;
}

}  // namespace detail

inline CylinderBundle cylinder(const SSetPtr& X) {
    CylinderBundle B;
    B.base = X;
    struct Key {
        SimplexObject deg;
        int x;
        Chain u;
        bool operator<(const Key& o) const {
            if (deg != o.deg) return deg < o.deg;
            if (x != o.x) return x < o.x;
            return u < o.u;
        }
    };
    std::set<Key> reps;
    for (int x = 0; x < X->size(); ++x) {
        const SimplexObject o = X->degree(x);
        const auto N = interval_nerve(o);
        for (const Chain& u : N->chains) {
            if (!detail::covers_all_indices(o, u)) continue;
            std::pair<int, Chain> a{x, u};
            std::pair<int, Chain> b{X->swap[x], detail::sigma_chain(*N->poset, u)};
            const auto& r = std::min(a, b);
            reps.insert({chain_degree(*N->poset, u), r.first, r.second});
        }
    }
    auto T = std::make_shared<IsoSSet>();
    for (const Key& key : reps) {
        const auto N = interval_nerve(X->degree(key.x));
        const int id = T->add_cell(key.deg, X->cells[key.x].name + "|" + N->chain_name(key.u));
        B.rep.push_back({key.x, key.u});
        B.index[{key.x, key.u}] = id;
        B.index[{X->swap[key.x], detail::sigma_chain(*N->poset, key.u)}] = id;
    }
    B.total = T;
    for (int id = 0; id < T->size(); ++id) {
        const auto& [x, u] = B.rep[id];
        const auto N = interval_nerve(X->degree(x));
        T->swap[id] = B.index.at({X->swap[x], u});
        const SimplexObject deg = T->degree(id);
        if (deg.n >= 1)
            for (int i = 0; i <= deg.n; ++i) {
                Chain f = u;
                f.erase(f.begin() + i);
                T->faces[id].push_back(B.normalize(x, f, face_into(deg, i).src()));
            }
    }
    B.d0 = PresheafMap{X, T, {}};
    B.d1 = PresheafMap{X, T, {}};
    B.rho = PresheafMap{T, X, {}};
    for (int x = 0; x < X->size(); ++x) {
        const SimplexObject o = X->degree(x);
        B.d0.assign.push_back(T->cell_simplex(B.index.at({x, detail::level_chain(o, 0)})));
        B.d1.assign.push_back(T->cell_simplex(B.index.at({x, detail::level_chain(o, 1)})));
    }
    for (int id = 0; id < T->size(); ++id) {
        const auto& [x, u] = B.rep[id];
        const SimplexObject o = X->degree(x);
        std::vector<Vertex> imgs;
        for (int e : u) imgs.push_back(vertex_at(o, th_base(e)));
        B.rho.assign.push_back(apply(*X, X->cell_simplex(x), GDeltaMap::raw(T->degree(id), o, imgs)));
    }
    return B;
}

using BundlePtr = std::shared_ptr<const CylinderBundle>;

inline BundlePtr cylinder_of_representable(int n, int k) {
    thread_local std::map<SimplexObject, BundlePtr> cache;
    const SimplexObject o{n, k};
    auto it = cache.find(o);
    if (it != cache.end()) return it->second;
    auto B = std::make_shared<const CylinderBundle>(cylinder(representable(n, k).object()));
    cache.emplace(o, B);
    return B;
}

/// The induced map of totals.
inline PresheafMap cylinder_map(const PresheafMap& f, const CylinderBundle& from, const CylinderBundle& to) {
    PresheafMap F{from.total, to.total, {}};
    const IsoSSet& X = *from.base;
    for (int id = 0; id < from.total->size(); ++id) {
        const auto& [x, u] = from.rep[id];
        const Simplex y = f.assign[x];
        const SimplexObject o = X.degree(x);
        const SimplexObject oy = to.base->degree(y.cell);
        Chain img;
        for (int e : u) img.push_back(th_elem(vertex_id(oy, y.epi(vertex_at(o, th_base(e)))), th_level(e)));
        F.assign.push_back(to.normalize(y.cell, img, from.total->degree(id)));
    }
    return F;
}

struct ExactnessReport {
    bool section_law = true;    // rho o d_eps = id on both bundles
    bool ends_disjoint = true;  // d0 and d1 hit different cells
    bool mono = true;           // the induced map of totals is mono
    bool natural = true;        // commutes with d_eps and rho
    bool pullback[2] = {true, true};
    std::vector<std::string> problems;
    bool ok() const { return section_law && ends_disjoint && mono && natural && pullback[0] && pullback[1]; }
};

inline bool bundle_section_law(const CylinderBundle& B) {
    const PresheafMap id = identity_map(B.base);
    return compose(B.rho, B.d0) == id && compose(B.rho, B.d1) == id;
}

inline bool bundle_ends_disjoint(const CylinderBundle& B) {
    for (int x = 0; x < B.base->size(); ++x)
        for (int y = 0; y < B.base->size(); ++y)
            if (B.d0.assign[x].cell == B.d1.assign[y].cell) return false;
    return true;
}

/// Checks, for a mono iota: X -> Y, that the cylinder of iota is a mono and
/// that each end square (d_eps, iota, I(iota), d_eps) is a pullback: a cell
/// of Y lies in the image of iota iff its end lies in the image of I(iota).
inline ExactnessReport verify_exactness(const PresheafMap& iota, const CylinderBundle& IX, const CylinderBundle& IY) {
    ExactnessReport rep;
    if (!is_mono(iota)) throw Error(ErrorKind::NotMono, "verify_exactness needs a mono");
    rep.section_law = bundle_section_law(IX) && bundle_section_law(IY);
    if (!rep.section_law) rep.problems.push_back("rho o d_eps is not the identity");
    rep.ends_disjoint = IX.base->empty() || (bundle_ends_disjoint(IX) && bundle_ends_disjoint(IY));
    if (!rep.ends_disjoint) rep.problems.push_back("d0 and d1 share a cell");
    const PresheafMap Ii = cylinder_map(iota, IX, IY);
    rep.mono = is_mono(Ii) && check_map(Ii).empty();
    if (!rep.mono) rep.problems.push_back("cylinder of the mono is not a mono");
    for (int eps = 0; eps <= 1; ++eps)
        if (!(compose(Ii, IX.end(eps)) == compose(IY.end(eps), iota))) rep.natural = false;
    if (!(compose(IY.rho, Ii) == compose(iota, IX.rho))) rep.natural = false;
    if (!rep.natural) rep.problems.push_back("naturality square fails");
    const CellMask in_x = image(iota);
    const CellMask in_ix = image(Ii);
    for (int eps = 0; eps <= 1; ++eps)
        for (int y = 0; y < IY.base->size(); ++y)
            if ((in_x[y] != 0) != (in_ix[IY.end(eps).assign[y].cell] != 0)) {
                rep.pullback[eps] = false;
                rep.problems.push_back("pullback fails at level " + std::to_string(eps) + " on " + IY.base->cells[y].name);
            }
    return rep;
}

/// Subobject of the cylinder of Y: image of the cylinder of a sub-mask.
inline CellMask cylinder_of_mask(const CylinderBundle& IY, const CellMask& m) {
    CellMask out(IY.total->size(), 0);
    for (int id = 0; id < IY.total->size(); ++id) out[id] = m[IY.rep[id].first];
    return out;
}

/// Image of d_eps: the end {eps} x Y as a mask over the total.
inline CellMask end_mask(const CylinderBundle& IY, int eps, const CellMask& m) {
    std::vector<int> seeds;
    for (int y = 0; y < IY.base->size(); ++y)
        if (m[y]) seeds.push_back(IY.end(eps).assign[y].cell);
    return closure(*IY.total, seeds);
}

}  // namespace isovar
