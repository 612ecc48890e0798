#pragma once
// Presheaves represented by a finite C2-poset: the simplices of degree
// (m,l) are isovariant order-preserving maps [m]_l -> P, the
// non-degenerate ones are the injective maps (chains). Representables are
// the nerves of [n]_k, the intervals I^{n,k} are the nerves of th[n]_k.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gdelta.hpp"
#include "gposet.hpp"
#include "presheaf.hpp"

namespace isovar {

/// A chain is the list of e-branch images; the first l entries are free
/// elements, the rest fixed.
using Chain = std::vector<int>;

struct Nerve {
    GPosetPtr poset;
    std::shared_ptr<IsoSSet> sset;
    std::vector<Chain> chains;
    std::map<Chain, int> index;

    SSetPtr object() const { return sset; }

    int cell_of(const Chain& c) const {
        auto it = index.find(c);
        return it == index.end() ? -1 : it->second;
    }

    /// Normal form of an arbitrary isovariant map [m]_l -> P given by its
    /// e-images: collapse repeated neighbours into the epi part.
    Simplex simplex_of(const Chain& e_images, const SimplexObject& deg) const {
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
        const int cell = cell_of(c);
        if (cell < 0) throw Error(ErrorKind::InvalidInput, "map is not a simplex of this nerve");
        return {cell, GDeltaMap::raw(deg, {static_cast<int>(c.size()) - 1, l}, epi)};
    }

    /// e-images of the composite chain o theta.
    Chain precompose(const Chain& c, const GDeltaMap& theta) const {
        Chain out;
        for (int j = 0; j <= theta.src().n; ++j) {
            const Vertex v = theta.image(j);
            const int x = c[v.index];
            out.push_back(v.branch == Branch::s ? poset->inv[x] : x);
        }
        return out;
    }

    std::string chain_name(const Chain& c) const {
        std::string s = "<";
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (j) s += ",";
            s += poset->names[c[j]];
        }
        return s + ">";
    }
};

namespace detail {

inline void enumerate_chains(const FinGPoset& P, std::vector<Chain>& out) {
    // free elements first, then fixed; strictly increasing; at the switch the
    // sigma image of the last free element must also lie below.
    Chain cur;
    std::function<void(bool)> rec = [&](bool in_fixed) {
        out.push_back(cur);
        for (int x = 0; x < P.size(); ++x) {
            const bool fx = P.fixed(x);
            if (in_fixed && !fx) continue;
            if (!cur.empty()) {
                const int last = cur.back();
                if (last == x || !P.leq(last, x)) continue;
                if (fx && !P.fixed(last) && !P.leq(P.inv[last], x)) continue;
                // injectivity against the sigma branch
                bool clash = false;
                for (int y : cur)
                    if (y == x || (!P.fixed(y) && P.inv[y] == x)) clash = true;
                if (clash) continue;
            }
            cur.push_back(x);
            rec(fx);
            cur.pop_back();
        }
    };
    for (int x = 0; x < P.size(); ++x) {
        cur = {x};
        rec(P.fixed(x));
    }
}

}  // namespace detail

inline SimplexObject chain_degree(const FinGPoset& P, const Chain& c) {
    int l = 0;
    for (int x : c)
        if (!P.fixed(x)) ++l;
    return {static_cast<int>(c.size()) - 1, l};
}

inline std::shared_ptr<const Nerve> nerve(const GPosetPtr& P) {
    auto N = std::make_shared<Nerve>();
    N->poset = P;
    N->sset = std::make_shared<IsoSSet>();
    std::vector<Chain> chains;
    detail::enumerate_chains(*P, chains);
    std::sort(chains.begin(), chains.end(), [&](const Chain& a, const Chain& b) {
        const auto da = chain_degree(*P, a), db = chain_degree(*P, b);
        if (da != db) return da < db;
        return a < b;
    });
    for (const auto& c : chains) {
        N->index[c] = N->sset->add_cell(chain_degree(*P, c), N->chain_name(c));
        N->chains.push_back(c);
    }
    for (int id = 0; id < N->sset->size(); ++id) {
        const Chain& c = N->chains[id];
        const SimplexObject deg = chain_degree(*P, c);
        Chain sc = c;
        for (int j = 0; j < deg.k; ++j) sc[j] = P->inv[c[j]];
        N->sset->swap[id] = N->index.at(sc);
        if (deg.n >= 1)
            for (int i = 0; i <= deg.n; ++i) {
                Chain f = c;
                f.erase(f.begin() + i);
                const int fc = N->index.at(f);
                N->sset->faces[id].push_back(N->sset->cell_simplex(fc));
            }
    }
    return N;
}

/// Map of nerves induced by an isovariant poset map.
inline PresheafMap nerve_map(const GPosetMap& h, const Nerve& from, const Nerve& to) {
    PresheafMap F{from.sset, to.sset, {}};
    for (int c = 0; c < from.sset->size(); ++c) {
        Chain img;
        for (int x : from.chains[c]) img.push_back(h(x));
        F.assign.push_back(to.simplex_of(img, from.sset->degree(c)));
    }
    return F;
}

// ---------------------------------------------------------------------------
// Representables

struct Representable {
    SimplexObject obj;
    std::shared_ptr<const Nerve> nerve;

    SSetPtr object() const { return nerve->sset; }
    /// The mono [m]_l -> [n]_k a cell stands for.
    GDeltaMap mono_of(int cell) const {
        const Chain& c = nerve->chains[cell];
        std::vector<Vertex> imgs;
        for (int x : c) imgs.push_back(vertex_at(obj, x));
        return GDeltaMap::raw(nerve->sset->degree(cell), obj, imgs);
    }
    int cell_of(const GDeltaMap& mono) const {
        Chain c;
        for (int j = 0; j <= mono.src().n; ++j) c.push_back(vertex_id(obj, mono.image(j)));
        return nerve->cell_of(c);
    }
    /// Normal form of an arbitrary morphism into [n]_k.
    Simplex simplex_of(const GDeltaMap& theta) const {
        Chain c;
        for (int j = 0; j <= theta.src().n; ++j) c.push_back(vertex_id(obj, theta.image(j)));
        return nerve->simplex_of(c, theta.src());
    }
};

namespace detail {

inline std::map<SimplexObject, Representable>& representable_cache() {
    thread_local std::map<SimplexObject, Representable> cache;
    return cache;
}

}  // namespace detail

inline const Representable& representable(int n, int k) {
    const SimplexObject o{n, k};
    require_valid(o);
    auto& cache = detail::representable_cache();
    auto it = cache.find(o);
    if (it != cache.end()) return it->second;
    Representable r{o, nerve(to_gposet(o))};
    auto& N = const_cast<Nerve&>(*r.nerve);
    for (int c = 0; c < N.sset->size(); ++c) N.sset->cells[c].name = r.mono_of(c).str();
    return cache.emplace(o, std::move(r)).first->second;
}

/// Postcomposition with theta.
inline PresheafMap yoneda_map(const GDeltaMap& theta) {
    const Representable& A = representable(theta.src().n, theta.src().k);
    const Representable& B = representable(theta.tgt().n, theta.tgt().k);
    PresheafMap F{A.object(), B.object(), {}};
    for (int c = 0; c < A.object()->size(); ++c) F.assign.push_back(B.simplex_of(compose(theta, A.mono_of(c))));
    return F;
}

/// Cells of a nerve whose chain satisfies a predicate.
template <class Pred>
CellMask nerve_mask(const Nerve& N, Pred&& pred) {
    CellMask m(N.sset->size(), 0);
    for (int c = 0; c < N.sset->size(); ++c) m[c] = pred(N.chains[c]) ? 1 : 0;
    return m;
}

}  // namespace isovar
