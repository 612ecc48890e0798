#pragma once
// Finite C2-posets, isovariant maps between them, thickenings, isovariant
// products, fiber products and the cospan completion used for mono
// preservation of the cylinder.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdelta.hpp"

namespace isovar {

/// Elements are 0..size()-1 with opaque string names.
struct FinGPoset {
    std::vector<std::string> names;
    std::vector<std::vector<char>> le;  // le[a][b] iff a <= b
    std::vector<int> inv;               // the action of sigma

    int size() const { return static_cast<int>(names.size()); }
    bool fixed(int a) const { return inv[a] == a; }
    bool leq(int a, int b) const { return le[a][b] != 0; }

    int find(const std::string& name) const {
        for (int a = 0; a < size(); ++a)
            if (names[a] == name) return a;
        return -1;
    }

    /// Empty string when the structure is a partial order with an involutive
    /// order automorphism; otherwise a description of the first problem.
    std::string check() const {
        const int N = size();
        if (static_cast<int>(le.size()) != N || static_cast<int>(inv.size()) != N) return "size mismatch";
        for (int a = 0; a < N; ++a) {
            if (!leq(a, a)) return "not reflexive at " + names[a];
            if (inv[a] < 0 || inv[a] >= N || inv[inv[a]] != a) return "sigma not an involution at " + names[a];
            for (int b = 0; b < N; ++b) {
                if (a != b && leq(a, b) && leq(b, a)) return "not antisymmetric";
                if (leq(a, b) != leq(inv[a], inv[b])) return "sigma not monotone";
                for (int c = 0; c < N; ++c)
                    if (leq(a, b) && leq(b, c) && !leq(a, c)) return "not transitive";
            }
        }
        return {};
    }
};

using GPosetPtr = std::shared_ptr<const FinGPoset>;

struct GPosetMap {
    GPosetPtr src;
    GPosetPtr tgt;
    std::vector<int> table;

    int operator()(int a) const { return table[a]; }
    bool operator==(const GPosetMap& o) const { return table == o.table; }

    /// Empty when order-preserving, equivariant and isotropy-preserving.
    std::string check() const {
        if (static_cast<int>(table.size()) != src->size()) return "table size";
        for (int a = 0; a < src->size(); ++a) {
            const int fa = table[a];
            if (fa < 0 || fa >= tgt->size()) return "out of range";
            if (table[src->inv[a]] != tgt->inv[fa]) return "not equivariant at " + src->names[a];
            if (src->fixed(a) != tgt->fixed(fa)) return "isotropy changes at " + src->names[a];
            for (int b = 0; b < src->size(); ++b)
                if (src->leq(a, b) && !tgt->leq(fa, table[b])) return "order violated";
        }
        return {};
    }
};

inline GPosetMap compose(const GPosetMap& g, const GPosetMap& f) {
    GPosetMap out{f.src, g.tgt, {}};
    for (int x : f.table) out.table.push_back(g.table[x]);
    return out;
}

inline GPosetMap identity(const GPosetPtr& p) {
    GPosetMap m{p, p, {}};
    for (int a = 0; a < p->size(); ++a) m.table.push_back(a);
    return m;
}

inline GPosetPtr to_gposet(const SimplexObject& o) {
    auto p = std::make_shared<FinGPoset>();
    const auto vs = vertices(o);
    const int N = static_cast<int>(vs.size());
    p->le.assign(N, std::vector<char>(N, 0));
    for (int a = 0; a < N; ++a) {
        p->names.push_back(vertex_name(o, vs[a]));
        p->inv.push_back(vertex_id(o, act_sigma(o, vs[a])));
        for (int b = 0; b < N; ++b) p->le[a][b] = leq_unchecked(o, vs[a], vs[b]) ? 1 : 0;
    }
    return p;
}

/// Map into a poset given by a GDeltaMap on vertex ids.
inline GPosetMap to_gposet_map(const GDeltaMap& f, const GPosetPtr& src, const GPosetPtr& tgt) {
    GPosetMap m{src, tgt, {}};
    for (const auto& v : vertices(f.src())) m.table.push_back(vertex_id(f.tgt(), f(v)));
    return m;
}

/// Thickening: P x {0<1}, sigma on the first factor. Element (a,d) has id 2a+d.
inline GPosetPtr thicken(const FinGPoset& base) {
    auto p = std::make_shared<FinGPoset>();
    const int N = base.size();
    p->le.assign(2 * N, std::vector<char>(2 * N, 0));
    for (int a = 0; a < N; ++a)
        for (int d = 0; d <= 1; ++d) {
            p->names.push_back("(" + base.names[a] + "," + std::to_string(d) + ")");
            p->inv.push_back(2 * base.inv[a] + d);
        }
    for (int a = 0; a < 2 * N; ++a)
        for (int b = 0; b < 2 * N; ++b)
            p->le[a][b] = (base.leq(a / 2, b / 2) && (a % 2) <= (b % 2)) ? 1 : 0;
    return p;
}

inline int th_elem(int base_elem, int level) { return 2 * base_elem + level; }
inline int th_base(int elem) { return elem / 2; }
inline int th_level(int elem) { return elem % 2; }

struct Thickening {
    SimplexObject base;
    GPosetPtr base_poset;
    GPosetPtr poset;
};

inline Thickening thicken(const SimplexObject& o) {
    auto b = to_gposet(o);
    return {o, b, thicken(*b)};
}

/// th(alpha): ([j,g],d) -> (alpha[j,g],d).
inline GPosetMap th_map(const GDeltaMap& alpha, const GPosetPtr& th_src, const GPosetPtr& th_tgt) {
    GPosetMap m{th_src, th_tgt, {}};
    for (const auto& v : vertices(alpha.src())) {
        const int img = vertex_id(alpha.tgt(), alpha(v));
        m.table.push_back(th_elem(img, 0));
        m.table.push_back(th_elem(img, 1));
    }
    return m;
}

inline GPosetMap th_map(const GDeltaMap& alpha) {
    return th_map(alpha, thicken(alpha.src()).poset, thicken(alpha.tgt()).poset);
}

/// Level projection th P -> P and the two level inclusions.
inline GPosetMap projection(const GPosetPtr& th, const GPosetPtr& base) {
    GPosetMap m{th, base, {}};
    for (int a = 0; a < th->size(); ++a) m.table.push_back(th_base(a));
    return m;
}

inline GPosetMap level_inclusion(const GPosetPtr& base, const GPosetPtr& th, int level) {
    GPosetMap m{base, th, {}};
    for (int a = 0; a < base->size(); ++a) m.table.push_back(th_elem(a, level));
    return m;
}

/// Pairs with matching isotropy, componentwise order, diagonal action.
struct ProductResult {
    GPosetPtr poset;
    std::vector<std::pair<int, int>> pairs;
};

inline ProductResult isov_product(const FinGPoset& A, const FinGPoset& B) {
    ProductResult r;
    auto p = std::make_shared<FinGPoset>();
    std::map<std::pair<int, int>, int> id;
    for (int a = 0; a < A.size(); ++a)
        for (int b = 0; b < B.size(); ++b)
            if (A.fixed(a) == B.fixed(b)) {
                id[{a, b}] = static_cast<int>(r.pairs.size());
                r.pairs.push_back({a, b});
                p->names.push_back("(" + A.names[a] + "," + B.names[b] + ")");
            }
    const int N = static_cast<int>(r.pairs.size());
    p->le.assign(N, std::vector<char>(N, 0));
    for (int x = 0; x < N; ++x) {
        auto [a, b] = r.pairs[x];
        p->inv.push_back(id.at({A.inv[a], B.inv[b]}));
        for (int y = 0; y < N; ++y)
            p->le[x][y] = (A.leq(a, r.pairs[y].first) && B.leq(b, r.pairs[y].second)) ? 1 : 0;
    }
    r.poset = p;
    return r;
}

struct FiberProduct {
    GPosetPtr poset;
    GPosetMap proj1;
    GPosetMap proj2;
};

/// Sub-poset of the isovariant product equalizing f and h.
inline FiberProduct fiber_product(const GPosetMap& f, const GPosetMap& h) {
    if (f.tgt.get() != h.tgt.get() && f.tgt->names != h.tgt->names)
        throw Error(ErrorKind::InvalidInput, "fiber product needs a common target");
    auto prod = isov_product(*f.src, *h.src);
    std::vector<int> keep;
    for (int x = 0; x < prod.poset->size(); ++x)
        if (f(prod.pairs[x].first) == h(prod.pairs[x].second)) keep.push_back(x);
    auto p = std::make_shared<FinGPoset>();
    std::vector<int> idx(prod.poset->size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) idx[keep[i]] = static_cast<int>(i);
    const int N = static_cast<int>(keep.size());
    p->le.assign(N, std::vector<char>(N, 0));
    for (int i = 0; i < N; ++i) {
        p->names.push_back(prod.poset->names[keep[i]]);
        p->inv.push_back(idx[prod.poset->inv[keep[i]]]);
        for (int j = 0; j < N; ++j) p->le[i][j] = prod.poset->le[keep[i]][keep[j]];
    }
    FiberProduct out{p, GPosetMap{p, f.src, {}}, GPosetMap{p, h.src, {}}};
    for (int x : keep) {
        out.proj1.table.push_back(prod.pairs[x].first);
        out.proj2.table.push_back(prod.pairs[x].second);
    }
    return out;
}

/// All isovariant maps A -> B satisfying an optional per-element constraint
/// (allowed(a, b) says whether a may go to b). Assignment proceeds over
/// sigma-orbit representatives, checking order against earlier choices.
inline void for_each_gposet_map(const GPosetPtr& A, const GPosetPtr& B,
                                const std::function<bool(int, int)>& allowed,
                                const std::function<bool(const GPosetMap&)>& visit) {
    std::vector<int> reps;
    for (int a = 0; a < A->size(); ++a)
        if (A->inv[a] >= a) reps.push_back(a);
    GPosetMap m{A, B, std::vector<int>(A->size(), -1)};
    bool stop = false;
    std::function<void(std::size_t)> rec = [&](std::size_t r) {
        if (stop) return;
        if (r == reps.size()) {
            if (!visit(m)) stop = true;
            return;
        }
        const int a = reps[r];
        const int sa = A->inv[a];
        for (int b = 0; b < B->size(); ++b) {
            if (A->fixed(a) != B->fixed(b)) continue;
            const int sb = B->inv[b];
            if (allowed && (!allowed(a, b) || !allowed(sa, sb))) continue;
            m.table[a] = b;
            m.table[sa] = sb;
            bool ok = true;
            for (std::size_t q = 0; q <= r && ok; ++q)
                for (int x : {reps[q], A->inv[reps[q]]})
                    for (int y : {a, sa}) {
                        if (A->leq(x, y) && !B->leq(m.table[x], m.table[y])) ok = false;
                        if (A->leq(y, x) && !B->leq(m.table[y], m.table[x])) ok = false;
                    }
            if (ok) rec(r + 1);
            if (stop) return;
        }
        m.table[a] = m.table[sa] = -1;
    };
    rec(0);
}

inline std::vector<GPosetMap> enumerate_gposet_maps(const GPosetPtr& A, const GPosetPtr& B) {
    std::vector<GPosetMap> out;
    for_each_gposet_map(A, B, nullptr, [&](const GPosetMap& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

/// A cospan in the comma category under [n]_k: f: th[p]_q -> th[a]_b and
/// g: th[m]_l -> th[a]_b with legs alpha, gamma out of [n]_k satisfying
/// f alpha = g gamma.
struct Cospan {
    SimplexObject base;
    GPosetMap f;
    GPosetMap g;
    GPosetMap alpha;
    GPosetMap gamma;
};

struct CospanCompletion {
    SimplexObject apex;  // [r]_s, always equal to the base
    GPosetPtr th_apex;
    GPosetMap delta;     // [n]_k -> th[r]_s, the level-0 inclusion
    GPosetMap phi;       // th[r]_s -> th[p]_q
    GPosetMap psi;       // th[r]_s -> th[m]_l
    GPosetMap h;         // [n]_k -> fiber product
    FiberProduct P;

    bool commutes(const Cospan& c) const {
        return compose(phi, delta) == c.alpha && compose(psi, delta) == c.gamma &&
               compose(c.f, phi) == compose(c.g, psi);
    }
};

/// Completes the cospan through the fiber product P: h = (alpha, gamma),
/// then phi and psi are the projections of h composed with the level
/// projection of th[n]_k.
inline CospanCompletion complete_cospan(const Cospan& c) {
    if (!c.f.check().empty() || !c.g.check().empty() || !c.alpha.check().empty() || !c.gamma.check().empty())
        throw Error(ErrorKind::InvalidCospan, "a leg is not an isovariant map");
    if (!(compose(c.f, c.alpha) == compose(c.g, c.gamma)))
        throw Error(ErrorKind::InvalidCospan, "f alpha != g gamma");
    CospanCompletion out;
    out.P = fiber_product(c.f, c.g);
    out.h = GPosetMap{c.alpha.src, out.P.poset, {}};
    for (int x = 0; x < c.alpha.src->size(); ++x) {
        int found = -1;
        for (int y = 0; y < out.P.poset->size(); ++y)
            if (out.P.proj1(y) == c.alpha(x) && out.P.proj2(y) == c.gamma(x)) found = y;
        if (found < 0) throw Error(ErrorKind::InvalidCospan, "legs do not meet in the fiber product");
        out.h.table.push_back(found);
    }
    auto th = thicken(c.base);
    out.apex = c.base;
    out.th_apex = th.poset;
    out.delta = level_inclusion(c.alpha.src, th.poset, 0);
    const GPosetMap rho = projection(th.poset, c.alpha.src);
    const GPosetMap hr = compose(out.h, rho);
    out.phi = compose(out.P.proj1, hr);
    out.psi = compose(out.P.proj2, hr);
    return out;
}

}  // namespace isovar
