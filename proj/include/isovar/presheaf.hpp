#pragma once
// Finite isovariant simplicial sets stored by their non-degenerate cells.
// A simplex is a pair (cell, epi) with the epi free of swaps; every face of
// a cell is stored in that normal form, and restriction along an arbitrary
// morphism goes through the epi-mono factorization.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "gdelta.hpp"

namespace isovar {

struct Simplex {
    int cell = -1;
    GDeltaMap epi;  // [m]_l -> degree of the cell, surjective, branch-preserving

    const SimplexObject& degree() const { return epi.src(); }
    bool nondegenerate() const { return epi.src() == epi.tgt(); }
    bool operator==(const Simplex& o) const { return cell == o.cell && epi == o.epi; }
    bool operator<(const Simplex& o) const { return cell != o.cell ? cell < o.cell : epi < o.epi; }
};

struct Cell {
    SimplexObject degree;
    std::string name;
};

class IsoSSet {
public:
    std::vector<Cell> cells;
    std::vector<std::vector<Simplex>> faces;  // faces[c][i]: restriction along the coface omitting vertex i
    std::vector<int> swap;                    // restriction along sigma

    int size() const { return static_cast<int>(cells.size()); }
    bool empty() const { return cells.empty(); }
    const SimplexObject& degree(int c) const { return cells[c].degree; }

    Simplex cell_simplex(int c) const { return {c, identity(cells[c].degree)}; }

    int add_cell(SimplexObject deg, std::string name) {
        cells.push_back({deg, std::move(name)});
        faces.emplace_back();
        swap.push_back(static_cast<int>(cells.size()) - 1);
        return static_cast<int>(cells.size()) - 1;
    }

    /// Cells per degree.
    std::map<SimplexObject, int> census() const {
        std::map<SimplexObject, int> out;
        for (const auto& c : cells) ++out[c.degree];
        return out;
    }

    int max_dim() const {
        int m = -1;
        for (const auto& c : cells) m = std::max(m, c.degree.n);
        return m;
    }

    int find(const std::string& name) const {
        for (int c = 0; c < size(); ++c)
            if (cells[c].name == name) return c;
        return -1;
    }
};

using SSetPtr = std::shared_ptr<const IsoSSet>;

namespace detail {

inline bool is_pure(const GDeltaMap& m) {
    for (int j = 0; j < m.src().k && j <= m.src().n; ++j)
        if (m.image(j).branch != Branch::e) return false;
    return true;
}

}  // namespace detail

/// Restriction of a simplex along theta: [m]_l -> degree(x).
inline Simplex apply(const IsoSSet& X, const Simplex& x, const GDeltaMap& theta);

/// Restriction of a cell along a mono into its degree.
inline Simplex restrict_mono(const IsoSSet& X, int c, const GDeltaMap& mono) {
    const Decomposition d = decompose(mono);
    Simplex cur = X.cell_simplex(d.swap ? X.swap[c] : c);
    // outermost coface first
    for (auto it = d.cofaces.rbegin(); it != d.cofaces.rend(); ++it) {
        if (cur.nondegenerate())
            cur = X.faces[cur.cell].at(it->index);
        else
            cur = apply(X, cur, it->map);
    }
    return cur;
}

inline Simplex apply(const IsoSSet& X, const Simplex& x, const GDeltaMap& theta) {
    if (theta.tgt() != x.degree())
        throw Error(ErrorKind::CompositionMismatch, "restriction along " + theta.str());
    const EpiMono em = epi_mono(compose(x.epi, theta));
    if (is_iso(em.mono) && !decompose(em.mono).swap) return {x.cell, em.epi};
    const Simplex r = restrict_mono(X, x.cell, em.mono);
    return {r.cell, compose(r.epi, em.epi)};
}

inline Simplex face(const IsoSSet& X, const Simplex& x, int i) { return apply(X, x, face_into(x.degree(), i)); }

inline Simplex act_sigma(const IsoSSet& X, const Simplex& x) {
    return apply(X, x, swap_map(x.degree().n, x.degree().k));
}

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Exhaustive check of table shapes, normal forms, the simplicial
/// identities between faces and the compatibility of swap with faces.
inline ValidationReport validate(const IsoSSet& X) {
    ValidationReport rep;
    auto bad = [&](const std::string& s) { rep.violations.push_back(s); };
    const int N = X.size();
    if (static_cast<int>(X.faces.size()) != N || static_cast<int>(X.swap.size()) != N) {
        bad("table sizes differ from the cell count");
        return rep;
    }
    for (int c = 0; c < N; ++c) {
        const SimplexObject deg = X.degree(c);
        const std::string who = "cell " + std::to_string(c) + " (" + X.cells[c].name + ")";
        if (!deg.valid()) {
            bad(who + ": invalid degree");
            continue;
        }
        const int expected = deg.n >= 1 ? deg.n + 1 : 0;
        if (static_cast<int>(X.faces[c].size()) != expected) {
            bad(who + ": wrong number of faces");
            continue;
        }
        const int sc = X.swap[c];
        if (sc < 0 || sc >= N || X.degree(sc) != deg || X.swap[sc] != c) bad(who + ": swap is not an involution");
        if (deg.k == 0 && sc != c) bad(who + ": swap moves a cell with trivial action");
        for (int i = 0; i < expected; ++i) {
            const Simplex& f = X.faces[c][i];
            const GDeltaMap d = face_into(deg, i);
            if (f.cell < 0 || f.cell >= N) {
                bad(who + ": face " + std::to_string(i) + " out of range");
                continue;
            }
            if (f.epi.src() != d.src() || f.epi.tgt() != X.degree(f.cell) || !is_epi(f.epi) ||
                !detail::is_pure(f.epi))
                bad(who + ": face " + std::to_string(i) + " not in normal form");
        }
    }
    if (!rep.ok()) return rep;
    for (int c = 0; c < N; ++c) {
        const SimplexObject deg = X.degree(c);
        const std::string who = "cell " + std::to_string(c) + " (" + X.cells[c].name + ")";
        // d^i then d^j versus d^(j-1) then d^i, for i < j
        for (int j = 1; j <= deg.n && deg.n >= 2; ++j)
            for (int i = 0; i < j; ++i) {
                const Simplex a = face(X, X.faces[c][j], i);
                const Simplex b = face(X, X.faces[c][i], j - 1);
                if (!(a == b))
                    bad(who + ": identity violated for faces " + std::to_string(i) + "," + std::to_string(j));
            }
        if (deg.k > 0)
            for (int i = 0; i <= deg.n && deg.n >= 1; ++i) {
                const Simplex a = X.faces[X.swap[c]][i];
                const Simplex b = act_sigma(X, X.faces[c][i]);
                if (!(a == b)) bad(who + ": swap incompatible with face " + std::to_string(i));
            }
    }
    return rep;
}

namespace detail {

struct EpiCache {
    std::map<std::pair<SimplexObject, SimplexObject>, std::vector<GDeltaMap>> epis;
    const std::vector<GDeltaMap>& get(const SimplexObject& src, const SimplexObject& tgt) {
        auto key = std::make_pair(src, tgt);
        auto it = epis.find(key);
        if (it != epis.end()) return it->second;
        std::vector<GDeltaMap> out;
        if (tgt.n <= src.n)
            for (const auto& m : enumerate_hom(src, tgt))
                if (is_epi(m) && is_pure(m)) out.push_back(m);
        return epis.emplace(key, std::move(out)).first->second;
    }
};

inline EpiCache& epi_cache() {
    thread_local EpiCache cache;
    return cache;
}

}  // namespace detail

/// Branch-preserving epis src -> tgt.
inline const std::vector<GDeltaMap>& pure_epis(const SimplexObject& src, const SimplexObject& tgt) {
    return detail::epi_cache().get(src, tgt);
}

/// Every simplex of X at the given degree, degenerate ones included.
inline std::vector<Simplex> simplices_at(const IsoSSet& X, const SimplexObject& deg) {
    std::vector<Simplex> out;
    for (int c = 0; c < X.size(); ++c) {
        const SimplexObject& cd = X.degree(c);
        if (cd.n > deg.n) continue;
        for (const auto& e : pure_epis(deg, cd)) out.push_back({c, e});
    }
    return out;
}

inline long simplex_count(const IsoSSet& X, int n, int k) {
    return static_cast<long>(simplices_at(X, {n, k}).size());
}

inline std::shared_ptr<IsoSSet> empty_sset() { return std::make_shared<IsoSSet>(); }

// ---------------------------------------------------------------------------
// Maps

struct PresheafMap {
    SSetPtr src;
    SSetPtr tgt;
    std::vector<Simplex> assign;  // image of each source cell

    Simplex operator()(const Simplex& x) const { return apply(*tgt, assign[x.cell], x.epi); }
    bool operator==(const PresheafMap& o) const { return assign == o.assign; }
};

inline PresheafMap identity_map(const SSetPtr& X) {
    PresheafMap m{X, X, {}};
    for (int c = 0; c < X->size(); ++c) m.assign.push_back(X->cell_simplex(c));
    return m;
}

inline PresheafMap compose(const PresheafMap& g, const PresheafMap& f) {
    PresheafMap out{f.src, g.tgt, {}};
    for (const auto& s : f.assign) out.assign.push_back(g(s));
    return out;
}

/// Empty when the assignment is natural with respect to faces and swap.
inline std::string check_map(const PresheafMap& F) {
    const IsoSSet& X = *F.src;
    const IsoSSet& Y = *F.tgt;
    if (static_cast<int>(F.assign.size()) != X.size()) return "assignment size";
    for (int c = 0; c < X.size(); ++c) {
        const Simplex& y = F.assign[c];
        if (y.cell < 0 || y.cell >= Y.size() || y.degree() != X.degree(c) || y.epi.tgt() != Y.degree(y.cell))
            return "degree mismatch at " + X.cells[c].name;
        for (int i = 0; i < static_cast<int>(X.faces[c].size()); ++i)
            if (!(face(Y, y, i) == F(X.faces[c][i]))) return "face " + std::to_string(i) + " at " + X.cells[c].name;
        if (X.degree(c).k > 0 && !(act_sigma(Y, y) == F.assign[X.swap[c]])) return "swap at " + X.cells[c].name;
    }
    return {};
}

/// Injective on simplices: non-degenerate cells go to distinct
/// non-degenerate cells.
inline bool is_mono(const PresheafMap& F) {
    std::set<int> seen;
    for (const auto& s : F.assign) {
        if (!s.nondegenerate()) return false;
        if (!seen.insert(s.cell).second) return false;
    }
    return true;
}

inline bool is_epi(const PresheafMap& F) {
    std::vector<char> hit(F.tgt->size(), 0);
    for (const auto& s : F.assign) hit[s.cell] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

// ---------------------------------------------------------------------------
// Subobjects: a mask over the cells of an ambient object.

using CellMask = std::vector<char>;

inline CellMask closure(const IsoSSet& X, const std::vector<int>& seeds) {
    CellMask m(X.size(), 0);
    std::vector<int> stack(seeds.begin(), seeds.end());
    while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        if (m[c]) continue;
        m[c] = 1;
        stack.push_back(X.swap[c]);
        for (const auto& f : X.faces[c]) stack.push_back(f.cell);
    }
    return m;
}

inline bool is_sub(const IsoSSet& X, const CellMask& m) {
    if (static_cast<int>(m.size()) != X.size()) return false;
    for (int c = 0; c < X.size(); ++c) {
        if (!m[c]) continue;
        if (!m[X.swap[c]]) return false;
        for (const auto& f : X.faces[c])
            if (!m[f.cell]) return false;
    }
    return true;
}

inline CellMask mask_union(const CellMask& a, const CellMask& b) {
    CellMask m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] || b[i];
    return m;
}

inline CellMask mask_intersection(const CellMask& a, const CellMask& b) {
    CellMask m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] && b[i];
    return m;
}

inline bool mask_subset(const CellMask& a, const CellMask& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

inline int mask_count(const CellMask& a) { return static_cast<int>(std::count(a.begin(), a.end(), 1)); }

inline CellMask full_mask(const IsoSSet& X) { return CellMask(X.size(), 1); }

/// A subobject turned into a standalone object, with its inclusion and the
/// renumbering of ambient cells (-1 outside the mask).
struct Materialized {
    SSetPtr object;
    PresheafMap inclusion;
    std::vector<int> to_sub;

    /// Corestriction of a map whose image lies in the subobject.
    PresheafMap corestrict(const PresheafMap& F) const {
        PresheafMap out{F.src, object, {}};
        for (const auto& s : F.assign) {
            if (s.cell < 0 || to_sub[s.cell] < 0)
                throw Error(ErrorKind::NotSubobject, "map does not land in the subobject");
            out.assign.push_back({to_sub[s.cell], s.epi});
        }
        return out;
    }
    /// Mask over the materialized object from a mask over the ambient.
    CellMask pull(const CellMask& ambient_mask) const {
        CellMask m(object->size(), 0);
        for (std::size_t c = 0; c < to_sub.size(); ++c)
            if (to_sub[c] >= 0) m[to_sub[c]] = ambient_mask[c];
        return m;
    }
};

inline Materialized materialize(const SSetPtr& ambient, const CellMask& mask) {
    const IsoSSet& X = *ambient;
    if (!is_sub(X, mask)) throw Error(ErrorKind::NotSubobject, "mask is not closed under faces and swap");
    std::vector<int> idx(X.size(), -1);
    auto S = std::make_shared<IsoSSet>();
    for (int c = 0; c < X.size(); ++c)
        if (mask[c]) idx[c] = S->add_cell(X.degree(c), X.cells[c].name);
    for (int c = 0; c < X.size(); ++c) {
        if (!mask[c]) continue;
        const int nc = idx[c];
        S->swap[nc] = idx[X.swap[c]];
        for (const auto& f : X.faces[c]) S->faces[nc].push_back({idx[f.cell], f.epi});
    }
    PresheafMap inc{S, ambient, {}};
    for (int c = 0; c < X.size(); ++c)
        if (mask[c]) inc.assign.push_back(X.cell_simplex(c));
    return {S, inc, idx};
}

inline SSetPtr sub_object(const SSetPtr& X, const CellMask& m) { return materialize(X, m).object; }

/// Image of a map as a subobject of its target.
inline CellMask image(const PresheafMap& F) {
    std::vector<int> seeds;
    for (const auto& s : F.assign) seeds.push_back(s.cell);
    return closure(*F.tgt, seeds);
}

/// Cells of X pulled back along a mono into an ambient (mask over X).
inline CellMask preimage(const PresheafMap& F, const CellMask& target_mask) {
    CellMask m(F.src->size(), 0);
    for (int c = 0; c < F.src->size(); ++c) m[c] = target_mask[F.assign[c].cell];
    return m;
}

// ---------------------------------------------------------------------------
// Colimits

inline SSetPtr coproduct(const IsoSSet& X, const IsoSSet& Y) {
    auto P = std::make_shared<IsoSSet>();
    for (const IsoSSet* Z : {&X, &Y}) {
        const int off = P->size();
        const char* tag = Z == &X ? "L:" : "R:";
        for (int c = 0; c < Z->size(); ++c) P->add_cell(Z->degree(c), tag + Z->cells[c].name);
        for (int c = 0; c < Z->size(); ++c) {
            P->swap[off + c] = off + Z->swap[c];
            for (const auto& f : Z->faces[c]) P->faces[off + c].push_back({off + f.cell, f.epi});
        }
    }
    return P;
}

inline SSetPtr skeleton(const SSetPtr& X, int m) {
    CellMask mask(X->size(), 0);
    for (int c = 0; c < X->size(); ++c) mask[c] = X->degree(c).n <= m;
    return sub_object(X, mask);
}

inline CellMask skeleton_mask(const IsoSSet& X, int m) {
    CellMask mask(X.size(), 0);
    for (int c = 0; c < X.size(); ++c) mask[c] = X.degree(c).n <= m;
    return mask;
}

struct Pushout {
    SSetPtr object;
    PresheafMap from_x;  // X -> P
    PresheafMap from_y;  // Y -> P
};

/// Pushout of a mono i: A -> X along f: A -> Y. Cells are those of Y
/// followed by the cells of X outside the image of i.
inline Pushout pushout(const PresheafMap& i, const PresheafMap& f) {
    if (!is_mono(i)) throw Error(ErrorKind::NonMonoLeg, "pushout needs a mono leg");
    if (i.src.get() != f.src.get() && i.src->size() != f.src->size())
        throw Error(ErrorKind::InvalidInput, "legs with different sources");
    const IsoSSet& X = *i.tgt;
    const IsoSSet& Y = *f.tgt;
    std::vector<int> from_a(X.size(), -1);
    for (int a = 0; a < static_cast<int>(i.assign.size()); ++a) from_a[i.assign[a].cell] = a;
    auto P = std::make_shared<IsoSSet>();
    for (int c = 0; c < Y.size(); ++c) P->add_cell(Y.degree(c), Y.cells[c].name);
    for (int c = 0; c < Y.size(); ++c) {
        P->swap[c] = Y.swap[c];
        P->faces[c] = Y.faces[c];
    }
    std::vector<int> idx(X.size(), -1);
    for (int c = 0; c < X.size(); ++c)
        if (from_a[c] < 0) idx[c] = P->add_cell(X.degree(c), "x:" + X.cells[c].name);
    // image of an X-simplex in P
    auto transport = [&](const Simplex& s) -> Simplex {
        if (from_a[s.cell] >= 0) {
            const Simplex y = f.assign[from_a[s.cell]];
            return {y.cell, compose(y.epi, s.epi)};
        }
        return {idx[s.cell], s.epi};
    };
    for (int c = 0; c < X.size(); ++c) {
        if (idx[c] < 0) continue;
        P->swap[idx[c]] = idx[X.swap[c]];
        for (const auto& fs : X.faces[c]) P->faces[idx[c]].push_back(transport(fs));
    }
    Pushout out{P, PresheafMap{i.tgt, P, {}}, PresheafMap{f.tgt, P, {}}};
    for (int c = 0; c < X.size(); ++c) out.from_x.assign.push_back(transport(X.cell_simplex(c)));
    for (int c = 0; c < Y.size(); ++c) out.from_y.assign.push_back(P->cell_simplex(c));
    return out;
}

// ---------------------------------------------------------------------------
// Map search. Cells are assigned top-down; every assignment propagates to
// faces (through a section of the face epi) and to the swap partner, so a
// choice is only needed for cells not reached from earlier ones.

struct MapSearchOptions {
    bool injective = false;                     // only non-degenerate, pairwise distinct images
    std::vector<std::pair<int, Simplex>> fixed; // pre-assigned cells
    std::function<bool(int, const Simplex&)> allowed;  // optional filter on candidates
};

class MapSearch {
public:
    MapSearch(SSetPtr X, SSetPtr Y, MapSearchOptions opt) : X_(std::move(X)), Y_(std::move(Y)), opt_(std::move(opt)) {
        val_.assign(X_->size(), std::nullopt);
        used_.assign(Y_->size(), 0);
        for (int c = 0; c < X_->size(); ++c) order_.push_back(c);
        std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
            const auto& da = X_->degree(a);
            const auto& db = X_->degree(b);
            return da.n != db.n ? da.n > db.n : da.k > db.k;
        });
        section_.resize(X_->size());
        for (int c = 0; c < X_->size(); ++c)
            for (const auto& f : X_->faces[c]) {
                if (f.nondegenerate()) {
                    section_[c].push_back(std::nullopt);
                } else {
                    section_[c].push_back(sections(f.epi).front());
                }
            }
    }

    /// Calls visit for each map; stops when visit returns false.
    void run(const std::function<bool(const PresheafMap&)>& visit) {
        stop_ = false;
        for (const auto& [c, s] : opt_.fixed)
            if (!assign(c, s)) return;
        rec(0, visit);
    }

private:
    bool assign(int c, const Simplex& y) {
        if (val_[c]) return *val_[c] == y;
        if (y.degree() != X_->degree(c)) return false;
        if (opt_.injective) {
            if (!y.nondegenerate() || used_[y.cell]) return false;
            used_[y.cell] = 1;
        }
        val_[c] = y;
        trail_.push_back(c);
        const SimplexObject deg = X_->degree(c);
        for (int i = 0; i < static_cast<int>(X_->faces[c].size()); ++i) {
            const Simplex v = face(*Y_, y, i);
            const Simplex& fs = X_->faces[c][i];
            if (fs.nondegenerate()) {
                if (!assign(fs.cell, v)) return false;
            } else {
                const Simplex t = apply(*Y_, v, *section_[c][i]);
                if (!(apply(*Y_, t, fs.epi) == v)) return false;
                if (!assign(fs.cell, t)) return false;
            }
        }
        if (deg.k > 0 && !assign(X_->swap[c], act_sigma(*Y_, y))) return false;
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const int c = trail_.back();
            trail_.pop_back();
            if (opt_.injective) used_[val_[c]->cell] = 0;
            val_[c].reset();
        }
    }

    void rec(std::size_t pos, const std::function<bool(const PresheafMap&)>& visit) {
        if (stop_) return;
        while (pos < order_.size() && val_[order_[pos]]) ++pos;
        if (pos == order_.size()) {
            PresheafMap m{X_, Y_, {}};
            for (const auto& v : val_) m.assign.push_back(*v);
            if (!visit(m)) stop_ = true;
            return;
        }
        const int c = order_[pos];
        const auto cands = candidates(X_->degree(c));
        for (const auto& y : cands) {
            if (opt_.allowed && !opt_.allowed(c, y)) continue;
            const std::size_t mark = trail_.size();
            if (assign(c, y)) rec(pos + 1, visit);
            undo(mark);
            if (stop_) return;
        }
    }

    const std::vector<Simplex>& candidates(const SimplexObject& deg) {
        auto it = cand_cache_.find(deg);
        if (it != cand_cache_.end()) return it->second;
        std::vector<Simplex> c;
        if (opt_.injective) {
            for (int y = 0; y < Y_->size(); ++y)
                if (Y_->degree(y) == deg) c.push_back(Y_->cell_simplex(y));
        } else {
            c = simplices_at(*Y_, deg);
        }
        return cand_cache_.emplace(deg, std::move(c)).first->second;
    }

    SSetPtr X_, Y_;
    MapSearchOptions opt_;
    std::vector<std::optional<Simplex>> val_;
    std::vector<char> used_;
    std::vector<int> order_;
    std::vector<int> trail_;
    std::vector<std::vector<std::optional<GDeltaMap>>> section_;
    std::map<SimplexObject, std::vector<Simplex>> cand_cache_;
    bool stop_ = false;
};

inline std::vector<PresheafMap> hom_presheaf_maps(const SSetPtr& X, const SSetPtr& Y, MapSearchOptions opt = {}) {
    std::vector<PresheafMap> out;
    MapSearch(X, Y, std::move(opt)).run([&](const PresheafMap& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

inline std::optional<PresheafMap> find_map(const SSetPtr& X, const SSetPtr& Y, MapSearchOptions opt = {}) {
    std::optional<PresheafMap> out;
    MapSearch(X, Y, std::move(opt)).run([&](const PresheafMap& m) {
        out = m;
        return false;
    });
    return out;
}

/// An isomorphism X -> Y if one exists.
inline std::optional<PresheafMap> find_isomorphism(const SSetPtr& X, const SSetPtr& Y) {
    if (X->census() != Y->census()) return std::nullopt;
    MapSearchOptions opt;
    opt.injective = true;
    return find_map(X, Y, std::move(opt));
}

inline bool isomorphic(const SSetPtr& X, const SSetPtr& Y) { return find_isomorphism(X, Y).has_value(); }

}  // namespace isovar
