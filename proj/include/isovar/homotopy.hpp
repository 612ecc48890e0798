#pragma once
// Admissible horns, their deformation onto the horn, elementary homotopies
// and the normality predicates.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cylinder.hpp"
#include "standard_objects.hpp"

namespace isovar {

inline void require_horn_index(int n, int k, int l) {
    if (n <= 0 || k < 0 || k > n + 1 || l < 0 || l > n)
        throw Error(ErrorKind::IndexOutOfRange, "no horn (" + std::to_string(n) + "," + std::to_string(k) + "," +
                                                    std::to_string(l) + ")");
}

inline bool is_admissible(int n, int k, int l) {
    require_horn_index(n, k, l);
    return !((k == 1 && l == 0) || (k == n && l == n));
}

struct AdmissibilityWitness {
    int a = -1;    // collapsed index of the codegeneracy
    int eps = -1;  // shared branch flag of codegeneracy and coface
};

/// Searches a codegeneracy s and coface d, both meeting [n]_k, with the
/// image of d o s equal to the l-th face. Choices whose indices do not
/// exist (a = -1, or a generator out of range) count as failures.
inline std::optional<AdmissibilityWitness> admissibility_witness(int n, int k, int l) {
    require_horn_index(n, k, l);
    const CellMask target = face_image(n, k, l);
    for (int a : {l - 1, l}) {
        if (a < 0) continue;
        for (int eps = 0; eps <= 1; ++eps) {
            try {
                const GDeltaMap s = codegeneracy(n - 1, k - eps, a, eps);
                const GDeltaMap d = coface(n - 1, k - eps, l, eps);
                if (s.src() != SimplexObject{n, k} || d.tgt() != SimplexObject{n, k}) continue;
                if (image(yoneda_map(compose(d, s))) == target) return AdmissibilityWitness{a, eps};
            } catch (const Error&) {
            }
        }
    }
    return std::nullopt;
}

inline bool is_admissible_by_definition(int n, int k, int l) { return admissibility_witness(n, k, l).has_value(); }

// ---------------------------------------------------------------------------

/// An elementary homotopy from `from` to `to`: map o d0 = from, map o d1 = to.
struct Homotopy {
    BundlePtr cylinder;
    PresheafMap map;
    PresheafMap from;
    PresheafMap to;

    std::string check() const {
        if (!check_map(map).empty()) return "not a map: " + check_map(map);
        if (!(compose(map, cylinder->d0) == from)) return "H o d0 differs from the start map";
        if (!(compose(map, cylinder->d1) == to)) return "H o d1 differs from the end map";
        return {};
    }
};

inline Homotopy constant_homotopy(const PresheafMap& f, BundlePtr IX) {
    return {IX, compose(f, IX->rho), f, f};
}

/// Exhaustive search for H: I(X) -> Y with H o d0 = f and H o d1 = g.
inline std::optional<Homotopy> find_elementary_homotopy(const PresheafMap& f, const PresheafMap& g, BundlePtr IX = nullptr) {
    if (!IX) IX = std::make_shared<const CylinderBundle>(cylinder(f.src));
    MapSearchOptions opt;
    for (int x = 0; x < IX->base->size(); ++x) {
        opt.fixed.push_back({IX->d0.assign[x].cell, f.assign[x]});
        opt.fixed.push_back({IX->d1.assign[x].cell, g.assign[x]});
    }
    auto H = find_map(IX->total, f.tgt, std::move(opt));
    if (!H) return std::nullopt;
    return Homotopy{IX, *H, f, g};
}

/// Elementary homotopy in either direction between f and g.
inline std::optional<Homotopy> find_homotopy_either_way(const PresheafMap& f, const PresheafMap& g, BundlePtr IX) {
    if (auto H = find_elementary_homotopy(f, g, IX)) return H;
    return find_elementary_homotopy(g, f, IX);
}

struct HomotopyClasses {
    std::vector<PresheafMap> maps;
    std::vector<int> class_of;  // per map, classes numbered by first member
    int count = 0;
};

/// Connected components of the graph of elementary homotopies on hom(X, Y).
/// With reversed = true every generating edge is tested as g -> f instead
/// of f -> g; the partition must not change.
inline HomotopyClasses homotopy_classes(const SSetPtr& X, const SSetPtr& Y, bool reversed = false) {
    HomotopyClasses out;
    out.maps = hom_presheaf_maps(X, Y);
    const int N = static_cast<int>(out.maps.size());
    std::vector<int> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> root = [&](int a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
    const auto IX = std::make_shared<const CylinderBundle>(cylinder(X));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (i == j || root(i) == root(j)) continue;
            const auto& f = out.maps[reversed ? j : i];
            const auto& g = out.maps[reversed ? i : j];
            if (find_elementary_homotopy(f, g, IX)) parent[root(i)] = root(j);
        }
    out.class_of.assign(N, -1);
    std::vector<int> label(N, -1);
    for (int i = 0; i < N; ++i) {
        const int r = root(i);
        if (label[r] < 0) label[r] = out.count++;
        out.class_of[i] = label[r];
    }
    if (N == 0) out.count = 0;
    return out;
}

// ---------------------------------------------------------------------------

/// A zigzag of elementary homotopies joining two parallel maps; each step
/// may point either way.
using HomotopyPath = std::vector<Homotopy>;

/// Shortest zigzag of at most `depth` elementary steps from f to g, searched
/// breadth-first through hom(X, Y).
inline std::optional<HomotopyPath> find_homotopy_path(const PresheafMap& f, const PresheafMap& g, BundlePtr IX, int depth) {
    if (f == g) return HomotopyPath{};
    if (depth <= 0) return std::nullopt;
    if (depth == 1) {
        if (auto H = find_homotopy_either_way(f, g, IX)) return HomotopyPath{*H};
        return std::nullopt;
    }
    const auto maps = hom_presheaf_maps(f.src, f.tgt);
    std::map<std::vector<Simplex>, std::pair<int, Homotopy>> seen;  // map -> (distance, step that reached it)
    std::deque<PresheafMap> queue{f};
    seen.emplace(f.assign, std::pair<int, Homotopy>{0, constant_homotopy(f, IX)});
    while (!queue.empty()) {
        const PresheafMap cur = queue.front();
        queue.pop_front();
        const int d = seen.at(cur.assign).first;
        if (d == depth) continue;
        for (const auto& m : maps) {
            if (seen.count(m.assign)) continue;
            auto H = find_homotopy_either_way(cur, m, IX);
            if (!H) continue;
            seen.emplace(m.assign, std::pair<int, Homotopy>{d + 1, *H});
            if (m == g) {
                HomotopyPath path;
                PresheafMap at = g;
                while (!(at == f)) {
                    const Homotopy& step = seen.at(at.assign).second;
                    path.push_back(step);
                    at = step.from == at ? step.to : step.from;
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(m);
        }
    }
    return std::nullopt;
}

struct EquivalenceWitness {
    PresheafMap inverse;     // psi: Y -> X
    HomotopyPath on_source;  // joins psi o f and id_X
    HomotopyPath on_target;  // joins f o psi and id_Y
};

/// Searches psi: Y -> X with psi o f ~ id_X and f o psi ~ id_Y, each joined by
/// at most `depth` elementary homotopies.
inline std::optional<EquivalenceWitness> is_elementary_homotopy_equivalence(const PresheafMap& f, int depth = 1) {
    const auto IX = std::make_shared<const CylinderBundle>(cylinder(f.src));
    const auto IY = std::make_shared<const CylinderBundle>(cylinder(f.tgt));
    const PresheafMap idX = identity_map(f.src), idY = identity_map(f.tgt);
    std::optional<EquivalenceWitness> out;
    MapSearch(f.tgt, f.src, {}).run([&](const PresheafMap& psi) {
        auto target_side = find_homotopy_path(compose(f, psi), idY, IY, depth);
        if (!target_side) return true;
        auto source_side = find_homotopy_path(compose(psi, f), idX, IX, depth);
        if (!source_side) return true;
        out = EquivalenceWitness{psi, *source_side, *target_side};
        return false;
    });
    return out;
}

/// Every step joins consecutive maps of the path from `start` to `end`.
inline bool path_joins(const HomotopyPath& path, const PresheafMap& start, const PresheafMap& end) {
    PresheafMap at = start;
    for (const auto& H : path) {
        if (!H.check().empty()) return false;
        if (H.from == at)
            at = H.to;
        else if (H.to == at)
            at = H.from;
        else
            return false;
    }
    return at == end;
}

inline bool check_equivalence_witness(const PresheafMap& f, const EquivalenceWitness& w) {
    return check_map(w.inverse).empty() && path_joins(w.on_source, compose(w.inverse, f), identity_map(f.src)) &&
           path_joins(w.on_target, compose(f, w.inverse), identity_map(f.tgt));
}

// ---------------------------------------------------------------------------
// Deformation of an admissible simplex onto its horn. Two neighbouring
// vertices of the same band are collapsed. Collapsing m onto m-1 moves
// vertices down, so the homotopy starts at phi and ends at the identity.
// Collapsing l-1 onto l moves a vertex up and the homotopy runs from the
// identity to phi instead; no isovariant homotopy can start at phi there.

struct Deformation {
    int n = 0, k = 0, l = 0;
    int moved = -1;       // the vertex index phi moves
    int onto = -1;        // where it goes
    GDeltaMap phi_map;    // d o s on [n]_k
    GPosetMap lifted;     // th[n]_k -> [n]_k
    PresheafMap phi;      // Delta -> Delta
    Homotopy homotopy;    // joins phi and the identity
    bool phi_at_start = true;  // homotopy.from == phi (else homotopy.to == phi)
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

namespace detail {

inline bool same_band(int k, int a, int b) { return (a < k) == (b < k); }

inline GDeltaMap collapse_composite(int n, int k, int lower, int keep_lower) {
    // s merges lower and lower+1; d skips the vertex that is not kept
    const int eps = lower < k ? 1 : 0;
    const GDeltaMap s = codegeneracy(n - 1, k - eps, lower, eps);
    const GDeltaMap d = face_into({n, k}, keep_lower ? lower + 1 : lower);
    return compose(d, s);
}

}  // namespace detail

inline Deformation deformation(int n, int k, int l) {
    if (!is_admissible(n, k, l))
        throw Error(ErrorKind::NotAdmissible, "horn (" + std::to_string(n) + "," + std::to_string(k) + "," +
                                                  std::to_string(l) + ") is not admissible");
    Deformation D;
    D.n = n, D.k = k, D.l = l;
    const SimplexObject o{n, k};
    if (l + 1 <= n && detail::same_band(k, l, l + 1)) {
        D.moved = l + 1, D.onto = l;
        D.phi_map = detail::collapse_composite(n, k, l, 1);
        D.phi_at_start = true;
    } else if (l >= 1 && detail::same_band(k, l - 1, l)) {
        D.moved = l - 1, D.onto = l;
        D.phi_map = detail::collapse_composite(n, k, l - 1, 0);
        D.phi_at_start = false;
    } else {
        throw Error(ErrorKind::NotAdmissible, "no collapsible neighbour for the missing face");
    }
    const Representable& R = representable(n, k);
    const SSetPtr Delta = R.object();
    D.phi = yoneda_map(D.phi_map);

    // the lift: phi on the level where the homotopy meets phi, identity on the other
    const auto N = interval_nerve(o);
    const auto P = R.nerve->poset;
    const int phi_level = D.phi_at_start ? 0 : 1;
    D.lifted = GPosetMap{N->poset, P, {}};
    for (int e = 0; e < N->poset->size(); ++e) {
        const Vertex v = vertex_at(o, th_base(e));
        const Vertex w = th_level(e) == phi_level ? D.phi_map(v) : v;
        D.lifted.table.push_back(vertex_id(o, w));
    }
    if (const std::string err = D.lifted.check(); !err.empty()) D.problems.push_back("lift is not a map: " + err);

    const BundlePtr IB = cylinder_of_representable(n, k);
    PresheafMap H{IB->total, Delta, {}};
    for (int id = 0; id < IB->total->size(); ++id) {
        const auto& [x, u] = IB->rep[id];
        const GDeltaMap mono = R.mono_of(x);
        const SimplexObject ox = Delta->degree(x);
        Chain img;
        for (int e : u) {
            const Vertex w = mono(vertex_at(ox, th_base(e)));
            img.push_back(D.lifted(th_elem(vertex_id(o, w), th_level(e))));
        }
        H.assign.push_back(R.nerve->simplex_of(img, IB->total->degree(id)));
    }
    const PresheafMap id = identity_map(Delta);
    D.homotopy = D.phi_at_start ? Homotopy{IB, H, D.phi, id} : Homotopy{IB, H, id, D.phi};
    if (const std::string err = D.homotopy.check(); !err.empty()) D.problems.push_back(err);

    const CellMask h = horn(n, k, l);
    if (!mask_subset(image(D.phi), h)) D.problems.push_back("image of phi leaves the horn");
    const CellMask on_horn = cylinder_of_mask(*IB, h);
    for (int id = 0; id < IB->total->size(); ++id)
        if (on_horn[id] && !h[H.assign[id].cell]) {
            D.problems.push_back("homotopy moves the horn cylinder out of the horn at " + IB->total->cells[id].name);
            break;
        }
    return D;
}

/// The witness the deformation provides for the horn inclusion: psi is phi
/// corestricted to the horn, the target side is the deformation itself and
/// the source side is its restriction to the cylinder of the horn.
inline EquivalenceWitness horn_equivalence_witness(int n, int k, int l, Materialized* horn_out = nullptr) {
    const Deformation D = deformation(n, k, l);
    if (!D.ok()) throw Error(ErrorKind::InvalidInput, "deformation failed: " + D.problems.front());
    const SSetPtr Delta = representable(n, k).object();
    const Materialized M = materialize(Delta, horn(n, k, l));
    const auto IH = std::make_shared<const CylinderBundle>(cylinder(M.object));
    const PresheafMap psi = M.corestrict(D.phi);
    const PresheafMap Hh = M.corestrict(compose(D.homotopy.map, cylinder_map(M.inclusion, *IH, *D.homotopy.cylinder)));
    const PresheafMap start = compose(Hh, IH->d0), end = compose(Hh, IH->d1);
    EquivalenceWitness w{psi, {Homotopy{IH, Hh, start, end}}, {D.homotopy}};
    if (horn_out) *horn_out = M;
    return w;
}

// ---------------------------------------------------------------------------
// Normality. A simplex fixed by sigma has a fixed non-degenerate part (its
// degeneracy commutes with sigma), so checking degrees up to the top
// dimension covers every degree.

inline bool free_on(const IsoSSet& X, const CellMask* skip) {
    const int top = X.max_dim();
    for (int m = 0; m <= top; ++m)
        for (int l = 1; l <= m + 1; ++l)
            for (const Simplex& s : simplices_at(X, {m, l})) {
                if (skip && (*skip)[s.cell]) continue;
                if (act_sigma(X, s) == s) return false;
            }
    return true;
}

inline bool is_normal(const IsoSSet& X) { return free_on(X, nullptr); }

/// Aut acts freely on the simplices of the target outside the image.
inline bool is_normal_mono(const PresheafMap& f) {
    if (!is_mono(f)) return false;
    const CellMask im = image(f);
    return free_on(*f.tgt, &im);
}

/// A non-degenerate cell whose stabilizer in Aut(deg) is trivial.
inline bool is_dominant(const IsoSSet& X, int cell) {
    const Simplex x = X.cell_simplex(cell);
    const SimplexObject o = X.degree(cell);
    for (const auto& g : aut_group(o.n, o.k))
        if (!(g == identity(o)) && apply(X, x, g) == x) return false;
    return true;
}

}  // namespace isovar
