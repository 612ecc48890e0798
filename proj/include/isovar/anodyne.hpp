#pragma once
// Checks for the two halves of the saturation argument, carried out inside
// the interval nerve N(th[n]_k), which models the cylinder of Delta^{n,k}:
//  - the filtration of the cylinder by the cells C_i and D_i, each glued in
//    along an admissible horn;
//  - each admissible horn inclusion as a retract of a cylinder inclusion
//    I(boundary) u {eps}Delta -> I(Delta).

#include <optional>
#include <string>
#include <vector>

#include "homotopy.hpp"

namespace isovar {

/// The map Delta^{deg c} -> Y classifying a cell.
inline PresheafMap classifying_map(const SSetPtr& Y, int c) {
    const SimplexObject d = Y->degree(c);
    const Representable& R = representable(d.n, d.k);
    PresheafMap F{R.object(), Y, {}};
    for (int y = 0; y < R.object()->size(); ++y) F.assign.push_back(apply(*Y, Y->cell_simplex(c), R.mono_of(y)));
    return F;
}

/// Cells of the interval nerve whose projection to [n]_k is a cell of K.
inline CellMask interval_over(int n, int k, const CellMask& K) {
    const Representable& R = representable(n, k);
    return nerve_mask(*interval_nerve({n, k}), [&](const Chain& w) {
        Chain proj;
        for (int e : w)
            if (proj.empty() || proj.back() != th_base(e)) proj.push_back(th_base(e));
        const int c = R.nerve->cell_of(proj);
        return c >= 0 && K[c];
    });
}

/// The end {eps} x Delta^{n,k} inside the interval nerve.
inline CellMask level_end(int n, int k, int eps) {
    const auto N = interval_nerve({n, k});
    return closure(*N->sset, {N->cell_of(detail::level_chain({n, k}, eps))});
}

// ---------------------------------------------------------------------------
// Filtration

struct Filtration {
    int n = 0, k = 0, eps = 1;
    std::vector<int> order;       // attaching order of the indices i
    std::vector<int> attached;    // cell of C_i / D_i, in attaching order
    std::vector<CellMask> stages; // E_{-1}, then one per attached cell
};

/// Chain of C_i (i < k) or D_i (i >= k) in th[n]_k: level 0 up to vertex i,
/// then level 1 from vertex i on. Both descriptions reduce to this one.
inline Chain filtration_chain(int n, int k, int i) {
    const SimplexObject o{n, k};
    auto el = [&](int j, int level) { return th_elem(vertex_id(o, canonical(o, {j, Branch::e})), level); };
    Chain c;
    for (int j = 0; j <= i; ++j) c.push_back(el(j, 0));
    for (int j = i; j <= n; ++j) c.push_back(el(j, 1));
    return c;
}

/// E_{-1} = I(boundary) u {eps}Delta, then the cells F_i one at a time:
/// i = 0..n when eps = 1 and i = n..0 when eps = 0.
inline Filtration build_filtration(int n, int k, int eps = 1) {
    if (n < 0 || k < 0 || k > n + 1 || (eps != 0 && eps != 1))
        throw Error(ErrorKind::IndexOutOfRange, "no filtration for these indices");
    Filtration F;
    F.n = n, F.k = k, F.eps = eps;
    const auto N = interval_nerve({n, k});
    const CellMask bd = n == 0 ? CellMask(representable(0, k).object()->size(), 0) : boundary(n, k);
    CellMask E = mask_union(interval_over(n, k, bd), level_end(n, k, eps));
    F.stages.push_back(E);
    for (int s = 0; s <= n; ++s) {
        const int i = eps == 1 ? s : n - s;
        const int c = N->cell_of(filtration_chain(n, k, i));
        F.order.push_back(i);
        F.attached.push_back(c);
        E = mask_union(E, closure(*N->sset, {c}));
        F.stages.push_back(E);
    }
    return F;
}

struct StageReport {
    int i = -1;                    // index of C_i / D_i
    SimplexObject attached_degree; // (n+1, k+1) for C_i, (n+1, k) for D_i
    int horn_index = -1;           // the horn E_{i-1} n F_i is, in the attached simplex
    bool admissible = false;
    bool classifying_mono = false;
    bool horn_isomorphic = false;
    bool pushout = false;          // engine pushout compares isomorphically to E_i
    bool levelwise = false;        // simplex counts add up in every degree
    bool grows = false;
    std::vector<std::string> problems;
    bool ok() const { return horn_index >= 0 && admissible && classifying_mono && horn_isomorphic && pushout && levelwise && grows; }
};

inline StageReport verify_stage(const Filtration& F, int s) {
    StageReport rep;
    const auto N = interval_nerve({F.n, F.k});
    const SSetPtr Y = N->sset;
    const int c = F.attached[s];
    rep.i = F.order[s];
    rep.attached_degree = Y->degree(c);
    const CellMask& prev = F.stages[s];
    const CellMask& next = F.stages[s + 1];
    const CellMask cell = closure(*Y, {c});
    const CellMask meet = mask_intersection(prev, cell);
    rep.grows = !mask_subset(cell, prev) && next == mask_union(prev, cell);
    if (!rep.grows) rep.problems.push_back("stage does not grow by the attached cell");

    // the intersection, seen inside the attached simplex
    const PresheafMap gamma = classifying_map(Y, c);
    rep.classifying_mono = is_mono(gamma);
    if (!rep.classifying_mono) rep.problems.push_back("attached cell is not embedded");
    const CellMask pulled = preimage(gamma, meet);
    const SimplexObject d = rep.attached_degree;
    for (int l = 0; l <= d.n; ++l)
        if (horn(d.n, d.k, l) == pulled) rep.horn_index = l;
    if (rep.horn_index < 0) {
        rep.problems.push_back("intersection is not a horn of the attached simplex");
    } else {
        rep.admissible = is_admissible(d.n, d.k, rep.horn_index);
        if (!rep.admissible) rep.problems.push_back("intersection is a non-admissible horn");
        rep.horn_isomorphic = isomorphic(sub_object(Y, meet), sub_object(representable(d.n, d.k).object(), horn(d.n, d.k, rep.horn_index)));
        if (!rep.horn_isomorphic) rep.problems.push_back("intersection is not isomorphic to the horn");
    }

    // pushout of E_{i-1} <- E_{i-1} n F_i -> F_i, compared with E_i
    const Materialized A = materialize(Y, meet), P = materialize(Y, prev), C = materialize(Y, cell), Q = materialize(Y, next);
    const PresheafMap to_prev = P.corestrict(A.inclusion), to_cell = C.corestrict(A.inclusion);
    const Pushout PO = pushout(to_prev, to_cell);
    // the comparison map out of the pushout, defined leg by leg
    const PresheafMap p_to_q = Q.corestrict(P.inclusion), c_to_q = Q.corestrict(C.inclusion);
    PresheafMap cmp{PO.object, Q.object, std::vector<Simplex>(PO.object->size())};
    std::vector<char> seen(PO.object->size(), 0);
    bool consistent = true;
    for (const auto& [leg, to_q] : {std::pair{&PO.from_x, &p_to_q}, std::pair{&PO.from_y, &c_to_q}})
        for (int x = 0; x < leg->src->size(); ++x) {
            const Simplex at = leg->assign[x];
            if (!at.nondegenerate()) {
                consistent = false;
                continue;
            }
            if (seen[at.cell] && !(cmp.assign[at.cell] == to_q->assign[x])) consistent = false;
            cmp.assign[at.cell] = to_q->assign[x];
            seen[at.cell] = 1;
        }
    rep.pushout = consistent && std::all_of(seen.begin(), seen.end(), [](char h) { return h != 0; }) &&
                  check_map(cmp).empty() && is_mono(cmp) && is_epi(cmp);
    if (!rep.pushout) rep.problems.push_back("E_i is not the pushout");

    // colimits of presheaves are computed degreewise
    rep.levelwise = true;
    for (int m = 0; m <= d.n; ++m)
        for (int l = 0; l <= m + 1; ++l) {
            const long a = simplex_count(*A.object, m, l), p = simplex_count(*P.object, m, l),
                       f = simplex_count(*C.object, m, l), q = simplex_count(*Q.object, m, l);
            if (p + f - a != q) rep.levelwise = false;
        }
    if (!rep.levelwise) rep.problems.push_back("degreewise counts do not add up");
    return rep;
}

struct FiltrationReport {
    std::vector<StageReport> stages;
    bool increasing = true;
    bool ends_full = false;
    bool ok() const {
        return increasing && ends_full &&
               std::all_of(stages.begin(), stages.end(), [](const StageReport& s) { return s.ok(); });
    }
};

inline FiltrationReport verify_filtration(const Filtration& F) {
    FiltrationReport rep;
    const auto Y = interval_nerve({F.n, F.k})->sset;
    for (std::size_t s = 0; s + 1 < F.stages.size(); ++s) {
        rep.stages.push_back(verify_stage(F, static_cast<int>(s)));
        if (!is_sub(*Y, F.stages[s]) || F.stages[s] == F.stages[s + 1] || !mask_subset(F.stages[s], F.stages[s + 1]))
            rep.increasing = false;
    }
    rep.ends_full = F.stages.back() == full_mask(*Y);
    return rep;
}

// ---------------------------------------------------------------------------
// Retracts

struct RetractWitness {
    int n = 0, k = 0, l = 0;
    int eps = 1;
    std::string source;  // which table produced q and r, or "search"
    GPosetMap q_poset;   // [n]_k -> th[n]_k
    GPosetMap r_poset;   // th[n]_k -> [n]_k
    PresheafMap q;       // Delta -> I(Delta)
    PresheafMap r;       // I(Delta) -> Delta
};

struct RetractReport {
    bool section = false;      // r o q = id
    bool q_contained = false;  // q(horn) in I(horn) u {eps}Delta
    bool r_contained = false;  // r(I(horn) u {eps}Delta) in horn
    bool diagram = false;      // the retract diagram commutes cell by cell
    std::vector<std::string> problems;
    bool ok() const { return section && q_contained && r_contained && diagram; }
};

/// Middle term of the retract diagram: I(horn) u {eps}Delta.
inline CellMask retract_middle(int n, int k, int l, int eps) {
    return mask_union(interval_over(n, k, horn(n, k, l)), level_end(n, k, eps));
}

inline RetractReport check_retract(const RetractWitness& w) {
    RetractReport rep;
    const SSetPtr Delta = representable(w.n, w.k).object();
    const SSetPtr I = interval_nerve({w.n, w.k})->sset;
    const CellMask h = horn(w.n, w.k, w.l);
    const CellMask mid = retract_middle(w.n, w.k, w.l, w.eps);
    rep.section = compose(w.r_poset, w.q_poset) == identity(w.q_poset.src) && compose(w.r, w.q) == identity_map(Delta);
    if (!rep.section) rep.problems.push_back("r o q is not the identity");
    rep.q_contained = true;
    for (int c = 0; c < Delta->size(); ++c)
        if (h[c] && !mid[w.q.assign[c].cell]) rep.q_contained = false;
    if (!rep.q_contained) rep.problems.push_back("q moves the horn out of I(horn) u {eps}Delta");
    rep.r_contained = true;
    for (int c = 0; c < I->size(); ++c)
        if (mid[c] && !h[w.r.assign[c].cell]) rep.r_contained = false;
    if (!rep.r_contained) rep.problems.push_back("r moves I(horn) u {eps}Delta out of the horn");
    if (rep.q_contained && rep.r_contained) {
        const Materialized top_l = materialize(Delta, h), top_m = materialize(I, mid);
        const PresheafMap q_top = top_m.corestrict(compose(w.q, top_l.inclusion));
        const PresheafMap r_top = top_l.corestrict(compose(w.r, top_m.inclusion));
        rep.diagram = compose(r_top, q_top) == identity_map(top_l.object) &&
                      compose(top_m.inclusion, q_top) == compose(w.q, top_l.inclusion) &&
                      compose(top_l.inclusion, r_top) == compose(w.r, top_m.inclusion);
    }
    if (!rep.diagram) rep.problems.push_back("retract diagram does not commute");
    return rep;
}

namespace detail {

// Closed-form index tables by case; each sends (index, level) to an index,
// the branch is carried along.
using IndexTable = std::function<int(int, int)>;

inline RetractWitness witness_from_tables(int n, int k, int l, int eps, const std::string& source,
                                          const std::function<int(int)>& q_level, const IndexTable& r_index) {
    const SimplexObject o{n, k};
    const Representable& R = representable(n, k);
    const auto N = interval_nerve(o);
    RetractWitness w;
    w.n = n, w.k = k, w.l = l, w.eps = eps, w.source = source;
    w.q_poset = GPosetMap{R.nerve->poset, N->poset, {}};
    for (const auto& v : vertices(o)) w.q_poset.table.push_back(th_elem(vertex_id(o, v), q_level(v.index)));
    w.r_poset = GPosetMap{N->poset, R.nerve->poset, {}};
    for (int e = 0; e < N->poset->size(); ++e) {
        const Vertex v = vertex_at(o, th_base(e));
        w.r_poset.table.push_back(vertex_id(o, canonical(o, {r_index(v.index, th_level(e)), v.branch})));
    }
    return w;
}

inline void induce(RetractWitness& w) {
    const Representable& R = representable(w.n, w.k);
    const auto N = interval_nerve({w.n, w.k});
    w.q = nerve_map(w.q_poset, *R.nerve, *N);
    w.r = nerve_map(w.r_poset, *N, *R.nerve);
}

inline bool usable(RetractWitness& w) {
    if (!w.q_poset.check().empty() || !w.r_poset.check().empty()) return false;
    induce(w);
    return check_retract(w).ok();
}

inline std::optional<RetractWitness> table_witness(int n, int k, int l) {
    if (k <= 0 || k >= n + 1) return std::nullopt;
    if (l > 0 && l <= k - 1)
        return witness_from_tables(
            n, k, l, 1, "table (a)", [=](int i) { return i < l ? 0 : 1; },
            [=](int i, int d) {
                if (d == 0) return (i <= l || i >= k) ? i : l;
                return i <= l ? l : i;
            });
    if (k <= l && l < n && l > 0)
        return witness_from_tables(
            n, k, l, 1, "table (b)", [=](int i) { return i <= l - 1 ? 0 : 1; },
            [=](int i, int d) {
                if (d == 0) return i < l ? i : l;
                return (i <= k - 1 || i > l) ? i : l;
            });
    if (l == 0)
        return witness_from_tables(
            n, k, l, 0, "table (c)", [](int i) { return i == 0 ? 0 : 1; },
            [=](int i, int d) { return (d == 0 && i <= k - 1) ? 0 : i; });
    return std::nullopt;
}

/// q keeps each vertex over itself at a level that grows along the order;
/// r is searched among all isovariant maps with r o q = id.
inline std::optional<RetractWitness> search_witness(int n, int k, int l, int eps) {
    const SimplexObject o{n, k};
    const Representable& R = representable(n, k);
    const auto N = interval_nerve(o);
    std::optional<RetractWitness> out;
    for (int mask = 0; mask < (1 << (n + 1)) && !out; ++mask) {
        RetractWitness w;
        w.n = n, w.k = k, w.l = l, w.eps = eps, w.source = "search";
        w.q_poset = GPosetMap{R.nerve->poset, N->poset, {}};
        for (const auto& v : vertices(o)) w.q_poset.table.push_back(th_elem(vertex_id(o, v), (mask >> v.index) & 1));
        if (!w.q_poset.check().empty()) continue;
        std::vector<int> want(N->poset->size(), -1);
        for (int a = 0; a < R.nerve->poset->size(); ++a) want[w.q_poset(a)] = a;
        for_each_gposet_map(
            N->poset, R.nerve->poset, [&](int e, int b) { return want[e] < 0 || want[e] == b; },
            [&](const GPosetMap& r) {
                w.r_poset = r;
                if (!usable(w)) return true;
                out = w;
                return false;
            });
    }
    return out;
}

}  // namespace detail

/// q and r exhibiting the horn inclusion as a retract of
/// I(boundary) u {eps}Delta -> I(Delta). The closed-form tables are tried
/// first; where they fail, or where no table applies, a search decides.
inline RetractWitness retract_witness(int n, int k, int l) {
    if (!is_admissible(n, k, l)) throw Error(ErrorKind::NotAdmissible, "retracts exist only for admissible horns");
    if (auto w = detail::table_witness(n, k, l)) {
        if (detail::usable(*w)) return *w;
    }
    for (int eps : {1, 0})
        if (auto w = detail::search_witness(n, k, l, eps)) return *w;
    throw Error(ErrorKind::InvalidInput, "no retract witness found");
}

/// Whether the closed-form table for (n,k,l) is a valid witness on its own.
inline std::optional<bool> table_witness_valid(int n, int k, int l) {
    auto w = detail::table_witness(n, k, l);
    if (!w) return std::nullopt;
    return detail::usable(*w);
}

// ---------------------------------------------------------------------------
// Derivations

struct Derivation {
    std::string rule;   // "horn", "pushout", "composite", "retract"
    std::string label;
    bool ok = true;
    std::vector<Derivation> children;

    int depth() const {
        int d = 0;
        for (const auto& c : children) d = std::max(d, 1 + c.depth());
        return d;
    }
    bool all_ok() const {
        return ok && std::all_of(children.begin(), children.end(), [](const Derivation& c) { return c.all_ok(); });
    }
};

inline std::string horn_label(int n, int k, int l) {
    return "horn(" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(l) + ")";
}

inline std::string generator_label(int n, int k, int eps) {
    return "cylinder(" + std::to_string(n) + "," + std::to_string(k) + ") at end " + std::to_string(eps);
}

/// The generator I(boundary) u {eps}Delta -> I(Delta) as a composite of
/// pushouts of admissible horns.
inline Derivation derive_generator(int n, int k, int eps) {
    Derivation root{"composite", generator_label(n, k, eps), true, {}};
    const Filtration F = build_filtration(n, k, eps);
    const FiltrationReport rep = verify_filtration(F);
    root.ok = rep.increasing && rep.ends_full;
    for (const auto& s : rep.stages) {
        Derivation po{"pushout", "attach cell " + std::to_string(s.i), s.ok(), {}};
        po.children.push_back({"horn", horn_label(s.attached_degree.n, s.attached_degree.k, s.horn_index), s.admissible, {}});
        root.children.push_back(po);
    }
    return root;
}

/// An admissible horn as a retract of a generator; the generator is expanded
/// into its pushout stages when expand is set.
inline Derivation derive_horn(int n, int k, int l, bool expand) {
    const RetractWitness w = retract_witness(n, k, l);
    Derivation root{"retract", horn_label(n, k, l) + " via " + w.source, check_retract(w).ok(), {}};
    if (expand) {
        Derivation g = derive_generator(n, k, w.eps);
        for (auto& c : g.children) root.children.push_back(std::move(c));
        root.ok = root.ok && g.ok;
    } else {
        root.children.push_back({"generator", generator_label(n, k, w.eps), true, {}});
    }
    return root;
}

struct MembershipReport {
    std::vector<Derivation> horns;       // admissible horns, n <= max_horn_n
    std::vector<Derivation> generators;  // cylinder generators, n <= max_generator_n
    bool ok() const {
        auto good = [](const Derivation& d) { return d.all_ok(); };
        return std::all_of(horns.begin(), horns.end(), good) && std::all_of(generators.begin(), generators.end(), good);
    }
};

inline MembershipReport verify_generator_membership(int max_horn_n = 3, int max_generator_n = 2) {
    MembershipReport rep;
    for (int n = 1; n <= max_horn_n; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int l = 0; l <= n; ++l)
                if (is_admissible(n, k, l)) rep.horns.push_back(derive_horn(n, k, l, n <= max_generator_n));
    for (int n = 0; n <= max_generator_n; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int eps : {1, 0}) rep.generators.push_back(derive_generator(n, k, eps));
    return rep;
}

}  // namespace isovar
