#pragma once
// Independent reference computations used by the unit tests and the
// acceptance binary. None of these call into the search code they check.

#include <isovar/gdelta.hpp>

#include <functional>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using isovar::Branch;
using isovar::SimplexObject;
using isovar::Vertex;

/// Vertices of [n] x C2 quotiented by (i,e)~(i,s) for i >= k, as canonical reps.
inline std::vector<Vertex> quotient_vertices(const SimplexObject& o) {
    std::set<Vertex> s;
    for (int i = 0; i <= o.n; ++i)
        for (Branch b : {Branch::e, Branch::s}) s.insert({i, i >= o.k ? Branch::e : b});
    return {s.begin(), s.end()};
}

/// Order on the quotient: reflexive-transitive closure of the generating
/// edges (i,g) -> (i+1,g), computed by Floyd-Warshall.
inline std::map<std::pair<Vertex, Vertex>, bool> closure_order(const SimplexObject& o) {
    const auto vs = quotient_vertices(o);
    auto canon = [&](Vertex v) {
        if (v.index >= o.k) v.branch = Branch::e;
        return v;
    };
    const int N = static_cast<int>(vs.size());
    auto pos = [&](Vertex v) {
        return static_cast<int>(std::find(vs.begin(), vs.end(), canon(v)) - vs.begin());
    };
    std::vector<std::vector<bool>> r(N, std::vector<bool>(N, false));
    for (int a = 0; a < N; ++a) r[a][a] = true;
    for (int i = 0; i < o.n; ++i)
        for (Branch b : {Branch::e, Branch::s}) r[pos({i, b})][pos({i + 1, b})] = true;
    for (int m = 0; m < N; ++m)
        for (int a = 0; a < N; ++a)
            for (int c = 0; c < N; ++c)
                if (r[a][m] && r[m][c]) r[a][c] = true;
    std::map<std::pair<Vertex, Vertex>, bool> out;
    for (int a = 0; a < N; ++a)
        for (int c = 0; c < N; ++c) out[{vs[a], vs[c]}] = r[a][c];
    return out;
}

inline Vertex sigma(const SimplexObject& o, Vertex v) {
    if (v.index < o.k) v.branch = v.branch == Branch::e ? Branch::s : Branch::e;
    return v;
}

/// Every vertex function src -> tgt (all vertices, both branches) that is
/// order-preserving, equivariant and isotropy-preserving. Candidates are
/// rejected as soon as an assigned pair breaks a condition. Returns the
/// e-branch image lists.
inline std::vector<std::vector<Vertex>> naive_hom(const SimplexObject& src, const SimplexObject& tgt) {
    const auto sv = quotient_vertices(src);
    const auto tv = quotient_vertices(tgt);
    const auto so = closure_order(src);
    const auto to = closure_order(tgt);
    std::vector<Vertex> f(sv.size());
    std::vector<std::vector<Vertex>> out;
    auto idx = [&](Vertex v) { return static_cast<int>(std::find(sv.begin(), sv.end(), v) - sv.begin()); };
    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == sv.size()) {
            std::vector<Vertex> e;
            for (int j = 0; j <= src.n; ++j) e.push_back(f[idx({j, Branch::e})]);
            out.push_back(e);
            return;
        }
        for (const auto& w : tv) {
            f[a] = w;
            bool ok = (sv[a].index >= src.k) == (w.index >= tgt.k);
            for (std::size_t b = 0; b <= a && ok; ++b) {
                if (so.at({sv[b], sv[a]}) && !to.at({f[b], f[a]})) ok = false;
                if (so.at({sv[a], sv[b]}) && !to.at({f[a], f[b]})) ok = false;
                const Vertex sb = sigma(src, sv[b]);
                const int isb = idx(sb);
                if (static_cast<std::size_t>(isb) <= a && f[isb] != sigma(tgt, f[b])) ok = false;
            }
            if (ok) rec(a + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<SimplexObject> objects_up_to(int max_n) {
    std::vector<SimplexObject> out;
    for (int n = 0; n <= max_n; ++n)
        for (int k = 0; k <= n + 1; ++k) out.push_back({n, k});
    return out;
}

}  // namespace oracle
