#pragma once
// Combinatorial realization. |Delta^{n,k}| is two affine n-simplices, the
// e-sheet and the sigma-sheet, glued along the face spanned by the real
// vertices. Vertex (j, branch) sits at basis vector j of R^{n+1} with an
// extra coordinate 0 for real vertices and +1 / -1 for the e / sigma copy.

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "presheaf.hpp"

namespace isovar {

struct MeshVertex {
    int id = 0;
    std::vector<double> coords;
    std::string origin;
};

struct MeshFacet {
    std::vector<int> vertices;  // ordered along the e-chain
    std::string origin;
    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

struct Mesh {
    int ambient = 0;  // coordinate count
    std::vector<MeshVertex> vertices;
    std::vector<MeshFacet> facets;  // all dimensions, vertices included as 0-facets

    /// Facet counts by dimension.
    std::vector<long> census() const {
        std::vector<long> c;
        for (const auto& f : facets) {
            if (f.dim() >= static_cast<int>(c.size())) c.resize(f.dim() + 1, 0);
            ++c[f.dim()];
        }
        return c;
    }
    long count(int dim) const {
        const auto c = census();
        return dim < static_cast<int>(c.size()) ? c[dim] : 0;
    }
};

inline std::vector<double> cellwise_coords(const SimplexObject& o, const Vertex& v) {
    std::vector<double> x(o.n + 2, 0.0);
    x[v.index] = 1.0;
    if (v.index < o.k) x[o.n + 1] = v.branch == Branch::e ? 1.0 : -1.0;
    return x;
}

namespace detail {

inline void add_faces(Mesh& M, std::set<std::vector<int>>& seen, std::vector<int> verts, const std::string& origin) {
    std::sort(verts.begin(), verts.end());
    const int m = static_cast<int>(verts.size());
    for (int bits = 1; bits < (1 << m); ++bits) {
        std::vector<int> sub;
        for (int j = 0; j < m; ++j)
            if (bits >> j & 1) sub.push_back(verts[j]);
        if (seen.insert(sub).second) M.facets.push_back({sub, origin});
    }
}

}  // namespace detail

/// |Delta^{n,k}| on its own: the vertices of [n]_k and every face of the
/// two sheets, shared faces listed once.
inline Mesh realize_cellwise(int n, int k) {
    const SimplexObject o{n, k};
    require_valid(o);
    Mesh M;
    M.ambient = n + 2;
    for (const auto& v : vertices(o)) {
        M.vertices.push_back({vertex_id(o, v), cellwise_coords(o, v), vertex_name(o, v)});
    }
    std::sort(M.vertices.begin(), M.vertices.end(), [](const MeshVertex& a, const MeshVertex& b) { return a.id < b.id; });
    std::set<std::vector<int>> seen;
    for (Branch b : {Branch::e, Branch::s}) {
        if (b == Branch::s && k == 0) break;
        std::vector<int> sheet;
        for (int j = 0; j <= n; ++j) sheet.push_back(vertex_id(o, canonical(o, {j, b})));
        detail::add_faces(M, seen, sheet, b == Branch::e ? "e-sheet" : "sigma-sheet");
    }
    std::stable_sort(M.facets.begin(), M.facets.end(),
                     [](const MeshFacet& a, const MeshFacet& b) { return a.dim() < b.dim(); });
    return M;
}

/// The vertex cells of a cell, in e-chain order.
inline std::vector<int> vertex_cells(const IsoSSet& X, int c) {
    const SimplexObject o = X.degree(c);
    std::vector<int> out;
    for (int j = 0; j <= o.n; ++j) {
        const SimplexObject pt{0, j < o.k ? 1 : 0};
        const GDeltaMap v = GDeltaMap::raw(pt, o, {{j, Branch::e}});
        out.push_back(apply(X, X.cell_simplex(c), v).cell);
    }
    return out;
}

/// Mesh of a finite object: one facet per non-degenerate cell, spanned by the
/// vertices of its e-chain (the sigma-chain is the facet of the swapped
/// cell). Coordinates of a vertex come from the cellwise realization of the
/// first cell, by descending dimension, that reaches it.
inline Mesh realize(const IsoSSet& X) {
    Mesh M;
    const int D = X.empty() ? 0 : X.max_dim();
    M.ambient = D + 2;
    std::vector<int> order(X.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return X.degree(a).n > X.degree(b).n; });
    std::vector<int> slot(X.size(), -1);
    std::vector<std::vector<double>> coords(X.size());
    for (int c : order) {
        const SimplexObject o = X.degree(c);
        // the s-copy of a free vertex of c is the e-vertex of the swapped cell
        const auto ve = vertex_cells(X, c), vs = vertex_cells(X, X.swap[c]);
        for (int j = 0; j <= o.n; ++j)
            for (const Branch b : {Branch::e, Branch::s}) {
                const int v = b == Branch::e ? ve[j] : vs[j];
                if (!coords[v].empty()) continue;
                const auto x = cellwise_coords(o, {j, b});
                // the flag coordinate always goes last
                std::vector<double> y(D + 2, 0.0);
                for (int t = 0; t <= o.n; ++t) y[t] = x[t];
                y[D + 1] = x[o.n + 1];
                coords[v] = y;
            }
    }
    for (int c = 0; c < X.size(); ++c)
        if (X.degree(c).n == 0) {
            slot[c] = static_cast<int>(M.vertices.size());
            M.vertices.push_back({slot[c], coords[c], X.cells[c].name});
        }
    for (int d = 0; d <= D; ++d)
        for (int c = 0; c < X.size(); ++c) {
            if (X.degree(c).n != d) continue;
            MeshFacet f{{}, X.cells[c].name};
            for (int v : vertex_cells(X, c)) f.vertices.push_back(slot[v]);
            M.facets.push_back(f);
        }
    return M;
}

inline long euler_characteristic(const Mesh& M) {
    long chi = 0;
    const auto c = M.census();
    for (std::size_t d = 0; d < c.size(); ++d) chi += (d % 2 == 0 ? 1 : -1) * c[d];
    return chi;
}

inline long euler_characteristic(const IsoSSet& X) { return euler_characteristic(realize(X)); }

/// Every facet with distinct vertices has its codimension-one faces among
/// the facets.
inline bool mesh_closed(const Mesh& M) {
    std::set<std::vector<int>> have;
    for (const auto& f : M.facets) {
        auto v = f.vertices;
        std::sort(v.begin(), v.end());
        have.insert(v);
    }
    for (const auto& f : M.facets) {
        auto v = f.vertices;
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end() || v.size() < 2) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            auto w = v;
            w.erase(w.begin() + static_cast<long>(j));
            if (!have.count(w)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Pushforward of points

/// A point of |Delta^{n,k}|: barycentric coordinates over the vertices
/// 0..n of one sheet.
struct SheetPoint {
    Branch sheet = Branch::e;
    std::vector<double> t;
};

constexpr double kRealizationTolerance = 1e-12;

inline void require_barycentric(const std::vector<double>& t, std::size_t size) {
    if (t.size() != size) throw Error(ErrorKind::InvalidInput, "barycentric point has the wrong length");
    double sum = 0;
    for (double x : t) {
        if (!(x >= -kRealizationTolerance)) throw Error(ErrorKind::InvalidInput, "negative barycentric coordinate");
        sum += x;
    }
    if (std::abs(sum - 1.0) > kRealizationTolerance) throw Error(ErrorKind::InvalidInput, "coordinates do not sum to 1");
}

/// theta_*: each target coordinate is the sum of the source coordinates of
/// its preimages on the sheet. Free vertices of one sheet go to one sheet.
inline SheetPoint theta_star(const GDeltaMap& theta, const SheetPoint& p) {
    const SimplexObject& s = theta.src();
    const SimplexObject& t = theta.tgt();
    require_barycentric(p.t, static_cast<std::size_t>(s.n + 1));
    SheetPoint out;
    out.t.assign(t.n + 1, 0.0);
    out.sheet = Branch::e;
    for (int j = 0; j <= s.n; ++j) {
        const Vertex img = theta(canonical(s, {j, p.sheet}));
        out.t[img.index] += p.t[j];
        if (img.index < t.k) out.sheet = img.branch;
    }
    if (t.k == 0) out.sheet = Branch::e;
    return out;
}

/// The real-face variant: coordinates over the real vertices k..n.
inline std::vector<double> theta_star_real(const GDeltaMap& theta, const std::vector<double>& t) {
    const SimplexObject& s = theta.src();
    const SimplexObject& g = theta.tgt();
    require_barycentric(t, static_cast<std::size_t>(s.n - s.k + 1));
    std::vector<double> out(g.n - g.k + 1, 0.0);
    for (int j = s.k; j <= s.n; ++j) out[theta.image(j).index - g.k] += t[j - s.k];
    return out;
}

/// Inclusion of the real face into a sheet.
inline SheetPoint include_real_face(const SimplexObject& o, const std::vector<double>& t) {
    SheetPoint p;
    p.t.assign(o.n + 1, 0.0);
    for (int j = o.k; j <= o.n; ++j) p.t[j] = t[j - o.k];
    return p;
}

/// Distance between two points of |Delta^{n,k}|; points on the real face
/// are the same on both sheets.
inline double point_distance(const SimplexObject& o, const SheetPoint& a, const SheetPoint& b) {
    auto embed = [&](const SheetPoint& p) {
        std::vector<double> x(o.n + 2, 0.0);
        for (int j = 0; j <= o.n; ++j) {
            const auto c = cellwise_coords(o, canonical(o, {j, p.sheet}));
            for (int d = 0; d < o.n + 2; ++d) x[d] += p.t[j] * c[d];
        }
        return x;
    };
    const auto x = embed(a), y = embed(b);
    double m = 0;
    for (std::size_t d = 0; d < x.size(); ++d) m = std::max(m, std::abs(x[d] - y[d]));
    for (int j = 0; j <= o.n; ++j) m = std::max(m, std::abs(a.t[j] - b.t[j]));
    return m;
}

// ---------------------------------------------------------------------------
// Export

/// Projection to R^3 for viewers: basis positions onto a regular polygon in
/// the plane, the sheet flag as height.
inline std::array<double, 3> view_coords(const Mesh& M, const MeshVertex& v) {
    const int basis = M.ambient - 1;
    std::array<double, 3> p{0, 0, 0};
    const double pi = std::acos(-1.0);
    for (int j = 0; j < basis; ++j) {
        p[0] += v.coords[j] * std::cos(2 * pi * j / std::max(basis, 1));
        p[1] += v.coords[j] * std::sin(2 * pi * j / std::max(basis, 1));
    }
    p[2] = v.coords[basis];
    return p;
}

inline std::string export_off(const Mesh& M, std::ostream* warn = nullptr) {
    std::ostringstream out;
    out.precision(17);
    long skipped = 0;
    std::vector<const MeshFacet*> faces;
    for (const auto& f : M.facets) {
        if (f.dim() == 2) faces.push_back(&f);
        if (f.dim() > 2) ++skipped;
    }
    out << "OFF\n" << M.vertices.size() << " " << faces.size() << " " << M.count(1) << "\n";
    for (const auto& v : M.vertices) {
        const auto p = view_coords(M, v);
        out << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (const auto* f : faces) out << "3 " << f->vertices[0] << " " << f->vertices[1] << " " << f->vertices[2] << "\n";
    if (skipped && warn) *warn << "warning: " << skipped << " facets above dimension 2 skipped\n";
    return out.str();
}

inline std::string export_obj(const Mesh& M, std::ostream* warn = nullptr) {
    std::ostringstream out;
    out.precision(17);
    long skipped = 0;
    for (const auto& v : M.vertices) {
        const auto p = view_coords(M, v);
        out << "v " << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    for (const auto& f : M.facets) {
        if (f.dim() == 2)
            out << "f " << f.vertices[0] + 1 << " " << f.vertices[1] + 1 << " " << f.vertices[2] + 1 << "\n";
        else if (f.dim() > 2)
            ++skipped;
    }
    if (skipped && warn) *warn << "warning: " << skipped << " facets above dimension 2 skipped\n";
    return out.str();
}

struct OffCensus {
    long vertices = 0, edges = 0, faces = 0;
    bool operator==(const OffCensus&) const = default;
};

/// Reads the header and face list of an OFF document.
inline OffCensus parse_off(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    OffCensus c;
    if (!(in >> magic) || magic != "OFF" || !(in >> c.vertices >> c.faces >> c.edges))
        throw Error(ErrorKind::InvalidInput, "not an OFF document");
    for (long v = 0; v < c.vertices; ++v) {
        double x, y, z;
        if (!(in >> x >> y >> z)) throw Error(ErrorKind::InvalidInput, "OFF vertex list is short");
    }
    for (long f = 0; f < c.faces; ++f) {
        int m;
        if (!(in >> m)) throw Error(ErrorKind::InvalidInput, "OFF face list is short");
        for (int j = 0; j < m; ++j) {
            long v;
            if (!(in >> v) || v < 0 || v >= c.vertices) throw Error(ErrorKind::InvalidInput, "bad OFF face");
        }
    }
    return c;
}

}  // namespace isovar
