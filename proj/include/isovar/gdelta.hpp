#pragma once
// The isovariant simplex category: objects [n]_k, vertices, morphisms and
// their generators, plus the normal-form decomposition.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isovar {

enum class ErrorKind {
    InvalidObject,
    NonCanonicalVertex,
    OrderViolation,
    IsovarianceViolation,
    IndexOutOfRange,
    CompositionMismatch,
    NotEpi,
    NotMono,
    NotSubobject,
    NonMonoLeg,
    InvalidCospan,
    NotAdmissible,
    InvalidInput,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidObject: return "InvalidObject";
        case ErrorKind::NonCanonicalVertex: return "NonCanonicalVertex";
        case ErrorKind::OrderViolation: return "OrderViolation";
        case ErrorKind::IsovarianceViolation: return "IsovarianceViolation";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::CompositionMismatch: return "CompositionMismatch";
        case ErrorKind::NotEpi: return "NotEpi";
        case ErrorKind::NotMono: return "NotMono";
        case ErrorKind::NotSubobject: return "NotSubobject";
        case ErrorKind::NonMonoLeg: return "NonMonoLeg";
        case ErrorKind::InvalidCospan: return "InvalidCospan";
        case ErrorKind::NotAdmissible: return "NotAdmissible";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

enum class Branch : std::uint8_t { e = 0, s = 1 };

inline Branch flip(Branch b) { return b == Branch::e ? Branch::s : Branch::e; }

struct Vertex {
    int index = 0;
    Branch branch = Branch::e;
    auto operator<=>(const Vertex&) const = default;
};

/// The C2-poset [n]_k. Indices below k come in free pairs, the rest are fixed.
struct SimplexObject {
    int n = 0;
    int k = 0;

    bool valid() const { return n >= 0 && k >= 0 && k <= n + 1; }
    int vertex_count() const { return n + 1 + k; }
    bool is_real(int index) const { return index >= k; }
    auto operator<=>(const SimplexObject&) const = default;

    std::string str() const { return "[" + std::to_string(n) + "]_" + std::to_string(k); }
};

inline void require_valid(const SimplexObject& o) {
    if (!o.valid()) throw Error(ErrorKind::InvalidObject, o.str());
}

inline bool is_canonical(const SimplexObject& o, const Vertex& v) {
    return v.index >= 0 && v.index <= o.n && (v.index < o.k || v.branch == Branch::e);
}

inline Vertex canonical(const SimplexObject& o, Vertex v) {
    if (v.index >= o.k) v.branch = Branch::e;
    return v;
}

inline Vertex act_sigma(const SimplexObject& o, Vertex v) {
    if (v.index < o.k) v.branch = flip(v.branch);
    return v;
}

/// Position of a canonical vertex in vertices(o).
inline int vertex_id(const SimplexObject& o, const Vertex& v) {
    return v.index < o.k ? 2 * v.index + (v.branch == Branch::s ? 1 : 0) : 2 * o.k + (v.index - o.k);
}

inline Vertex vertex_at(const SimplexObject& o, int id) {
    if (id < 2 * o.k) return {id / 2, (id % 2) ? Branch::s : Branch::e};
    return {o.k + (id - 2 * o.k), Branch::e};
}

/// Non-real pairs first (e before s), then the real vertices.
inline std::vector<Vertex> vertices(const SimplexObject& o) {
    require_valid(o);
    std::vector<Vertex> out;
    out.reserve(o.vertex_count());
    for (int id = 0; id < o.vertex_count(); ++id) out.push_back(vertex_at(o, id));
    return out;
}

inline bool leq_unchecked(const SimplexObject& o, const Vertex& u, const Vertex& v) {
    return u.index <= v.index && (u.branch == v.branch || v.index >= o.k);
}

inline bool leq(const SimplexObject& o, const Vertex& u, const Vertex& v) {
    if (!is_canonical(o, u) || !is_canonical(o, v))
        throw Error(ErrorKind::NonCanonicalVertex, "leq on " + o.str());
    return leq_unchecked(o, u, v);
}

inline std::string vertex_name(const SimplexObject& o, const Vertex& v) {
    std::string s = std::to_string(v.index);
    if (v.index < o.k) s += (v.branch == Branch::e ? "e" : "s");
    return s;
}

constexpr int kMaxImages = 24;

/// Morphism of the category, stored by the images of the e-branch vertices.
/// The image of (j,s) is sigma applied to the image of (j,e).
class GDeltaMap {
public:
    GDeltaMap() = default;

    const SimplexObject& src() const { return src_; }
    const SimplexObject& tgt() const { return tgt_; }
    Vertex image(int j) const {
        const std::uint8_t c = img_[j];
        return {c >> 1, (c & 1) ? Branch::s : Branch::e};
    }
    std::vector<Vertex> e_images() const {
        std::vector<Vertex> out;
        for (int j = 0; j <= src_.n; ++j) out.push_back(image(j));
        return out;
    }
    /// Image of any canonical source vertex.
    Vertex operator()(const Vertex& v) const {
        Vertex w = image(v.index);
        if (v.branch == Branch::s) w = act_sigma(tgt_, w);
        return w;
    }

    bool operator==(const GDeltaMap& o) const {
        return src_ == o.src_ && tgt_ == o.tgt_ &&
               std::equal(img_.begin(), img_.begin() + src_.n + 1, o.img_.begin());
    }
    bool operator<(const GDeltaMap& o) const {
        if (src_ != o.src_) return src_ < o.src_;
        if (tgt_ != o.tgt_) return tgt_ < o.tgt_;
        return std::lexicographical_compare(img_.begin(), img_.begin() + src_.n + 1, o.img_.begin(),
                                            o.img_.begin() + src_.n + 1);
    }

    std::size_t hash() const {
        std::size_t h = (std::size_t(src_.n) << 24) ^ (std::size_t(src_.k) << 16) ^ (std::size_t(tgt_.n) << 8) ^
                        std::size_t(tgt_.k);
        for (int j = 0; j <= src_.n; ++j) h = h * 1000003u ^ img_[j];
        return h;
    }

    // Unvalidated construction; callers outside this header go through make_map.
    static GDeltaMap raw(SimplexObject src, SimplexObject tgt, const std::vector<Vertex>& imgs) {
        GDeltaMap m;
        m.src_ = src;
        m.tgt_ = tgt;
        if (src.n + 1 > kMaxImages) throw Error(ErrorKind::InvalidObject, "object too large: " + src.str());
        for (int j = 0; j <= src.n; ++j) {
            Vertex v = canonical(tgt, imgs[j]);
            m.img_[j] = static_cast<std::uint8_t>((v.index << 1) | (v.branch == Branch::s ? 1 : 0));
        }
        return m;
    }

    std::string str() const {
        std::string s = src_.str() + "->" + tgt_.str() + " [";
        for (int j = 0; j <= src_.n; ++j) {
            if (j) s += ",";
            s += vertex_name(tgt_, image(j));
        }
        return s + "]";
    }

private:
    SimplexObject src_{};
    SimplexObject tgt_{};
    std::array<std::uint8_t, kMaxImages> img_{};
};

struct GDeltaMapHash {
    std::size_t operator()(const GDeltaMap& m) const { return m.hash(); }
};

/// Checks the full definition (order, equivariance, isovariance) on every
/// vertex of the source, both branches included.
inline void validate_full(const SimplexObject& src, const SimplexObject& tgt, const std::vector<Vertex>& e_images) {
    require_valid(src);
    require_valid(tgt);
    if (static_cast<int>(e_images.size()) != src.n + 1)
        throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(src.n + 1) + " images");
    for (const auto& v : e_images)
        if (!is_canonical(tgt, v)) throw Error(ErrorKind::NonCanonicalVertex, "image outside " + tgt.str());
    const auto vs = vertices(src);
    std::vector<Vertex> f(vs.size());
    for (std::size_t a = 0; a < vs.size(); ++a) {
        const Vertex img = e_images[vs[a].index];
        f[a] = vs[a].branch == Branch::e ? img : act_sigma(tgt, img);
    }
    for (std::size_t a = 0; a < vs.size(); ++a) {
        const bool fixed_src = src.is_real(vs[a].index);
        const bool fixed_tgt = tgt.is_real(f[a].index);
        if (fixed_src != fixed_tgt)
            throw Error(ErrorKind::IsovarianceViolation,
                        "vertex " + vertex_name(src, vs[a]) + " changes isotropy");
        // equivariance: f(sigma v) = sigma f(v)
        const Vertex sv = act_sigma(src, vs[a]);
        if (f[vertex_id(src, sv)] != act_sigma(tgt, f[a]))
            throw Error(ErrorKind::IsovarianceViolation, "not equivariant at " + vertex_name(src, vs[a]));
    }
    for (std::size_t a = 0; a < vs.size(); ++a)
        for (std::size_t b = 0; b < vs.size(); ++b)
            if (leq_unchecked(src, vs[a], vs[b]) && !leq_unchecked(tgt, f[a], f[b]))
                throw Error(ErrorKind::OrderViolation,
                            vertex_name(src, vs[a]) + " <= " + vertex_name(src, vs[b]) + " not preserved");
}

inline GDeltaMap make_map(const SimplexObject& src, const SimplexObject& tgt, const std::vector<Vertex>& e_images) {
    validate_full(src, tgt, e_images);
    return GDeltaMap::raw(src, tgt, e_images);
}

inline GDeltaMap identity(const SimplexObject& o) {
    require_valid(o);
    std::vector<Vertex> imgs;
    for (int j = 0; j <= o.n; ++j) imgs.push_back({j, Branch::e});
    return GDeltaMap::raw(o, o, imgs);
}

/// g after f.
inline GDeltaMap compose(const GDeltaMap& g, const GDeltaMap& f) {
    if (f.tgt() != g.src())
        throw Error(ErrorKind::CompositionMismatch, f.tgt().str() + " vs " + g.src().str());
    std::vector<Vertex> imgs;
    imgs.reserve(f.src().n + 1);
    for (int j = 0; j <= f.src().n; ++j) imgs.push_back(g(f.image(j)));
    return GDeltaMap::raw(f.src(), g.tgt(), imgs);
}

inline GDeltaMap swap_map(int n, int k) {
    const SimplexObject o{n, k};
    require_valid(o);
    std::vector<Vertex> imgs;
    for (int j = 0; j <= n; ++j) imgs.push_back(act_sigma(o, {j, Branch::e}));
    return GDeltaMap::raw(o, o, imgs);
}

/// Coface d^i_eps out of [n]_k: eps=0 needs k <= i <= n+1 and lands in
/// [n+1]_k, eps=1 needs 0 <= i <= k and lands in [n+1]_{k+1}.
inline GDeltaMap coface(int n, int k, int i, int eps) {
    const SimplexObject src{n, k};
    require_valid(src);
    SimplexObject tgt;
    if (eps == 0) {
        if (i < k || i > n + 1) throw Error(ErrorKind::IndexOutOfRange, "d^" + std::to_string(i) + "_0 on " + src.str());
        tgt = {n + 1, k};
    } else if (eps == 1) {
        if (i < 0 || i > k) throw Error(ErrorKind::IndexOutOfRange, "d^" + std::to_string(i) + "_1 on " + src.str());
        tgt = {n + 1, k + 1};
    } else {
        throw Error(ErrorKind::IndexOutOfRange, "eps must be 0 or 1");
    }
    std::vector<Vertex> imgs;
    for (int j = 0; j <= n; ++j) imgs.push_back({j < i ? j : j + 1, Branch::e});
    return GDeltaMap::raw(src, tgt, imgs);
}

/// Codegeneracy s^i_eps into [n]_k: eps=0 has source [n+1]_k and needs
/// k <= i <= n, eps=1 has source [n+1]_{k+1} and needs 0 <= i < k.
inline GDeltaMap codegeneracy(int n, int k, int i, int eps) {
    const SimplexObject tgt{n, k};
    require_valid(tgt);
    SimplexObject src;
    if (eps == 0) {
        if (i < k || i > n) throw Error(ErrorKind::IndexOutOfRange, "s^" + std::to_string(i) + "_0 onto " + tgt.str());
        src = {n + 1, k};
    } else if (eps == 1) {
        if (i < 0 || i >= k) throw Error(ErrorKind::IndexOutOfRange, "s^" + std::to_string(i) + "_1 onto " + tgt.str());
        src = {n + 1, k + 1};
    } else {
        throw Error(ErrorKind::IndexOutOfRange, "eps must be 0 or 1");
    }
    std::vector<Vertex> imgs;
    for (int j = 0; j <= n + 1; ++j) imgs.push_back({j <= i ? j : j - 1, Branch::e});
    return GDeltaMap::raw(src, tgt, imgs);
}

inline bool is_mono(const GDeltaMap& f) {
    for (int j = 0; j < f.src().n; ++j)
        if (f.image(j).index >= f.image(j + 1).index) return false;
    return true;
}

inline bool is_epi(const GDeltaMap& f) {
    // monotone index map: surjective iff it starts at 0, ends at m and never skips
    if (f.image(0).index != 0 || f.image(f.src().n).index != f.tgt().n) return false;
    for (int j = 0; j < f.src().n; ++j)
        if (f.image(j + 1).index - f.image(j).index > 1) return false;
    return true;
}

inline bool is_iso(const GDeltaMap& f) { return is_mono(f) && is_epi(f); }

/// All morphisms src -> tgt, lexicographic in target vertex ids.
inline std::vector<GDeltaMap> enumerate_hom(const SimplexObject& src, const SimplexObject& tgt) {
    require_valid(src);
    require_valid(tgt);
    std::vector<GDeltaMap> out;
    const auto tv = vertices(tgt);
    std::vector<Vertex> cur(src.n + 1);
    std::function<void(int)> rec = [&](int j) {
        if (j > src.n) {
            out.push_back(GDeltaMap::raw(src, tgt, cur));
            return;
        }
        for (const auto& v : tv) {
            // isovariance band
            if (src.is_real(j) != tgt.is_real(v.index)) continue;
            if (j > 0) {
                if (!leq_unchecked(tgt, cur[j - 1], v)) continue;
                if (src.is_real(j) && j - 1 < src.k && !leq_unchecked(tgt, act_sigma(tgt, cur[j - 1]), v)) continue;
            }
            cur[j] = v;
            rec(j + 1);
        }
    };
    rec(0);
    return out;
}

inline std::vector<GDeltaMap> sections(const GDeltaMap& f) {
    if (!is_epi(f)) throw Error(ErrorKind::NotEpi, f.str());
    std::vector<GDeltaMap> out;
    const GDeltaMap id = identity(f.tgt());
    for (const auto& s : enumerate_hom(f.tgt(), f.src()))
        if (compose(f, s) == id) out.push_back(s);
    return out;
}

/// One generator with enough metadata to print and rebuild it.
struct Generator {
    enum class Kind { Coface, Codegeneracy, Swap } kind;
    int index = 0;
    int eps = 0;
    GDeltaMap map;

    std::string name() const {
        switch (kind) {
            case Kind::Coface: return "d" + std::to_string(eps) + "_" + std::to_string(index);
            case Kind::Codegeneracy: return "s" + std::to_string(eps) + "_" + std::to_string(index);
            case Kind::Swap: return "sigma";
        }
        return "?";
    }
};

/// theta = g o (cofaces) o (codegeneracies). Both lists are in application
/// order: codegeneracies by decreasing collapsed index, then cofaces by
/// increasing omitted index, then the optional swap.
struct Decomposition {
    bool swap = false;
    std::vector<Generator> cofaces;
    std::vector<Generator> codegeneracies;
    SimplexObject src;
    SimplexObject tgt;

    GDeltaMap recompose() const {
        GDeltaMap acc = identity(src);
        for (const auto& g : codegeneracies) acc = compose(g.map, acc);
        for (const auto& g : cofaces) acc = compose(g.map, acc);
        if (swap) acc = compose(swap_map(tgt.n, tgt.k), acc);
        return acc;
    }
    /// epi part (codegeneracies only)
    GDeltaMap epi_part() const {
        GDeltaMap acc = identity(src);
        for (const auto& g : codegeneracies) acc = compose(g.map, acc);
        return acc;
    }
};

inline Decomposition decompose(const GDeltaMap& theta) {
    Decomposition d;
    d.src = theta.src();
    d.tgt = theta.tgt();
    const SimplexObject& src = theta.src();
    const SimplexObject& tgt = theta.tgt();
    d.swap = src.k > 0 && tgt.k > 0 && theta.image(0).branch == Branch::s;
    std::vector<int> f(src.n + 1);
    for (int j = 0; j <= src.n; ++j) f[j] = theta.image(j).index;

    int cn = src.n, ck = src.k;
    for (int j = src.n - 1; j >= 0; --j) {
        if (f[j] != f[j + 1]) continue;
        const int eps = (j + 1 < ck) ? 1 : 0;
        GDeltaMap s = codegeneracy(cn - 1, ck - eps, j, eps);
        d.codegeneracies.push_back({Generator::Kind::Codegeneracy, j, eps, s});
        cn -= 1;
        ck -= eps;
    }
    std::vector<bool> hit(tgt.n + 1, false);
    for (int x : f) hit[x] = true;
    for (int i = 0; i <= tgt.n; ++i) {
        if (hit[i]) continue;
        const int eps = i < tgt.k ? 1 : 0;
        GDeltaMap c = coface(cn, ck, i, eps);
        d.cofaces.push_back({Generator::Kind::Coface, i, eps, c});
        cn += 1;
        ck += eps;
    }
    return d;
}

/// theta with any swap removed; the result maps e-branches to e-branches.
inline GDeltaMap pure_part(const GDeltaMap& theta) {
    if (theta.src().k > 0 && theta.tgt().k > 0 && theta.image(0).branch == Branch::s)
        return compose(swap_map(theta.tgt().n, theta.tgt().k), theta);
    return theta;
}

/// Epi-mono factorization: theta = mono o epi, epi pure.
struct EpiMono {
    GDeltaMap epi;
    GDeltaMap mono;
};

inline EpiMono epi_mono(const GDeltaMap& theta) {
    const SimplexObject& src = theta.src();
    std::vector<int> distinct;
    std::vector<Vertex> epi_imgs;
    int mid_k = 0;
    for (int j = 0; j <= src.n; ++j) {
        const int x = theta.image(j).index;
        if (distinct.empty() || distinct.back() != x) {
            distinct.push_back(x);
            if (j < src.k) ++mid_k;
        }
        epi_imgs.push_back({static_cast<int>(distinct.size()) - 1, Branch::e});
    }
    const SimplexObject mid{static_cast<int>(distinct.size()) - 1, mid_k};
    std::vector<Vertex> mono_imgs;
    const Branch b = (src.k > 0) ? theta.image(0).branch : Branch::e;
    for (std::size_t a = 0; a < distinct.size(); ++a)
        mono_imgs.push_back({distinct[a], static_cast<int>(a) < mid_k ? b : Branch::e});
    return {GDeltaMap::raw(src, mid, epi_imgs), GDeltaMap::raw(mid, theta.tgt(), mono_imgs)};
}

/// Legal cofaces into [n]_k, indexed by the omitted vertex (eps fixed by band).
inline GDeltaMap face_into(const SimplexObject& o, int i) {
    if (o.n < 1 || i < 0 || i > o.n) throw Error(ErrorKind::IndexOutOfRange, "face " + std::to_string(i) + " of " + o.str());
    return i < o.k ? coface(o.n - 1, o.k - 1, i, 1) : coface(o.n - 1, o.k, i, 0);
}

/// Automorphisms of [n]_k, computed by filtering the hom set.
inline std::vector<GDeltaMap> aut_group(int n, int k) {
    const SimplexObject o{n, k};
    std::vector<GDeltaMap> out;
    for (const auto& m : enumerate_hom(o, o))
        if (is_iso(m)) out.push_back(m);
    return out;
}

struct RelationInstance {
    std::string family;
    std::string description;
    bool pass = false;
};

struct RelationReport {
    std::vector<RelationInstance> instances;
    int failures() const {
        return static_cast<int>(std::count_if(instances.begin(), instances.end(), [](const auto& r) { return !r.pass; }));
    }
};

namespace detail {

inline std::vector<Generator> cofaces_from(const SimplexObject& o) {
    std::vector<Generator> out;
    for (int eps = 0; eps <= 1; ++eps)
        for (int i = 0; i <= o.n + 1; ++i) {
            try {
                out.push_back({Generator::Kind::Coface, i, eps, coface(o.n, o.k, i, eps)});
            } catch (const Error&) {
            }
        }
    return out;
}

inline std::vector<Generator> codegeneracies_from(const SimplexObject& o) {
    std::vector<Generator> out;
    if (o.n < 1) return out;
    for (int eps = 0; eps <= 1; ++eps)
        for (int i = 0; i < o.n; ++i) {
            const int tk = o.k - eps;
            if (tk < 0) continue;
            try {
                GDeltaMap s = codegeneracy(o.n - 1, tk, i, eps);
                if (s.src() == o) out.push_back({Generator::Kind::Codegeneracy, i, eps, s});
            } catch (const Error&) {
            }
        }
    return out;
}

inline std::string gen_name(const char* what, int i, int eps) {
    return std::string(what) + std::to_string(eps) + "^" + std::to_string(i);
}

}  // namespace detail

/// Verifies every legal instance of the cosimplicial identities with all
/// objects of dimension at most max_n. The eps of each generator on the
/// right-hand side is forced by the band of the vertex it omits or collapses.
inline RelationReport check_cosimplicial_relations(int max_n) {
    RelationReport rep;
    auto record = [&](const std::string& fam, const std::string& desc, bool ok) {
        rep.instances.push_back({fam, desc, ok});
    };
    auto try_coface = [](const SimplexObject& o, int i, int eps, GDeltaMap& out) {
        try {
            out = coface(o.n, o.k, i, eps);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    auto try_codeg_from = [](const SimplexObject& o, int i, int eps, GDeltaMap& out) {
        try {
            out = codegeneracy(o.n - 1, o.k - eps, i, eps);
            return out.src() == o;
        } catch (const Error&) {
            return false;
        }
    };
    auto band_of_face = [](const SimplexObject& tgt, int i) { return i < tgt.k ? 1 : 0; };
    auto band_of_pair = [](const SimplexObject& src, int i) { return i + 1 < src.k ? 1 : 0; };

    for (int n = 0; n <= max_n; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const SimplexObject o{n, k};
            // coface-coface: d^j o d^i = d^i o d^(j-1), i < j
            if (n + 2 <= max_n)
                for (const auto& a : detail::cofaces_from(o))
                    for (const auto& b : detail::cofaces_from(a.map.tgt())) {
                        if (!(a.index < b.index)) continue;
                        const GDeltaMap lhs = compose(b.map, a.map);
                        GDeltaMap r1, r2;
                        bool ok = try_coface(o, b.index - 1, band_of_face(lhs.tgt(), b.index), r1) &&
                                  try_coface(r1.tgt(), a.index, band_of_face(lhs.tgt(), a.index), r2) &&
                                  compose(r2, r1) == lhs;
                        record("coface-coface", o.str() + " " + detail::gen_name("d", b.index, b.eps) + " " +
                                                    detail::gen_name("d", a.index, a.eps), ok);
                    }
            // codegeneracy-codegeneracy: s^j o s^i = s^(i-1) o s^j, j < i
            if (n >= 2)
                for (const auto& a : detail::codegeneracies_from(o))
                    for (const auto& b : detail::codegeneracies_from(a.map.tgt())) {
                        if (!(b.index < a.index)) continue;
                        const GDeltaMap lhs = compose(b.map, a.map);
                        GDeltaMap r1, r2;
                        bool ok = try_codeg_from(o, b.index, band_of_pair(o, b.index), r1) &&
                                  try_codeg_from(r1.tgt(), a.index - 1, band_of_pair(o, a.index), r2) &&
                                  compose(r2, r1) == lhs;
                        record("codegeneracy-codegeneracy", o.str() + " " + detail::gen_name("s", b.index, b.eps) +
                                                                " " + detail::gen_name("s", a.index, a.eps), ok);
                    }
            // codegeneracy-coface
            if (n + 1 <= max_n)
                for (const auto& a : detail::cofaces_from(o))
                    for (const auto& b : detail::codegeneracies_from(a.map.tgt())) {
                        const int i = a.index, j = b.index;
                        const GDeltaMap lhs = compose(b.map, a.map);
                        bool ok = false;
                        if (i == j || i == j + 1) {
                            ok = lhs == identity(o);
                        } else if (n >= 1) {
                            GDeltaMap r1, r2;
                            if (i < j) {
                                // d^i o s^(j-1)
                                ok = try_codeg_from(o, j - 1, band_of_pair(o, j - 1), r1) &&
                                     try_coface(r1.tgt(), i, band_of_face(lhs.tgt(), i), r2) && compose(r2, r1) == lhs;
                            } else {
                                // d^(i-1) o s^j
                                ok = try_codeg_from(o, j, band_of_pair(o, j), r1) &&
                                     try_coface(r1.tgt(), i - 1, band_of_face(lhs.tgt(), i - 1), r2) &&
                                     compose(r2, r1) == lhs;
                            }
                        }
                        record("codegeneracy-coface", o.str() + " " + detail::gen_name("s", j, b.eps) + " " +
                                                          detail::gen_name("d", i, a.eps), ok);
                    }
            // swap commutes with every generator; swap is an involution
            const GDeltaMap so = swap_map(n, k);
            record("swap", o.str() + " sigma sigma", compose(so, so) == identity(o));
            if (n + 1 <= max_n)
                for (const auto& a : detail::cofaces_from(o)) {
                    const GDeltaMap st = swap_map(a.map.tgt().n, a.map.tgt().k);
                    record("swap", o.str() + " sigma " + detail::gen_name("d", a.index, a.eps),
                           compose(st, a.map) == compose(a.map, so));
                }
            for (const auto& a : detail::codegeneracies_from(o)) {
                const GDeltaMap st = swap_map(a.map.tgt().n, a.map.tgt().k);
                record("swap", o.str() + " sigma " + detail::gen_name("s", a.index, a.eps),
                       compose(st, a.map) == compose(a.map, so));
            }
        }
    return rep;
}

}  // namespace isovar

template <>
struct std::hash<isovar::GDeltaMap> {
    std::size_t operator()(const isovar::GDeltaMap& m) const { return m.hash(); }
};
