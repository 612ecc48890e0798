#include <catch_amalgamated.hpp>

#include <isovar/realization.hpp>
#include <isovar/standard_objects.hpp>

#include <random>
#include <set>

using namespace isovar;

namespace {

long binom(int n, int r) {
    if (r < 0 || r > n) return 0;
    long b = 1;
    for (int j = 1; j <= r; ++j) b = b * (n - r + j) / j;
    return b;
}

// Faces of two n-simplices glued along their last n-k+1 vertices.
long glued_faces(int n, int k, int d) {
    if (k == 0) return binom(n + 1, d + 1);
    return 2 * binom(n + 1, d + 1) - binom(n - k + 1, d + 1);
}

std::vector<double> random_point(std::mt19937& rng, int size) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> t(size);
    double sum = 0;
    for (double& x : t) sum += (x = e(rng));
    for (double& x : t) x /= sum;
    // renormalize the last coordinate so the sum is exact to rounding
    double rest = 1.0;
    for (int j = 0; j + 1 < size; ++j) rest -= t[j];
    t.back() = std::max(0.0, rest);
    return t;
}

std::vector<GDeltaMap> generators_up_to(int max_n) {
    std::vector<GDeltaMap> out;
    for (int n = 0; n <= max_n; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const SimplexObject o{n, k};
            for (const auto& g : detail::cofaces_from(o))
                if (g.map.tgt().n <= max_n) out.push_back(g.map);
            for (const auto& g : detail::codegeneracies_from(o)) out.push_back(g.map);
            if (k > 0) out.push_back(swap_map(n, k));
        }
    return out;
}

}  // namespace

TEST_CASE("cellwise realization") {
    const Mesh M = realize_cellwise(2, 1);
    CHECK(M.vertices.size() == 4);
    CHECK(M.count(2) == 2);
    CHECK(M.count(1) == 5);
    CHECK(euler_characteristic(M) == 1);
    // the two triangles share the edge on the real vertices
    std::set<std::vector<int>> tris;
    for (const auto& f : M.facets)
        if (f.dim() == 2) tris.insert(f.vertices);
    std::vector<int> shared;
    const auto& a = *tris.begin();
    const auto& b = *std::next(tris.begin());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    CHECK(shared.size() == 2);

    CHECK(realize_cellwise(3, 0).count(3) == 1);
    const Mesh two = realize_cellwise(1, 2);
    CHECK(two.count(1) == 2);
    CHECK(two.vertices.size() == 4);
    CHECK(euler_characteristic(two) == 2);

    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const Mesh C = realize_cellwise(n, k);
            INFO(n << "," << k);
            CHECK(C.count(n) == (k == 0 ? 1 : 2));
            for (int d = 0; d <= n; ++d) CHECK(C.count(d) == glued_faces(n, k, d));
            CHECK(mesh_closed(C));
            for (const auto& v : C.vertices) CHECK(v.coords.size() == static_cast<std::size_t>(n + 2));
        }
}

TEST_CASE("realization of finite objects") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const Mesh M = realize(*representable(n, k).object());
            const Mesh C = realize_cellwise(n, k);
            CHECK(M.census() == C.census());
            CHECK(mesh_closed(M));
            CHECK(euler_characteristic(M) == 1 - (k == n + 1 ? -1 : 0));
            // same point set as the cellwise model, so no two vertices collide
            std::set<std::vector<double>> pts, cellwise;
            for (const auto& v : M.vertices) pts.insert(v.coords);
            for (const auto& v : C.vertices) cellwise.insert(v.coords);
            CHECK(pts.size() == M.vertices.size());
            CHECK(pts == cellwise);
        }
    const auto D21 = representable(2, 1).object();
    CHECK(realize(*D21).census() == std::vector<long>{4, 5, 2});
    CHECK(euler_characteristic(*D21) == 1);
    CHECK(euler_characteristic(*representable(0, 1).object()) == 2);
    CHECK(realize(*empty_sset()).facets.empty());

    // boundaries: counted from the cells of the sub-object directly
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 1}}) {
        const auto B = sub_object(representable(n, k).object(), boundary(n, k));
        long chi = 0;
        for (const auto& [deg, count] : B->census()) chi += (deg.n % 2 ? -1 : 1) * count;
        CHECK(euler_characteristic(*B) == chi);
    }
    CHECK(euler_characteristic(*sub_object(representable(2, 1).object(), boundary(2, 1))) == -1);
    CHECK(euler_characteristic(*sub_object(representable(2, 2).object(), boundary(2, 2))) == -1);

    // coproducts realize to disjoint unions
    for (const auto& [a, b] : std::vector<std::pair<SimplexObject, SimplexObject>>{{{1, 1}, {2, 0}}, {{3, 2}, {0, 1}}}) {
        const auto X = representable(a.n, a.k).object(), Y = representable(b.n, b.k).object();
        const Mesh S = realize(*coproduct(*X, *Y));
        const Mesh MX = realize(*X), MY = realize(*Y);
        for (int d = 0; d <= 3; ++d) CHECK(S.count(d) == MX.count(d) + MY.count(d));
        CHECK(euler_characteristic(S) == euler_characteristic(MX) + euler_characteristic(MY));
    }
}

TEST_CASE("theta_star") {
    const SheetPoint p{Branch::e, {0.5, 0.5}};
    const SheetPoint q = theta_star(codegeneracy(0, 0, 0, 0), p);
    REQUIRE(q.t.size() == 1);
    CHECK(q.t[0] == Catch::Approx(1.0).margin(kRealizationTolerance));
    const SheetPoint r{Branch::s, {0.2, 0.3, 0.5}};
    const SheetPoint id = theta_star(identity({2, 1}), r);
    CHECK(id.t == r.t);
    CHECK(id.sheet == Branch::s);
    CHECK(theta_star(swap_map(2, 1), r).sheet == Branch::e);
    CHECK_THROWS_AS(theta_star(identity({1, 0}), SheetPoint{Branch::e, {0.7, 0.7}}), Error);
    CHECK_THROWS_AS(theta_star(identity({1, 0}), SheetPoint{Branch::e, {1.5, -0.5}}), Error);
    CHECK_THROWS_AS(theta_star(identity({1, 0}), SheetPoint{Branch::e, {1.0}}), Error);
}

TEST_CASE("theta_star is natural and functorial") {
    std::mt19937 rng(20261015);
    const auto gens = generators_up_to(3);
    double worst = 0;
    for (const auto& g : gens) {
        const SimplexObject s = g.src(), t = g.tgt();
        for (int trial = 0; trial < 100; ++trial) {
            if (s.k <= s.n) {
                const auto real = random_point(rng, s.n - s.k + 1);
                const SheetPoint a = theta_star(g, include_real_face(s, real));
                const SheetPoint b = include_real_face(t, theta_star_real(g, real));
                worst = std::max(worst, point_distance(t, a, b));
            }
            const SheetPoint p{rng() % 2 ? Branch::e : Branch::s, random_point(rng, s.n + 1)};
            const SheetPoint img = theta_star(g, p);
            double sum = 0;
            for (double x : img.t) {
                CHECK(x >= 0);
                sum += x;
            }
            CHECK(std::abs(sum - 1) < kRealizationTolerance);
        }
    }
    CHECK(worst < kRealizationTolerance);

    // (beta alpha)_* = beta_* alpha_*
    worst = 0;
    for (const auto& alpha : gens)
        for (const auto& beta : gens) {
            if (beta.src() != alpha.tgt()) continue;
            const GDeltaMap ba = compose(beta, alpha);
            for (int trial = 0; trial < 5; ++trial) {
                const SheetPoint p{rng() % 2 ? Branch::e : Branch::s, random_point(rng, alpha.src().n + 1)};
                worst = std::max(worst, point_distance(ba.tgt(), theta_star(ba, p), theta_star(beta, theta_star(alpha, p))));
            }
        }
    CHECK(worst < kRealizationTolerance);
}

TEST_CASE("export formats") {
    const Mesh M = realize(*representable(2, 1).object());
    const std::string obj = export_obj(M);
    std::istringstream in(obj);
    std::string line;
    int v = 0, f = 0;
    while (std::getline(in, line)) {
        v += line.rfind("v ", 0) == 0;
        f += line.rfind("f ", 0) == 0;
    }
    CHECK(v == 4);
    CHECK(f == 2);
    const std::string off = export_off(M);
    CHECK(off.rfind("OFF\n4 2 5\n", 0) == 0);
    CHECK(parse_off(off) == OffCensus{4, 5, 2});
    CHECK(export_off(Mesh{}) == "OFF\n0 0 0\n");
    CHECK_THROWS_AS(parse_off("OFF\n3 1 0\n0 0 0\n"), Error);

    std::ostringstream warn;
    const Mesh T = realize(*representable(3, 0).object());
    export_obj(T, &warn);
    CHECK(warn.str().find("skipped") != std::string::npos);
    CHECK(parse_off(export_off(T)) == OffCensus{4, 6, 4});
}
