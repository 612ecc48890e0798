#include <catch_amalgamated.hpp>

#include <isovar/cylinder.hpp>
#include <isovar/standard_objects.hpp>

#include "cylinder_oracle.hpp"

using namespace isovar;

namespace {

SSetPtr delta(int n, int k) { return representable(n, k).object(); }

}  // namespace

TEST_CASE("interval top census") {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            INFO(n << "," << k);
            const auto [real, mixed] = interval_top_census(n, k);
            CHECK(real == n - k + 1);
            CHECK(mixed == k);
        }
    CHECK(interval_top_census(1, 0) == std::pair<int, int>{2, 0});
    CHECK(interval_top_census(2, 1) == std::pair<int, int>{2, 1});
}

TEST_CASE("interval cells are injective isovariant chains") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const auto N = interval_nerve({n, k});
            CHECK(validate(*N->sset).ok());
            for (int c = 0; c < N->sset->size(); ++c) {
                const SimplexObject d = N->sset->degree(c);
                const auto src = to_gposet(d);
                GPosetMap m{src, N->poset, {}};
                for (const auto& v : vertices(d)) {
                    const int e = N->chains[c][v.index];
                    m.table.push_back(v.branch == Branch::s ? N->poset->inv[e] : e);
                }
                CHECK(m.check().empty());
                std::set<int> distinct(m.table.begin(), m.table.end());
                CHECK(distinct.size() == m.table.size());
            }
        }
}

TEST_CASE("cylinder of a representable is the interval") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            INFO(n << "," << k);
            CHECK(oracle::compare_with_oracle(n, k, full_mask(*delta(n, k))).empty());
            if (n <= 2) CHECK(isomorphic(cylinder(delta(n, k)).total, interval_of_representable(n, k)));
        }
}

TEST_CASE("cylinder small cases") {
    const CylinderBundle E = cylinder(empty_sset());
    CHECK(E.total->empty());
    const CylinderBundle P = cylinder(delta(0, 1));
    const auto c = P.total->census();
    CHECK(c.at({1, 2}) == 2);
    CHECK(c.count({1, 1}) == 0);
    int a = -1, b = -1;
    for (int id = 0; id < P.total->size(); ++id)
        if (P.total->degree(id) == SimplexObject{1, 2}) (a < 0 ? a : b) = id;
    CHECK(P.total->swap[a] == b);
}

TEST_CASE("bundle structure maps") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const CylinderBundle B = cylinder(delta(n, k));
            CHECK(validate(*B.total).ok());
            CHECK(check_map(B.d0).empty());
            CHECK(check_map(B.d1).empty());
            CHECK(check_map(B.rho).empty());
            CHECK(bundle_section_law(B));
            CHECK(bundle_ends_disjoint(B));
            CHECK(is_mono(B.d0));
            CHECK(is_mono(B.d1));
        }
}

TEST_CASE("boundary and horn cylinders agree with the oracle and are exact") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const auto Y = delta(n, k);
            const CylinderBundle IY = cylinder(Y);
            std::vector<CellMask> subs{boundary(n, k)};
            for (int l = 0; l <= n; ++l) subs.push_back(horn(n, k, l));
            for (const auto& m : subs) {
                INFO(n << "," << k);
                CHECK(oracle::compare_with_oracle(n, k, m).empty());
                const Materialized M = materialize(Y, m);
                const CylinderBundle IX = cylinder(M.object);
                CHECK(validate(*IX.total).ok());
                const ExactnessReport r = verify_exactness(M.inclusion, IX, IY);
                CHECK(r.ok());
                CHECK(image(cylinder_map(M.inclusion, IX, IY)) == cylinder_of_mask(IY, m));
            }
        }
}

TEST_CASE("cylinder is functorial and natural") {
    for (const auto& a : std::vector<SimplexObject>{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 2}})
        for (const auto& b : std::vector<SimplexObject>{{1, 0}, {1, 1}, {2, 1}, {2, 2}}) {
            const CylinderBundle IA = cylinder(delta(a.n, a.k));
            const CylinderBundle IB = cylinder(delta(b.n, b.k));
            const CylinderBundle IC = cylinder(delta(2, 1));
            CHECK(cylinder_map(identity_map(IA.base), IA, IA) == identity_map(IA.total));
            for (const auto& f : enumerate_hom(a, b)) {
                const PresheafMap F = yoneda_map(f);
                const PresheafMap IF = cylinder_map(F, IA, IB);
                REQUIRE(check_map(IF).empty());
                CHECK(compose(IB.rho, IF) == compose(F, IA.rho));
                CHECK(compose(IF, IA.d0) == compose(IB.d0, F));
                CHECK(compose(IF, IA.d1) == compose(IB.d1, F));
                for (const auto& g : enumerate_hom(b, {2, 1})) {
                    const PresheafMap G = yoneda_map(g);
                    CHECK(cylinder_map(compose(G, F), IA, IC) == compose(cylinder_map(G, IB, IC), IF));
                }
            }
        }
}

TEST_CASE("cylinder preserves coproducts and a pushout") {
    const auto A = delta(1, 1), B = delta(2, 0);
    const CylinderBundle IAB = cylinder(coproduct(*A, *B));
    const auto sum = coproduct(*cylinder(A).total, *cylinder(B).total);
    CHECK(isomorphic(IAB.total, sum));

    const auto I = delta(1, 0);
    const PresheafMap end0 = yoneda_map(coface(0, 0, 0, 0));
    const PresheafMap end1 = yoneda_map(coface(0, 0, 1, 0));
    const Pushout P = pushout(end0, end1);
    const CylinderBundle IP = cylinder(P.object);
    const CylinderBundle Ipt = cylinder(delta(0, 0));
    const CylinderBundle II = cylinder(I);
    const Pushout Q = pushout(cylinder_map(end0, Ipt, II), cylinder_map(end1, Ipt, II));
    CHECK(validate(*IP.total).ok());
    CHECK(isomorphic(IP.total, Q.object));
}
