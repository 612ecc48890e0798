#include <catch_amalgamated.hpp>

#include <isovar/anodyne.hpp>

#include "cylinder_oracle.hpp"

using namespace isovar;

namespace {

SSetPtr interval(int n, int k) { return interval_nerve({n, k})->sset; }

// Number of maps out of the union of two subobjects against the number of
// compatible pairs out of the pieces: equal iff the square is a pushout
// as seen by Z.
bool pushout_against(const SSetPtr& Y, const CellMask& a, const CellMask& b, const SSetPtr& Z) {
    const Materialized U = materialize(Y, mask_union(a, b)), A = materialize(Y, a), B = materialize(Y, b),
                       M = materialize(Y, mask_intersection(a, b));
    long pairs = 0;
    const auto from_a = hom_presheaf_maps(A.object, Z);
    const auto from_b = hom_presheaf_maps(B.object, Z);
    const PresheafMap ma = A.corestrict(M.inclusion), mb = B.corestrict(M.inclusion);
    for (const auto& f : from_a)
        for (const auto& g : from_b)
            if (compose(f, ma) == compose(g, mb)) ++pairs;
    return pairs == static_cast<long>(hom_presheaf_maps(U.object, Z).size());
}

}  // namespace

TEST_CASE("interval masks agree with the oracle") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            CHECK(interval_over(n, k, boundary(n, k)) == oracle::oracle_cylinder_mask(n, k, boundary(n, k)));
            for (int eps = 0; eps <= 1; ++eps) {
                const CellMask e = level_end(n, k, eps);
                CHECK(isomorphic(sub_object(interval(n, k), e), representable(n, k).object()));
            }
        }
}

TEST_CASE("filtrations grow to the full cylinder through admissible horns") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int eps : {1, 0}) {
                INFO(n << "," << k << " eps " << eps);
                const Filtration F = build_filtration(n, k, eps);
                CHECK(F.stages.size() == static_cast<std::size_t>(n + 2));
                const FiltrationReport rep = verify_filtration(F);
                CHECK(rep.increasing);
                CHECK(rep.ends_full);
                for (const auto& s : rep.stages) {
                    INFO("stage " << s.i);
                    for (const auto& p : s.problems) UNSCOPED_INFO(p);
                    CHECK(s.ok());
                    CHECK(s.attached_degree == SimplexObject{n + 1, s.i < k ? k + 1 : k});
                }
                for (const auto& st : F.stages) CHECK(validate(*sub_object(interval(n, k), st)).ok());
            }
}

TEST_CASE("filtration horn indices") {
    // free stages glue along the horn at i+1 when eps = 1
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= n; ++k) {
            const FiltrationReport rep = verify_filtration(build_filtration(n, k, 1));
            for (const auto& s : rep.stages)
                if (s.i < k) CHECK(s.horn_index == s.i + 1);
        }
    const FiltrationReport r22 = verify_filtration(build_filtration(2, 2, 1));
    CHECK(r22.stages[0].attached_degree == SimplexObject{3, 3});
    CHECK(r22.stages[0].horn_index == 1);
    CHECK(r22.stages[0].admissible);

    // the real stages of (2,1), indices fixed by isomorphism search
    const FiltrationReport r21 = verify_filtration(build_filtration(2, 1, 1));
    REQUIRE(r21.stages.size() == 3);
    CHECK(r21.stages[1].i == 1);
    CHECK(r21.stages[1].attached_degree == SimplexObject{3, 1});
    CHECK(r21.stages[1].horn_index == 2);
    CHECK(r21.stages[2].horn_index == 3);
    for (const auto& s : r21.stages) CHECK(s.admissible);
}

TEST_CASE("E_0 for (2,2)") {
    const Filtration F = build_filtration(2, 2, 1);
    const auto E0 = sub_object(interval(2, 2), F.stages[1]);
    const auto c = E0->census();
    CHECK(c.at({0, 0}) == 2);
    CHECK(c.at({0, 1}) == 8);
    CHECK(c.at({3, 3}) == 2);
    CHECK(c.count({3, 2}) == 0);
    CHECK(validate(*E0).ok());
}

TEST_CASE("stage squares are pushouts by universal property") {
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        const Filtration F = build_filtration(n, k, 1);
        const auto Y = interval(n, k);
        for (std::size_t s = 0; s < F.attached.size(); ++s) {
            const CellMask cell = closure(*Y, {F.attached[s]});
            for (const auto& z : std::vector<SimplexObject>{{1, 1}, {1, 0}})
                CHECK(pushout_against(Y, F.stages[s], cell, representable(z.n, z.k).object()));
        }
    }
}

TEST_CASE("retract witnesses") {
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int l = 0; l <= n; ++l) {
                INFO(n << "," << k << "," << l);
                if (!is_admissible(n, k, l)) {
                    CHECK_THROWS_AS(retract_witness(n, k, l), Error);
                    continue;
                }
                const RetractWitness w = retract_witness(n, k, l);
                const RetractReport r = check_retract(w);
                for (const auto& p : r.problems) UNSCOPED_INFO(p);
                CHECK(r.ok());
                UNSCOPED_INFO(w.source);
            }
    CHECK(retract_witness(3, 2, 1).source == "table (a)");
    CHECK(retract_witness(3, 1, 2).source == "table (b)");
    const RetractWitness c = retract_witness(2, 2, 0);
    CHECK(c.source == "table (c)");
    CHECK(c.eps == 0);
    // r sends the end {0}Delta into the first free face
    const CellMask end0 = level_end(2, 2, 0);
    const CellMask face = face_image(2, 2, 1, 1);
    for (int x = 0; x < interval(2, 2)->size(); ++x)
        if (end0[x]) CHECK(face[c.r.assign[x].cell]);
}

TEST_CASE("where the closed-form retract tables hold") {
    // the real-range table needs l > k; at l = k its r is not order preserving
    for (int n = 2; n <= 3; ++n)
        for (int k = 1; k < n; ++k) {
            INFO(n << "," << k);
            CHECK(table_witness_valid(n, k, k) == std::optional<bool>(false));
            for (int l = k + 1; l < n; ++l) CHECK(table_witness_valid(n, k, l) == std::optional<bool>(true));
        }
    CHECK(table_witness_valid(3, 2, 3) == std::nullopt);
    CHECK(table_witness_valid(2, 0, 1) == std::nullopt);
}

TEST_CASE("derivations") {
    const Derivation d = derive_horn(2, 1, 1, true);
    CHECK(d.all_ok());
    CHECK(d.depth() == 2);
    CHECK(d.rule == "retract");
    for (const auto& c : d.children) {
        CHECK(c.rule == "pushout");
        REQUIRE(c.children.size() == 1);
        CHECK(c.children[0].rule == "horn");
    }
    const Derivation classical = derive_generator(1, 0, 1);
    CHECK(classical.all_ok());
    CHECK(classical.children.size() == 2);

    const MembershipReport rep = verify_generator_membership();
    CHECK(rep.ok());
    CHECK(rep.generators.size() == 2 * (2 + 3 + 4));
    long admissible = 0;
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int l = 0; l <= n; ++l) admissible += is_admissible(n, k, l);
    CHECK(static_cast<long>(rep.horns.size()) == admissible);

    // replaying a generator's stages rebuilds the cylinder and its inclusion
    for (int n = 0; n <= 2; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const Filtration F = build_filtration(n, k, 1);
            CellMask U = F.stages.front();
            for (int c : F.attached) U = mask_union(U, closure(*interval(n, k), {c}));
            CHECK(U == full_mask(*interval(n, k)));
            const Materialized start = materialize(interval(n, k), F.stages.front());
            PresheafMap composite = identity_map(start.object);
            SSetPtr at = start.object;
            CellMask at_mask = F.stages.front();
            for (std::size_t s = 1; s < F.stages.size(); ++s) {
                const Materialized cur = materialize(interval(n, k), at_mask);
                const Materialized nxt = materialize(interval(n, k), F.stages[s]);
                composite = compose(nxt.corestrict(cur.inclusion), composite);
                at_mask = F.stages[s];
            }
            CHECK(composite == start.inclusion);
        }
}
