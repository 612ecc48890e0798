#include <catch_amalgamated.hpp>

#include <isovar/standard_objects.hpp>

using namespace isovar;

namespace {

// Cells of a degree in the mask, one per sigma orbit.
int top_cells(const IsoSSet& X, const CellMask& m, SimplexObject deg) {
    int n = 0;
    for (int c = 0; c < X.size(); ++c) n += m[c] && X.degree(c) == deg && X.swap[c] >= c;
    return n;
}

}  // namespace

TEST_CASE("face images") {
    const auto& R = representable(2, 1);
    const CellMask f = face_image(2, 1, 1, 0);
    const auto F = sub_object(R.object(), f);
    CHECK(F->census() == representable(1, 1).object()->census());
    bool found = false;
    for (int c = 0; c < R.object()->size(); ++c)
        if (f[c] && R.object()->degree(c).n == 1 && notation(R, c) == "⟨v0^c | v2^r⟩") found = true;
    CHECK(found);

    const CellMask v = face_image(1, 0, 0, 0);
    CHECK(mask_count(v) == 1);
    CHECK_THROWS_AS(face_image(2, 1, 1, 1), Error);
    CHECK_THROWS_AS(face_image(2, 1, 3, 0), Error);
}

TEST_CASE("boundary census") {
    CHECK(mask_count(boundary(0, 0)) == 0);
    CHECK(mask_count(boundary(0, 1)) == 0);
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            const auto& R = representable(n, k);
            const CellMask b = boundary(n, k);
            INFO((SimplexObject{n, k}.str()));
            CHECK(is_sub(*R.object(), b));
            if (k <= n) CHECK(top_cells(*R.object(), b, {n - 1, k}) == n - k + 1);
            if (k >= 1) CHECK(top_cells(*R.object(), b, {n - 1, k - 1}) == k);
            CHECK(validate(*sub_object(R.object(), b)).ok());
        }
}

TEST_CASE("boundary(2,1) census by degree") {
    const auto c = sub_object(representable(2, 1).object(), boundary(2, 1))->census();
    CHECK(c.at({0, 0}) == 2);
    CHECK(c.at({0, 1}) == 2);
    CHECK(c.at({1, 0}) == 1);
    CHECK(c.at({1, 1}) == 4);
    CHECK(c.count({2, 1}) == 0);
}

TEST_CASE("horns") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int l = 0; l <= n; ++l) {
                const auto& R = representable(n, k);
                const auto X = R.object();
                const CellMask h = horn(n, k, l);
                const CellMask b = boundary(n, k);
                INFO(n << "," << k << "," << l);
                CHECK(h == horn_by_predicate(n, k, l));
                CHECK(is_sub(*X, h));
                CHECK(mask_subset(h, b));
                CHECK(h != b);
                CHECK(b != full_mask(*X));
                // one fewer top cell, counted up to sigma
                auto orbits = [&](const CellMask& m) {
                    int count = 0;
                    for (int c = 0; c < X->size(); ++c)
                        if (m[c] && X->degree(c).n == n - 1 && X->swap[c] >= c) ++count;
                    return count;
                };
                CHECK(orbits(h) + 1 == orbits(b));
                if (n <= 3) CHECK(isomorphic(sub_object(X, h), sub_object(X, horn_by_predicate(n, k, l))));
            }
}

TEST_CASE("horn(2,1,1) drops the face through v0 and v2") {
    const auto& R = representable(2, 1);
    const CellMask h = horn(2, 1, 1), b = boundary(2, 1);
    std::set<std::string> removed;
    for (int c = 0; c < R.object()->size(); ++c)
        if (b[c] && !h[c]) removed.insert(notation(R, c));
    CHECK(removed == std::set<std::string>{"⟨v0^c | v2^r⟩", "⟨v0^c | v2^r⟩^σ"});
}

TEST_CASE("sigma preserves each face image") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n + 1; ++k)
            for (int i = 0; i <= n; ++i) {
                const auto X = representable(n, k).object();
                const CellMask f = face_image(n, k, i);
                for (int c = 0; c < X->size(); ++c)
                    if (f[c]) CHECK(f[X->swap[c]]);
            }
}

TEST_CASE("notation") {
    const auto& R = representable(2, 1);
    CHECK(notation(R, R.object()->size() - 2) == "⟨v0^c | v1^r v2^r⟩");
    CHECK(notation(R, R.object()->size() - 1) == "⟨v0^c | v1^r v2^r⟩^σ");
    const auto& R32 = representable(3, 2);
    for (int c = 0; c < R32.object()->size(); ++c) CHECK(parse_notation(notation(R32, c), 3, 2) == R32.mono_of(c));
    CHECK_THROWS_AS(parse_notation("v0^c", 3, 2), Error);
    CHECK(notation(representable(0, 0), 0) == "⟨v0^r⟩");
}
