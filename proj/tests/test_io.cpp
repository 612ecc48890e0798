#include <catch_amalgamated.hpp>

#include <isovar/io.hpp>

using namespace isovar;

namespace {

SSetPtr delta(int n, int k) { return representable(n, k).object(); }

bool same_structure(const IsoSSet& a, const IsoSSet& b) {
    if (a.size() != b.size()) return false;
    for (int c = 0; c < a.size(); ++c)
        if (a.cells[c].name != b.cells[c].name || a.degree(c) != b.degree(c) || a.faces[c] != b.faces[c] ||
            a.swap[c] != b.swap[c])
            return false;
    return true;
}

}  // namespace

TEST_CASE("degree and vertex strings") {
    CHECK(parse_degree("2,1") == SimplexObject{2, 1});
    CHECK_THROWS_AS(parse_degree("2;1"), Error);
    CHECK_THROWS_AS(parse_degree("2,1x"), Error);
    CHECK_THROWS_AS(parse_degree("1,3"), Error);
    const SimplexObject o{2, 1};
    CHECK(parse_vertex(o, "0s") == Vertex{0, Branch::s});
    CHECK(parse_vertex(o, "2") == Vertex{2, Branch::e});
    CHECK_THROWS_AS(parse_vertex(o, "0"), Error);
    CHECK_THROWS_AS(parse_vertex(o, "1e"), Error);
    CHECK_THROWS_AS(parse_vertex(o, "3"), Error);
    CHECK(face_key(o, 0) == "d1_0");
    CHECK(face_key(o, 2) == "d0_2");
}

TEST_CASE("sset documents round trip byte for byte") {
    std::vector<SSetPtr> samples{empty_sset()};
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n + 1; ++k) {
            samples.push_back(delta(n, k));
            samples.push_back(sub_object(delta(n, k), boundary(n, k)));
        }
    samples.push_back(cylinder(delta(1, 1)).total);
    for (const auto& X : samples) {
        const std::string text = serialize(*X);
        const auto Y = parse_sset(text);
        CHECK(same_structure(*X, *Y));
        CHECK(serialize(*Y) == text);
    }
    const json doc = to_json(*delta(1, 0));
    CHECK(doc["format"] == "ISOV-SSET");
    CHECK(doc["max_n"] == 1);
    CHECK(doc["cells"].size() == 3);
    CHECK(to_json(*empty_sset())["max_n"] == -1);
    CHECK(serialize(*delta(0, 0), "delta 0 0").find("\"provenance\": \"delta 0 0\"") != std::string::npos);
}

TEST_CASE("degenerate faces carry their epi") {
    // the cylinder over a point has degenerate faces
    const auto T = cylinder(delta(0, 0)).total;
    const json doc = to_json(*T);
    bool saw_epi = false;
    for (const auto& c : doc["cells"])
        for (const auto& [key, f] : c["faces"].items()) saw_epi |= f.contains("epi");
    CHECK(saw_epi == (T->max_dim() >= 2));
    CHECK(same_structure(*parse_sset(serialize(*T)), *T));
}

TEST_CASE("malformed documents are rejected") {
    const std::string good = serialize(*delta(1, 1));
    auto mutate = [&](auto&& edit) {
        json doc = json::parse(good);
        edit(doc);
        return doc.dump();
    };
    CHECK_THROWS_AS(parse_sset("{"), Error);
    CHECK_THROWS_AS(parse_sset("[]"), Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) { d["format"] = "OTHER"; })), Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) { d["version"] = 2; })), Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) { d["max_n"] = 5; })), Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) { d["cells"][0]["degree"] = 7; })), Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) {
                        for (auto& c : d["cells"])
                            if (c["degree"] == "1,1") c["faces"]["d1_0"]["cell"] = 99;
                    })),
                    Error);
    // swapping two faces breaks the simplicial identities or the degrees
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) {
                        for (auto& c : d["cells"])
                            if (c["degree"] == "1,1") std::swap(c["faces"]["d1_0"], c["faces"]["d0_1"]);
                    })),
                    Error);
    CHECK_THROWS_AS(parse_sset(mutate([](json& d) {
                        for (auto& c : d["cells"])
                            if (c.contains("sigma")) c["sigma"] = 0;
                    })),
                    Error);
    CHECK_NOTHROW(parse_sset(good));
}

TEST_CASE("map documents") {
    for (const auto& f : enumerate_hom({1, 1}, {2, 1})) {
        const json doc = gdelta_json(f);
        CHECK(gdelta_from_json(json::parse(doc.dump())) == f);
    }
    json bad = gdelta_json(coface(1, 1, 0, 1));
    bad["images"] = {"2", "0s"};
    CHECK_THROWS_AS(gdelta_from_json(bad), Error);
    bad["images"] = {"0e"};
    CHECK_THROWS_AS(gdelta_from_json(bad), Error);

    const auto maps = hom_presheaf_maps(sub_object(delta(2, 1), horn(2, 1, 1)), delta(2, 1));
    REQUIRE_FALSE(maps.empty());
    for (const auto& F : maps) {
        const PresheafMap G = presheaf_map_from_json(json::parse(presheaf_map_json(F).dump()));
        CHECK(G.assign == F.assign);
        CHECK(same_structure(*G.src, *F.src));
    }
    json broken = presheaf_map_json(maps.front());
    broken["assign"].erase(0);
    CHECK_THROWS_AS(presheaf_map_from_json(broken), Error);
}

TEST_CASE("report documents") {
    const json m = mesh_json(realize_cellwise(2, 1));
    CHECK(m["census"] == json({4, 5, 2}));
    const json d = derivation_json(derive_horn(2, 1, 1, true));
    CHECK(d["rule"] == "retract");
    CHECK(d["ok"] == true);
    const auto H = find_elementary_homotopy(identity_map(delta(1, 0)), identity_map(delta(1, 0)));
    REQUIRE(H);
    const json h = homotopy_json(*H);
    CHECK(h["map"]["kind"] == "presheaf");
    CHECK(h["from"].size() == 3);
}
