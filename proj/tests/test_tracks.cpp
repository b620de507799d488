#include <catch2/catch_amalgamated.hpp>

#include <tracksplit/track.hpp>

#include <random>

using namespace tracksplit;

TEST_CASE("parse and validate the peacock") {
    TrainTrack t = builtin_track("peacock");
    CHECK(t.name == "peacock");
    CHECK(t.punctures == 5);
    CHECK(t.edges.size() == 5);
    int loops = 0, trigons = 0;
    for (const auto& p : t.polygons) {
        if (p.k == 1) ++loops;
        if (p.k == 3) ++trigons;
    }
    CHECK(loops == 5);
    CHECK(trigons == 1);

    auto rep = t.validate();
    INFO(rep.str());
    CHECK(rep.valid());

    // stack conventions: order T.1 o g means l=o, r=g
    SwitchRef t1{5, 0};  // trigon declared last
    REQUIRE(t.polygons[5].name == "T");
    CHECK(t.edges[t.r_end(t1).edge].name == "g");
    CHECK(t.edges[t.l_end(t1).edge].name == "o");
}

TEST_CASE("peacock census and stratum") {
    TrainTrack t = builtin_track("peacock");
    auto [regions, st] = t.complement_census();
    REQUIRE(regions.size() == 7);
    int monogons = 0, trigon = 0, ext = 0;
    for (const auto& r : regions) {
        if (r.exterior) {
            ++ext;
            CHECK(r.cusps == 2);
        } else if (r.punctured) {
            ++monogons;
            CHECK(r.cusps == 1);
        } else {
            ++trigon;
            CHECK(r.cusps == 3);
        }
    }
    CHECK(monogons == 5);
    CHECK(trigon == 1);
    CHECK(ext == 1);
    CHECK(st == Stratum{{2}, {1, 1, 1, 1, 1}, {3}});
}

TEST_CASE("snail census and non-isomorphism") {
    TrainTrack s = builtin_track("snail");
    CHECK(s.validate().valid());
    auto [regions, st] = s.complement_census();
    CHECK(st == Stratum{{2}, {1, 1, 1, 1, 1}, {3}});

    TrainTrack p = builtin_track("peacock");
    CHECK(!is_isomorphic(p, s));
    CHECK(!is_isomorphic(p, s, true));
}

TEST_CASE("round trip serialization") {
    std::string once = serialize_track(parse_track(peacock_text()));
    std::string twice = serialize_track(parse_track(once));
    CHECK(once == twice);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_track("track x\nsurface disk punctures=1\n"), ParseError);
    CHECK_THROWS_AS(parse_track("track x\nloop L1 punctured\nedge a L1.1 Q.1\n"), ParseError);
    CHECK_THROWS_AS(parse_track("track x\nloop L1\nloop L1\n"), ParseError);
    CHECK_THROWS_AS(
        parse_track("track x\nloop L1\nloop L2\npolygon T cusps=3\n"
                    "edge a L1.1 T.1\nedge b L2.1 T.1\norder T.1 a c\n"),
        ParseError);
    CHECK_THROWS_AS(builtin_track("torus"), std::invalid_argument);
}

TEST_CASE("degenerate single loop rejected") {
    TrainTrack t = parse_track("track x\nsurface disk punctures=1\nloop L1 punctured\n");
    auto rep = t.validate();
    CHECK(!rep.valid());
    bool euler = false, noreal = false;
    for (const auto& v : rep.violations) {
        if (v.find("Euler") != std::string::npos) euler = true;
        if (v.find("no real edge") != std::string::npos) noreal = true;
    }
    CHECK(euler);
    CHECK(noreal);
}

TEST_CASE("unpunctured bigon rejected") {
    TrainTrack t = parse_track(
        "track x\nsurface disk punctures=2\n"
        "loop L1 punctured\nloop L2 punctured\npolygon B cusps=2\n"
        "edge x L1.1 B.1\nedge y L2.1 B.2\n");
    auto rep = t.validate();
    CHECK(!rep.valid());
    bool bad_region = false;
    for (const auto& v : rep.violations)
        if (v.find("2 cusps, no puncture") != std::string::npos) bad_region = true;
    CHECK(bad_region);
}

TEST_CASE("R(v) connectedness violation is reported") {
    TrainTrack t = builtin_track("peacock");
    // interleave the sides with the real edges at the trigon corner T.1
    for (auto sw : t.switches()) {
        if (t.is_loop_switch(sw)) continue;
        auto& c = t.corner(sw);
        if (c.real_valence() == 2) {
            std::swap(c.slots[1], c.slots[2]);  // reals, SideL, ... -> real, SideL, real
            break;
        }
    }
    auto rep = t.validate();
    CHECK(!rep.valid());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.find("R(v) not connected") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("structure query on builtins") {
    TrainTrack p = builtin_track("peacock");
    auto sp = p.structure_query();
    CHECK(sp.joint_count == 0);
    CHECK(sp.joints.empty());
    CHECK(sp.loop_switches.size() == 5);
    CHECK(sp.stems.size() == 5);  // every real edge has an end on the trigon
    CHECK(sp.real_valence.at("T.1") == 2);
    CHECK(sp.real_valence.at("T.2") == 2);
    CHECK(sp.real_valence.at("T.3") == 1);

    auto ss = builtin_track("snail").structure_query();
    CHECK(ss.joint_count == 0);
    CHECK(ss.real_valence.at("T.1") == 3);
}

TEST_CASE("canonical code invariant under relabeling") {
    TrainTrack t = builtin_track("peacock");
    std::string code = canonical_code(t);
    std::mt19937_64 rng(4242);
    for (int iter = 0; iter < 1000; ++iter) {
        TrainTrack u = t;
        // permute polygon and edge declaration order and rename everything
        std::vector<int> pperm(u.polygons.size()), eperm(u.edges.size());
        for (size_t i = 0; i < pperm.size(); ++i) pperm[i] = int(i);
        for (size_t i = 0; i < eperm.size(); ++i) eperm[i] = int(i);
        std::shuffle(pperm.begin(), pperm.end(), rng);
        std::shuffle(eperm.begin(), eperm.end(), rng);
        TrainTrack v;
        v.name = "relabel";
        v.punctures = u.punctures;
        v.exterior_cusps = u.exterior_cusps;
        v.exterior_punctured = u.exterior_punctured;
        std::vector<int> pinv(pperm.size()), einv(eperm.size());
        for (size_t i = 0; i < pperm.size(); ++i) pinv[pperm[i]] = int(i);
        for (size_t i = 0; i < eperm.size(); ++i) einv[eperm[i]] = int(i);
        for (size_t i = 0; i < pperm.size(); ++i) {
            Polygon pg = u.polygons[pperm[i]];
            pg.name = "P" + std::to_string(i);
            v.polygons.push_back(pg);
        }
        for (size_t i = 0; i < eperm.size(); ++i) {
            RealEdge e = u.edges[eperm[i]];
            e.name = "E" + std::to_string(i);
            for (int w = 0; w < 2; ++w) e.at[w].poly = pinv[e.at[w].poly];
            v.edges.push_back(e);
        }
        for (auto& pg : v.polygons)
            for (auto& c : pg.corners)
                for (auto& s : c.slots)
                    if (s.kind == Slot::Real) s.end.edge = einv[s.end.edge];
        CHECK(canonical_code(v) == code);
        CHECK(is_isomorphic(t, v));
    }
}

TEST_CASE("peacock is isomorphic to its mirror") {
    TrainTrack t = builtin_track("peacock");
    TrainTrack m = t.reflected();
    CHECK(m.validate().valid());
    CHECK(is_isomorphic(t, m, true));
}

TEST_CASE("automorphisms include the identity") {
    TrainTrack t = builtin_track("peacock");
    auto autos = automorphisms(t);
    REQUIRE(!autos.empty());
    bool has_id = false;
    for (const auto& a : autos) {
        bool id = true;
        for (size_t e = 0; e < a.edge_map.size(); ++e)
            if (a.edge_map[e] != int(e)) id = false;
        if (id) has_id = true;
    }
    CHECK(has_id);
    // applying any automorphism preserves the canonical code
    CHECK(canonical_code(t) == canonical_code(t.reflected(), true));
}
