#include <catch2/catch_amalgamated.hpp>

#include <tracksplit/census.hpp>
#include <tracksplit/map.hpp>

using namespace tracksplit;

TEST_CASE("beta family words match the stated forms") {
    TrainTrackMap f0 = beta_family(0);
    TrainTrack& t = f0.track;
    auto w = [&](const char* e) {
        std::string s;
        for (const auto& l : f0.dwords[t.edge_index(e)]) {
            s += t.edges[l.edge].name;
            s += l.dec == Dec::Plus ? "+" : l.dec == Dec::Minus ? "-" : "0";
        }
        return s;
    };
    CHECK(w("o") == "p0");
    CHECK(w("g") == "b0");
    CHECK(w("r") == "g0");
    CHECK(w("p") == "r-o-r0");
    CHECK(w("b") == "r-o0");

    TrainTrackMap f1 = beta_family(1);
    auto w1 = [&](const char* e) {
        std::string s;
        for (const auto& l : f1.dwords[f1.track.edge_index(e)]) {
            s += f1.track.edges[l.edge].name;
            s += l.dec == Dec::Plus ? "+" : l.dec == Dec::Minus ? "-" : "0";
        }
        return s;
    };
    CHECK(w1("p") == "r-o-r-o0");
    CHECK(w1("b") == "r-o-r0");
}

TEST_CASE("beta family maps validate and match the closed-form matrix") {
    for (long n = 0; n <= 10; ++n) {
        TrainTrackMap f = beta_family(n);
        auto rep = f.validate();
        INFO("n=" << n << "\n" << rep.str());
        CHECK(rep.valid());
        CHECK(f.transition_matrix() == beta_matrix(n));

        // PF with witness <= 7; M_n^7 strictly positive
        auto sp = spectral(f.transition_matrix());
        CHECK(sp.pf);
        CHECK(sp.pf_power <= 7);
        IntMatrix p7 = IntMatrix::identity(5);
        for (int k = 0; k < 7; ++k) p7 = p7 * beta_matrix(n);
        CHECK(p7.strictly_positive());
    }
}

TEST_CASE("decorated counting equals plain expansion counting") {
    for (long n : {0L, 1L, 4L, 7L}) {
        TrainTrackMap f = beta_family(n);
        IntMatrix direct(5);
        for (int j = 0; j < 5; ++j)
            for (const auto& l : f.dwords[j]) direct(l.edge, j) += l.dec == Dec::Terminal ? 1 : 2;
        CHECK(direct == f.transition_matrix());
    }
}

TEST_CASE("composition matrix is the matrix product") {
    TrainTrackMap f0 = beta_family(0);
    TrainTrackMap sq = compose(f0, f0);
    CHECK(sq.validate().valid());
    CHECK(sq.transition_matrix() == beta_matrix(0) * beta_matrix(0));
}

TEST_CASE("map file round trip and vertex line validation") {
    TrainTrackMap f0 = beta_family(0);
    std::string text = serialize_map(f0);
    TrainTrackMap back = parse_map(text, f0.track);
    CHECK(back.dwords == f0.dwords);

    // a vertex line contradicting the words is rejected
    std::string bad =
        "map f0 track=peacock\n"
        "vertex T.1 -> T.3\n"
        "edge o -> p0\n"
        "edge g -> b0\n"
        "edge r -> g0\n"
        "edge p -> r- o- r0\n"
        "edge b -> r- o0\n";
    CHECK_THROWS_AS(parse_map(bad, f0.track), ParseError);

    // plain mode parses oriented letters
    std::string plain =
        "map m track=peacock mode=plain\n"
        "edge o -> p\n"
        "edge g -> b\n"
        "edge r -> g\n"
        "edge p -> r ~r o ~o r\n"
        "edge b -> r ~r o\n";
    TrainTrackMap pm = parse_map(plain, f0.track);
    CHECK(!pm.decorated);
    CHECK(pm.validate().valid());
    CHECK(pm.transition_matrix() == beta_matrix(0));
}

TEST_CASE("validation rejects sharp turns and endpoint mismatches") {
    TrainTrack t = builtin_track("peacock");
    // o -> p ~p p backtracks at the trigon corner (p then ~p at the corner end
    // is fine through the loop, but p ~p p repeats a corner turn illegally)
    std::string sharp =
        "map m track=peacock mode=plain\n"
        "edge o -> p ~p p ~p p\n"
        "edge g -> b\n"
        "edge r -> g\n"
        "edge p -> r\n"
        "edge b -> o\n";
    TrainTrackMap sm = parse_map(sharp, t);
    // p (corner->loop) then ~p (loop->corner) is a loop hairpin: legal;
    // then p again departs the same corner: sharp
    auto rep = sm.validate();
    bool sharp_found = false;
    for (const auto& v : rep.violations)
        if (v.find("sharp turn") != std::string::npos) sharp_found = true;
    CHECK(sharp_found);

    std::string mismatch =
        "map m track=peacock mode=plain\n"
        "edge o -> p\n"
        "edge g -> p\n"  // g and o share a corner but images start at different switches? no:
        "edge r -> g\n"  // both p: consistent; break r instead
        "edge p -> r\n"
        "edge b -> o\n";
    TrainTrackMap mm = parse_map(mismatch, t);
    auto rep2 = mm.validate();
    // f(o)=f(g)=p forces f(T.1) = T.2 twice (consistent); f(b)=o forces
    // f(T.2)=T.1 while f(p)=r forces f(T.2)=T.3: endpoint mismatch
    bool mismatch_found = false;
    for (const auto& v : rep2.violations)
        if (v.find("endpoint mismatch") != std::string::npos) mismatch_found = true;
    CHECK(mismatch_found);
}

TEST_CASE("link map and gates for f0") {
    TrainTrackMap f0 = beta_family(0);
    const TrainTrack& t = f0.track;
    // trigon corner T.1 carries {o, g}
    SwitchRef t1;
    for (auto sw : t.switches())
        if (!t.is_loop_switch(sw) && t.corner(sw).real_valence() == 2 &&
            t.edges[t.corner(sw).reals()[1].edge].name == "o")
            t1 = sw;
    auto lm = f0.link_map(t1);
    REQUIRE(lm.from.size() == 2);
    // Df(o) = p, Df(g) = b
    for (size_t i = 0; i < lm.from.size(); ++i) {
        const std::string& src = t.edges[lm.from[i].edge].name;
        const std::string& img = t.edges[lm.image[i].edge].name;
        if (src == "o") CHECK(img == "p");
        if (src == "g") CHECK(img == "b");
    }
    CHECK(lm.gate_depth >= 1);

    // gate depth 1 at singleton switches
    for (auto sw : t.switches())
        if (t.corner(sw).real_valence() == 1) CHECK(f0.link_map(sw).gate_depth >= 1);

    // Df image connectedness at every switch
    for (auto sw : t.switches()) CHECK(f0.df_image_connected(sw));
}

TEST_CASE("extended matrix structure for f0") {
    TrainTrackMap f0 = beta_family(0);
    IntMatrix ext = f0.extended_matrix();
    // 5 real + 5 loops + 3 trigon sides = 13
    REQUIRE(ext.n == 13);
    IntMatrix m = f0.transition_matrix();
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(ext(i, j) == m(i, j));
    // real rows of infinitesimal columns vanish
    for (int i = 0; i < 5; ++i)
        for (int j = 5; j < 13; ++j) CHECK(ext(i, j) == 0);
    // each infinitesimal column is a permutation-like single 1
    for (int j = 5; j < 13; ++j) {
        Int sum = 0;
        for (int i = 5; i < 13; ++i) sum += ext(i, j);
        CHECK(sum == 1);
    }
    // loop rows: each hairpin over e charges e's loop once; f0 wraps r twice
    // (in f(p)) plus once terminally... terminal does not wrap
    // count: hairpins over r: f(p) has r-, f(b) has r-: column p charges
    // r-loop once, column b once
}
