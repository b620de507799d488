#pragma once

// Shared test fixtures: the relabeled peacock carrying the split-example map,
// its twice-folded origin, and the synthetic tracks for property suites.

#include <tracksplit/census.hpp>
#include <tracksplit/splitting.hpp>

namespace tracksplit::fixtures {

// Peacock with edges named so the declaration order realizes the printed M3:
// e1,e2 at T.1 (l = e2), e4,e5 at T.2 (l = e4), e3 at T.3.
inline const char* tau3_text() {
    return
        "track tau3\n"
        "surface disk punctures=5\n"
        "loop L1 punctured\n"
        "loop L2 punctured\n"
        "loop L3 punctured\n"
        "loop L4 punctured\n"
        "loop L5 punctured\n"
        "polygon T cusps=3\n"
        "edge e1 L1.1 T.1\n"
        "edge e2 L2.1 T.1\n"
        "edge e3 L3.1 T.3\n"
        "edge e4 L4.1 T.2\n"
        "edge e5 L5.1 T.2\n"
        "order T.1 e2 e1\n"
        "order T.2 e4 e5\n"
        "exterior cusps=2 punctured\n";
}

// f0 transported along the relabeling o->e2, g->e1, r->e3, p->e4, b->e5.
inline TrainTrackMap map_on_tau3() {
    TrainTrackMap m;
    m.name = "f3";
    m.track = parse_track(tau3_text());
    m.decorated = true;
    int e1 = 0, e2 = 1, e3 = 2, e4 = 3, e5 = 4;
    m.dwords.resize(5);
    m.dwords[e2] = {{e4, Dec::Terminal}};
    m.dwords[e1] = {{e5, Dec::Terminal}};
    m.dwords[e3] = {{e1, Dec::Terminal}};
    m.dwords[e4] = {{e3, Dec::Minus}, {e2, Dec::Minus}, {e3, Dec::Terminal}};
    m.dwords[e5] = {{e3, Dec::Minus}, {e2, Dec::Terminal}};
    m.sync_plain_from_decorated();
    return m;
}

// The split example's starting data: fold tau3 twice. The resulting track has
// a joint at the loop chain and transition matrix M1 as printed.
inline TrainTrackMap map_on_tau1() {
    TrainTrackMap m3 = map_on_tau3();
    // undo the second split: e4 was peeled over e5 by an r-split at the loop
    // adjacent to both (file loop L5)
    SplitMove mv2;
    mv2.at = SwitchRef{4, 0};  // L5.1
    mv2.left = false;
    mv2.folded_edge = 3;  // e4
    mv2.over_edge = 4;    // e5
    TrainTrackMap m2 = fold_inverse(m3, mv2);
    // undo the first split: e5 was peeled over e4 by an l-split at loop L4
    SplitMove mv1;
    mv1.at = SwitchRef{3, 0};  // L4.1
    mv1.left = true;
    mv1.folded_edge = 4;  // e5
    mv1.over_edge = 3;    // e4
    TrainTrackMap m1 = fold_inverse(m2, mv1);
    m1.name = "m1";
    return m1;
}

inline IntMatrix m1_printed() {
    return IntMatrix::from_rows({{0, 0, 1, 0, 0},
                                 {0, 0, 0, 1, 0},
                                 {0, 0, 0, 1, 1},
                                 {1, 2, 0, 0, 0},
                                 {1, 1, 0, 0, 0}});
}
inline IntMatrix m2_printed() {
    return IntMatrix::from_rows({{0, 0, 1, 0, 0},
                                 {0, 0, 0, 1, 1},
                                 {0, 0, 0, 1, 2},
                                 {0, 1, 0, 0, 0},
                                 {1, 1, 0, 0, 0}});
}
inline IntMatrix m3_printed() {
    return IntMatrix::from_rows({{0, 0, 1, 0, 0},
                                 {0, 0, 0, 2, 1},
                                 {0, 0, 0, 3, 2},
                                 {0, 1, 0, 0, 0},
                                 {1, 0, 0, 0, 0}});
}

// Synthetic standardly embedded tracks for the property suites.

// Four punctures around a trigon, one corner of valence two.
inline const char* mini_peacock_text() {
    return
        "track minipeacock\n"
        "surface disk punctures=4\n"
        "loop L1 punctured\n"
        "loop L2 punctured\n"
        "loop L3 punctured\n"
        "loop L4 punctured\n"
        "polygon T cusps=3\n"
        "edge a L1.1 T.1\n"
        "edge b L2.1 T.1\n"
        "edge c L3.1 T.2\n"
        "edge d L4.1 T.3\n"
        "order T.1 a b\n"
        "exterior cusps=1 punctured\n";
}

// Six punctures, two trigons joined by a stem.
inline const char* twin_trigon_text() {
    return
        "track twintrigon\n"
        "surface disk punctures=6\n"
        "loop L1 punctured\n"
        "loop L2 punctured\n"
        "loop L3 punctured\n"
        "loop L4 punctured\n"
        "loop L5 punctured\n"
        "loop L6 punctured\n"
        "polygon A cusps=3\n"
        "polygon B cusps=3\n"
        "edge s A.1 B.1\n"
        "edge a L1.1 A.1\n"
        "edge b L2.1 A.2\n"
        "edge c L3.1 A.3\n"
        "edge d L4.1 B.1\n"
        "edge e L5.1 B.2\n"
        "edge f L6.1 B.3\n"
        "order A.1 s a\n"
        "order B.1 d s\n"
        "exterior cusps=2 punctured\n";
}

// Peacock with one extra fold: a joint at a loop (J = 1).
inline TrainTrack jointed_peacock() {
    TrainTrack t = builtin_track("peacock");
    // split at the {o,g} trigon corner: the peeled edge lands on a loop
    SwitchRef t1{-1, -1};
    for (auto sw : t.switches())
        if (!t.is_loop_switch(sw) && t.corner(sw).real_valence() == 2) {
            t1 = sw;
            break;
        }
    track_split(t, t1, true);
    t.name = "jointedpeacock";
    return t;
}

}  // namespace tracksplit::fixtures
