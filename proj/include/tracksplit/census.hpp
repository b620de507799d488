#pragma once

// The beta-family of decorated maps on the peacock track, the strand-order /
// absorption machinery, and the pruned bounded enumeration replaying the
// trace-lemma case analysis.
//
// Geometry encoding (fixed once, used by all laws below):
//  * each decorated letter (y, s) is a hairpin through the band of y around
//    its puncture (s = +/-) or a terminal dive into the puncture (s = o);
//  * positions across a band, left to right: '-' out-legs and '+' back-legs,
//    then the terminal dive, then '+' out-legs and '-' back-legs. Rank codes:
//    out(-) = 0, dive = 2, out(+) = 4; back-legs take the mirrored rank;
//  * at a junction, bands are ordered left to right by descending stack
//    index (l(v)-ward is left);
//  * a strand entering a junction via the i_l side must attack a position
//    left of every sprout head there; via i_r, right of every head. The
//    back-leg's position against the heads forces the exit side the same
//    way; a back-leg strictly between heads is absorbed (violation).

#include <tracksplit/map.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tracksplit {

// --- beta family -----------------------------------------------------------

inline TrainTrackMap beta_family(long n) {
    if (n < 0) throw std::invalid_argument("beta_family: n must be >= 0");
    TrainTrackMap m;
    m.name = "f" + std::to_string(n);
    m.track = builtin_track("peacock");
    m.decorated = true;
    int o = m.track.edge_index("o"), g = m.track.edge_index("g"), p = m.track.edge_index("p");
    int b = m.track.edge_index("b"), r = m.track.edge_index("r");
    m.dwords.resize(5);
    m.dwords[o] = {{p, Dec::Terminal}};
    m.dwords[g] = {{b, Dec::Terminal}};
    m.dwords[r] = {{g, Dec::Terminal}};
    auto blocks = [&](long count) {
        DecWord w;
        for (long i = 0; i < count; ++i) {
            w.push_back({r, Dec::Minus});
            w.push_back({o, Dec::Minus});
        }
        return w;
    };
    if (n % 2 == 0) {
        DecWord wp = blocks(n / 2 + 1);
        wp.push_back({r, Dec::Terminal});
        m.dwords[p] = wp;
        DecWord wb = blocks(n / 2);
        wb.push_back({r, Dec::Minus});
        wb.push_back({o, Dec::Terminal});
        m.dwords[b] = wb;
    } else {
        DecWord wp = blocks((n + 1) / 2);
        wp.push_back({r, Dec::Minus});
        wp.push_back({o, Dec::Terminal});
        m.dwords[p] = wp;
        DecWord wb = blocks((n + 1) / 2);
        wb.push_back({r, Dec::Terminal});
        m.dwords[b] = wb;
    }
    m.sync_plain_from_decorated();
    return m;
}

// Closed form of the transition matrix of f_n in edge order (o,g,p,b,r).
inline IntMatrix beta_matrix(long n) {
    return IntMatrix::from_rows({{0, 0, n + 2, n + 1, 0},
                                 {0, 0, 0, 0, 1},
                                 {1, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0},
                                 {0, 0, n + 3, n + 2, 0}});
}

// --- decorated-map geometry --------------------------------------------------

// Decorated maps analyzed here live on the peacock (or any jointless track
// with 1-pronged punctures whose polygons have >= 3 corners).
class DecoratedGeometry {
public:
    const TrainTrackMap& m;
    // per corner: preimage corner under the vertex rotation
    std::map<std::pair<int, int>, SwitchRef> preimage;

    explicit DecoratedGeometry(const TrainTrackMap& map) : m(map) {
        if (!m.decorated) throw std::invalid_argument("decorated map required");
        // corner images read off the first letters of the decorated words, so
        // the geometry also works for partially built candidates
        for (int x = 0; x < int(m.dwords.size()); ++x) {
            if (m.dwords[x].empty()) continue;
            SwitchRef img = m.corner_of(m.dwords[x].front().edge);
            preimage[{img.poly, img.corner}] = m.corner_of(x);
        }
    }

    static int rank_of(Dec d) { return d == Dec::Minus ? 0 : d == Dec::Terminal ? 2 : 4; }
    static int mirror_rank(Dec d) { return d == Dec::Minus ? 4 : d == Dec::Terminal ? 2 : 0; }

    // stack index of the corner end of edge y at its corner
    int stack_index(int y) const {
        SwitchRef c = m.corner_of(y);
        auto rs = m.track.corner(c).reals();
        for (int i = 0; i < int(rs.size()); ++i)
            if (rs[i].edge == y) return i;
        throw std::logic_error("edge not in its corner stack");
    }

    // Position of a leg across the junction's east wall: (band, rank); LEFT
    // means greater stack index, then smaller rank.
    struct Pos {
        int stack;
        int rank;
    };
    static int cmp_pos(Pos a, Pos b) {  // -1: a left of b, +1: right, 0: equal
        if (a.stack != b.stack) return a.stack > b.stack ? -1 : 1;
        if (a.rank != b.rank) return a.rank < b.rank ? -1 : 1;
        return 0;
    }

    Pos head_pos(const DecLetter& l) const { return {stack_index(l.edge), rank_of(l.dec)}; }
    Pos backleg_pos(const DecLetter& l) const { return {stack_index(l.edge), mirror_rank(l.dec)}; }

    // sprout = the first letter of an image word, anchored at the corner
    // image point; walls carry their source word for tie resolution
    struct Wall {
        Pos pos;
        int src;  // image word whose head this is
    };

    std::vector<Wall> wall_heads(SwitchRef w) const {
        std::vector<Wall> out;
        auto it = preimage.find({w.poly, w.corner});
        if (it == preimage.end()) return out;
        for (const auto& end : m.track.corner(it->second).reals()) {
            const DecWord& dw = m.dwords[end.edge];
            if (!dw.empty() && m.corner_of(dw.front().edge) == w)
                out.push_back({head_pos(dw.front()), end.edge});
        }
        return out;
    }

    enum class Side { Left, Right, Between, Ambiguous };
};

// --- strand order -----------------------------------------------------------

// One occurrence of an edge in an image word.
struct StrandItem {
    int source_edge;  // image word it belongs to
    int pos;          // letter index
    Dec dec;
};

struct StrandOrderReport {
    // per edge: occurrences ordered left to right across the band
    std::map<int, std::vector<StrandItem>> order;
    std::vector<std::string> violations;
};

// Forward co-walk comparison of two word suffixes located at the same
// junction. Returns -1 if A runs strictly left of B, +1 if right, 0 when a
// partially built word exhausts before divergence (undecided). On complete
// valid maps distinct suffixes always decide (terminals are distinct).
inline int cowalk_compare(const DecoratedGeometry& g, const TrainTrackMap& m, int edgeA, int posA,
                          int edgeB, int posB) {
    const DecWord* wa = &m.dwords[edgeA];
    const DecWord* wb = &m.dwords[edgeB];
    size_t ia = posA, ib = posB;
    while (ia < wa->size() && ib < wb->size()) {
        const DecLetter& la = (*wa)[ia];
        const DecLetter& lb = (*wb)[ib];
        if (la.edge != lb.edge || la.dec != lb.dec) {
            // moves at the same junction by construction
            int c = DecoratedGeometry::cmp_pos(g.head_pos(la), g.head_pos(lb));
            if (c != 0) return c;
            return 0;
        }
        ++ia;
        ++ib;
    }
    return 0;
}

// Side of a located letter (word x, index i; head or back-leg of that letter)
// against the sprout walls at its junction. Position ties against a wall in
// the same cluster resolve by co-walking the two suffixes.
// Position ties within a flank cluster resolve by nesting, read off the
// forward co-walk: in the rank-0 cluster (minus out-legs, plus back-legs) the
// co-walk order is the position order; in the rank-4 cluster it reverses.
inline int tie_resolve(const DecoratedGeometry& g, const TrainTrackMap& m, int rank, int xa,
                       int ia, int xb, int ib) {
    int c = cowalk_compare(g, m, xa, ia, xb, ib);
    return rank == 4 ? -c : c;
}

inline DecoratedGeometry::Side strand_side(const DecoratedGeometry& g, const TrainTrackMap& m,
                                           int x, int i, bool backleg,
                                           const std::vector<DecoratedGeometry::Wall>& walls) {
    const DecLetter& l = m.dwords[x][i];
    DecoratedGeometry::Pos p = backleg ? g.backleg_pos(l) : g.head_pos(l);
    bool can_left = true, can_right = true;
    for (const auto& w : walls) {
        if (!backleg && i == 0 && w.src == x) continue;  // own sprout head
        int c = DecoratedGeometry::cmp_pos(p, w.pos);
        if (c == 0) c = tie_resolve(g, m, p.rank, x, i, w.src, 0);
        if (c < 0) can_right = false;
        else if (c > 0) can_left = false;
        // c == 0: undecided (partial words); blocks neither side
    }
    if (can_left && can_right) return DecoratedGeometry::Side::Ambiguous;
    if (can_left) return DecoratedGeometry::Side::Left;
    if (can_right) return DecoratedGeometry::Side::Right;
    return DecoratedGeometry::Side::Between;
}

// One traversal of a polygon side by an image word: the transition between
// consecutive letters. Transverse orders of the passes through a side must
// be opposite in the frames of its two end junctions.
struct BandPass {
    int side_key;          // polygon side identifier
    SwitchRef from, to;    // junctions
    int word, idx;         // transition letters (idx, idx+1) of dwords[word]
};

inline std::vector<BandPass> collect_passes(const TrainTrackMap& m) {
    std::vector<BandPass> out;
    for (int x = 0; x < int(m.dwords.size()); ++x)
        for (int i = 0; i + 1 < int(m.dwords[x].size()); ++i) {
            SwitchRef a = m.corner_of(m.dwords[x][i].edge);
            SwitchRef b = m.corner_of(m.dwords[x][i + 1].edge);
            if (a.poly != b.poly) continue;  // illegal turn reported elsewhere
            int k = m.track.polygons[a.poly].k;
            int key;
            if ((a.corner + 1) % k == b.corner) key = a.corner;
            else if ((b.corner + 1) % k == a.corner) key = b.corner;
            else continue;
            out.push_back({key, a, b, x, i});
        }
    return out;
}

// position of a pass endpoint in the frame of junction `at`; 0 if undecided
inline int cmp_pass_at(const DecoratedGeometry& g, const TrainTrackMap& m, const BandPass& P,
                       const BandPass& Q, SwitchRef at) {
    auto endpoint = [&](const BandPass& r) {
        // exit endpoint (back-leg of letter idx) at r.from, entry endpoint
        // (head of letter idx+1) at r.to
        bool exit = at == r.from;
        int li = exit ? r.idx : r.idx + 1;
        DecoratedGeometry::Pos pos = exit ? g.backleg_pos(m.dwords[r.word][li])
                                          : g.head_pos(m.dwords[r.word][li]);
        return std::make_tuple(pos, r.word, li);
    };
    auto [pa, wa, ia] = endpoint(P);
    auto [pb, wb, ib] = endpoint(Q);
    int c = DecoratedGeometry::cmp_pos(pa, pb);
    if (c == 0) {
        if (wa == wb && ia == ib) return 0;
        c = tie_resolve(g, m, pa.rank, wa, ia, wb, ib);
    }
    return c;
}

// Check the reversing-transport law for every pair of passes through each
// side band. Returns violation strings.
inline std::vector<std::string> band_transport_violations(const DecoratedGeometry& g,
                                                          const TrainTrackMap& m) {
    std::vector<std::string> out;
    auto passes = collect_passes(m);
    for (size_t i = 0; i < passes.size(); ++i)
        for (size_t j = i + 1; j < passes.size(); ++j) {
            const BandPass& P = passes[i];
            const BandPass& Q = passes[j];
            if (P.side_key != Q.side_key || P.from.poly != Q.from.poly) continue;
            SwitchRef u = P.from, v = P.to;
            int cu = cmp_pass_at(g, m, P, Q, u);
            int cv = cmp_pass_at(g, m, P, Q, v);
            if (cu == 0 || cv == 0) continue;  // undecided on partial words
            if (cu != -cv)
                out.push_back("strands cross inside the side between " +
                              m.track.switch_name(u) + " and " + m.track.switch_name(v) +
                              " (images of " + m.track.edges[P.word].name + " and " +
                              m.track.edges[Q.word].name + ")");
        }
    return out;
}

// Build per-band strand orders and check the planarity laws. The checks:
//   1. hairpin signs over a band are consistent and at most one terminal;
//   2. first letters attack from the corner-image point between the image
//      sides; consecutive sprouts at a cusp keep their birth order (the
//      image of l(v)'s sprout stays left);
//   3. entering via i_l (resp. i_r) the attacked position lies left (resp.
//      right) of every sprout head at the junction;
//   4. the back-leg position against the sprout heads forces the exit side;
//      a back-leg strictly between heads is absorbed.
inline StrandOrderReport absorption_check(const TrainTrackMap& m) {
    StrandOrderReport rep;
    DecoratedGeometry g(m);
    const TrainTrack& t = m.track;
    int ne = int(t.edges.size());

    // (1) sign consistency and unique terminals
    std::vector<int> band_sign(ne, 0);  // 0 unset, +1, -1
    std::vector<int> terminal_of(ne, -1);
    for (int x = 0; x < ne; ++x)
        for (int i = 0; i < int(m.dwords[x].size()); ++i) {
            const DecLetter& l = m.dwords[x][i];
            if (l.dec == Dec::Terminal) {
                if (terminal_of[l.edge] >= 0)
                    rep.violations.push_back("two strands terminate at the puncture of " +
                                             t.edges[l.edge].name);
                terminal_of[l.edge] = x;
            } else {
                int s = l.dec == Dec::Plus ? 1 : -1;
                if (band_sign[l.edge] == 0) band_sign[l.edge] = s;
                else if (band_sign[l.edge] != s)
                    rep.violations.push_back("inconsistent strand order: mixed passing sides over " +
                                             t.edges[l.edge].name);
            }
        }

    // (2) cusp order: consecutive stack sprouts keep birth order
    for (auto sw : t.switches()) {
        if (t.is_loop_switch(sw)) continue;
        auto rs = t.corner(sw).reals();
        for (size_t i = 0; i + 1 < rs.size(); ++i) {
            int right_src = rs[i].edge, left_src = rs[i + 1].edge;
            if (m.dwords[right_src].empty() || m.dwords[left_src].empty()) continue;
            int c = cowalk_compare(g, m, left_src, 0, right_src, 0);
            if (c >= 0)
                rep.violations.push_back("cusp image at " + t.switch_name(sw) +
                                         " inverted: image of " + t.edges[left_src].name +
                                         " does not stay left of image of " +
                                         t.edges[right_src].name);
        }
    }

    // (3)+(4) junction crossing laws along every word
    for (int x = 0; x < ne; ++x) {
        const DecWord& dw = m.dwords[x];
        for (size_t i = 0; i < dw.size(); ++i) {
            SwitchRef w = m.corner_of(dw[i].edge);
            auto walls = g.wall_heads(w);
            // entry side of letter i
            if (i > 0) {
                SwitchRef prev = m.corner_of(dw[i - 1].edge);
                bool via_il = t.array_prev(w) == prev;
                bool via_ir = t.array_next(w) == prev;
                if (!via_il && !via_ir) {
                    rep.violations.push_back("illegal turn in image of " + t.edges[x].name);
                    continue;
                }
                auto side = strand_side(g, m, x, int(i), false, walls);
                bool ok = side == DecoratedGeometry::Side::Ambiguous ||
                          (via_il ? side == DecoratedGeometry::Side::Left
                                  : side == DecoratedGeometry::Side::Right);
                if (!ok)
                    rep.violations.push_back("strand " + t.edges[x].name + "[" + std::to_string(i) +
                                             "] absorbed entering " + t.switch_name(w) +
                                             (via_il ? " from the left side" : " from the right side"));
            }
            // exit side forced by the back-leg position
            if (dw[i].dec != Dec::Terminal) {
                if (i + 1 >= dw.size()) {
                    rep.violations.push_back("image of " + t.edges[x].name +
                                             " ends with a passing letter");
                    continue;
                }
                auto side = strand_side(g, m, x, int(i), true, walls);
                SwitchRef next = m.corner_of(dw[i + 1].edge);
                if (side == DecoratedGeometry::Side::Between) {
                    rep.violations.push_back("strand " + t.edges[x].name + "[" + std::to_string(i) +
                                             "] absorbed into the cusp image at " + t.switch_name(w));
                } else if (side != DecoratedGeometry::Side::Ambiguous) {
                    SwitchRef need = side == DecoratedGeometry::Side::Left ? t.array_prev(w)
                                                                           : t.array_next(w);
                    if (!(next == need))
                        rep.violations.push_back("strand " + t.edges[x].name + "[" +
                                                 std::to_string(i) + "] crosses the cusp image at " +
                                                 t.switch_name(w) + " (must continue toward " +
                                                 t.switch_name(need) + ")");
                }
            }
        }
    }

    // (5) reversing transport through the side bands
    for (auto& v : band_transport_violations(g, m)) rep.violations.push_back(v);

    // strand order report per band: out-legs sorted by co-walk, terminal last
    for (int y = 0; y < ne; ++y) {
        std::vector<StrandItem> items;
        for (int x = 0; x < ne; ++x)
            for (int i = 0; i < int(m.dwords[x].size()); ++i)
                if (m.dwords[x][i].edge == y) items.push_back({x, i, m.dwords[x][i].dec});
        std::sort(items.begin(), items.end(), [&](const StrandItem& a, const StrandItem& b) {
            int ra = DecoratedGeometry::rank_of(a.dec), rb = DecoratedGeometry::rank_of(b.dec);
            if (ra != rb) return ra < rb;
            int c = cowalk_compare(g, m, a.source_edge, a.pos, b.source_edge, b.pos);
            if (c != 0) return c < 0;
            return a.source_edge < b.source_edge;  // strands terminating together
        });
        rep.order[y] = std::move(items);
    }
    return rep;
}

// Disk-level trace predicate: no x^{+-o} occurs in f(x).
inline bool trace_predicate(const TrainTrackMap& m) {
    for (int x = 0; x < int(m.dwords.size()); ++x)
        for (const auto& l : m.dwords[x])
            if (l.edge == x) return false;
    return true;
}

// puncture map x -> edge of the terminal letter of f(x); permutation required
inline bool puncture_permutation(const TrainTrackMap& m) {
    int ne = int(m.dwords.size());
    std::vector<int> hit(ne, 0);
    for (int x = 0; x < ne; ++x) {
        if (m.dwords[x].empty() || m.dwords[x].back().dec != Dec::Terminal) return false;
        hit[m.dwords[x].back().edge] += 1;
    }
    for (int h : hit)
        if (h != 1) return false;
    return true;
}

inline int expanded_length(const DecWord& w) {
    int n = 0;
    for (const auto& l : w) n += l.dec == Dec::Terminal ? 1 : 2;
    return n;
}

// --- reverse-inverse symmetry ------------------------------------------------

// The horizontal symmetry of the peacock swaps o<->b, g<->p, fixes r, and
// flips every passing decoration.
inline TrainTrackMap reverse_inverse(const TrainTrackMap& m) {
    if (m.track.name != "peacock")
        throw std::invalid_argument("reverse_inverse implemented for the peacock track");
    auto idx = [&](const char* n) { return m.track.edge_index(n); };
    std::map<int, int> sigma{{idx("o"), idx("b")}, {idx("b"), idx("o")},
                             {idx("g"), idx("p")}, {idx("p"), idx("g")},
                             {idx("r"), idx("r")}};
    TrainTrackMap out;
    out.name = m.name + "~";
    out.track = m.track;
    out.decorated = true;
    out.dwords.resize(m.dwords.size());
    for (int x = 0; x < int(m.dwords.size()); ++x) {
        DecWord w;
        for (const auto& l : m.dwords[sigma.at(x)]) {
            Dec d = l.dec == Dec::Plus ? Dec::Minus : l.dec == Dec::Minus ? Dec::Plus : Dec::Terminal;
            w.push_back({sigma.at(l.edge), d});
        }
        out.dwords[x] = w;
    }
    out.sync_plain_from_decorated();
    return out;
}

// --- enumeration -------------------------------------------------------------

enum class CensusMode { LemmaReplay, Full };

struct CensusOptions {
    int max_len = 9;  // expanded traversal length bound per image word
    CensusMode mode = CensusMode::LemmaReplay;
    int jobs = 1;
};

struct CensusResult {
    std::vector<TrainTrackMap> survivors;
    long explored = 0;
};

// Depth-one record: which first-letter assignments admit any completion.
struct DfAssignment {
    std::vector<DecLetter> df;  // per edge
    std::string str(const TrainTrack& t) const {
        std::string s;
        for (int i = 0; i < int(df.size()); ++i) {
            if (i) s += " ";
            s += "Df(" + t.edges[i].name + ")=" + t.edges[df[i].edge].name +
                 (df[i].dec == Dec::Plus ? "+" : df[i].dec == Dec::Minus ? "-" : "0");
        }
        return s;
    }
};

class CensusSearch {
public:
    explicit CensusSearch(const CensusOptions& opt) : opt_(opt) {
        base_.name = "candidate";
        base_.track = builtin_track("peacock");
        base_.decorated = true;
        ne_ = int(base_.track.edges.size());
        o_ = base_.track.edge_index("o");
        g_ = base_.track.edge_index("g");
        p_ = base_.track.edge_index("p");
        b_ = base_.track.edge_index("b");
        r_ = base_.track.edge_index("r");
        // WLOG rotation: the {o,g}-corner maps to the {p,b}-corner, which maps
        // to the {r}-corner, which maps back.
        corner_img_[key(base_.corner_of(o_))] = base_.corner_of(p_);
        corner_img_[key(base_.corner_of(p_))] = base_.corner_of(r_);
        corner_img_[key(base_.corner_of(r_))] = base_.corner_of(o_);
    }

    CensusResult run() {
        CensusResult res;
        std::vector<DfAssignment> heads = df_assignments();
        for (const auto& h : heads) extend_all(h, res);
        std::sort(res.survivors.begin(), res.survivors.end(),
                  [](const TrainTrackMap& a, const TrainTrackMap& b) {
                      return serialize_map(a) < serialize_map(b);
                  });
        return res;
    }

    // all first-letter assignments allowed by structure (and axioms in
    // lemma-replay mode), before any completion viability is known
    std::vector<DfAssignment> df_assignments() {
        std::vector<std::vector<DecLetter>> choice(ne_);
        for (int x = 0; x < ne_; ++x) {
            SwitchRef img = corner_img_.at(key(base_.corner_of(x)));
            for (const auto& end : base_.track.corner(img).reals())
                for (Dec d : {Dec::Minus, Dec::Terminal, Dec::Plus}) {
                    DecLetter l{end.edge, d};
                    if (opt_.mode == CensusMode::LemmaReplay && !axiom_ok(x, l)) continue;
                    if (l.edge == x) continue;  // trace
                    choice[x].push_back(l);
                }
        }
        std::vector<DfAssignment> out;
        DfAssignment cur;
        cur.df.resize(ne_);
        std::function<void(int)> rec = [&](int x) {
            if (x == ne_) {
                out.push_back(cur);
                return;
            }
            for (const auto& l : choice[x]) {
                cur.df[x] = l;
                rec(x + 1);
            }
        };
        rec(0);
        return out;
    }

    // depth-1 viability: some completion passes all filters
    bool df_viable(const DfAssignment& h) {
        CensusResult res;
        extend_all(h, res, /*stop_at_first=*/true);
        return !res.survivors.empty();
    }

private:
    CensusOptions opt_;
    TrainTrackMap base_;
    int ne_ = 0, o_ = -1, g_ = -1, p_ = -1, b_ = -1, r_ = -1;
    std::map<std::pair<int, int>, SwitchRef> corner_img_;

    static std::pair<int, int> key(SwitchRef s) { return {s.poly, s.corner}; }

    bool axiom_ok(int x, const DecLetter& l) const {
        // Df(p) = r-, Df(b) = r-, Df(r) in {g-, g0}, Df(r) not in {o+, g+}
        if (x == p_) return l.edge == r_ && l.dec == Dec::Minus;
        if (x == b_) return l.edge == r_ && l.dec == Dec::Minus;
        if (x == r_) return l.edge == g_ && l.dec != Dec::Plus;
        return true;
    }

    void extend_all(const DfAssignment& h, CensusResult& res, bool stop_at_first = false) {
        TrainTrackMap cand = base_;
        cand.dwords.assign(ne_, {});
        for (int x = 0; x < ne_; ++x) cand.dwords[x] = {h.df[x]};
        // the wall anchors are fixed once all heads are seeded; tie
        // resolution consults the growing words through the geometry
        DecoratedGeometry geo(cand);
        WallMap walls;
        for (auto sw : cand.track.switches())
            if (!cand.track.is_loop_switch(sw)) walls[key(sw)] = geo.wall_heads(sw);
        extend_edge(cand, geo, walls, 0, res, stop_at_first);
    }

    using WallMap = std::map<std::pair<int, int>, std::vector<DecoratedGeometry::Wall>>;

    // extend edge x's word to completion, then recurse to the next edge
    void extend_edge(TrainTrackMap& cand, const DecoratedGeometry& geo, const WallMap& walls,
                     int x, CensusResult& res, bool stop_at_first) {
        if (stop_at_first && !res.survivors.empty()) return;
        if (x == ne_) {
            finish(cand, res);
            return;
        }
        grow_word(cand, geo, walls, x, res, stop_at_first);
    }

    void grow_word(TrainTrackMap& cand, const DecoratedGeometry& geo, const WallMap& walls,
                   int x, CensusResult& res, bool stop_at_first) {
        if (stop_at_first && !res.survivors.empty()) return;
        ++res.explored;
        DecWord& w = cand.dwords[x];
        const DecLetter last = w.back();
        if (last.dec == Dec::Terminal) {
            extend_edge(cand, geo, walls, x + 1, res, stop_at_first);
            return;
        }
        if (expanded_length(w) + 1 > opt_.max_len) return;  // no room even for a dive
        // exit side forced by the back-leg of the last letter
        SwitchRef at = cand.corner_of(last.edge);
        auto side = strand_side(geo, cand, x, int(w.size()) - 1, true, walls.at(key(at)));
        if (side == DecoratedGeometry::Side::Between) return;  // absorbed
        std::vector<SwitchRef> nexts;
        if (side != DecoratedGeometry::Side::Right) nexts.push_back(cand.track.array_prev(at));
        if (side != DecoratedGeometry::Side::Left) nexts.push_back(cand.track.array_next(at));
        for (SwitchRef next : nexts) {
            bool via_il = cand.track.array_prev(next) == at;
            for (const auto& end : cand.track.corner(next).reals()) {
                int y = end.edge;
                if (y == x) continue;  // trace predicate
                for (Dec d : {Dec::Minus, Dec::Terminal, Dec::Plus}) {
                    DecLetter l{y, d};
                    int extra = d == Dec::Terminal ? 1 : 2;
                    if (expanded_length(w) + extra > opt_.max_len) continue;
                    if (d != Dec::Terminal && expanded_length(w) + extra + 1 > opt_.max_len)
                        continue;  // must leave room for the final dive
                    w.push_back(l);
                    // entry-side law for the attacked position
                    auto eside = strand_side(geo, cand, x, int(w.size()) - 1, false,
                                             walls.at(key(next)));
                    bool ok = eside == DecoratedGeometry::Side::Ambiguous ||
                              (via_il ? eside == DecoratedGeometry::Side::Left
                                      : eside == DecoratedGeometry::Side::Right);
                    if (ok) ok = new_pass_ok(geo, cand, x);
                    if (ok) grow_word(cand, geo, walls, x, res, stop_at_first);
                    w.pop_back();
                    if (stop_at_first && !res.survivors.empty()) return;
                }
            }
        }
    }

    // incremental band-transport check: the pass ending at the just-added
    // letter of word x against every existing pass
    static bool new_pass_ok(const DecoratedGeometry& g, const TrainTrackMap& m, int x) {
        int i = int(m.dwords[x].size()) - 2;
        if (i < 0) return true;
        SwitchRef a = m.corner_of(m.dwords[x][i].edge);
        SwitchRef b = m.corner_of(m.dwords[x][i + 1].edge);
        int k = m.track.polygons[a.poly].k;
        int skey;
        if ((a.corner + 1) % k == b.corner) skey = a.corner;
        else if ((b.corner + 1) % k == a.corner) skey = b.corner;
        else return true;
        BandPass np{skey, a, b, x, i};
        for (const auto& P : collect_passes(m)) {
            if (P.word == np.word && P.idx == np.idx) continue;
            if (P.side_key != skey || P.from.poly != a.poly) continue;
            int cu = cmp_pass_at(g, m, P, np, a);
            int cv = cmp_pass_at(g, m, P, np, b);
            if (cu != 0 && cv != 0 && cu != -cv) return false;
        }
        return true;
    }

    void finish(TrainTrackMap& cand, CensusResult& res) {
        if (!puncture_permutation(cand)) return;
        cand.sync_plain_from_decorated();
        if (!cand.validate().valid()) return;
        if (!trace_predicate(cand)) return;
        auto rep = absorption_check(cand);
        if (!rep.violations.empty()) return;
        auto sp = spectral(cand.transition_matrix());
        if (!sp.pf) return;
        TrainTrackMap keep = cand;
        keep.name = "survivor" + std::to_string(res.survivors.size());
        res.survivors.push_back(keep);
    }
};

inline CensusResult enumerate_candidates(const CensusOptions& opt) {
    CensusSearch search(opt);
    return search.run();
}

}  // namespace tracksplit
