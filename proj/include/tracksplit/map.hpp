#pragma once

// Train track maps: per-edge image words (plain oriented letters, or
// decorated letters with left/right passing data on tracks whose punctures
// are all 1-pronged), validation, transition matrices, link maps.

#include <tracksplit/matrix.hpp>
#include <tracksplit/track.hpp>

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tracksplit {

// Plain oriented letter: traversal of an edge; rev=false means A->B.
struct Letter {
    int edge = -1;
    bool rev = false;
    bool operator==(const Letter&) const = default;
    Letter reversed() const { return {edge, !rev}; }
};

enum class Dec { Plus, Minus, Terminal };

struct DecLetter {
    int edge = -1;
    Dec dec = Dec::Terminal;
    bool operator==(const DecLetter&) const = default;
};

using Word = std::vector<Letter>;
using DecWord = std::vector<DecLetter>;

class TrainTrackMap {
public:
    std::string name;
    TrainTrack track;
    bool decorated = false;
    std::vector<Word> words;      // plain form, always present
    std::vector<DecWord> dwords;  // decorated form when decorated

    SwitchRef letter_tail(const Letter& l) const { return track.edges[l.edge].at[l.rev ? 1 : 0]; }
    SwitchRef letter_head(const Letter& l) const { return track.edges[l.edge].at[l.rev ? 0 : 1]; }

    // direction of an edge pointed at its puncture loop (decorated tracks)
    Letter toward_puncture(int edge) const {
        auto pe = track.puncture_end(edge);
        if (!pe) throw std::runtime_error("edge " + track.edges[edge].name +
                                          " has no unique puncture end");
        return Letter{edge, *pe == 0};  // rev=true when the loop is endpoint A
    }
    SwitchRef corner_of(int edge) const {
        auto pe = track.puncture_end(edge);
        if (!pe) throw std::runtime_error("edge has no unique puncture end");
        return track.edges[edge].at[1 - *pe];
    }
    int loop_of(int edge) const {
        auto pe = track.puncture_end(edge);
        if (!pe) throw std::runtime_error("edge has no unique puncture end");
        return track.edges[edge].at[*pe].poly;
    }

    static Word expand(const TrainTrackMap& m, const DecWord& dw) {
        Word w;
        for (size_t i = 0; i < dw.size(); ++i) {
            Letter fwd = m.toward_puncture(dw[i].edge);
            w.push_back(fwd);
            if (dw[i].dec != Dec::Terminal) w.push_back(fwd.reversed());
        }
        return w;
    }

    void sync_plain_from_decorated() {
        words.clear();
        for (int e = 0; e < int(dwords.size()); ++e) {
            // the decorated word reads the image along e oriented corner ->
            // puncture; the stored plain word follows e's declared A -> B
            Word w = expand(*this, dwords[e]);
            auto pe = track.puncture_end(e);
            if (pe && *pe == 0) {
                std::reverse(w.begin(), w.end());
                for (auto& l : w) l.rev = !l.rev;
            }
            words.push_back(std::move(w));
        }
    }

    // Derived vertex map: switch -> image switch; nullopt entries when a
    // switch image is not pinned by any word (cannot happen on valid tracks).
    std::map<std::pair<int, int>, SwitchRef> derived_vertex_map(
        std::vector<std::string>* conflicts = nullptr) const {
        std::map<std::pair<int, int>, SwitchRef> vm;
        auto put = [&](SwitchRef s, SwitchRef img, const std::string& why) {
            auto key = std::make_pair(s.poly, s.corner);
            auto it = vm.find(key);
            if (it == vm.end()) vm[key] = img;
            else if (!(it->second == img) && conflicts)
                conflicts->push_back("endpoint mismatch at " + track.switch_name(s) + " (" + why + ")");
        };
        for (int e = 0; e < int(words.size()); ++e) {
            if (words[e].empty()) continue;
            SwitchRef a = track.edges[e].at[0], b = track.edges[e].at[1];
            put(a, letter_tail(words[e].front()), "image of " + track.edges[e].name);
            put(b, letter_head(words[e].back()), "image of " + track.edges[e].name);
        }
        return vm;
    }

    ValidationReport validate() const {
        ValidationReport rep;
        auto trep = track.validate();
        if (!trep.valid()) {
            rep.violations.push_back("invalid track");
            for (const auto& v : trep.violations) rep.violations.push_back("  " + v);
            return rep;
        }
        if (int(words.size()) != int(track.edges.size())) {
            rep.violations.push_back("word count does not match edge count");
            return rep;
        }
        for (int e = 0; e < int(words.size()); ++e) {
            const Word& w = words[e];
            if (w.empty()) {
                rep.violations.push_back("empty image for " + track.edges[e].name);
                continue;
            }
            for (size_t i = 0; i + 1 < w.size(); ++i) {
                SwitchRef h = letter_head(w[i]), t = letter_tail(w[i + 1]);
                if (!track.side_adjacent(h, t))
                    rep.violations.push_back("sharp turn in image of " + track.edges[e].name +
                                             " at position " + std::to_string(i + 1));
            }
        }
        if (decorated) {
            for (int e = 0; e < int(dwords.size()); ++e) {
                const DecWord& dw = dwords[e];
                for (size_t i = 0; i < dw.size(); ++i)
                    if ((dw[i].dec == Dec::Terminal) != (i + 1 == dw.size()))
                        rep.violations.push_back("terminal decoration must be exactly the last letter in image of " +
                                                 track.edges[e].name);
            }
            for (int e = 0; e < int(track.edges.size()); ++e)
                if (!track.puncture_end(e))
                    rep.violations.push_back("decorated mode requires every edge to end at a puncture loop");
        }
        std::vector<std::string> conflicts;
        derived_vertex_map(&conflicts);
        for (auto& c : conflicts) rep.violations.push_back(c);
        return rep;
    }

    IntMatrix transition_matrix() const {
        int n = int(track.edges.size());
        IntMatrix m(n);
        for (int j = 0; j < n; ++j)
            for (const auto& l : words[j]) m(l.edge, j) += 1;
        return m;
    }

    // Extended matrix: infinitesimal edges (polygon sides, loops included)
    // appended after the real edges. Between consecutive real letters the
    // unique one-side connector through the shared polygon is charged.
    IntMatrix extended_matrix() const {
        int n = int(track.edges.size());
        // side index: (poly, j) -> n + offset
        std::map<std::pair<int, int>, int> side_idx;
        int next = n;
        for (int p = 0; p < int(track.polygons.size()); ++p) {
            if (track.polygons[p].k > 12)
                throw std::runtime_error("extended matrix: polygon too large for connector convention");
            for (int j = 0; j < track.polygons[p].k; ++j) side_idx[{p, j}] = next++;
        }
        IntMatrix m(next);
        auto side_between = [&](SwitchRef a, SwitchRef b) -> int {
            // side s_j joins corner j (its SideR) to corner j+1 (its SideL)
            if (a.poly != b.poly) return -1;
            int k = track.polygons[a.poly].k;
            if (k == 1 && a.corner == b.corner) return side_idx[{a.poly, 0}];
            if ((a.corner + 1) % k == b.corner) return side_idx[{a.poly, a.corner}];
            if ((b.corner + 1) % k == a.corner) return side_idx[{a.poly, b.corner}];
            return -1;
        };
        for (int j = 0; j < int(words.size()); ++j) {
            for (const auto& l : words[j]) m(l.edge, j) += 1;
            for (size_t i = 0; i + 1 < words[j].size(); ++i) {
                int s = side_between(letter_head(words[j][i]), letter_tail(words[j][i + 1]));
                if (s < 0) throw std::runtime_error("extended matrix: no connector side");
                m(s, j) += 1;
            }
        }
        // images of infinitesimal edges: side (c_j, c_{j+1}) maps to the side
        // between the image corners
        auto vm = derived_vertex_map();
        for (int p = 0; p < int(track.polygons.size()); ++p) {
            int k = track.polygons[p].k;
            for (int j = 0; j < k; ++j) {
                SwitchRef a{p, j}, b{p, (j + 1) % k};
                auto ia = vm.find({a.poly, a.corner});
                auto ib = vm.find({b.poly, b.corner});
                if (ia == vm.end() || ib == vm.end())
                    throw std::runtime_error("extended matrix: switch image unknown");
                int s = side_between(ia->second, ib->second);
                if (s < 0) throw std::runtime_error("extended matrix: side image is not a side");
                m(s, side_idx[{p, j}]) += 1;
            }
        }
        return m;
    }

    // Df on edge germs. A germ is an edge end being departed from.
    EndRef df(EndRef germ) const {
        const Word& w = words[germ.edge];
        if (w.empty()) throw std::runtime_error("df: empty word");
        if (germ.which == 0) {
            const Letter& l = w.front();
            return {l.edge, l.rev ? 1 : 0};
        }
        const Letter& l = w.back();
        return {l.edge, l.rev ? 0 : 1};
    }

    struct LinkMap {
        std::vector<EndRef> from;   // germs in R(v), stack order
        std::vector<EndRef> image;  // Df of each
        int gate_depth = 0;         // least k with (Df)^k constant on R(v)
    };

    LinkMap link_map(SwitchRef v, int depth_bound = 0) const {
        LinkMap lm;
        for (const auto& end : track.corner(v).reals()) {
            lm.from.push_back(end);
            lm.image.push_back(df(end));
        }
        if (depth_bound <= 0)
            depth_bound = int(track.edges.size()) * int(track.switches().size()) + 4;
        std::vector<EndRef> cur = lm.from;
        for (int k = 1; k <= depth_bound; ++k) {
            for (auto& g : cur) g = df(g);
            bool constant = true;
            for (const auto& g : cur)
                if (!(g == cur[0])) constant = false;
            if (constant) {
                lm.gate_depth = k;
                return lm;
            }
        }
        throw std::runtime_error("gate bound exceeded at " + track.switch_name(v) +
                                 " (map not efficient?)");
    }

    // Positions of Df(R(w)) in the stack at f(w); connected iff contiguous.
    bool df_image_connected(SwitchRef w) const {
        std::set<int> pos;
        SwitchRef v{-1, -1};
        for (const auto& g : track.corner(w).reals()) {
            EndRef img = df(g);
            SwitchRef s = track.edges[img.edge].at[img.which];
            if (v.poly < 0) v = s;
            else if (!(v == s)) return false;
            auto rs = track.corner(s).reals();
            for (int i = 0; i < int(rs.size()); ++i) {
                EndRef into{img.edge, img.which};
                if (rs[i] == into) pos.insert(i);
            }
        }
        if (pos.empty()) return false;
        return *pos.rbegin() - *pos.begin() + 1 == int(pos.size());
    }
};

// Composition (f after g): substitute f-words into g-words.
inline TrainTrackMap compose(const TrainTrackMap& f, const TrainTrackMap& g) {
    TrainTrackMap h;
    h.name = f.name + "*" + g.name;
    h.track = g.track;
    h.decorated = false;
    h.words.resize(g.words.size());
    for (size_t e = 0; e < g.words.size(); ++e)
        for (const auto& l : g.words[e]) {
            Word piece = f.words[l.edge];
            if (l.rev) {
                std::reverse(piece.begin(), piece.end());
                for (auto& x : piece) x.rev = !x.rev;
            }
            h.words[e].insert(h.words[e].end(), piece.begin(), piece.end());
        }
    return h;
}

// ---------------------------------------------------------------------------
// Map files

inline TrainTrackMap parse_map(const std::string& text, const TrainTrack& track) {
    TrainTrackMap m;
    m.track = track;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, std::string> vertex_lines;
    std::map<std::string, std::vector<std::string>> edge_lines;
    bool mode_plain = false, mode_set = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "map") {
            if (toks.size() < 2) throw ParseError("map needs a name", lineno, 1);
            m.name = toks[1];
            for (size_t i = 2; i < toks.size(); ++i) {
                if (toks[i].rfind("track=", 0) == 0) {
                    std::string tn = toks[i].substr(6);
                    if (tn != track.name)
                        throw ParseError("map references track " + tn + ", got " + track.name,
                                         lineno, 1);
                } else if (toks[i] == "mode=plain") {
                    mode_plain = true;
                    mode_set = true;
                } else if (toks[i] == "mode=decorated") {
                    mode_set = true;
                }
            }
        } else if (toks[0] == "vertex") {
            if (toks.size() != 4 || toks[2] != "->")
                throw ParseError("vertex SW -> SW", lineno, 1);
            vertex_lines[toks[1]] = toks[3];
        } else if (toks[0] == "edge") {
            if (toks.size() < 4 || toks[2] != "->")
                throw ParseError("edge E -> WORD", lineno, 1);
            edge_lines[toks[1]] = {toks.begin() + 3, toks.end()};
        } else {
            throw ParseError("unknown keyword " + toks[0], lineno, 1);
        }
    }
    // token classification: plain tokens are names or ~names; decorated carry
    // a +, - or 0 suffix
    auto is_decorated_token = [](const std::string& t) {
        return !t.empty() && (t.back() == '+' || t.back() == '-' || t.back() == '0');
    };
    bool any_dec = false;
    for (const auto& [e, toks] : edge_lines)
        for (const auto& t : toks)
            if (is_decorated_token(t)) any_dec = true;
    m.decorated = mode_set ? !mode_plain : any_dec;

    int ne = int(track.edges.size());
    if (m.decorated) m.dwords.resize(ne);
    m.words.resize(ne);
    for (const auto& [ename, toks] : edge_lines) {
        int e = track.edge_index(ename);
        if (e < 0) throw ParseError("unknown edge " + ename, 0, 1);
        if (m.decorated) {
            DecWord dw;
            for (const auto& t : toks) {
                if (!is_decorated_token(t))
                    throw ParseError("decorated word needs +, - or 0 suffix: " + t, 0, 1);
                int x = track.edge_index(t.substr(0, t.size() - 1));
                if (x < 0) throw ParseError("unknown edge in word: " + t, 0, 1);
                Dec d = t.back() == '+' ? Dec::Plus : t.back() == '-' ? Dec::Minus : Dec::Terminal;
                dw.push_back({x, d});
            }
            m.dwords[e] = dw;
        } else {
            Word w;
            for (const auto& t : toks) {
                bool rev = t[0] == '~';
                int x = track.edge_index(rev ? t.substr(1) : t);
                if (x < 0) throw ParseError("unknown edge in word: " + t, 0, 1);
                w.push_back({x, rev});
            }
            m.words[e] = w;
        }
    }
    if (m.decorated) m.sync_plain_from_decorated();
    // cross-check optional vertex lines against the derived map
    if (!vertex_lines.empty()) {
        auto vm = m.derived_vertex_map();
        for (const auto& [from, to] : vertex_lines) {
            SwitchRef s{-1, -1}, img{-1, -1};
            for (auto sw : track.switches()) {
                if (track.switch_name(sw) == from) s = sw;
                if (track.switch_name(sw) == to) img = sw;
            }
            if (s.poly < 0 || img.poly < 0)
                throw ParseError("vertex line references unknown switch " + from + " or " + to, 0, 1);
            auto it = vm.find({s.poly, s.corner});
            if (it != vm.end() && !(it->second == img))
                throw ParseError("vertex line " + from + " -> " + to +
                                 " contradicts the edge words (derived image " +
                                 track.switch_name(it->second) + ")", 0, 1);
        }
    }
    return m;
}

inline std::string serialize_map(const TrainTrackMap& m) {
    std::ostringstream os;
    os << "map " << (m.name.empty() ? "f" : m.name) << " track=" << m.track.name
       << " mode=" << (m.decorated ? "decorated" : "plain") << "\n";
    auto vm = m.derived_vertex_map();
    for (const auto& [k, img] : vm)
        os << "vertex " << m.track.switch_name({k.first, k.second}) << " -> "
           << m.track.switch_name(img) << "\n";
    for (int e = 0; e < int(m.track.edges.size()); ++e) {
        os << "edge " << m.track.edges[e].name << " ->";
        if (m.decorated) {
            for (const auto& dl : m.dwords[e])
                os << " " << m.track.edges[dl.edge].name
                   << (dl.dec == Dec::Plus ? "+" : dl.dec == Dec::Minus ? "-" : "0");
        } else {
            for (const auto& l : m.words[e])
                os << " " << (l.rev ? "~" : "") << m.track.edges[l.edge].name;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace tracksplit
