#pragma once

// Standardly embedded train tracks on punctured disks, stored as ribbon
// graphs: infinitesimal polygons (1-gons are puncture loops) whose corners
// are the switches, plus real edges attached into per-switch stacks.
//
// Conventions, used consistently by every module downstream:
//  * stack order at a switch v: reals[0] = r(v), reals.back() = l(v) (the
//    paper's counterclockwise e_1..e_m);
//  * polygon corner j has i_l = side to corner j-1, i_r = side to corner j+1
//    (indices mod k); v_l(c_j) = c_{j-1}, v_r(c_j) = c_{j+1};
//  * the track file's `order` lines list R(v) with l(v) first, i.e. the
//    reverse of the stored stack.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracksplit {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error("line " + std::to_string(l) + ", col " + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

// One endpoint of a real edge.
struct EndRef {
    int edge = -1;
    int which = 0;  // 0 = endpoint A, 1 = endpoint B as declared
    bool operator==(const EndRef& o) const { return edge == o.edge && which == o.which; }
};

// A slot in the cyclic order at a switch.
struct Slot {
    enum Kind { Real, SideL, SideR } kind = Real;
    EndRef end;  // valid when kind == Real
};

struct SwitchRef {
    int poly = -1, corner = -1;
    bool operator==(const SwitchRef& o) const = default;
    auto operator<=>(const SwitchRef& o) const = default;
};

struct Corner {
    // full cyclic order; canonical layout is [reals r(v)..l(v), SideL, SideR]
    std::vector<Slot> slots;

    std::vector<EndRef> reals() const {
        std::vector<EndRef> r;
        for (const auto& s : slots)
            if (s.kind == Slot::Real) r.push_back(s.end);
        return r;
    }
    int real_valence() const {
        int n = 0;
        for (const auto& s : slots) n += s.kind == Slot::Real;
        return n;
    }
};

struct Polygon {
    std::string name;
    int k = 0;  // number of corners = cusps of the interior region
    bool punctured = false;
    std::vector<Corner> corners;
};

struct RealEdge {
    std::string name;
    SwitchRef at[2];  // endpoint A, endpoint B
};

struct Region {
    int cusps = 0;
    bool punctured = false;
    bool exterior = false;
    int polygon = -1;  // interior region of this polygon, or -1
};

struct Stratum {
    std::vector<int> boundary;  // b_i
    std::vector<int> puncture;  // m_i
    std::vector<int> interior;  // k_i
    bool operator==(const Stratum& o) const = default;

    std::string str() const {
        auto list = [](const std::vector<int>& v) {
            if (v.empty()) return std::string("-");
            std::string s;
            for (size_t i = 0; i < v.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(v[i]);
            }
            return s;
        };
        return "(" + list(boundary) + ";" + list(puncture) + ";" + list(interior) + ")";
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool valid() const { return violations.empty(); }
    std::string str() const {
        if (valid()) return "valid";
        std::string s;
        for (const auto& v : violations) s += v + "\n";
        return s;
    }
};

class TrainTrack {
public:
    std::string name;
    int punctures = 0;
    std::vector<Polygon> polygons;
    std::vector<RealEdge> edges;
    int exterior_cusps = -1;          // declared; -1 = undeclared
    bool exterior_punctured = false;  // capping disk carries a marked point

    // --- basic queries -------------------------------------------------

    const Corner& corner(SwitchRef s) const { return polygons[s.poly].corners[s.corner]; }
    Corner& corner(SwitchRef s) { return polygons[s.poly].corners[s.corner]; }
    bool is_loop_switch(SwitchRef s) const { return polygons[s.poly].k == 1; }
    SwitchRef endpoint(EndRef e) const { return edges[e.edge].at[e.which]; }
    SwitchRef other_endpoint(EndRef e) const { return edges[e.edge].at[1 - e.which]; }

    std::vector<SwitchRef> switches() const {
        std::vector<SwitchRef> out;
        for (int p = 0; p < int(polygons.size()); ++p)
            for (int c = 0; c < polygons[p].k; ++c) out.push_back({p, c});
        return out;
    }

    SwitchRef array_prev(SwitchRef s) const {
        int k = polygons[s.poly].k;
        return {s.poly, (s.corner + k - 1) % k};
    }
    SwitchRef array_next(SwitchRef s) const {
        int k = polygons[s.poly].k;
        return {s.poly, (s.corner + 1) % k};
    }
    // the switch at the other end of i_l / i_r
    SwitchRef v_l(SwitchRef s) const { return array_prev(s); }
    SwitchRef v_r(SwitchRef s) const { return array_next(s); }

    // r(v) and l(v) as edge ends (oriented into v)
    EndRef r_end(SwitchRef s) const {
        auto rs = corner(s).reals();
        if (rs.empty()) throw std::logic_error("switch with no real edges");
        return rs.front();
    }
    EndRef l_end(SwitchRef s) const {
        auto rs = corner(s).reals();
        if (rs.empty()) throw std::logic_error("switch with no real edges");
        return rs.back();
    }

    // Do two switches share a polygon side (one-step infinitesimal path)?
    bool side_adjacent(SwitchRef a, SwitchRef b) const {
        if (a.poly != b.poly) return false;
        if (polygons[a.poly].k == 1) return a.corner == b.corner;
        return b == array_prev(a) || b == array_next(a);
    }

    std::string switch_name(SwitchRef s) const {
        return polygons[s.poly].name + "." + std::to_string(s.corner + 1);
    }
    int edge_index(const std::string& nm) const {
        for (int i = 0; i < int(edges.size()); ++i)
            if (edges[i].name == nm) return i;
        return -1;
    }

    // unique loop (1-gon) attached to a real edge end, if any
    std::optional<int> loop_at(SwitchRef s) const {
        if (is_loop_switch(s)) return s.poly;
        return std::nullopt;
    }
    // for decorated tracks: the puncture-end of an edge (exactly one end on a loop)
    std::optional<int> puncture_end(int edge) const {
        bool a = is_loop_switch(edges[edge].at[0]);
        bool b = is_loop_switch(edges[edge].at[1]);
        if (a == b) return std::nullopt;
        return a ? 0 : 1;
    }

    // --- face tracing ---------------------------------------------------

    // A directed position in the rotation system: (switch, slot index).
    struct SlotPos {
        SwitchRef sw;
        int idx;
        bool operator==(const SlotPos&) const = default;
        auto operator<=>(const SlotPos&) const = default;
    };

    // far end of the edge occupying a slot (real edge or polygon side)
    SlotPos slot_partner(SlotPos p) const {
        const Slot& s = corner(p.sw).slots[p.idx];
        if (s.kind == Slot::Real) {
            EndRef oth{s.end.edge, 1 - s.end.which};
            SwitchRef t = endpoint(oth);
            const auto& slots = corner(t).slots;
            for (int i = 0; i < int(slots.size()); ++i)
                if (slots[i].kind == Slot::Real && slots[i].end == oth) return {t, i};
            throw std::logic_error("dangling real edge end");
        }
        // side: SideL at corner j pairs with SideR at array_prev(j), and
        // SideR at corner j pairs with SideL at array_next(j)
        SwitchRef t = s.kind == Slot::SideL ? array_prev(p.sw) : array_next(p.sw);
        auto want = s.kind == Slot::SideL ? Slot::SideR : Slot::SideL;
        const auto& slots = corner(t).slots;
        for (int i = 0; i < int(slots.size()); ++i)
            if (slots[i].kind == want) return {t, i};
        throw std::logic_error("missing side slot");
    }

    // Faces as cyclic sequences of sectors; a sector is identified with the
    // slot that opens it (pair (slot i, slot i+1) at a switch).
    struct Face {
        std::vector<SlotPos> sectors;
        int cusps = 0;
    };

    std::vector<Face> trace_faces() const {
        std::vector<Face> out;
        std::set<std::pair<std::pair<int, int>, int>> seen;  // ((poly,corner),slot)
        auto key = [](SlotPos p) {
            return std::make_pair(std::make_pair(p.sw.poly, p.sw.corner), p.idx);
        };
        for (auto sw : switches()) {
            int n = int(corner(sw).slots.size());
            for (int i = 0; i < n; ++i) {
                SlotPos start{sw, i};
                if (seen.count(key(start))) continue;
                Face f;
                SlotPos cur = start;
                do {
                    seen.insert(key(cur));
                    f.sectors.push_back(cur);
                    // sector (cur, next): cusp iff same direction class
                    const auto& slots = corner(cur.sw).slots;
                    int nn = int(slots.size());
                    const Slot& a = slots[cur.idx];
                    const Slot& b = slots[(cur.idx + 1) % nn];
                    bool ar = a.kind == Slot::Real, br = b.kind == Slot::Real;
                    if (ar == br) ++f.cusps;
                    // walk along the edge of the *next* slot, then advance one
                    SlotPos far = slot_partner({cur.sw, (cur.idx + 1) % nn});
                    cur = far;
                } while (!(cur == start));
                out.push_back(std::move(f));
            }
        }
        return out;
    }

    // Identify the interior face of each polygon: the orbit containing the
    // sector opened by its SideL slot (between SideL and SideR in canonical
    // layout); robustly, any face all of whose sector-openers at this polygon
    // are side slots and which stays on this polygon.
    std::pair<std::vector<Region>, Stratum> complement_census() const {
        auto faces = trace_faces();
        std::vector<Region> regions;
        std::vector<int> face_of_polygon(polygons.size(), -1);
        // interior face of polygon p = orbit of the sector opened by the
        // SideL slot at corner 0 (walk along SideR)
        for (int p = 0; p < int(polygons.size()); ++p) {
            const auto& slots = polygons[p].corners[0].slots;
            int il = -1;
            for (int i = 0; i < int(slots.size()); ++i)
                if (slots[i].kind == Slot::SideL) il = i;
            if (il < 0) continue;
            for (int f = 0; f < int(faces.size()); ++f)
                for (const auto& s : faces[f].sectors)
                    if (s.sw == SwitchRef{p, 0} && s.idx == il) face_of_polygon[p] = f;
        }
        std::vector<int> face_region(faces.size(), -1);
        for (int p = 0; p < int(polygons.size()); ++p) {
            if (face_of_polygon[p] < 0) continue;
            int f = face_of_polygon[p];
            if (face_region[f] >= 0) continue;  // invalid: shared; validator reports
            Region r;
            r.cusps = faces[f].cusps;
            r.punctured = polygons[p].punctured;
            r.polygon = p;
            face_region[f] = int(regions.size());
            regions.push_back(r);
        }
        for (int f = 0; f < int(faces.size()); ++f) {
            if (face_region[f] >= 0) continue;
            Region r;
            r.cusps = faces[f].cusps;
            r.exterior = true;
            r.punctured = exterior_punctured;
            face_region[f] = int(regions.size());
            regions.push_back(r);
        }
        Stratum st;
        for (const auto& r : regions) {
            if (r.exterior) st.boundary.push_back(r.cusps);
            else if (r.punctured) st.puncture.push_back(r.cusps);
            else st.interior.push_back(r.cusps);
        }
        std::sort(st.boundary.begin(), st.boundary.end());
        std::sort(st.puncture.begin(), st.puncture.end());
        std::sort(st.interior.begin(), st.interior.end());
        return {regions, st};
    }

    // --- validation ------------------------------------------------------

    ValidationReport validate() const {
        ValidationReport rep;
        if (polygons.empty()) {
            rep.violations.push_back("no polygons");
            return rep;
        }
        // structural: slots vs edges
        std::map<std::pair<int, int>, int> end_count;
        for (auto sw : switches()) {
            const auto& slots = corner(sw).slots;
            int sl = 0, sr = 0;
            for (const auto& s : slots) {
                if (s.kind == Slot::SideL) ++sl;
                if (s.kind == Slot::SideR) ++sr;
                if (s.kind == Slot::Real) {
                    ++end_count[{s.end.edge, s.end.which}];
                    if (!(endpoint(s.end) == sw))
                        rep.violations.push_back("edge end placed at wrong switch: " +
                                                 edges[s.end.edge].name);
                }
            }
            if (sl != 1 || sr != 1)
                rep.violations.push_back("switch " + switch_name(sw) +
                                         " does not carry exactly one end of each polygon side");
            if (corner(sw).real_valence() == 0)
                rep.violations.push_back("switch " + switch_name(sw) + " carries no real edge");
            // connectedness of R(v) and I(v) in the cyclic order
            int n = int(slots.size());
            int blocks = 0;
            for (int i = 0; i < n; ++i) {
                bool a = slots[i].kind == Slot::Real;
                bool b = slots[(i + 1) % n].kind == Slot::Real;
                if (a && !b) ++blocks;
            }
            if (blocks > 1) rep.violations.push_back("R(v) not connected at " + switch_name(sw));
        }
        bool traceable = true;
        for (int e = 0; e < int(edges.size()); ++e)
            for (int w = 0; w < 2; ++w)
                if (end_count[{e, w}] != 1) {
                    rep.violations.push_back("edge end of " + edges[e].name +
                                             " attached to " + std::to_string(end_count[{e, w}]) +
                                             " slots");
                    traceable = false;
                }
        for (const auto& v : rep.violations)
            if (v.find("wrong switch") != std::string::npos ||
                v.find("polygon side") != std::string::npos)
                traceable = false;
        if (!traceable) return rep;

        // region census legality
        auto [regions, st] = complement_census();
        int exteriors = 0;
        for (const auto& r : regions) {
            if (r.exterior) {
                ++exteriors;
                if (r.cusps < 1)
                    rep.violations.push_back("exterior region with no cusps");
            } else if (r.punctured) {
                if (r.cusps < 1)
                    rep.violations.push_back("punctured region with no cusps");
            } else {
                if (r.cusps < 3)
                    rep.violations.push_back("region with " + std::to_string(r.cusps) +
                                             " cusps, no puncture");
            }
            if (r.polygon >= 0 && r.cusps != polygons[r.polygon].k)
                rep.violations.push_back("polygon " + polygons[r.polygon].name +
                                         " interior has " + std::to_string(r.cusps) +
                                         " cusps, declared " + std::to_string(polygons[r.polygon].k));
        }
        if (exteriors != 1)
            rep.violations.push_back("expected exactly one exterior region, found " +
                                     std::to_string(exteriors));
        if (exterior_cusps >= 0)
            for (const auto& r : regions)
                if (r.exterior && r.cusps != exterior_cusps)
                    rep.violations.push_back("exterior has " + std::to_string(r.cusps) +
                                             " cusps, declared " + std::to_string(exterior_cusps));
        // puncture count
        int punct = 0;
        for (const auto& r : regions)
            if (r.punctured && !r.exterior) ++punct;
        if (punct != punctures)
            rep.violations.push_back("declared " + std::to_string(punctures) +
                                     " punctures, found " + std::to_string(punct) +
                                     " punctured regions");
        // Euler consistency: sum (cusps - 2) over capped regions = -4 on the disk
        long euler = 0;
        for (const auto& r : regions) euler += r.cusps - 2;
        if (euler != -4)
            rep.violations.push_back("Euler check failed: sum(cusps-2) = " +
                                     std::to_string(euler) + ", expected -4");
        return rep;
    }

    // --- structure -------------------------------------------------------

    struct StructureReport {
        std::vector<SwitchRef> loop_switches;
        std::vector<SwitchRef> joints;
        std::vector<int> stems;  // edge ids
        int joint_count = 0;     // J
        std::map<std::string, int> real_valence;
    };

    StructureReport structure_query() const {
        StructureReport r;
        for (auto sw : switches()) {
            int val = corner(sw).real_valence();
            r.real_valence[switch_name(sw)] = val;
            if (is_loop_switch(sw)) {
                r.loop_switches.push_back(sw);
                if (val >= 2) {
                    r.joints.push_back(sw);
                    r.joint_count += val - 1;
                }
            }
        }
        for (int e = 0; e < int(edges.size()); ++e)
            for (int w = 0; w < 2; ++w)
                if (polygons[edges[e].at[w].poly].k >= 2) {
                    r.stems.push_back(e);
                    break;
                }
        return r;
    }

    // --- mirror ------------------------------------------------------------

    // Reverse the orientation of the disk: corner arrays and stacks reverse.
    TrainTrack reflected() const {
        TrainTrack t = *this;
        for (int p = 0; p < int(t.polygons.size()); ++p) {
            auto& pg = t.polygons[p];
            std::reverse(pg.corners.begin(), pg.corners.end());
            for (auto& c : pg.corners) {
                std::reverse(c.slots.begin(), c.slots.end());
                for (auto& s : c.slots) {
                    if (s.kind == Slot::SideL) s.kind = Slot::SideR;
                    else if (s.kind == Slot::SideR) s.kind = Slot::SideL;
                }
            }
        }
        // corner indices moved: remap edge endpoints
        for (auto& e : t.edges)
            for (int w = 0; w < 2; ++w) {
                int k = polygons[e.at[w].poly].k;
                e.at[w].corner = (k - 1) - e.at[w].corner;
            }
        return t;
    }
};

// ---------------------------------------------------------------------------
// Parsing and serialization

namespace detail {
inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}
}  // namespace detail

inline TrainTrack parse_track(const std::string& text) {
    TrainTrack t;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, int> poly_by_name;
    std::map<std::string, int> edge_by_name;
    struct PendingOrder {
        std::string sw;
        std::vector<std::string> names;
        int line;
    };
    std::vector<PendingOrder> orders;

    auto parse_switch = [&](const std::string& s, int ln) -> SwitchRef {
        auto dot = s.rfind('.');
        if (dot == std::string::npos) throw ParseError("expected switch name P.i: " + s, ln, 1);
        std::string pn = s.substr(0, dot);
        int ci = 0;
        try {
            ci = std::stoi(s.substr(dot + 1));
        } catch (...) {
            throw ParseError("bad corner index in " + s, ln, 1);
        }
        auto it = poly_by_name.find(pn);
        if (it == poly_by_name.end()) throw ParseError("dangling edge end: unknown switch " + s, ln, 1);
        int p = it->second;
        if (ci < 1 || ci > t.polygons[p].k)
            throw ParseError("dangling edge end: no corner " + s, ln, 1);
        return {p, ci - 1};
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto toks = detail::tokenize(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "track") {
            if (toks.size() < 2) throw ParseError("track needs a name", lineno, 1);
            t.name = toks[1];
        } else if (kw == "surface") {
            for (size_t i = 1; i < toks.size(); ++i)
                if (toks[i].rfind("punctures=", 0) == 0)
                    t.punctures = std::stoi(toks[i].substr(10));
        } else if (kw == "loop" || kw == "polygon") {
            if (toks.size() < 2) throw ParseError(kw + " needs a name", lineno, 1);
            Polygon p;
            p.name = toks[1];
            p.k = kw == "loop" ? 1 : 0;
            for (size_t i = 2; i < toks.size(); ++i) {
                if (toks[i] == "punctured") p.punctured = true;
                else if (toks[i].rfind("cusps=", 0) == 0) p.k = std::stoi(toks[i].substr(6));
                else throw ParseError("unknown attribute " + toks[i], lineno, 1);
            }
            if (p.k < 1) throw ParseError("polygon needs cusps>=1", lineno, 1);
            if (poly_by_name.count(p.name)) throw ParseError("duplicate id " + p.name, lineno, 1);
            p.corners.resize(p.k);
            poly_by_name[p.name] = int(t.polygons.size());
            t.polygons.push_back(std::move(p));
        } else if (kw == "edge") {
            if (toks.size() != 4) throw ParseError("edge NAME SW SW", lineno, 1);
            if (edge_by_name.count(toks[1]) || poly_by_name.count(toks[1]))
                throw ParseError("duplicate id " + toks[1], lineno, 1);
            RealEdge e;
            e.name = toks[1];
            e.at[0] = parse_switch(toks[2], lineno);
            e.at[1] = parse_switch(toks[3], lineno);
            edge_by_name[e.name] = int(t.edges.size());
            t.edges.push_back(e);
        } else if (kw == "order") {
            if (toks.size() < 2) throw ParseError("order SW EDGES...", lineno, 1);
            orders.push_back({toks[1], {toks.begin() + 2, toks.end()}, lineno});
        } else if (kw == "exterior") {
            for (size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "punctured") t.exterior_punctured = true;
                else if (toks[i].rfind("cusps=", 0) == 0)
                    t.exterior_cusps = std::stoi(toks[i].substr(6));
            }
        } else {
            throw ParseError("unknown keyword " + kw, lineno, 1);
        }
    }
    if (t.polygons.empty()) throw ParseError("no polygons", lineno ? lineno : 1, 1);

    // attach edge ends to switch stacks, honoring declared orders
    std::map<std::pair<int, int>, std::vector<EndRef>> incident;
    for (int e = 0; e < int(t.edges.size()); ++e)
        for (int w = 0; w < 2; ++w)
            incident[{t.edges[e].at[w].poly, t.edges[e].at[w].corner}].push_back({e, w});
    std::set<std::pair<int, int>> ordered;
    for (const auto& od : orders) {
        SwitchRef sw = parse_switch(od.sw, od.line);
        auto& inc = incident[{sw.poly, sw.corner}];
        std::vector<EndRef> arranged;
        std::vector<bool> used(inc.size(), false);
        for (const auto& nm : od.names) {
            auto it = edge_by_name.find(nm);
            if (it == edge_by_name.end())
                throw ParseError("switch-order mismatch: unknown edge " + nm, od.line, 1);
            bool found = false;
            for (size_t i = 0; i < inc.size(); ++i)
                if (!used[i] && inc[i].edge == it->second) {
                    arranged.push_back(inc[i]);
                    used[i] = true;
                    found = true;
                    break;
                }
            if (!found)
                throw ParseError("switch-order mismatch: edge " + nm + " not incident at " + od.sw,
                                 od.line, 1);
        }
        for (size_t i = 0; i < inc.size(); ++i)
            if (!used[i])
                throw ParseError("switch-order mismatch: edge " + t.edges[inc[i].edge].name +
                                 " missing from order at " + od.sw, od.line, 1);
        // file lists l(v) first; stack stores r(v) first
        std::reverse(arranged.begin(), arranged.end());
        inc = arranged;
        ordered.insert({sw.poly, sw.corner});
    }
    // switches without an explicit order line: declaration order is l(v)-first
    for (auto& [swk, inc] : incident)
        if (!ordered.count(swk)) std::reverse(inc.begin(), inc.end());
    for (auto sw : t.switches()) {
        auto& c = t.corner(sw);
        c.slots.clear();
        for (const auto& end : incident[{sw.poly, sw.corner}]) c.slots.push_back({Slot::Real, end});
        c.slots.push_back({Slot::SideL, {}});
        c.slots.push_back({Slot::SideR, {}});
    }
    return t;
}

inline std::string serialize_track(const TrainTrack& t) {
    std::ostringstream os;
    os << "track " << t.name << "\n";
    os << "surface disk punctures=" << t.punctures << "\n";
    for (const auto& p : t.polygons) {
        if (p.k == 1) {
            os << "loop " << p.name;
            if (p.punctured) os << " punctured";
            os << "\n";
        } else {
            os << "polygon " << p.name << " cusps=" << p.k;
            if (p.punctured) os << " punctured";
            os << "\n";
        }
    }
    for (const auto& e : t.edges) {
        os << "edge " << e.name;
        for (int w = 0; w < 2; ++w)
            os << " " << t.polygons[e.at[w].poly].name << "." << (e.at[w].corner + 1);
        os << "\n";
    }
    for (auto sw : t.switches()) {
        auto rs = t.corner(sw).reals();
        if (rs.size() < 2) continue;
        os << "order " << t.switch_name(sw);
        for (auto it = rs.rbegin(); it != rs.rend(); ++it) os << " " << t.edges[it->edge].name;
        os << "\n";
    }
    if (t.exterior_cusps >= 0) {
        os << "exterior cusps=" << t.exterior_cusps;
        if (t.exterior_punctured) os << " punctured";
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Canonical form, isomorphism, automorphisms

// Deterministic relabeling-invariant code: depth-first encode from every
// rooted start (polygon, corner rotation), take the lexicographic minimum.
struct TrackLabeling {
    std::vector<int> poly_order;  // new index -> old polygon
    std::vector<int> poly_rot;    // rotation applied: new corner j = old (j + rot) mod k
    std::vector<int> edge_order;  // new index -> old edge
};

inline std::string encode_from_root(const TrainTrack& t, int root_poly, int root_rot,
                                    TrackLabeling* lab_out = nullptr) {
    int np = int(t.polygons.size()), ne = int(t.edges.size());
    std::vector<int> poly_new(np, -1), edge_new(ne, -1), poly_rot(np, 0);
    std::vector<int> poly_order, edge_order;
    auto assign_poly = [&](int p, int rot) {
        poly_new[p] = int(poly_order.size());
        poly_rot[p] = ((rot % t.polygons[p].k) + t.polygons[p].k) % t.polygons[p].k;
        poly_order.push_back(p);
    };
    assign_poly(root_poly, root_rot);
    std::ostringstream os;
    // process polygons in discovery order
    for (size_t qi = 0; qi < poly_order.size(); ++qi) {
        int p = poly_order[qi];
        const auto& pg = t.polygons[p];
        os << "P" << pg.k << (pg.punctured ? "p" : "u") << ";";
        for (int j = 0; j < pg.k; ++j) {
            int oc = (j + poly_rot[p]) % pg.k;
            os << "c";
            for (const auto& end : pg.corners[oc].reals()) {
                if (edge_new[end.edge] < 0) {
                    edge_new[end.edge] = int(edge_order.size());
                    edge_order.push_back(end.edge);
                    // discover far polygon
                    SwitchRef far = t.endpoint({end.edge, 1 - end.which});
                    if (poly_new[far.poly] < 0) assign_poly(far.poly, far.corner);
                }
                SwitchRef far = t.endpoint({end.edge, 1 - end.which});
                int fp = poly_new[far.poly];
                int fc = ((far.corner - poly_rot[far.poly]) % t.polygons[far.poly].k +
                          t.polygons[far.poly].k) % t.polygons[far.poly].k;
                // slot position of the far end within the far stack
                auto rs = t.corner(far).reals();
                int pos = -1;
                EndRef oth{end.edge, 1 - end.which};
                for (int i = 0; i < int(rs.size()); ++i)
                    if (rs[i] == oth) pos = i;
                os << "(e" << edge_new[end.edge] << ":" << fp << "." << fc << "." << pos << ")";
            }
            os << ";";
        }
    }
    if (int(poly_order.size()) != np) os << "DISCONNECTED";
    if (lab_out) *lab_out = {poly_order, poly_rot, edge_order};
    return os.str();
}

inline std::string canonical_code(const TrainTrack& t, bool allow_reflection = false) {
    std::string best;
    auto scan = [&](const TrainTrack& tt) {
        for (int p = 0; p < int(tt.polygons.size()); ++p)
            for (int r = 0; r < tt.polygons[p].k; ++r) {
                std::string code = encode_from_root(tt, p, r);
                if (best.empty() || code < best) best = code;
            }
    };
    scan(t);
    if (allow_reflection) scan(t.reflected());
    return best;
}

inline bool is_isomorphic(const TrainTrack& a, const TrainTrack& b, bool allow_reflection = false) {
    return canonical_code(a, allow_reflection) == canonical_code(b, allow_reflection);
}

// Automorphisms as (edge permutation, switch map); identity included.
struct TrackAutomorphism {
    std::vector<int> edge_map;                  // old edge -> new edge
    std::map<std::pair<int, int>, SwitchRef> switch_map;
};

inline std::vector<TrackAutomorphism> automorphisms(const TrainTrack& t) {
    std::string canon;
    std::vector<TrackLabeling> hits;
    for (int p = 0; p < int(t.polygons.size()); ++p)
        for (int r = 0; r < t.polygons[p].k; ++r) {
            TrackLabeling lab;
            std::string code = encode_from_root(t, p, r, &lab);
            if (canon.empty() || code < canon) {
                canon = code;
                hits.clear();
                hits.push_back(lab);
            } else if (code == canon) {
                hits.push_back(lab);
            }
        }
    // automorphism = lab0^{-1} after lab_i : relabel via composition
    std::vector<TrackAutomorphism> autos;
    const TrackLabeling& l0 = hits[0];
    int np = int(t.polygons.size()), ne = int(t.edges.size());
    std::vector<int> p0_new(np), e0_new(ne);
    for (int i = 0; i < np; ++i) p0_new[l0.poly_order[i]] = i;
    for (int i = 0; i < ne; ++i) e0_new[l0.edge_order[i]] = i;
    for (const auto& li : hits) {
        std::vector<int> pi_new(np), ei_new(ne);
        for (int i = 0; i < np; ++i) pi_new[li.poly_order[i]] = i;
        for (int i = 0; i < ne; ++i) ei_new[li.edge_order[i]] = i;
        TrackAutomorphism a;
        a.edge_map.resize(ne);
        for (int e = 0; e < ne; ++e) a.edge_map[e] = l0.edge_order[ei_new[e]];
        for (int p = 0; p < np; ++p) {
            int q = l0.poly_order[pi_new[p]];
            int k = t.polygons[p].k;
            for (int c = 0; c < k; ++c) {
                // corner c of p has canonical index (c - rot_i) mod k, which maps
                // to the corner of q with the same canonical index under l0
                int canon_idx = ((c - li.poly_rot[p]) % k + k) % k;
                int qc = (canon_idx + l0.poly_rot[q]) % k;
                a.switch_map[{p, c}] = SwitchRef{q, qc};
            }
        }
        autos.push_back(std::move(a));
    }
    return autos;
}

// ---------------------------------------------------------------------------
// Builtins

inline const char* peacock_text() {
    return
        "track peacock\n"
        "surface disk punctures=5\n"
        "loop L1 punctured\n"
        "loop L2 punctured\n"
        "loop L3 punctured\n"
        "loop L4 punctured\n"
        "loop L5 punctured\n"
        "polygon T cusps=3\n"
        "edge o L1.1 T.1\n"
        "edge g L2.1 T.1\n"
        "edge p L3.1 T.2\n"
        "edge b L4.1 T.2\n"
        "edge r L5.1 T.3\n"
        "order T.1 o g\n"
        "order T.2 p b\n"
        "exterior cusps=2 punctured\n";
}

inline const char* snail_text() {
    return
        "track snail\n"
        "surface disk punctures=5\n"
        "loop L1 punctured\n"
        "loop L2 punctured\n"
        "loop L3 punctured\n"
        "loop L4 punctured\n"
        "loop L5 punctured\n"
        "polygon T cusps=3\n"
        "edge a L1.1 T.1\n"
        "edge b L2.1 T.1\n"
        "edge c L3.1 T.1\n"
        "edge d L4.1 T.2\n"
        "edge e L5.1 T.3\n"
        "order T.1 a b c\n"
        "exterior cusps=2 punctured\n";
}

inline TrainTrack builtin_track(const std::string& name) {
    if (name == "peacock") return parse_track(peacock_text());
    if (name == "snail") return parse_track(snail_text());
    throw std::invalid_argument("unknown builtin track: " + name);
}

}  // namespace tracksplit
