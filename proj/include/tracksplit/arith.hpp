#pragma once

// Homological arithmetic around fixed points of fibered-surface monodromies:
// Lefschetz traces, Alexander-polynomial candidates for genus two, the Rykken
// eigenvalue-count bound, fractional Dehn twist interval filters, and braid
// word statistics.

#include <tracksplit/intpoly.hpp>

#include <cstdlib>
#include <string>
#include <vector>

namespace tracksplit {

// 2 - tr(f_*) = sum of fixed point indices.
inline long lefschetz_trace(const std::vector<long>& fixed_point_indices) {
    long s = 0;
    for (long i : fixed_point_indices) s += i;
    return 2 - s;
}

struct AlexanderResult {
    std::vector<IntPoly> candidates;        // monic palindromic, Delta(1) = +-1
    std::vector<int> real_root_counts;      // distinct real roots per candidate
    int selected = -1;                      // index with a real root > 1, if any
};

// Monic degree-4 palindromic integer polynomials t^4 - T t^3 + c t^2 - T t + 1
// with Delta(1) = +-1; the monodromy polynomial must have a real root > 1
// (the stretch factor), which Sturm counting decides exactly.
inline AlexanderResult alexander_candidates(long trace, int genus = 2) {
    if (genus != 2) throw std::invalid_argument("alexander_candidates: only genus 2 implemented");
    AlexanderResult r;
    // Delta(1) = 2 - 2T + c = +-1  =>  c = 2T - 3 or c = 2T - 1
    for (long c : {2 * trace - 3, 2 * trace - 1}) {
        IntPoly p{{Int(1), Int(-trace), Int(c), Int(-trace), Int(1)}};
        r.candidates.push_back(p);
        SturmChain chain(p);
        r.real_root_counts.push_back(chain.count_real_roots());
        if (chain.count_roots_above(Rat(1)) > 0 && r.selected < 0)
            r.selected = int(r.candidates.size()) - 1;
    }
    return r;
}

struct RykkenResult {
    long bound = 0;
    bool contradiction = false;
};

// tr(M) >= tr(psi_*) - (real edge count - homology rank); eigenvalues of the
// homology action survive into the transition matrix except roots of unity
// and zero, each of absolute value at most one.
inline RykkenResult rykken_check(long hom_trace, long real_edges, long hom_rank,
                                 long matrix_trace) {
    if (real_edges < hom_rank) throw std::invalid_argument("rykken_check: realEdges < homRank");
    RykkenResult r;
    r.bound = hom_trace - (real_edges - hom_rank);
    r.contradiction = matrix_trace < r.bound;
    return r;
}

// Rational interval with open/closed endpoints, for fractional Dehn twist
// coefficients.
struct FdtcInterval {
    Rat lo, hi;
    bool lo_open = false, hi_open = false;

    FdtcInterval(Rat l, Rat h, bool lopen, bool hopen)
        : lo(std::move(l)), hi(std::move(h)), lo_open(lopen), hi_open(hopen) {
        if (lo > hi) throw std::invalid_argument("FdtcInterval: lower > upper");
    }

    // Does (this + shift) intersect the open interval (-1, 1)?
    bool shifted_meets_open_unit(long shift) const {
        Rat a = lo + shift, b = hi + shift;
        // intersection of [a,b] (with openness flags) and (-1, 1)
        if (b < -1 || (b == -1)) return false;          // entirely left (b = -1 excluded)
        if (a > 1 || (a == 1)) return false;            // entirely right
        // some overlap candidate; degenerate point cases
        if (a == b) {
            if (lo_open || hi_open) return false;       // empty interval
            return a > -1 && a < 1;
        }
        return true;
    }

    std::string str() const {
        std::string s;
        s += lo_open ? '(' : '[';
        s += lo.get_str() + ", " + hi.get_str();
        s += hi_open ? ')' : ']';
        return s;
    }
};

// All integer twist exponents m for which c + m could lie in (-1, 1), i.e.
// for which Delta^{2m} times the braid could still have unknotted closure.
inline std::vector<long> fdtc_filter(const FdtcInterval& c) {
    std::vector<long> out;
    auto rat_floor = [](const Rat& q) {
        Int f;
        mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return f.get_si();
    };
    // m must satisfy c.hi + m > -1 and c.lo + m < 1
    long lo_m = rat_floor(Rat(-1) - c.hi) - 1;
    long hi_m = rat_floor(Rat(1) - c.lo) + 1;
    for (long m = lo_m; m <= hi_m; ++m)
        if (c.shifted_meets_open_unit(m)) out.push_back(m);
    return out;
}

struct BraidWord {
    int strands = 0;
    std::vector<int> letters;  // +-1 .. +-(strands-1)

    BraidWord(int n, std::vector<int> w) : strands(n), letters(std::move(w)) {
        if (n < 1) throw std::invalid_argument("BraidWord: strands < 1");
        for (int g : letters) {
            int i = std::abs(g);
            if (i < 1 || i >= n) throw std::invalid_argument("BraidWord: generator out of range");
        }
    }
};

struct BraidStats {
    long exponent_sum = 0;
    long self_linking = 0;  // e - n, transverse push-off convention
};

inline BraidStats braid_stats(const BraidWord& w) {
    BraidStats s;
    for (int g : w.letters) s.exponent_sum += (g > 0 ? 1 : -1);
    s.self_linking = s.exponent_sum - w.strands;
    return s;
}

// Prepend Delta^{2m} = ((sigma_1 ... sigma_{n-1})^n)^m; for negative m uses
// inverse letters. Exponent sum changes by m*n*(n-1).
inline BraidWord compose_full_twists(const BraidWord& w, long m) {
    BraidWord r = w;
    std::vector<int> twist;
    long reps = std::labs(m) * w.strands;
    for (long k = 0; k < reps; ++k)
        for (int i = 1; i < w.strands; ++i) twist.push_back(m > 0 ? i : -i);
    r.letters.insert(r.letters.begin(), twist.begin(), twist.end());
    return r;
}

// Invert and reverse: used by tests of sl-invariance under braid relations.
inline BraidWord braid_inverse(const BraidWord& w) {
    BraidWord r = w;
    r.letters.clear();
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

}  // namespace tracksplit
