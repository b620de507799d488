#pragma once

// Exact integer/rational polynomial arithmetic: the trust path for every
// eigenvalue and root count in this project goes through these routines,
// never through floating-point solvers.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracksplit {

using Int = mpz_class;
using Rat = mpq_class;

// Dense integer polynomial, coefficient of t^i at index i.
struct IntPoly {
    std::vector<Int> c;

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> cc) : c(std::move(cc)) { trim(); }
    static IntPoly constant(Int v) { return IntPoly{{std::move(v)}}; }
    static IntPoly monomial(int deg, Int v = 1) {
        std::vector<Int> cc(deg + 1, Int(0));
        cc[deg] = std::move(v);
        return IntPoly{std::move(cc)};
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : int(c.size()) - 1; }
    const Int& lead() const {
        if (c.empty()) throw std::logic_error("lead of zero polynomial");
        return c.back();
    }
    Int at(int i) const { return (i >= 0 && i < int(c.size())) ? c[i] : Int(0); }

    bool operator==(const IntPoly& o) const { return c == o.c; }

    IntPoly operator+(const IntPoly& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] += o.c[i];
        return IntPoly{std::move(r)};
    }
    IntPoly operator-(const IntPoly& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), Int(0));
        for (size_t i = 0; i < c.size(); ++i) r[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r[i] -= o.c[i];
        return IntPoly{std::move(r)};
    }
    IntPoly operator*(const IntPoly& o) const {
        if (zero() || o.zero()) return {};
        std::vector<Int> r(c.size() + o.c.size() - 1, Int(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
        return IntPoly{std::move(r)};
    }
    IntPoly operator*(const Int& k) const {
        IntPoly r = *this;
        for (auto& x : r.c) x *= k;
        r.trim();
        return r;
    }

    IntPoly derivative() const {
        if (c.size() <= 1) return {};
        std::vector<Int> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Int(long(i));
        return IntPoly{std::move(r)};
    }

    Int eval(const Int& x) const {
        Int r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
        return r;
    }
    Rat eval(const Rat& x) const {
        Rat r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * x + Rat(c[i]);
        return r;
    }
    int sign_at(const Rat& x) const { return sgn(eval(x)); }

    // Divide out the content, keeping the sign of the leading coefficient.
    IntPoly primitive_preserve_sign() const {
        if (zero()) return {};
        Int g = 0;
        for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        IntPoly r = *this;
        for (auto& x : r.c) x /= g;
        return r;
    }

    // Content (gcd of coefficients), sign-normalized so lead > 0.
    IntPoly primitive_part() const {
        IntPoly r = primitive_preserve_sign();
        if (!r.zero() && r.lead() < 0)
            for (auto& x : r.c) x = -x;
        return r;
    }

    std::string str(const std::string& var = "t") const {
        if (zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            Int a = at(i);
            if (a == 0) continue;
            if (!first) os << (a > 0 ? " + " : " - ");
            else if (a < 0) os << "-";
            Int mag = abs(a);
            if (mag != 1 || i == 0) os << mag.get_str();
            if (i > 0) {
                if (mag != 1) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        return os.str();
    }
};

// Sign-corrected pseudo remainder: returns a strictly positive integer
// multiple of rem(a, b). Exact over the integers.
inline IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
    if (b.zero()) throw std::invalid_argument("pseudo_rem by zero");
    IntPoly r = a;
    int db = b.degree();
    long steps = 0;
    Int lb = b.lead();
    while (!r.zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Int lr = r.lead();
        std::vector<Int> nc(std::max(r.c.size(), b.c.size() + k), Int(0));
        for (size_t i = 0; i < r.c.size(); ++i) nc[i] = r.c[i] * lb;
        for (size_t i = 0; i < b.c.size(); ++i) nc[i + k] -= b.c[i] * lr;
        r = IntPoly{std::move(nc)};
        ++steps;
    }
    if (lb < 0 && (steps % 2 == 1))
        for (auto& x : r.c) x = -x;
    return r;
}

struct SturmChain {
    std::vector<IntPoly> seq;

    explicit SturmChain(const IntPoly& p) {
        IntPoly a = p.primitive_part();
        if (a.zero()) throw std::invalid_argument("Sturm chain of zero polynomial");
        seq.push_back(a);
        IntPoly b = a.derivative().primitive_preserve_sign();
        while (!b.zero()) {
            seq.push_back(b);
            IntPoly r = pseudo_rem(a, b);
            if (r.zero()) break;
            r = r.primitive_preserve_sign();
            for (auto& x : r.c) x = -x;
            a = std::move(b);
            b = std::move(r);
        }
    }

    int sign_changes(const Rat& x) const {
        int changes = 0, prev = 0;
        for (const auto& p : seq) {
            int s = p.sign_at(x);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }
    int sign_changes_at_plus_inf() const {
        int changes = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(p.lead());
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }
    int sign_changes_at_minus_inf() const {
        int changes = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(p.lead());
            if (p.degree() % 2 == 1) s = -s;
            if (prev != 0 && s != prev) ++changes;
            prev = s;
        }
        return changes;
    }

    // Number of distinct real roots in (a, b].
    int count_roots(const Rat& a, const Rat& b) const {
        return sign_changes(a) - sign_changes(b);
    }
    int count_real_roots() const {
        return sign_changes_at_minus_inf() - sign_changes_at_plus_inf();
    }
    // Distinct real roots strictly greater than x.
    int count_roots_above(const Rat& x) const {
        return sign_changes(x) - sign_changes_at_plus_inf();
    }
};

// A certified enclosure of a real algebraic number: p has exactly one root in
// [lo, hi] and sign(p(lo)) != sign(p(hi)).
struct RootInterval {
    IntPoly poly;
    Rat lo, hi;

    double mid() const { return Rat((lo + hi) / 2).get_d(); }
    Rat width() const { return hi - lo; }

    void refine(const Rat& target_width) {
        int slo = poly.sign_at(lo);
        while (width() > target_width) {
            Rat m = (lo + hi) / 2;
            int sm = poly.sign_at(m);
            if (sm == 0) {  // exact rational root: pin to a point
                lo = m;
                hi = m;
                return;
            }
            if (sm == slo) lo = m; else hi = m;
        }
    }
};

// Largest real root of p strictly greater than `floor_excl`, or nullopt-like
// flag via `found`. Uses Sturm counts plus bisection, exact throughout.
inline bool largest_root_above(const IntPoly& p, const Rat& floor_excl, RootInterval& out,
                               const Rat& width = Rat(1, 1000000000000L)) {
    SturmChain chain(p);
    if (chain.count_roots_above(floor_excl) == 0) return false;
    // Cauchy bound: 1 + max|c_i|/|lead|
    Rat bound = 1;
    for (const auto& x : p.c) {
        Rat q = Rat(abs(x)) / Rat(abs(p.lead()));
        if (q > bound) bound = q;
    }
    bound += 1;
    Rat lo = floor_excl, hi = bound;
    // shrink to an interval containing only the largest such root
    while (chain.count_roots(lo, hi) > 1) {
        Rat m = (lo + hi) / 2;
        if (chain.count_roots(m, hi) >= 1) lo = m; else hi = m;
    }
    // count-based bisection keeps the single root in (lo, hi] and is immune
    // to roots landing exactly on probe points
    while (hi - lo > width) {
        Rat m = (lo + hi) / 2;
        if (chain.count_roots(m, hi) == 1) lo = m; else hi = m;
    }
    out = RootInterval{p.primitive_part(), lo, hi};
    return true;
}

}  // namespace tracksplit
