#pragma once

// Square non-negative integer matrices (transition matrices) with exact
// spectral analysis: characteristic polynomial by Faddeev-LeVerrier over the
// integers, Perron-Frobenius detection by reachability patterns, eigenvalue
// enclosures by Sturm bisection and eigenvectors from the symbolic adjugate.

#include <tracksplit/intpoly.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tracksplit {

struct IntMatrix {
    int n = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    explicit IntMatrix(int nn) : n(nn), a(size_t(nn) * nn, Int(0)) {}
    static IntMatrix identity(int nn) {
        IntMatrix m(nn);
        for (int i = 0; i < nn; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        IntMatrix m(int(rows.size()));
        for (int i = 0; i < m.n; ++i) {
            if (int(rows[i].size()) != m.n) throw std::invalid_argument("ragged matrix rows");
            for (int j = 0; j < m.n; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    Int& operator()(int i, int j) { return a[size_t(i) * n + j]; }
    const Int& operator()(int i, int j) const { return a[size_t(i) * n + j]; }
    bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }

    IntMatrix operator*(const IntMatrix& o) const {
        if (n != o.n) throw std::invalid_argument("matrix size mismatch");
        IntMatrix r(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const Int& x = (*this)(i, k);
                if (x == 0) continue;
                for (int j = 0; j < n; ++j) r(i, j) += x * o(k, j);
            }
        return r;
    }
    IntMatrix operator+(const IntMatrix& o) const {
        IntMatrix r(n);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] = a[i] + o.a[i];
        return r;
    }
    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        std::vector<Rat> r(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((*this)(i, j) != 0) r[i] += Rat((*this)(i, j)) * v[j];
        return r;
    }

    bool non_negative() const {
        for (const auto& x : a)
            if (x < 0) return false;
        return true;
    }
    bool strictly_positive() const {
        for (const auto& x : a)
            if (x <= 0) return false;
        return true;
    }
    Int trace() const {
        Int t = 0;
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }
    Int entry_sum() const {
        Int t = 0;
        for (const auto& x : a) t += x;
        return t;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j) s += ' ';
                s += (*this)(i, j).get_str();
            }
            s += '\n';
        }
        return s;
    }
};

// char_poly(M) = det(tI - M), computed by the Faddeev-LeVerrier recursion.
// All divisions are exact over the integers.
inline IntPoly char_poly(const IntMatrix& m) {
    int n = m.n;
    std::vector<Int> coef(n + 1, Int(0));
    coef[n] = 1;
    IntMatrix mk = m;  // M * B_0 with B_0 = I
    for (int k = 1; k <= n; ++k) {
        Int ck = mk.trace() / Int(k);
        coef[n - k] = -ck;
        if (k == n) break;
        IntMatrix bk = mk;
        for (int i = 0; i < n; ++i) bk(i, i) -= ck;
        mk = m * bk;
    }
    return IntPoly{std::move(coef)};
}

// Adjugate of (tI - M) as a matrix of polynomials in t, via the same
// recursion: adj(tI - M) = sum_k t^k B_{n-1-k}. Any nonzero column evaluated
// at an eigenvalue is an eigenvector.
inline std::vector<std::vector<IntPoly>> char_adjugate(const IntMatrix& m) {
    int n = m.n;
    std::vector<std::vector<IntPoly>> adj(n, std::vector<IntPoly>(n));
    IntMatrix b = IntMatrix::identity(n);  // B_0
    // contribute B_k as coefficient of t^{n-1-k}
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (b(i, j) != 0) adj[i][j] = adj[i][j] + IntPoly::monomial(n - 1 - k, b(i, j));
        if (k == n - 1) break;
        IntMatrix mb = m * b;
        Int ck = mb.trace() / Int(k + 1);
        b = mb;
        for (int i = 0; i < n; ++i) b(i, i) -= ck;
    }
    return adj;
}

// Perron-Frobenius test: some power of M is strictly positive. The power is
// bounded by n^2 - 2n + 2 (Wielandt), so reachability patterns decide it.
struct PfWitness {
    bool pf = false;
    int power = 0;  // least N with M^N > 0 when pf
};

inline PfWitness pf_test(const IntMatrix& m) {
    int n = m.n;
    if (n == 0) return {false, 0};
    auto positive = [&](const std::vector<uint64_t>& bits) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(bits[size_t(i) * ((n + 63) / 64) + j / 64] >> (j % 64) & 1)) return false;
        return true;
    };
    int words = (n + 63) / 64;
    std::vector<uint64_t> base(size_t(n) * words, 0), cur;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m(i, j) > 0) base[size_t(i) * words + j / 64] |= uint64_t(1) << (j % 64);
    cur = base;
    int bound = n * n - 2 * n + 2;
    if (bound < 1) bound = 1;
    for (int p = 1; p <= bound; ++p) {
        if (positive(cur)) return {true, p};
        // cur = cur * base (boolean)
        std::vector<uint64_t> nxt(size_t(n) * words, 0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (cur[size_t(i) * words + k / 64] >> (k % 64) & 1)
                    for (int w = 0; w < words; ++w)
                        nxt[size_t(i) * words + w] |= base[size_t(k) * words + w];
        cur = std::move(nxt);
    }
    return {false, 0};
}

// Spectrum of a non-negative integer matrix: exact characteristic polynomial,
// PF flag with witness power, a certified enclosure of the spectral radius
// when > floor, and a positive eigenvector from the symbolic adjugate.
struct Spectrum {
    IntPoly chi;
    bool pf = false;
    int pf_power = 0;
    bool has_lambda = false;
    RootInterval lambda;              // largest real eigenvalue enclosure
    std::vector<double> mu;           // eigenvector (normalized)
    std::vector<double> mu_err;       // half-width of certified enclosures
    std::vector<IntPoly> mu_symbolic; // adjugate column before normalization
};

// Normalization request for the eigenvector.
struct MuNorm {
    bool pin = false;
    int pin_index = 0;
    double pin_value = 1.0;  // when pin: mu[pin_index] = pin_value, else max entry = 1
};

inline Spectrum spectral(const IntMatrix& m, const MuNorm& norm = {},
                         const Rat& lambda_width = Rat(1, 1000000000000L)) {
    if (!m.non_negative()) throw std::invalid_argument("spectral: negative entry");
    Spectrum s;
    s.chi = char_poly(m);
    auto w = pf_test(m);
    s.pf = w.pf;
    s.pf_power = w.power;

    RootInterval ri;
    // spectral radius of a PF matrix is > 0; for generic matrices look above 0,
    // falling back to "no real eigenvalue above 0" (e.g. zero matrix).
    if (largest_root_above(s.chi, Rat(0), ri, lambda_width)) {
        s.has_lambda = true;
        s.lambda = ri;

        // eigenvector: evaluate a nonzero adjugate column at lambda with
        // interval arithmetic over the rational enclosure
        auto adj = char_adjugate(m);
        int n = m.n;
        auto eval_iv = [&](const IntPoly& p, Rat lo, Rat hi, Rat& out_lo, Rat& out_hi) {
            // monotone-free conservative evaluation: evaluate on endpoints of
            // each monomial; for small widths evaluate both ends and pad by
            // derivative bound
            Rat a = p.eval(lo), b = p.eval(hi);
            out_lo = std::min(a, b);
            out_hi = std::max(a, b);
            // pad by |p'|_max * width on [lo, hi] using coarse coefficient bound
            IntPoly d = p.derivative();
            Rat mx = 0;
            Rat absmax = abs(hi) > abs(lo) ? abs(hi) : abs(lo);
            Rat pw = 1;
            for (int i = 0; i <= d.degree(); ++i) {
                mx += Rat(abs(d.at(i))) * pw;
                pw *= absmax;
            }
            Rat pad = mx * (hi - lo);
            out_lo -= pad;
            out_hi += pad;
        };
        // pick the column with the largest magnitude at mid
        int best = -1;
        Rat best_mag = 0;
        Rat mid = (ri.lo + ri.hi) / 2;
        std::vector<std::vector<Rat>> vals(n, std::vector<Rat>(n));
        for (int j = 0; j < n; ++j) {
            Rat mag = 0;
            for (int i = 0; i < n; ++i) {
                vals[i][j] = adj[i][j].eval(mid);
                mag += abs(vals[i][j]);
            }
            if (mag > best_mag) {
                best_mag = mag;
                best = j;
            }
        }
        if (best >= 0 && best_mag > 0) {
            std::vector<Rat> lo(n), hi(n);
            for (int i = 0; i < n; ++i) eval_iv(adj[i][best], ri.lo, ri.hi, lo[i], hi[i]);
            // normalize
            s.mu.resize(n);
            s.mu_err.resize(n);
            s.mu_symbolic.resize(n);
            for (int i = 0; i < n; ++i) s.mu_symbolic[i] = adj[i][best];
            // flip sign so the vector is positive if it is negative
            int neg = 0, pos = 0;
            for (int i = 0; i < n; ++i) {
                if (hi[i] < 0) ++neg;
                if (lo[i] > 0) ++pos;
            }
            if (neg > pos)
                for (int i = 0; i < n; ++i) {
                    Rat l = -hi[i], h = -lo[i];
                    lo[i] = l;
                    hi[i] = h;
                }
            Rat den_lo, den_hi, target(0);
            if (norm.pin) {
                den_lo = lo[norm.pin_index];
                den_hi = hi[norm.pin_index];
                target = Rat(norm.pin_value);
            } else {
                den_lo = lo[0];
                den_hi = hi[0];
                for (int i = 1; i < n; ++i)
                    if (lo[i] > den_lo) {
                        den_lo = lo[i];
                        den_hi = hi[i];
                    }
                target = 1;
            }
            for (int i = 0; i < n; ++i) {
                if (den_lo <= 0)
                    throw std::runtime_error("spectral: eigenvector enclosure not positive; refine lambda");
                Rat vlo = lo[i] * target / den_hi;
                Rat vhi = hi[i] * target / den_lo;
                s.mu[i] = Rat((vlo + vhi) / 2).get_d();
                s.mu_err[i] = Rat((vhi - vlo) / 2).get_d();
            }
        }
    }
    return s;
}

// Complete census of n x n Perron-Frobenius matrices with spectral radius at
// most B given as a rational. Enumeration is pruned by the entry-sum bound
// |M|_1 <= B^(n^2-2n+3) and every candidate is verified by pf_test plus an
// exact Sturm comparison of the spectral radius against B.
inline std::vector<IntMatrix> pf_census(int n, const Rat& B) {
    if (n < 2 || n > 3) throw std::invalid_argument("pf_census: n must be 2 or 3");
    if (B < 1) return {};
    int e = n * n - 2 * n + 3;
    Rat cap = 1;
    for (int i = 0; i < e; ++i) cap *= B;
    // entries sum to at most floor(cap)
    Int cap_floor = Int(cap.get_num() / cap.get_den());
    if (cap_floor > 64) throw std::invalid_argument("pf_census: bound too large");
    long budget = cap_floor.get_si();

    std::vector<IntMatrix> out;
    int cells = n * n;
    std::vector<long> entry(cells, 0);
    auto spectral_radius_at_most_B = [&](const IntMatrix& m) {
        IntPoly chi = char_poly(m);
        SturmChain chain(chi);
        return chain.count_roots_above(B) == 0;
        // PF radius is real, so no complex eigenvalue can exceed it
    };
    // depth-first over entries with remaining-budget pruning
    auto rec = [&](auto&& self, int idx, long remaining) -> void {
        if (idx == cells) {
            IntMatrix m(n);
            for (int i = 0; i < cells; ++i) m.a[i] = entry[i];
            auto w = pf_test(m);
            if (!w.pf) return;
            if (!spectral_radius_at_most_B(m)) return;
            out.push_back(m);
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            entry[idx] = v;
            self(self, idx + 1, remaining - v);
        }
        entry[idx] = 0;
    };
    rec(rec, 0, budget);
    return out;
}

}  // namespace tracksplit
