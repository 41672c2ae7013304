#include "ccb/oracles.hpp"

#include <algorithm>

#include "ccb/errors.hpp"

namespace ccb {

namespace {

using QPoly = std::vector<Rat>;  // constant first

void qtrim(QPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qderiv(const QPoly& f) {
    QPoly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Rat(Int(i)));
    qtrim(d);
    return d;
}

QPoly qrem(QPoly a, const QPoly& b) {
    qtrim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qtrim(a);
    }
    return a;
}

QPoly qdiv_exact(QPoly a, const QPoly& b) {
    qtrim(a);
    QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        qtrim(a);
    }
    if (!a.empty()) throw consistency_error("inexact polynomial division in oracle");
    return q;
}

QPoly qgcd(QPoly a, QPoly b) {
    qtrim(a);
    qtrim(b);
    while (!b.empty()) {
        QPoly r = qrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Yun: h = prod f_i^i with f_i squarefree and pairwise coprime.
std::vector<QPoly> squarefree_decomposition(QPoly h) {
    qtrim(h);
    std::vector<QPoly> out;  // out[i-1] = f_i
    if (h.size() <= 1) return out;
    QPoly hp = qderiv(h);
    QPoly a = qgcd(h, hp);
    QPoly b = qdiv_exact(h, a);
    QPoly c = qdiv_exact(hp, a);
    QPoly d = c;
    {
        QPoly bp = qderiv(b);
        for (size_t i = 0; i < d.size(); ++i) d[i] -= i < bp.size() ? bp[i] : Rat(0);
        qtrim(d);
    }
    while (b.size() > 1) {
        QPoly f = qgcd(b, d);
        if (f.empty()) f = {Rat(1)};
        out.push_back(f);
        b = qdiv_exact(b, f);
        QPoly cq = qdiv_exact(d, f);
        QPoly bp = qderiv(b);
        d = cq;
        for (size_t i = 0; i < std::max(d.size(), bp.size()); ++i) {
            Rat dv = i < cq.size() ? cq[i] : Rat(0);
            Rat bv = i < bp.size() ? bp[i] : Rat(0);
            if (i < d.size())
                d[i] = dv - bv;
            else
                d.push_back(dv - bv);
        }
        qtrim(d);
    }
    return out;
}

std::vector<Int> to_primitive_int(const QPoly& f) {
    Int lcm_den = 1;
    for (const auto& c : f) {
        Int den = denominator(c);
        lcm_den = lcm_den / gcd(lcm_den, den) * den;
    }
    std::vector<Int> out;
    Int content = 0;
    for (const auto& c : f) {
        Int v = numerator(c) * (lcm_den / denominator(c));
        out.push_back(v);
        content = gcd(content, v < 0 ? Int(-v) : v);
    }
    if (content > 1)
        for (auto& v : out) v /= content;
    return out;
}

Int ipoly_eval(const std::vector<Int>& f, const Int& x) {
    Int acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

std::vector<Int> ideriv(const std::vector<Int>& f) {
    std::vector<Int> d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * Int(i));
    return d;
}

// f(a + p*w) composed and divided by the p-content.
std::vector<Int> shift_scale(const std::vector<Int>& f, const Int& a, std::int64_t p) {
    // binomial expansion via repeated synthetic steps: g(w) = f(a + p w)
    std::vector<Int> g(f.size(), 0);
    // Horner in (a + p w): maintain polynomial in w
    std::vector<Int> acc{0};
    for (size_t i = f.size(); i-- > 0;) {
        // acc = acc * (a + p w) + f[i]
        std::vector<Int> next(acc.size() + 1, 0);
        for (size_t j = 0; j < acc.size(); ++j) {
            next[j] += acc[j] * a;
            next[j + 1] += acc[j] * p;
        }
        next[0] += f[i];
        while (next.size() > 1 && next.back() == 0) next.pop_back();
        acc = std::move(next);
    }
    g = acc;
    Int content = 0;
    for (const auto& c : g) content = gcd(content, c < 0 ? Int(-c) : c);
    if (content == 0) throw consistency_error("zero polynomial in oracle recursion");
    Int pw = 1;
    while (content % p == 0) {
        content /= p;
        pw *= p;
    }
    if (pw > 1)
        for (auto& c : g) c /= pw;
    return g;
}

// distinct roots of squarefree f in Z_p
long distinct_roots_zp(const std::vector<Int>& f, std::int64_t p, int depth) {
    if (depth < 0) throw inconclusive_error("oracle digit recursion exhausted its depth cap");
    std::vector<Int> fp = ideriv(f);
    long count = 0;
    for (std::int64_t r = 0; r < p; ++r) {
        if (ipoly_eval(f, r) % p != 0) continue;
        if (ipoly_eval(fp, r) % p != 0) {
            ++count;  // simple residue: Hensel gives exactly one root here
            continue;
        }
        count += distinct_roots_zp(shift_scale(f, Int(r), p), p, depth - 1);
    }
    return count;
}

}  // namespace

long roots_in_pzp_oracle(const std::vector<Int>& coeffs, std::int64_t p, int depth) {
    QPoly h;
    for (const auto& c : coeffs) h.push_back(Rat(c));
    qtrim(h);
    if (h.empty()) throw usage_error("oracle: zero polynomial");
    std::vector<QPoly> sf = squarefree_decomposition(h);
    long total = 0;
    for (size_t i = 0; i < sf.size(); ++i) {
        if (sf[i].size() <= 1) continue;
        std::vector<Int> fi = to_primitive_int(sf[i]);
        // roots in p*Z_p of f(z) = roots in Z_p of f(p*w)
        std::vector<Int> g = shift_scale(fi, Int(0), p);
        total += static_cast<long>(i + 1) * distinct_roots_zp(g, p, depth);
    }
    return total;
}

long semigroup_gap_count(const std::vector<long>& gens) {
    for (long g : gens)
        if (g <= 0) throw usage_error("semigroup generators must be positive");
    long bound = 1;
    for (long g : gens) bound *= g;  // conductor is below the product
    std::vector<char> in(static_cast<size_t>(bound) + 1, 0);
    in[0] = 1;
    for (long v = 1; v <= bound; ++v)
        for (long g : gens)
            if (v - g >= 0 && in[static_cast<size_t>(v - g)]) in[static_cast<size_t>(v)] = 1;
    long gaps = 0;
    for (long v = 1; v <= bound; ++v)
        if (!in[static_cast<size_t>(v)]) ++gaps;
    return gaps;
}

}  // namespace ccb
