#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "ccb/errors.hpp"
#include "ccb/finite_field.hpp"
#include "ccb/padic.hpp"

namespace ccb {

using Mono = std::vector<std::uint16_t>;

inline unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

// Coefficient-ring glue: zero tests, small-integer lifts, exact text forms.
template <class K>
struct CoeffOps;

template <>
struct CoeffOps<FFElem> {
    static bool is_exact_zero(const FFElem& a) { return a.is_zero(); }
    static bool is_weak_zero(const FFElem& a) { return a.is_zero(); }
    static FFElem from_long(const FFElem& proto, long n) {
        return proto.field()->from_int(Int(n));
    }
    static bool same_context(const FFElem& a, const FFElem& b) {
        return a.field()->same_field(*b.field());
    }
    static std::string to_text(const FFElem& a) { return a.str(); }
};

template <>
struct CoeffOps<PadicNum> {
    static bool is_exact_zero(const PadicNum& a) { return a.is_exact_zero(); }
    static bool is_weak_zero(const PadicNum& a) { return a.is_zeroish(); }
    static PadicNum from_long(const PadicNum& proto, long n) {
        return PadicNum::from_int(proto.p(), Int(n), proto.prec() > 0 ? proto.prec() : PadicNum::kDefaultPrec);
    }
    static bool same_context(const PadicNum& a, const PadicNum& b) { return a.p() == b.p(); }
    static std::string to_text(const PadicNum& a) { return a.str(); }
};

// Multivariate power series over K, truncated at total degree T: terms of
// degree > T are identically discarded, everything of degree <= T is exact.
// Sparse canonical form, no stored exact zeros.
template <class K>
class TruncSeries {
  public:
    using Ops = CoeffOps<K>;

    TruncSeries() : nvars_(0), trunc_(0) {}
    TruncSeries(unsigned nvars, unsigned trunc, K one_proto)
        : nvars_(nvars), trunc_(trunc), proto_(std::move(one_proto)) {}

    static TruncSeries zero(unsigned nvars, unsigned trunc, const K& proto) {
        return TruncSeries(nvars, trunc, proto);
    }
    static TruncSeries constant(unsigned nvars, unsigned trunc, const K& c, const K& proto) {
        TruncSeries s(nvars, trunc, proto);
        s.add_term(Mono(nvars, 0), c);
        return s;
    }
    static TruncSeries variable(unsigned nvars, unsigned trunc, const K& proto, unsigned idx) {
        if (idx >= nvars) throw usage_error("variable index out of range");
        TruncSeries s(nvars, trunc, proto);
        if (trunc >= 1) {
            Mono m(nvars, 0);
            m[idx] = 1;
            s.add_term(m, Ops::from_long(proto, 1));
        }
        return s;
    }

    unsigned nvars() const { return nvars_; }
    unsigned trunc_order() const { return trunc_; }
    const K& proto() const { return proto_; }
    const std::map<Mono, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_weakly_zero() const {
        for (const auto& [m, c] : terms_)
            if (!Ops::is_weak_zero(c)) return false;
        return true;
    }

    K coeff(const Mono& m) const {
        auto it = terms_.find(m);
        if (it == terms_.end()) return k_zero();
        return it->second;
    }

    // Stored terms that are not weakly zero (regular nonzero content).
    unsigned significant_terms() const {
        unsigned n = 0;
        for (const auto& [m, c] : terms_)
            if (!Ops::is_weak_zero(c)) ++n;
        return n;
    }
    K constant_term() const { return coeff(Mono(nvars_, 0)); }

    void add_term(const Mono& m, const K& c) {
        if (m.size() != nvars_) throw usage_error("monomial width mismatch");
        if (mono_degree(m) > trunc_) return;
        if (Ops::is_exact_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (Ops::is_exact_zero(it->second)) terms_.erase(it);
        }
    }

    void set_term(const Mono& m, const K& c) {
        if (mono_degree(m) > trunc_) return;
        terms_.erase(m);
        if (!Ops::is_exact_zero(c)) terms_.emplace(m, c);
    }

    TruncSeries operator+(const TruncSeries& o) const {
        check_shape(o);
        TruncSeries r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    TruncSeries operator-(const TruncSeries& o) const { return *this + (-o); }
    TruncSeries operator-() const {
        TruncSeries r(nvars_, trunc_, proto_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    TruncSeries operator*(const TruncSeries& o) const {
        check_shape(o);
        TruncSeries r(nvars_, trunc_, proto_);
        for (const auto& [m1, c1] : terms_) {
            unsigned d1 = mono_degree(m1);
            for (const auto& [m2, c2] : o.terms_) {
                if (d1 + mono_degree(m2) > trunc_) continue;
                Mono m(nvars_);
                for (unsigned i = 0; i < nvars_; ++i)
                    m[i] = static_cast<std::uint16_t>(m1[i] + m2[i]);
                r.add_term(m, c1 * c2);
            }
        }
        return r;
    }
    TruncSeries scaled(const K& c) const {
        TruncSeries r(nvars_, trunc_, proto_);
        if (Ops::is_exact_zero(c)) return r;
        for (const auto& [m, v] : terms_) r.add_term(m, v * c);
        return r;
    }
    TruncSeries scaled_long(long n) const { return scaled(Ops::from_long(proto_, n)); }

    TruncSeries truncated(unsigned t) const {
        TruncSeries r(nvars_, std::min(t, trunc_), proto_);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) <= r.trunc_) r.terms_.emplace(m, c);
        return r;
    }

    TruncSeries homogeneous_part(unsigned d) const {
        TruncSeries r(nvars_, trunc_, proto_);
        for (const auto& [m, c] : terms_)
            if (mono_degree(m) == d) r.terms_.emplace(m, c);
        return r;
    }

    unsigned max_degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }
    // Lowest total degree with a (possibly weakly zero) stored term; trunc+1 when empty.
    unsigned min_degree() const {
        unsigned d = trunc_ + 1;
        for (const auto& [m, c] : terms_) d = std::min(d, mono_degree(m));
        return d;
    }

    TruncSeries derivative(unsigned var) const {
        if (var >= nvars_) throw usage_error("derivative: variable index out of range");
        TruncSeries r(nvars_, trunc_ > 0 ? trunc_ - 1 : 0, proto_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Mono mm = m;
            mm[var] -= 1;
            r.add_term(mm, c * Ops::from_long(proto_, m[var]));
        }
        return r;
    }

    K eval(const std::vector<K>& pt) const {
        if (pt.size() != nvars_) throw usage_error("eval: point dimension mismatch");
        K acc = k_zero();
        for (const auto& [m, c] : terms_) {
            K t = c;
            for (unsigned i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t = t * pt[i];
            acc = acc + t;
        }
        return acc;
    }

    // Coefficients of H(z*u) as a series in one variable z.
    TruncSeries restrict_to_line(const std::vector<K>& u) const {
        if (u.size() != nvars_) throw usage_error("restrict_to_line: dimension mismatch");
        TruncSeries r(1, trunc_, proto_);
        for (const auto& [m, c] : terms_) {
            K t = c;
            for (unsigned i = 0; i < nvars_; ++i)
                for (unsigned e = 0; e < m[i]; ++e) t = t * u[i];
            Mono zm{static_cast<std::uint16_t>(mono_degree(m))};
            r.add_term(zm, t);
        }
        return r;
    }

    // H(subs): every substituted series must have zero constant term.
    TruncSeries compose(const std::vector<TruncSeries>& subs) const {
        if (subs.size() != nvars_)
            throw usage_error("compose: expected " + std::to_string(nvars_) + " series, got " +
                              std::to_string(subs.size()));
        for (const auto& s : subs)
            if (!Ops::is_exact_zero(s.constant_term()))
                throw usage_error("compose: substituted series has a nonzero constant term");
        unsigned out_vars = subs.empty() ? 0 : subs[0].nvars_;
        unsigned out_trunc = subs.empty() ? trunc_ : subs[0].trunc_;
        for (const auto& s : subs) {
            if (s.nvars_ != out_vars || s.trunc_ != out_trunc)
                throw usage_error("compose: substituted series disagree in shape");
        }
        TruncSeries out = TruncSeries::zero(out_vars, out_trunc, subs.empty() ? proto_ : subs[0].proto_);
        if (terms_.empty()) return out;
        std::vector<std::vector<TruncSeries>> pow_cache(nvars_);
        std::vector<std::pair<Mono, K>> flat(terms_.begin(), terms_.end());
        return compose_rec(flat, 0, flat.size(), 0, subs, pow_cache, out);
    }

    bool same_series(const TruncSeries& o) const {
        return nvars_ == o.nvars_ && trunc_ == o.trunc_ && (*this - o).is_zero();
    }

    // Remap variables into a wider space: old variable i becomes positions[i].
    TruncSeries embedded(unsigned new_nvars, const std::vector<unsigned>& positions) const {
        if (positions.size() != nvars_) throw usage_error("embedded: positions size mismatch");
        TruncSeries r(new_nvars, trunc_, proto_);
        for (const auto& [m, c] : terms_) {
            Mono mm(new_nvars, 0);
            for (unsigned i = 0; i < nvars_; ++i) {
                if (positions[i] >= new_nvars) throw usage_error("embedded: position out of range");
                mm[positions[i]] = m[i];
            }
            r.terms_.emplace(mm, c);
        }
        return r;
    }

    // Set the given variables to zero (drops terms using them) and keep the
    // variable space unchanged.
    TruncSeries with_vars_zeroed(const std::vector<unsigned>& vars) const {
        TruncSeries r(nvars_, trunc_, proto_);
        for (const auto& [m, c] : terms_) {
            bool kill = false;
            for (unsigned v : vars)
                if (m[v] != 0) kill = true;
            if (!kill) r.terms_.emplace(m, c);
        }
        return r;
    }

    K k_zero() const { return Ops::from_long(proto_, 0); }
    K k_one() const { return Ops::from_long(proto_, 1); }

  private:
    void check_shape(const TruncSeries& o) const {
        if (nvars_ != o.nvars_ || trunc_ != o.trunc_)
            throw usage_error("series shape mismatch (nvars or truncation order)");
    }

    const TruncSeries& power_of(const std::vector<TruncSeries>& subs,
                                std::vector<std::vector<TruncSeries>>& cache, unsigned var,
                                unsigned e) const {
        auto& pows = cache[var];
        if (pows.empty()) {
            pows.push_back(TruncSeries::constant(subs[var].nvars_, subs[var].trunc_,
                                                 subs[var].k_one(), subs[var].proto_));
        }
        while (pows.size() <= e) pows.push_back(pows.back() * subs[var]);
        return pows[e];
    }

    TruncSeries compose_rec(const std::vector<std::pair<Mono, K>>& flat, size_t lo, size_t hi,
                            unsigned var, const std::vector<TruncSeries>& subs,
                            std::vector<std::vector<TruncSeries>>& cache,
                            const TruncSeries& shape) const {
        if (var == nvars_) {
            // single monomial fully consumed
            return TruncSeries::constant(shape.nvars_, shape.trunc_, flat[lo].second, shape.proto_);
        }
        // group [lo, hi) by the exponent of `var` (map order keeps groups contiguous)
        TruncSeries acc = TruncSeries::zero(shape.nvars_, shape.trunc_, shape.proto_);
        size_t i = lo;
        std::vector<std::pair<unsigned, TruncSeries>> groups;
        while (i < hi) {
            unsigned e = flat[i].first[var];
            size_t j = i;
            while (j < hi && flat[j].first[var] == e) ++j;
            groups.emplace_back(e, compose_rec(flat, i, j, var + 1, subs, cache, shape));
            i = j;
        }
        // Horner from the highest exponent down
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        unsigned cur = groups.front().first;
        acc = groups.front().second;
        for (size_t g = 1; g < groups.size(); ++g) {
            unsigned step = cur - groups[g].first;
            acc = acc * power_of(subs, cache, var, step) + groups[g].second;
            cur = groups[g].first;
        }
        if (cur > 0) acc = acc * power_of(subs, cache, var, cur);
        return acc;
    }

    unsigned nvars_;
    unsigned trunc_;
    K proto_;
    std::map<Mono, K> terms_;
};

// f1*ds1 + f2*ds2 on a two-variable chart.
template <class K>
struct PolyOneForm {
    TruncSeries<K> f1;
    TruncSeries<K> f2;

    PolyOneForm() = default;
    PolyOneForm(TruncSeries<K> a, TruncSeries<K> b) : f1(std::move(a)), f2(std::move(b)) {
        if (f1.nvars() != 2 || f2.nvars() != 2)
            throw usage_error("one-forms live on a two-variable chart");
        if (f1.trunc_order() != f2.trunc_order())
            throw usage_error("one-form components disagree in truncation order");
    }
};

// w1 ^ w2 = (f1 g2 - f2 g1) ds1^ds2; returns the coefficient series.
template <class K>
TruncSeries<K> wedge(const PolyOneForm<K>& w1, const PolyOneForm<K>& w2) {
    return w1.f1 * w2.f2 - w1.f2 * w2.f1;
}

// g*dz in Omega^1 of the jet ring k[z]/(z^{m+1}), reduced modulo the
// relation ideal (z^{m+1}, (m+1) z^m).
struct JetRingForm {
    int m = 0;
    TruncSeries<FFElem> g;  // one variable, degree <= m

    bool is_zero() const { return g.is_zero(); }
};

inline JetRingForm jetring_reduce(const TruncSeries<FFElem>& g, int m) {
    if (g.nvars() != 1) throw usage_error("jet ring forms are one-variable");
    if (m < 0) throw usage_error("jet order must be >= 0");
    const FFElem proto = g.proto();
    auto field = proto.field();
    bool kill_zm = ((m + 1) % field->p()) != 0;  // (m+1) z^m = 0 kills z^m iff m+1 invertible
    unsigned keep = kill_zm ? (m == 0 ? 0 : static_cast<unsigned>(m - 1)) : static_cast<unsigned>(m);
    TruncSeries<FFElem> red(1, keep, proto);
    if (m == 0 && kill_zm) {
        // Omega^1 of k[z]/(z) is zero
        return JetRingForm{m, TruncSeries<FFElem>::zero(1, 0, proto)};
    }
    for (const auto& [mono, c] : g.terms())
        if (mono[0] <= keep) red.add_term(mono, c);
    return JetRingForm{m, red};
}

}  // namespace ccb
