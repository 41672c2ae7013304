#include "ccb/finite_field.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ccb {

namespace {

using Poly = std::vector<std::int64_t>;  // coefficients mod p, constant first

std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    return a;
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
    trim(r);
    return r;
}

// a mod m, m monic.
Poly poly_rem(Poly a, const Poly& m, std::int64_t p) {
    trim(a);
    const size_t dm = m.size() - 1;
    while (a.size() > dm) {
        std::int64_t lead = a.back();
        size_t shift = a.size() - 1 - dm;
        if (lead != 0) {
            for (size_t i = 0; i <= dm; ++i)
                a[shift + i] = mod_p(a[shift + i] - lead * m[i], p);
        }
        a.pop_back();
        trim(a);
        if (a.size() <= dm) break;
    }
    return a;
}

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
    return static_cast<std::int64_t>(mod_inverse(Int(mod_p(a, p)), Int(p)).convert_to<std::int64_t>());
}

// Extended Euclid over F_p[x]: returns g = gcd and u with u*a == g (mod m).
Poly poly_inverse_mod(const Poly& a, const Poly& m, std::int64_t p) {
    Poly r0 = poly_rem(a, m, p), r1 = m;
    Poly s0 = {1}, s1 = {};
    while (!r1.empty()) {
        // divide r0 by r1
        Poly q;
        Poly rem = r0;
        trim(rem);
        if (rem.size() >= r1.size()) {
            q.assign(rem.size() - r1.size() + 1, 0);
            std::int64_t inv_lead = inv_mod_p(r1.back(), p);
            while (rem.size() >= r1.size() && !rem.empty()) {
                std::int64_t c = mod_p(rem.back() * inv_lead, p);
                size_t shift = rem.size() - r1.size();
                q[shift] = c;
                for (size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = mod_p(rem[shift + i] - c * r1[i], p);
                trim(rem);
            }
        }
        Poly qs1 = poly_mul(q, s1, p);
        Poly s2(std::max(s0.size(), qs1.size()), 0);
        for (size_t i = 0; i < s2.size(); ++i) {
            std::int64_t v = (i < s0.size() ? s0[i] : 0) - (i < qs1.size() ? qs1[i] : 0);
            s2[i] = mod_p(v, p);
        }
        trim(s2);
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1)
        throw usage_error("finite field: inverse of a non-invertible element");
    std::int64_t scale = inv_mod_p(r0[0], p);
    Poly u = s0;
    for (auto& c : u) c = mod_p(c * scale, p);
    return poly_rem(u, m, p);
}

bool poly_has_root(const Poly& f, std::int64_t p) {
    for (std::int64_t x = 0; x < p; ++x) {
        std::int64_t acc = 0;
        for (size_t i = f.size(); i-- > 0;) acc = mod_p(acc * x + f[i], p);
        if (acc == 0) return true;
    }
    return false;
}

// Built-in irreducible moduli over F_p for s <= 4, constant term first.
// w^2 - n (n a non-residue) for s = 2 when p is odd; hand-picked entries
// otherwise. Verified again at construction time.
Poly builtin_modulus(std::int64_t p, unsigned s) {
    if (s == 1) return {0, 1};
    static const std::map<std::pair<std::int64_t, unsigned>, Poly> table = {
        {{2, 2}, {1, 1, 1}},          // w^2+w+1
        {{2, 3}, {1, 1, 0, 1}},       // w^3+w+1
        {{2, 4}, {1, 1, 0, 0, 1}},    // w^4+w+1
        {{3, 2}, {1, 0, 1}},          // w^2+1
        {{3, 3}, {1, 2, 0, 1}},       // w^3+2w+1
        {{3, 4}, {2, 1, 0, 0, 1}},    // w^4+w+2
        {{5, 2}, {2, 0, 1}},          // w^2+2
        {{5, 3}, {1, 1, 0, 1}},       // w^3+w+1
        {{5, 4}, {2, 1, 0, 0, 1}},    // w^4+w+2
        {{7, 2}, {3, 0, 1}},          // w^2+3
        {{7, 3}, {2, 3, 0, 1}},       // w^3+3w+2
        {{7, 4}, {3, 1, 0, 0, 1}},    // w^4+w+3
        {{11, 2}, {2, 0, 1}},         // w^2+2
        {{11, 3}, {4, 1, 0, 1}},      // w^3+w+4
        {{11, 4}, {2, 1, 0, 0, 1}},   // w^4+w+2
        {{13, 2}, {2, 0, 1}},         // w^2+2
        {{13, 3}, {6, 1, 0, 1}},      // w^3+w+6
        {{13, 4}, {2, 1, 0, 0, 1}},   // w^4+w+2
    };
    auto it = table.find({p, s});
    if (it != table.end()) return it->second;
    throw usage_error("no built-in modulus for p=" + std::to_string(p) +
                      ", s=" + std::to_string(s) + "; supply one explicitly");
}

}  // namespace

FFElem::FFElem(FieldPtr field, std::vector<std::int64_t> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    c_.resize(field_->s(), 0);
    for (auto& v : c_) v = mod_p(v, field_->p());
}

bool FFElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool FFElem::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    return std::all_of(c_.begin() + 1, c_.end(), [](std::int64_t v) { return v == 0; });
}

FFElem FFElem::operator+(const FFElem& o) const {
    if (!field_->same_field(*o.field_)) throw usage_error("finite field mismatch in +");
    std::vector<std::int64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_p(c_[i] + o.c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-(const FFElem& o) const {
    if (!field_->same_field(*o.field_)) throw usage_error("finite field mismatch in -");
    std::vector<std::int64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_p(c_[i] - o.c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator-() const {
    std::vector<std::int64_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_p(-c_[i], field_->p());
    return FFElem(field_, std::move(r));
}

FFElem FFElem::operator*(const FFElem& o) const {
    if (!field_->same_field(*o.field_)) throw usage_error("finite field mismatch in *");
    Poly prod = poly_mul(c_, o.c_, field_->p());
    Poly red = poly_rem(prod, field_->modulus(), field_->p());
    red.resize(field_->s(), 0);
    return FFElem(field_, std::move(red));
}

FFElem FFElem::inverse() const {
    if (is_zero()) throw usage_error("finite field: inverse of zero");
    Poly u = poly_inverse_mod(c_, field_->modulus(), field_->p());
    u.resize(field_->s(), 0);
    return FFElem(field_, std::move(u));
}

FFElem FFElem::operator/(const FFElem& o) const { return *this * o.inverse(); }

FFElem FFElem::pow(const Int& e) const {
    if (e < 0) return inverse().pow(-e);
    FFElem base = *this, r = field_->one();
    Int k = e;
    while (k > 0) {
        if ((k & 1) != 0) r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

FFElem FFElem::frobenius() const { return pow(Int(field_->p())); }

bool FFElem::operator==(const FFElem& o) const {
    return field_->same_field(*o.field_) && c_ == o.c_;
}

std::uint64_t FFElem::index() const {
    std::uint64_t k = 0, w = 1;
    for (size_t i = 0; i < c_.size(); ++i) {
        k += static_cast<std::uint64_t>(c_[i]) * w;
        w *= static_cast<std::uint64_t>(field_->p());
    }
    return k;
}

std::string FFElem::str() const {
    if (field_->is_prime_field()) return std::to_string(c_.empty() ? 0 : c_[0]);
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << c_[i];
    }
    os << "]";
    return os.str();
}

FiniteField::FiniteField(std::int64_t p, unsigned s, std::vector<std::int64_t> modulus)
    : p_(p), s_(s), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < s_; ++i) q_ *= static_cast<std::uint64_t>(p_);
}

void FiniteField::verify_irreducible(std::int64_t p, const Poly& modulus) {
    const unsigned s = static_cast<unsigned>(modulus.size()) - 1;
    if (s == 1) return;
    if (s <= 3) {
        // degree 2 or 3: irreducible iff no root in F_p
        if (poly_has_root(modulus, p))
            throw usage_error("modulus is reducible: it has a root in F_p");
        return;
    }
    if (poly_has_root(modulus, p))
        throw usage_error("modulus is reducible: it has a root in F_p");
    // degree >= 4: trial division by all monic irreducible polynomials of
    // degree 2..s/2 (exhaustive; fine for p^s within the desk-scale cap)
    for (unsigned d = 2; 2 * d <= s; ++d) {
        std::uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= static_cast<std::uint64_t>(p);
        for (std::uint64_t k = 0; k < count; ++k) {
            Poly g(d + 1, 0);
            std::uint64_t t = k;
            for (unsigned i = 0; i < d; ++i) {
                g[i] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
                t /= static_cast<std::uint64_t>(p);
            }
            g[d] = 1;
            if (d >= 2 && poly_has_root(g, p)) continue;  // g reducible, skip
            Poly r = poly_rem(modulus, g, p);
            if (r.empty())
                throw usage_error("modulus is reducible: divisible by a degree-" +
                                  std::to_string(d) + " factor");
        }
    }
}

FieldPtr FiniteField::prime_field(std::int64_t p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw usage_error("p = " + std::to_string(p) + " is not prime");
    return FieldPtr(new FiniteField(p, 1, {0, 1}));
}

FieldPtr FiniteField::extension(std::int64_t p, unsigned s) {
    if (s == 1) return prime_field(p);
    if (s > 4) throw usage_error("built-in moduli cover s <= 4; use with_modulus");
    return with_modulus(p, builtin_modulus(p, s));
}

FieldPtr FiniteField::with_modulus(std::int64_t p, std::vector<std::int64_t> modulus) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw usage_error("p = " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2) throw usage_error("modulus must have degree >= 1");
    for (auto& c : modulus) c = mod_p(c, p);
    if (modulus.back() != 1) throw usage_error("modulus must be monic");
    verify_irreducible(p, modulus);
    unsigned s = static_cast<unsigned>(modulus.size()) - 1;
    return FieldPtr(new FiniteField(p, s, std::move(modulus)));
}

FieldPtr FiniteField::extension_any(std::int64_t p, unsigned s, std::uint64_t cap) {
    if (s <= 4) {
        try {
            return extension(p, s);
        } catch (const usage_error&) {
            // fall through to the search
        }
    }
    Int q = pow_int(Int(p), s);
    if (q > Int(cap))
        throw resource_error("extension cardinality " + q.str() + " exceeds cap " +
                             std::to_string(cap));
    std::uint64_t count = 1;
    for (unsigned i = 0; i < s; ++i) count *= static_cast<std::uint64_t>(p);
    for (std::uint64_t k = 1; k < count; ++k) {
        Poly m(s + 1, 0);
        std::uint64_t t = k;
        for (unsigned i = 0; i < s; ++i) {
            m[i] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
            t /= static_cast<std::uint64_t>(p);
        }
        m[s] = 1;
        try {
            return with_modulus(p, m);
        } catch (const usage_error&) {
            continue;
        }
    }
    throw consistency_error("no irreducible polynomial found (impossible)");
}

FFElem FiniteField::zero() const {
    return FFElem(shared_from_this(), std::vector<std::int64_t>(s_, 0));
}

FFElem FiniteField::one() const { return from_int(1); }

FFElem FiniteField::from_int(const Int& n) const {
    Int r = n % p_;
    if (r < 0) r += p_;
    std::vector<std::int64_t> c(s_, 0);
    c[0] = r.convert_to<std::int64_t>();
    return FFElem(shared_from_this(), std::move(c));
}

FFElem FiniteField::from_coeffs(std::vector<std::int64_t> coeffs) const {
    if (coeffs.size() > s_) throw usage_error("coefficient vector longer than extension degree");
    return FFElem(shared_from_this(), std::move(coeffs));
}

FFElem FiniteField::gen() const {
    std::vector<std::int64_t> c(s_, 0);
    if (s_ >= 2) c[1] = 1;
    return FFElem(shared_from_this(), std::move(c));
}

FFElem FiniteField::element(std::uint64_t k) const {
    if (k >= q_) throw usage_error("element index out of range");
    std::vector<std::int64_t> c(s_, 0);
    for (unsigned i = 0; i < s_; ++i) {
        c[i] = static_cast<std::int64_t>(k % static_cast<std::uint64_t>(p_));
        k /= static_cast<std::uint64_t>(p_);
    }
    return FFElem(shared_from_this(), std::move(c));
}

std::vector<FFElem> FiniteField::enumerate(std::uint64_t cap) const {
    if (q_ > cap)
        throw resource_error("enumeration of " + std::to_string(q_) +
                             " elements exceeds cap " + std::to_string(cap));
    std::vector<FFElem> out;
    out.reserve(q_);
    for (std::uint64_t k = 0; k < q_; ++k) out.push_back(element(k));
    return out;
}

int FiniteField::chi(const FFElem& a) const {
    if (p_ == 2) throw usage_error("Euler criterion needs odd characteristic");
    if (a.is_zero()) return 0;
    FFElem t = a.pow(Int(q_ - 1) / 2);
    if (t.is_one()) return 1;
    return -1;
}

bool FiniteField::same_field(const FiniteField& o) const {
    return p_ == o.p_ && s_ == o.s_ && modulus_ == o.modulus_;
}

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to)
    : from_(std::move(from)), to_(std::move(to)), root_(to_->zero()) {
    if (from_->p() != to_->p())
        throw usage_error("embedding requires equal characteristic");
    if (to_->s() % from_->s() != 0)
        throw usage_error("no embedding: extension degree is not a multiple");
    if (from_->is_prime_field()) {
        root_ = to_->zero();
        return;
    }
    // first root of the source modulus in the target field
    const auto& m = from_->modulus();
    for (std::uint64_t k = 0; k < to_->q(); ++k) {
        FFElem x = to_->element(k);
        FFElem acc = to_->zero();
        for (size_t i = m.size(); i-- > 0;) acc = acc * x + to_->from_int(m[i]);
        if (acc.is_zero()) {
            root_ = x;
            return;
        }
    }
    throw consistency_error("source modulus has no root in the target field");
}

FFElem FieldEmbedding::operator()(const FFElem& a) const {
    if (!a.field()->same_field(*from_)) throw usage_error("embedding: wrong source field");
    FFElem acc = to_->zero();
    const auto& c = a.coeffs();
    for (size_t i = c.size(); i-- > 0;) acc = acc * root_ + to_->from_int(c[i]);
    return acc;
}

}  // namespace ccb
