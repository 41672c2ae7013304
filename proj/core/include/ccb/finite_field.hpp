#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ccb/errors.hpp"
#include "ccb/int.hpp"

namespace ccb {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// Element of F_{p^s}, stored as the coefficient vector of a residue
// polynomial c0 + c1*w + ... + c_{s-1}*w^{s-1} modulo the field's modulus.
class FFElem {
  public:
    FFElem() = default;
    FFElem(FieldPtr field, std::vector<std::int64_t> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<std::int64_t>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;

    FFElem operator+(const FFElem& o) const;
    FFElem operator-(const FFElem& o) const;
    FFElem operator-() const;
    FFElem operator*(const FFElem& o) const;
    FFElem inverse() const;
    FFElem operator/(const FFElem& o) const;
    FFElem pow(const Int& e) const;
    FFElem frobenius() const;  // x -> x^p

    bool operator==(const FFElem& o) const;
    bool operator!=(const FFElem& o) const { return !(*this == o); }

    // Index in the deterministic enumeration order (sum of c_i * p^i).
    std::uint64_t index() const;

    std::string str() const;  // "c" for prime fields, "[c0,c1,...]" otherwise

  private:
    friend class FiniteField;
    FieldPtr field_;
    std::vector<std::int64_t> c_;  // size s, entries in [0, p)
};

class FiniteField : public std::enable_shared_from_this<FiniteField> {
  public:
    static constexpr std::uint64_t kDefaultCardinalityCap = 1000000;

    // F_p.
    static FieldPtr prime_field(std::int64_t p);
    // F_{p^s} with a built-in modulus (s <= 4).
    static FieldPtr extension(std::int64_t p, unsigned s);
    // F_{p^s} with a caller-supplied monic modulus, constant term first,
    // length s+1, leading coefficient 1. Irreducibility is verified.
    static FieldPtr with_modulus(std::int64_t p, std::vector<std::int64_t> modulus);
    // F_{p^s} for any s: built-in table when available, otherwise the first
    // irreducible monic polynomial in enumeration order. Deterministic.
    static FieldPtr extension_any(std::int64_t p, unsigned s,
                                  std::uint64_t cap = kDefaultCardinalityCap);

    std::int64_t p() const { return p_; }
    unsigned s() const { return s_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::int64_t>& modulus() const { return modulus_; }
    bool is_prime_field() const { return s_ == 1; }

    FFElem zero() const;
    FFElem one() const;
    FFElem from_int(const Int& n) const;
    FFElem from_coeffs(std::vector<std::int64_t> coeffs) const;
    // Generator w of the polynomial basis (only meaningful for s >= 2).
    FFElem gen() const;
    // k-th element in enumeration order, 0 <= k < q.
    FFElem element(std::uint64_t k) const;

    // All q elements in the deterministic order; errors past the cap.
    std::vector<FFElem> enumerate(std::uint64_t cap = kDefaultCardinalityCap) const;

    // Euler criterion; p odd. Returns +1 / -1 / 0 for square / non-square / zero.
    int chi(const FFElem& a) const;

    bool same_field(const FiniteField& o) const;

  private:
    FiniteField(std::int64_t p, unsigned s, std::vector<std::int64_t> modulus);
    static void verify_irreducible(std::int64_t p, const std::vector<std::int64_t>& modulus);

    std::int64_t p_;
    unsigned s_;
    std::uint64_t q_;
    std::vector<std::int64_t> modulus_;  // monic, length s+1, constant term first
};

// Embedding of a subfield into an extension with the same characteristic,
// found as the first root (in enumeration order) of the source modulus in
// the target field. Identity on prime subfield coefficients.
class FieldEmbedding {
  public:
    FieldEmbedding(FieldPtr from, FieldPtr to);
    FFElem operator()(const FFElem& a) const;
    const FieldPtr& from() const { return from_; }
    const FieldPtr& to() const { return to_; }

  private:
    FieldPtr from_;
    FieldPtr to_;
    FFElem root_;  // image of the source generator
};

}  // namespace ccb
