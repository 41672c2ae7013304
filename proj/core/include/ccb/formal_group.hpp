#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ccb/jets.hpp"
#include "ccb/local_field.hpp"
#include "ccb/padic.hpp"
#include "ccb/series.hpp"
#include "ccb/zero_est.hpp"

namespace ccb {

using PSeries = TruncSeries<PadicNum>;

// n-dimensional commutative formal group law over capped Z_p: n series
// F_j(x1..xn, y1..yn), p-integral coefficients, identity/commutativity/
// associativity verified to the truncation order at construction.
class FormalGroupLaw {
  public:
    // F(x,y) = x + y in n dimensions.
    static FormalGroupLaw additive(unsigned n, std::int64_t p, int prec, unsigned T);
    // F(x,y) = x + y + xy.
    static FormalGroupLaw multiplicative(std::int64_t p, int prec, unsigned T);
    // Formal group of a Weierstrass curve with good reduction at p, in the
    // parameter t = -x/y. Coefficients (a1, a2, a3, a4, a6).
    static FormalGroupLaw elliptic(const std::vector<Int>& a, std::int64_t p, int prec,
                                   unsigned T);
    static FormalGroupLaw product(const FormalGroupLaw& g1, const FormalGroupLaw& g2);

    unsigned dim() const { return n_; }
    unsigned order() const { return T_; }
    std::int64_t p() const { return p_; }
    int prec() const { return prec_; }
    const std::string& kind() const { return kind_; }
    const std::vector<PSeries>& law() const { return F_; }

    // Multiplication-by-m expansion Psi^[m], n series in n variables;
    // Psi^[0] = 0, Psi^[1] = t, Psi^[m] = F(Psi^[m-1], t).
    std::vector<PSeries> mult_by_m(unsigned m) const;

    // Iterated alternating difference sum_{i<=m} (-1)^{m-i} C(m,i) Psi^[i];
    // its terms of degree < m vanish (checked, surfaced on violation).
    std::vector<PSeries> iterated_difference(unsigned m) const;

    // Exp_j = sum_m psi^[m]_j / m! with psi^[m] the degree-m part of
    // Psi^[m]; Log_j = sum_m (-1)^{m+1}/m * Delta^[m]_j. Both verified:
    // mutual inverses, Log is a homomorphism, Exp has identity linear part,
    // and in dimension one Log matches the integral of the normalized
    // invariant differential.
    const std::vector<PSeries>& exp_series() const;
    const std::vector<PSeries>& log_series() const;

    // h_j(z) = Exp_j(z*u) for all j. |u| must be 1 (use normalize_direction).
    std::vector<PSeries> eval_1ps(const std::vector<PadicNum>& u) const;

    // Rescale u by a power of p so that max_j |u_j| = 1; returns the applied
    // exponent k (u_scaled = p^k * u).
    static long normalize_direction(std::vector<PadicNum>& u);

    // u' = eta * u for a unit eta, decided at working precision.
    bool equiv(const std::vector<PadicNum>& u, const std::vector<PadicNum>& uprime) const;

    // Coordinate-wise reduction mod p of the order-m jet of z -> Exp(z*u);
    // needs m < p so the coefficients are p-integral.
    JetMap reduce_jet_mod_p(const std::vector<PadicNum>& u, int m) const;

    struct DiskBoundReport {
        enum class Status { Ok, Inconclusive };
        Status status = Status::Inconclusive;
        long N = 0;           // minimal witness degree
        unsigned j0 = 0;      // witnessing coordinate (1-based)
        Rat lambda = 0;       // e/(p-1)
        Rat bound_real = 0;   // (N - lambda)/(1 - lambda)
        Int bound_floor = 0;
        std::optional<Rat> jet_link_bound;  // 1 + m*(1-lambda)^{-1} when linked
        long scanned_up_to = 0;
        std::string diagnostic;
    };

    // Minimal N >= 1 and coordinate j0 among eq_indices (1-based) with
    // |P_{j0,N}(u)| >= 1, plus the residue-disk bound arithmetic. When a
    // jet order m is supplied, asserts N <= m+1 and reports the linked
    // bound 1 + m/(1-lambda).
    DiskBoundReport disk_bound(const std::vector<PadicNum>& u,
                               const std::vector<unsigned>& eq_indices,
                               const LocalFieldParams& params,
                               std::optional<int> jet_link = std::nullopt) const;

    friend struct OneParamSubgroup;

  private:
    FormalGroupLaw(unsigned n, std::int64_t p, int prec, unsigned T, std::string kind,
                   std::vector<PSeries> F);

    void validate_axioms() const;
    void build_exp_log() const;
    PadicNum k_one() const { return PadicNum::one(p_, prec_); }

    unsigned n_;
    std::int64_t p_;
    int prec_;
    unsigned T_;
    std::string kind_;
    std::vector<PSeries> F_;

    // Derived data, memoized per law instance; copies of a law share the
    // cache, and concurrent readers observe identical results.
    struct Cache {
        std::mutex mu;
        std::vector<std::vector<PSeries>> psi;
        std::vector<PSeries> exp;
        std::vector<PSeries> log;
        bool exp_log_ready = false;
    };
    std::shared_ptr<Cache> cache_;
};

// A one-parameter subgroup: a law (fixing the chart) together with a
// direction u, rescaled at construction so that max_j |u_j| = 1.
struct OneParamSubgroup {
    const FormalGroupLaw* law;
    std::vector<PadicNum> u;
    long rescaled_by = 0;  // exponent k with u_stored = p^k * u_given

    OneParamSubgroup(const FormalGroupLaw& g, std::vector<PadicNum> direction)
        : law(&g), u(std::move(direction)) {
        rescaled_by = FormalGroupLaw::normalize_direction(u);
    }

    std::vector<PSeries> series() const { return law->eval_1ps(u); }
    bool equivalent_to(const OneParamSubgroup& o) const { return law->equiv(u, o.u); }
    JetMap reduce_mod_p(int m) const { return law->reduce_jet_mod_p(u, m); }
    FormalGroupLaw::DiskBoundReport disk_bound(const std::vector<unsigned>& eq_indices,
                                               const LocalFieldParams& params,
                                               std::optional<int> jet_link = std::nullopt) const {
        return law->disk_bound(u, eq_indices, params, jet_link);
    }
};

}  // namespace ccb
