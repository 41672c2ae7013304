#include "ccb/zero_est.hpp"

#include "ccb/realcert.hpp"

namespace ccb {

namespace {

// exponent of |a_j| r^j as -(val(a_j) + j*rho); nullopt for zeroish terms
std::optional<Rat> term_exponent(const PadicNum& c, long j, const Rat& rho) {
    if (c.is_zeroish()) return std::nullopt;
    return Rat(c.val_regular()) + Rat(j) * rho;
}

}  // namespace

RadiusNormReport radius_norm(const TruncSeries<PadicNum>& h, const Rat& rho,
                             const TailGuard& guard) {
    if (h.nvars() != 1) throw usage_error("radius_norm expects a one-variable series");
    if (rho <= 0) throw usage_error("radius must satisfy 0 < r < 1 (rho > 0)");
    RadiusNormReport rep;
    bool found = false;
    Rat best;  // minimal exponent e_j; |h|_r = p^{-best}
    for (const auto& [m, c] : h.terms()) {
        auto e = term_exponent(c, m[0], rho);
        if (!e) continue;
        if (!found || *e < best) best = *e;
        found = true;
    }
    if (!found)
        throw precision_error("all known coefficients are indistinguishable from zero");
    long nu = -1;
    for (const auto& [m, c] : h.terms()) {
        auto e = term_exponent(c, m[0], rho);
        if (e && *e == best) nu = std::max<long>(nu, m[0]);
    }
    // tail control
    const long T = h.trunc_order();
    switch (guard.kind) {
        case TailGuard::Kind::Polynomial:
            rep.checks.push_back("tail: polynomial, no terms beyond degree " + std::to_string(T));
            break;
        case TailGuard::Kind::Factorial: {
            // |a_j| r^j >= p^{-(mu(j-1) - ... )}: exponent >= j(rho - mu) + mu,
            // increasing in j when rho > mu; enough to check j = T+1.
            if (rho <= guard.mu)
                throw usage_error("tail guard needs r < 1/M (rho > mu)");
            Rat tail_exp = Rat(T + 1) * (rho - guard.mu) + guard.mu;
            if (!(tail_exp > best))
                throw inconclusive_error(
                    "tail guard too weak: cannot certify |a_j| r^j < |h|_r beyond the "
                    "truncation order");
            rep.checks.push_back("tail: factorial-type growth dominated beyond degree " +
                                 std::to_string(T));
            break;
        }
    }
    rep.nu = nu;
    rep.norm_exponent = best;
    return rep;
}

long zero_bound_1var(const TruncSeries<PadicNum>& h, const Rat& rho, const TailGuard& guard) {
    return radius_norm(h, rho, guard).nu;
}

Rat disk_bound_value(long N, const Rat& lambda) {
    if (lambda >= 1) throw usage_error("lambda >= 1: the disk bound formula is undefined");
    return (Rat(N) - lambda) / (Rat(1) - lambda);
}

namespace {

MVZeroReport mv_core(const TruncSeries<PadicNum>& H, const std::vector<PadicNum>& u,
                     const Rat& mu, const Rat& rho, bool lambda_exact, long N) {
    MVZeroReport rep;
    if (N < 1) throw usage_error("witness degree N must be >= 1");
    if (mu < 0) throw usage_error("growth constant must satisfy M >= 1");
    if (!(rho > mu)) throw usage_error("radius must satisfy 0 < r < 1/M");
    // hypothesis (i): |c_alpha| <= M^{||alpha||-1}
    for (const auto& [m, c] : H.terms()) {
        if (c.is_zeroish()) continue;
        long d = mono_degree(m);
        if (Rat(c.val_regular()) < -mu * Rat(d - 1)) {
            std::string alpha;
            for (auto e : m) alpha += (alpha.empty() ? "" : ",") + std::to_string(e);
            throw hypothesis_error("growth hypothesis fails at alpha=(" + alpha +
                                   "): |c| > M^{||alpha||-1}");
        }
    }
    rep.hypothesis_checks.push_back("growth: |c_alpha| <= M^{||alpha||-1} on all stored terms");
    // hypothesis (ii): max_{j<=N} |P_{H,j}(u)| >= 1
    TruncSeries<PadicNum> hu = H.restrict_to_line(u);
    bool witness = false;
    for (long j = 0; j <= N && !witness; ++j) {
        PadicNum pj = hu.coeff(Mono{static_cast<std::uint16_t>(j)});
        if (!pj.is_zeroish() && pj.val_regular() <= 0) witness = true;
    }
    if (!witness)
        throw hypothesis_error("witness hypothesis fails: no j <= " + std::to_string(N) +
                               " with |P_{H,j}(u)| >= 1");
    rep.hypothesis_checks.push_back("witness: some |P_{H,j}(u)| >= 1 with j <= " +
                                    std::to_string(N));
    Rat lambda = mu / rho;
    rep.witness_degree = N;
    rep.lambda = lambda;
    rep.lambda_exact = lambda_exact;
    rep.bound_real = disk_bound_value(N, lambda);
    rep.bound_floor = floor_rat(rep.bound_real);
    return rep;
}

}  // namespace

MVZeroReport mv_zero_bound(const TruncSeries<PadicNum>& H, const std::vector<PadicNum>& u,
                           const LocalFieldParams& params, long N) {
    // lambda = mu/rho = (ef/(p-1))/f = e/(p-1), held exactly as a rational
    return mv_core(H, u, params.growth_exponent(), params.radius_exponent(), true, N);
}

MVZeroReport mv_zero_bound_general(const TruncSeries<PadicNum>& H, const std::vector<PadicNum>& u,
                                   const Rat& M_value, const Rat& r_value, long N) {
    if (M_value < 1) throw usage_error("M must be >= 1");
    if (!(r_value > 0) || !(r_value * M_value < 1)) throw usage_error("need 0 < r < 1/M");
    const std::int64_t p = u.empty() ? 2 : u.front().p();
    // Is M a clean power of p? Then stay exact.
    auto as_p_power = [&](const Rat& x) -> std::optional<Rat> {
        Int num = numerator(x), den = denominator(x);
        auto pure = [&](Int n) -> std::optional<long> {
            if (n == 1) return 0;
            long k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            if (n == 1) return k;
            return std::nullopt;
        };
        auto a = pure(num), b = pure(den);
        if (a && b) return Rat(*a - *b);
        return std::nullopt;
    };
    auto mu_exact = as_p_power(M_value);
    auto rho_exact = as_p_power(Rat(1) / r_value);
    if (mu_exact && rho_exact) return mv_core(H, u, *mu_exact, *rho_exact, true, N);
    // outward-rounded logarithm brackets; lambda rises with mu and falls
    // with rho, and the bound is monotone in lambda, so the returned value
    // stays an upper bound
    Rat tol(1, 1000000);
    RatInterval logM = M_value == 1 ? RatInterval{0, 0} : log_bracket(M_value, tol);
    RatInterval logRinv = log_bracket(Rat(1) / r_value, tol);
    Rat mu_hi = logM.hi, rho_lo = logRinv.lo;
    if (!(rho_lo > mu_hi))
        throw precision_error("log brackets too wide to certify r < 1/M; tighten inputs");
    // scale both exponents to the p-power convention used by mv_core
    RatInterval logp = log_bracket(Rat(p), tol);
    Rat mu_scaled = mu_hi / logp.lo;
    Rat rho_scaled = rho_lo / logp.hi;
    if (!(rho_scaled > mu_scaled))
        throw precision_error("log brackets too wide after rescaling; tighten inputs");
    MVZeroReport rep = mv_core(H, u, mu_scaled, rho_scaled, false, N);
    return rep;
}

}  // namespace ccb
