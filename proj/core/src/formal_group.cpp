#include "ccb/formal_group.hpp"

#include <algorithm>

#include "ccb/realcert.hpp"

namespace ccb {

namespace {

// Newton iteration for 1/s, s with unit constant term.
PSeries series_inverse(const PSeries& s) {
    PadicNum c0 = s.constant_term();
    if (c0.is_zeroish()) throw usage_error("series inverse needs a unit constant term");
    PSeries one = PSeries::constant(s.nvars(), s.trunc_order(), s.k_one(), s.proto());
    PSeries x = PSeries::constant(s.nvars(), s.trunc_order(), c0.inverse(), s.proto());
    unsigned steps = 1;
    while ((1u << steps) < s.trunc_order() + 1) ++steps;
    for (unsigned i = 0; i <= steps; ++i) x = x * (one + one - s * x);
    return x;
}

PSeries integrate_1var(const PSeries& s, std::int64_t p, int prec) {
    PSeries r(1, s.trunc_order() + 1, s.proto());
    for (const auto& [m, c] : s.terms()) {
        long k = m[0];
        r.add_term(Mono{static_cast<std::uint16_t>(k + 1)},
                   c * PadicNum::from_rat(p, Rat(1, k + 1), prec));
    }
    return r;
}

// Residual of an identity that must hold exactly: every coefficient is an
// exact zero or a big-O certifying at least one digit of smallness. A
// regular nonzero coefficient, or a big-O with a vacuous exponent, fails.
bool certified_zero(const PSeries& s) {
    for (const auto& [m, c] : s.terms())
        if (!c.certified_small(1)) return false;
    return true;
}

}  // namespace

FormalGroupLaw::FormalGroupLaw(unsigned n, std::int64_t p, int prec, unsigned T,
                               std::string kind, std::vector<PSeries> F)
    : n_(n), p_(p), prec_(prec), T_(T), kind_(std::move(kind)), F_(std::move(F)),
      cache_(std::make_shared<Cache>()) {
    validate_axioms();
}

void FormalGroupLaw::validate_axioms() const {
    const PadicNum one = k_one();
    std::vector<unsigned> xpos(n_), ypos(n_);
    for (unsigned i = 0; i < n_; ++i) {
        xpos[i] = i;
        ypos[i] = n_ + i;
    }
    // p-integrality of all coefficients
    for (const auto& Fj : F_)
        for (const auto& [m, c] : Fj.terms())
            if (!c.is_zeroish() && c.val_regular() < 0)
                throw consistency_error("formal group law has a non-integral coefficient");
    // identity: F(x, 0) = x and F(0, y) = y
    for (unsigned j = 0; j < n_; ++j) {
        PSeries fx = F_[j].with_vars_zeroed(ypos);
        PSeries fy = F_[j].with_vars_zeroed(xpos);
        PSeries x = PSeries::variable(2 * n_, T_, one, j);
        PSeries y = PSeries::variable(2 * n_, T_, one, n_ + j);
        if (!certified_zero(fx - x) || !certified_zero(fy - y))
            throw consistency_error("formal group identity axiom fails in coordinate " +
                                    std::to_string(j + 1));
    }
    // commutativity: swap x <-> y
    std::vector<unsigned> swap_pos(2 * n_);
    for (unsigned i = 0; i < n_; ++i) {
        swap_pos[i] = n_ + i;
        swap_pos[n_ + i] = i;
    }
    for (unsigned j = 0; j < n_; ++j) {
        if (!certified_zero(F_[j].embedded(2 * n_, swap_pos) - F_[j]))
            throw consistency_error("formal group commutativity fails in coordinate " +
                                    std::to_string(j + 1));
    }
    // associativity: F(F(x,y),z) = F(x,F(y,z)) in 3n variables
    std::vector<unsigned> xy_in3(2 * n_), yz_in3(2 * n_);
    for (unsigned i = 0; i < n_; ++i) {
        xy_in3[i] = i;
        xy_in3[n_ + i] = n_ + i;
        yz_in3[i] = n_ + i;
        yz_in3[n_ + i] = 2 * n_ + i;
    }
    std::vector<PSeries> lhs_subs, rhs_subs;
    for (unsigned i = 0; i < n_; ++i) lhs_subs.push_back(F_[i].embedded(3 * n_, xy_in3));
    for (unsigned i = 0; i < n_; ++i)
        lhs_subs.push_back(PSeries::variable(3 * n_, T_, one, 2 * n_ + i));
    for (unsigned i = 0; i < n_; ++i) rhs_subs.push_back(PSeries::variable(3 * n_, T_, one, i));
    for (unsigned i = 0; i < n_; ++i) rhs_subs.push_back(F_[i].embedded(3 * n_, yz_in3));
    for (unsigned j = 0; j < n_; ++j) {
        PSeries lhs = F_[j].compose(lhs_subs);
        PSeries rhs = F_[j].compose(rhs_subs);
        if (!certified_zero(lhs - rhs))
            throw consistency_error("formal group associativity fails in coordinate " +
                                    std::to_string(j + 1));
    }
}

FormalGroupLaw FormalGroupLaw::additive(unsigned n, std::int64_t p, int prec, unsigned T) {
    if (n < 1) throw usage_error("dimension must be >= 1");
    PadicNum one = PadicNum::one(p, prec);
    std::vector<PSeries> F;
    for (unsigned j = 0; j < n; ++j) {
        PSeries f = PSeries::variable(2 * n, T, one, j) + PSeries::variable(2 * n, T, one, n + j);
        F.push_back(std::move(f));
    }
    return FormalGroupLaw(n, p, prec, T, "additive", std::move(F));
}

FormalGroupLaw FormalGroupLaw::multiplicative(std::int64_t p, int prec, unsigned T) {
    PadicNum one = PadicNum::one(p, prec);
    PSeries x = PSeries::variable(2, T, one, 0), y = PSeries::variable(2, T, one, 1);
    std::vector<PSeries> F{x + y + x * y};
    return FormalGroupLaw(1, p, prec, T, "multiplicative", std::move(F));
}

FormalGroupLaw FormalGroupLaw::elliptic(const std::vector<Int>& a, std::int64_t p, int prec,
                                        unsigned T) {
    if (a.size() != 5) throw usage_error("elliptic coefficients are (a1,a2,a3,a4,a6)");
    const Int &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    // good reduction check: v_p(Delta) = 0
    Int b2 = a1 * a1 + 4 * a2;
    Int b4 = 2 * a4 + a1 * a3;
    Int b6 = a3 * a3 + 4 * a6;
    Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    Int disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0) throw usage_error("singular Weierstrass equation (discriminant zero)");
    if (disc % p == 0)
        throw usage_error("bad reduction at p = " + std::to_string(p) +
                          " (discriminant has positive valuation)");

    const PadicNum one = PadicNum::one(p, prec);
    auto C = [&](const Int& n) { return PadicNum::from_int(p, n, prec); };
    const unsigned W = T + 3;  // working order for the w-expansion

    // w(t) = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3
    PSeries t = PSeries::variable(1, W, one, 0);
    PSeries t2 = t * t, t3 = t2 * t;
    PSeries w = PSeries::zero(1, W, one);
    for (unsigned it = 0; it <= W; ++it) {
        PSeries w2 = w * w;
        PSeries next = t3 + (t * w).scaled(C(a1)) + (t2 * w).scaled(C(a2)) + w2.scaled(C(a3)) +
                       (t * w2).scaled(C(a4)) + (w2 * w).scaled(C(a6));
        if ((next - w).is_weakly_zero()) {
            w = next;
            break;
        }
        w = next;
    }

    // slope of the chord through (t1, w(t1)), (t2, w(t2)) as a 2-variable
    // series: lambda = sum_k w_k * (t1^{k-1} + t1^{k-2} t2 + ... + t2^{k-1})
    PSeries t1v = PSeries::variable(2, T, one, 0), t2v = PSeries::variable(2, T, one, 1);
    PSeries lam = PSeries::zero(2, T, one);
    for (const auto& [m, wk] : w.terms()) {
        unsigned k = m[0];
        if (k == 0 || k - 1 > T) continue;
        PSeries h = PSeries::zero(2, T, one);
        for (unsigned i = 0; i + 1 <= k; ++i) {
            // t1^i * t2^{k-1-i}
            if (i + (k - 1 - i) > T) continue;
            Mono mm{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(k - 1 - i)};
            h.add_term(mm, wk);
        }
        lam = lam + h;
    }
    // nu = w(t1) - lambda * t1
    PSeries w_t1(2, T, one);
    for (const auto& [m, wk] : w.terms())
        if (m[0] <= T) w_t1.add_term(Mono{m[0], 0}, wk);
    PSeries nu = w_t1 - lam * t1v;

    // substituting w = lam*t + nu into the cubic, the t^3 and t^2
    // coefficients give t1 + t2 + t3 = -A2/A3 with
    //   A3 = 1 + a2 lam + a4 lam^2 + a6 lam^3
    //   A2 = a1 lam + a3 lam^2 + a2 nu + 2 a4 lam nu + 3 a6 lam^2 nu
    PSeries lam2 = lam * lam;
    PSeries denom = PSeries::constant(2, T, one, one) + lam.scaled(C(a2)) + lam2.scaled(C(a4)) +
                    (lam2 * lam).scaled(C(a6));
    PSeries numer = lam.scaled(C(a1)) + lam2.scaled(C(a3)) + nu.scaled(C(a2)) +
                    (lam * nu).scaled(C(2 * a4)) + (lam2 * nu).scaled(C(3 * a6));
    PSeries t3sum = -t1v - t2v - numer * series_inverse(denom);

    // inversion series i(t) = -t / (1 - a1 t - a3 w(t))
    PSeries tT = PSeries::variable(1, T, one, 0);
    PSeries wT = w.truncated(T);
    PSeries inv_den = PSeries::constant(1, T, one, one) - tT.scaled(C(a1)) - wT.scaled(C(a3));
    PSeries inv_t = -(tT * series_inverse(inv_den)).truncated(T);

    PSeries Fser = inv_t.compose({t3sum});
    return FormalGroupLaw(1, p, prec, T, "elliptic", {Fser});
}

FormalGroupLaw FormalGroupLaw::product(const FormalGroupLaw& g1, const FormalGroupLaw& g2) {
    if (g1.p_ != g2.p_) throw usage_error("product of groups over different primes");
    if (g1.T_ != g2.T_) throw usage_error("product of groups with different truncation orders");
    int prec = std::min(g1.prec_, g2.prec_);
    unsigned n1 = g1.n_, n2 = g2.n_, n = n1 + n2;
    // variable layout: x1..xn, y1..yn; factor 1 owns coordinates 1..n1
    std::vector<unsigned> map1(2 * n1), map2(2 * n2);
    for (unsigned i = 0; i < n1; ++i) {
        map1[i] = i;
        map1[n1 + i] = n + i;
    }
    for (unsigned i = 0; i < n2; ++i) {
        map2[i] = n1 + i;
        map2[n2 + i] = n + n1 + i;
    }
    std::vector<PSeries> F;
    for (unsigned j = 0; j < n1; ++j) F.push_back(g1.F_[j].embedded(2 * n, map1));
    for (unsigned j = 0; j < n2; ++j) F.push_back(g2.F_[j].embedded(2 * n, map2));
    return FormalGroupLaw(n, g1.p_, prec, g1.T_,
                          "product(" + g1.kind_ + "," + g2.kind_ + ")", std::move(F));
}

std::vector<PSeries> FormalGroupLaw::mult_by_m(unsigned m) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto& psi = cache_->psi;
    if (psi.empty()) {
        std::vector<PSeries> zero, ident;
        for (unsigned j = 0; j < n_; ++j) {
            zero.push_back(PSeries::zero(n_, T_, k_one()));
            ident.push_back(PSeries::variable(n_, T_, k_one(), j));
        }
        psi.push_back(std::move(zero));
        psi.push_back(std::move(ident));
    }
    while (psi.size() <= m) {
        const auto& prev = psi.back();
        std::vector<PSeries> subs = prev;
        for (unsigned j = 0; j < n_; ++j)
            subs.push_back(PSeries::variable(n_, T_, k_one(), j));
        std::vector<PSeries> next;
        for (unsigned j = 0; j < n_; ++j) next.push_back(F_[j].compose(subs));
        psi.push_back(std::move(next));
    }
    return psi[m];
}

std::vector<PSeries> FormalGroupLaw::iterated_difference(unsigned m) const {
    if (m < 1) throw usage_error("iterated difference needs m >= 1");
    std::vector<std::vector<PSeries>> psis;
    for (unsigned i = 0; i <= m; ++i) psis.push_back(mult_by_m(i));
    std::vector<PSeries> delta;
    for (unsigned j = 0; j < n_; ++j) {
        PSeries acc = PSeries::zero(n_, T_, k_one());
        for (unsigned i = 0; i <= m; ++i) {
            Int c = binomial(m, i);
            if ((m - i) % 2 == 1) c = -c;
            acc = acc + psis[i][j].scaled(PadicNum::from_int(p_, c, prec_));
        }
        // degree-< m terms must vanish
        for (const auto& [mono, coeff] : acc.terms()) {
            if (mono_degree(mono) < m && !coeff.certified_small(1))
                throw consistency_error(
                    "iterated difference Delta^[" + std::to_string(m) +
                    "] has a surviving term of degree " + std::to_string(mono_degree(mono)));
        }
        delta.push_back(std::move(acc));
    }
    return delta;
}

void FormalGroupLaw::build_exp_log() const {
    {
        std::lock_guard<std::mutex> lock(cache_->mu);
        if (cache_->exp_log_ready) return;
    }
    std::vector<PSeries> exp, log;
    for (unsigned j = 0; j < n_; ++j) {
        exp.push_back(PSeries::zero(n_, T_, k_one()));
        log.push_back(PSeries::zero(n_, T_, k_one()));
    }
    // Exp picks up the degree-m part of the iterated difference Delta^[m]
    // over m! (the m-th finite difference of the degree-m coefficient of
    // the s-family [s](t), a polynomial in s, is m! times its leading
    // coefficient); Log is the Newton-series derivative at s = 0.
    for (unsigned m = 1; m <= T_; ++m) {
        std::vector<PSeries> delta_m = iterated_difference(m);
        PadicNum inv_fact = PadicNum::from_rat(p_, Rat(1, factorial(m)), prec_);
        Rat log_c = Rat(((m + 1) % 2 == 0) ? 1 : -1, m);
        PadicNum log_coeff = PadicNum::from_rat(p_, log_c, prec_);
        for (unsigned j = 0; j < n_; ++j) {
            exp[j] = exp[j] + delta_m[j].homogeneous_part(m).scaled(inv_fact);
            log[j] = log[j] + delta_m[j].scaled(log_coeff);
        }
    }
    // linear part of Exp is the identity
    for (unsigned j = 0; j < n_; ++j) {
        PSeries lin = exp[j].homogeneous_part(1) - PSeries::variable(n_, T_, k_one(), j);
        if (!certified_zero(lin))
            throw consistency_error("Exp linear part is not the identity");
    }
    // mutual inverses
    for (unsigned j = 0; j < n_; ++j) {
        PSeries el = exp[j].compose(log);
        PSeries le = log[j].compose(exp);
        PSeries idj = PSeries::variable(n_, T_, k_one(), j);
        if (!certified_zero(el - idj) || !certified_zero(le - idj))
            throw consistency_error("Exp and Log fail to invert each other to order T");
    }
    // Log is a homomorphism: Log(F(x,y)) = Log(x) + Log(y)
    {
        std::vector<unsigned> xpos(n_), ypos(n_);
        for (unsigned i = 0; i < n_; ++i) {
            xpos[i] = i;
            ypos[i] = n_ + i;
        }
        for (unsigned j = 0; j < n_; ++j) {
            PSeries lhs = log[j].compose(F_);
            PSeries rhs = log[j].embedded(2 * n_, xpos) + log[j].embedded(2 * n_, ypos);
            if (!certified_zero(lhs - rhs))
                throw consistency_error("Log fails the homomorphism identity to order T");
        }
    }
    // dimension-one cross-check against the normalized invariant differential
    if (n_ == 1) {
        PSeries Fx = F_[0].derivative(0).with_vars_zeroed({0});
        PSeries q(1, T_ - 1, k_one());
        for (const auto& [m, c] : Fx.terms())
            if (m[1] <= T_ - 1) q.add_term(Mono{m[1]}, c);
        PSeries log_alt = integrate_1var(series_inverse(q), p_, prec_).truncated(T_);
        if (!certified_zero(log_alt - log[0].truncated(T_)))
            throw consistency_error(
                "Log disagrees with the invariant-differential integral in dimension 1");
    }
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->exp_log_ready) {
        cache_->exp = std::move(exp);
        cache_->log = std::move(log);
        cache_->exp_log_ready = true;
    }
}

const std::vector<PSeries>& FormalGroupLaw::exp_series() const {
    build_exp_log();
    return cache_->exp;
}

const std::vector<PSeries>& FormalGroupLaw::log_series() const {
    build_exp_log();
    return cache_->log;
}

long FormalGroupLaw::normalize_direction(std::vector<PadicNum>& u) {
    long min_val = 0;
    bool found = false;
    for (const auto& c : u) {
        if (c.is_exact_zero()) continue;
        if (c.is_big_o())
            throw precision_error("direction vector has a coefficient with no known digits");
        if (!found || c.val_regular() < min_val) {
            min_val = c.val_regular();
            found = true;
        }
    }
    if (!found) throw usage_error("direction vector is zero");
    if (min_val != 0)
        for (auto& c : u) c = c.shift(-min_val);
    return -min_val;
}

std::vector<PSeries> FormalGroupLaw::eval_1ps(const std::vector<PadicNum>& u) const {
    if (u.size() != n_) throw usage_error("direction vector has wrong dimension");
    for (const auto& c : u)
        if (!c.is_exact_zero() && (c.is_big_o() || c.val_regular() < 0))
            throw usage_error("|u| must equal 1; normalize the direction first");
    bool unit = false;
    for (const auto& c : u)
        if (!c.is_zeroish() && c.val_regular() == 0) unit = true;
    if (!unit) throw usage_error("|u| must equal 1; normalize the direction first");
    std::vector<PSeries> h;
    for (unsigned j = 0; j < n_; ++j) h.push_back(exp_series()[j].restrict_to_line(u));
    return h;
}

bool FormalGroupLaw::equiv(const std::vector<PadicNum>& u,
                           const std::vector<PadicNum>& uprime) const {
    if (u.size() != n_ || uprime.size() != n_)
        throw usage_error("direction vectors have wrong dimension");
    // find a unit coordinate of u
    int pivot = -1;
    for (unsigned i = 0; i < n_; ++i)
        if (!u[i].is_zeroish() && u[i].val_regular() == 0) pivot = static_cast<int>(i);
    if (pivot < 0) throw usage_error("|u| must equal 1");
    const PadicNum& up = uprime[pivot];
    if (up.is_zeroish() || up.val_regular() != 0) return false;
    PadicNum eta = up / u[pivot];
    for (unsigned i = 0; i < n_; ++i) {
        PadicNum diff = uprime[i] - eta * u[i];
        if (!diff.is_zeroish()) return false;
    }
    return true;
}

JetMap FormalGroupLaw::reduce_jet_mod_p(const std::vector<PadicNum>& u, int m) const {
    if (m < 0) throw usage_error("jet order must be >= 0");
    if (m >= p_)
        throw usage_error("jet order m = " + std::to_string(m) + " >= p = " +
                          std::to_string(p_) +
                          ": the exponential coefficients are no longer p-integral");
    if (static_cast<unsigned>(m) > T_)
        throw usage_error("jet order exceeds the truncation order of the group");
    std::vector<PSeries> h = eval_1ps(u);
    FieldPtr fp = FiniteField::prime_field(p_);
    std::vector<TruncSeries<FFElem>> coords;
    for (unsigned j = 0; j < n_; ++j) {
        TruncSeries<FFElem> cj(1, static_cast<unsigned>(m), fp->one());
        for (long d = 1; d <= m; ++d) {
            PadicNum c = h[j].coeff(Mono{static_cast<std::uint16_t>(d)});
            if (c.is_exact_zero()) continue;
            if (!c.is_integral())
                throw consistency_error("jet coefficient is not p-integral despite m < p");
            cj.add_term(Mono{static_cast<std::uint16_t>(d)}, fp->from_int(Int(c.residue_mod_p())));
        }
        coords.push_back(std::move(cj));
    }
    return JetMap{m, std::move(coords)};
}

FormalGroupLaw::DiskBoundReport FormalGroupLaw::disk_bound(
    const std::vector<PadicNum>& u, const std::vector<unsigned>& eq_indices,
    const LocalFieldParams& params, std::optional<int> jet_link) const {
    if (eq_indices.empty()) throw usage_error("need at least one local-equation coordinate");
    for (unsigned j : eq_indices)
        if (j < 1 || j > n_) throw usage_error("local-equation index out of range");
    if (params.p != p_) throw usage_error("local field parameters disagree with the group prime");
    if (!ramification_guard(params.p, params.e))
        throw hypothesis_error("p fails the ramification guard p > max(e+1, exp(e/exp(1)))");

    DiskBoundReport rep;
    rep.lambda = params.lambda();
    std::vector<PSeries> h = eval_1ps(u);
    long h_max = std::min<long>(static_cast<long>(T_), params.p - 2);
    rep.scanned_up_to = h_max;
    for (long N = 1; N <= h_max; ++N) {
        for (unsigned j : eq_indices) {
            PadicNum c = h[j - 1].coeff(Mono{static_cast<std::uint16_t>(N)});
            if (!c.is_zeroish() && c.val_regular() <= 0) {
                rep.status = DiskBoundReport::Status::Ok;
                rep.N = N;
                rep.j0 = j;
                rep.bound_real = disk_bound_value(N, rep.lambda);
                rep.bound_floor = floor_rat(rep.bound_real);
                if (jet_link) {
                    if (N > *jet_link + 1)
                        throw consistency_error(
                            "witness degree N exceeds the linked jet order + 1");
                    rep.jet_link_bound =
                        Rat(1) + Rat(*jet_link) / (Rat(1) - rep.lambda);
                }
                return rep;
            }
        }
    }
    rep.status = DiskBoundReport::Status::Inconclusive;
    rep.diagnostic =
        "no coordinate with |P_{j,h}(u)| >= 1 for h <= " + std::to_string(h_max) +
        "; the direction is degenerate for the supplied local equations";
    return rep;
}

}  // namespace ccb
