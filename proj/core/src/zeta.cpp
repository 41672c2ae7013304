#include "ccb/zeta.hpp"

#include "ccb/errors.hpp"

namespace ccb {

ZetaTruncation zeta_ops(const std::vector<Int>& counts, const Int& c_d) {
    if (counts.empty()) throw usage_error("need at least N_1");
    if (c_d < 0) throw usage_error("the singular correction constant is non-negative");
    for (const auto& n : counts)
        if (n < 0) throw usage_error("point counts are non-negative");
    ZetaTruncation zt;
    zt.B = static_cast<unsigned>(counts.size());
    zt.counts = counts;
    zt.c_d = c_d;
    // z_0 = 1, k z_k = sum_{j=1..k} N_j z_{k-j}
    zt.z.assign(zt.B + 1, Rat(0));
    zt.z[0] = 1;
    for (unsigned k = 1; k <= zt.B; ++k) {
        Rat acc = 0;
        for (unsigned j = 1; j <= k; ++j) acc += Rat(counts[j - 1]) * zt.z[k - j];
        zt.z[k] = acc / k;
    }
    for (const auto& c : zt.z)
        if (denominator(c) != 1)
            throw consistency_error(
                "zeta coefficients are not integral; the counts cannot come from a variety");
    // Z* = Z * (1-T)^{-c_D} = Z * sum_i C(c_D - 1 + i, i) T^i
    zt.zstar.assign(zt.B + 1, Rat(0));
    std::vector<Rat> geom(zt.B + 1, Rat(0));
    geom[0] = 1;
    if (c_d > 0) {
        // binomial recurrence: C(c-1+i, i) = C(c-2+i, i-1)*(c-1+i)/i
        Rat cur = 1;
        for (unsigned i = 1; i <= zt.B; ++i) {
            cur = cur * Rat(c_d - 1 + Int(i)) / Rat(Int(i));
            geom[i] = cur;
        }
    }
    for (unsigned i = 0; i <= zt.B; ++i)
        for (unsigned j = 0; i + j <= zt.B; ++j) zt.zstar[i + j] += zt.z[i] * geom[j];
    // recovery check: the log-derivative of Z* gives N_n + c_D
    std::vector<Rat> rec = counts_from_series(zt.zstar);
    for (unsigned n = 1; n <= zt.B; ++n)
        if (rec[n] != Rat(counts[n - 1] + c_d))
            throw consistency_error("log-derivative recovery of N* failed at n = " +
                                    std::to_string(n));
    return zt;
}

std::vector<Rat> counts_from_series(const std::vector<Rat>& z) {
    if (z.empty() || z[0] != 1) throw usage_error("series must start with constant term 1");
    std::vector<Rat> counts(z.size(), Rat(0));
    for (unsigned n = 1; n < z.size(); ++n) {
        Rat acc = Rat(Int(n)) * z[n];
        for (unsigned j = 1; j < n; ++j) acc -= counts[j] * z[n - j];
        counts[n] = acc;
    }
    return counts;
}

namespace {

// Solve A x = b over Q by Gaussian elimination; empty optional if
// inconsistent. Underdetermined systems get free variables set to 0.
std::optional<std::vector<Rat>> solve_rat(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    std::vector<long> pivot_col(rows, -1);
    size_t rix = 0;
    for (size_t c = 0; c < cols && rix < rows; ++c) {
        size_t piv = rix;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rix], a[piv]);
        std::swap(b[rix], b[piv]);
        Rat inv = Rat(1) / a[rix][c];
        for (size_t cc = c; cc < cols; ++cc) a[rix][cc] *= inv;
        b[rix] *= inv;
        for (size_t rr = 0; rr < rows; ++rr) {
            if (rr == rix || a[rr][c] == 0) continue;
            Rat f = a[rr][c];
            for (size_t cc = c; cc < cols; ++cc) a[rr][cc] -= f * a[rix][cc];
            b[rr] -= f * b[rix];
        }
        pivot_col[rix] = static_cast<long>(c);
        ++rix;
    }
    for (size_t rr = rix; rr < rows; ++rr)
        if (b[rr] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (size_t r = 0; r < rix; ++r) x[static_cast<size_t>(pivot_col[r])] = b[r];
    return x;
}

}  // namespace

std::optional<RationalFit> pade_fit(const std::vector<Rat>& series, unsigned dp, unsigned dq) {
    const unsigned B = static_cast<unsigned>(series.size()) - 1;
    if (dp + dq > B) throw usage_error("not enough series coefficients for the requested fit");
    // unknowns q_1..q_dq from: sum_{i=0}^{dq} q_i z_{k-i} = 0, k = dp+1..B
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    for (unsigned k = dp + 1; k <= B; ++k) {
        std::vector<Rat> row(dq, Rat(0));
        for (unsigned i = 1; i <= dq; ++i)
            if (k >= i) row[i - 1] = series[k - i];
        a.push_back(std::move(row));
        b.push_back(-series[k]);
    }
    auto sol = solve_rat(std::move(a), std::move(b));
    if (!sol) return std::nullopt;
    RationalFit fit;
    fit.den.assign(dq + 1, Rat(0));
    fit.den[0] = 1;
    for (unsigned i = 1; i <= dq; ++i) fit.den[i] = (*sol)[i - 1];
    fit.num.assign(dp + 1, Rat(0));
    for (unsigned k = 0; k <= dp; ++k) {
        Rat acc = 0;
        for (unsigned i = 0; i <= std::min(k, dq); ++i) acc += fit.den[i] * series[k - i];
        fit.num[k] = acc;
    }
    // verify the remaining coefficients match exactly
    std::vector<Rat> expanded = rational_series(fit, B);
    for (unsigned k = 0; k <= B; ++k)
        if (expanded[k] != series[k]) return std::nullopt;
    return fit;
}

std::vector<Rat> rational_series(const RationalFit& fit, unsigned B) {
    if (fit.den.empty() || fit.den[0] == 0) throw usage_error("denominator must be a unit at 0");
    std::vector<Rat> out(B + 1, Rat(0));
    for (unsigned k = 0; k <= B; ++k) {
        Rat acc = k < fit.num.size() ? fit.num[k] : Rat(0);
        for (unsigned i = 1; i <= std::min<unsigned>(k, static_cast<unsigned>(fit.den.size()) - 1);
             ++i)
            acc -= fit.den[i] * out[k - i];
        out[k] = acc / fit.den[0];
    }
    return out;
}

}  // namespace ccb
