#include "ccb/counting.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace ccb {

namespace {

TruncSeries<FFElem> lift_series(const TruncSeries<FFElem>& s, const FieldEmbedding& emb) {
    TruncSeries<FFElem> r(s.nvars(), s.trunc_order(), emb.to()->one());
    for (const auto& [m, c] : s.terms()) r.add_term(m, emb(c));
    return r;
}

// total degree of a polynomial stored as a truncated series
unsigned poly_degree(const TruncSeries<FFElem>& s) { return s.is_zero() ? 0 : s.max_degree(); }

bool is_homogeneous(const TruncSeries<FFElem>& s) {
    if (s.is_zero()) return true;
    unsigned d = poly_degree(s);
    for (const auto& [m, c] : s.terms())
        if (mono_degree(m) != d) return false;
    return true;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e, std::uint64_t cap) {
    Int v = pow_int(Int(base), e);
    if (v > Int(cap)) throw resource_error("enumeration of " + v.str() + " tuples exceeds cap");
    return v.convert_to<std::uint64_t>();
}

bool all_vanish(const std::vector<TruncSeries<FFElem>>& polys, const std::vector<FFElem>& pt) {
    for (const auto& f : polys)
        if (!f.eval(pt).is_zero()) return false;
    return true;
}

// Coefficients of y^0, y^1, y^2 of a two-variable polynomial as univariate
// polynomials in x; nullopt when the y-degree exceeds 2.
std::optional<std::array<TruncSeries<FFElem>, 3>> split_quadratic_in_y(
    const TruncSeries<FFElem>& f) {
    unsigned t = f.trunc_order();
    std::array<TruncSeries<FFElem>, 3> out{TruncSeries<FFElem>(1, t, f.proto()),
                                           TruncSeries<FFElem>(1, t, f.proto()),
                                           TruncSeries<FFElem>(1, t, f.proto())};
    for (const auto& [m, c] : f.terms()) {
        if (m[1] > 2) return std::nullopt;
        out[m[1]].add_term(Mono{m[0]}, c);
    }
    return out;
}

// Number of roots in F of a*y^2 + b*y + c ("all" = q when the polynomial is
// identically zero). Odd characteristic.
std::uint64_t quadratic_roots(const FiniteField& F, const FFElem& a, const FFElem& b,
                              const FFElem& c) {
    if (!a.is_zero()) {
        FFElem disc = b * b - F.from_int(4) * a * c;
        int ch = F.chi(disc);
        return ch == 0 ? 1 : (ch == 1 ? 2 : 0);
    }
    if (!b.is_zero()) return 1;
    return c.is_zero() ? F.q() : 0;
}

// Exact count for a single plane curve with y-degree <= 2: per-x quadratic
// root counting via Euler's criterion, O(q log q) instead of O(q^2).
std::optional<Int> fast_plane_curve_count(const VarietyPresentation& v, const FiniteField& F,
                                          const FieldEmbedding& emb) {
    if (v.polys.size() != 1) return std::nullopt;
    if (F.p() == 2) return std::nullopt;
    if (v.ambient == VarietyPresentation::Ambient::Affine) {
        if (v.ambient_dim != 2) return std::nullopt;
        auto q3 = split_quadratic_in_y(v.polys[0]);
        if (!q3) return std::nullopt;
        std::array<TruncSeries<FFElem>, 3> lifted{lift_series((*q3)[0], emb),
                                                  lift_series((*q3)[1], emb),
                                                  lift_series((*q3)[2], emb)};
        Int total = 0;
        for (std::uint64_t i = 0; i < F.q(); ++i) {
            std::vector<FFElem> x{F.element(i)};
            total += Int(quadratic_roots(F, lifted[2].eval(x), lifted[1].eval(x),
                                         lifted[0].eval(x)));
        }
        return total;
    }
    // projective plane: affine chart x3 = 1 plus the line at infinity
    if (v.ambient_dim != 2) return std::nullopt;
    const auto& f = v.polys[0];
    TruncSeries<FFElem> chart(2, f.trunc_order(), f.proto());
    for (const auto& [m, c] : f.terms()) chart.add_term(Mono{m[0], m[1]}, c);
    VarietyPresentation affine{VarietyPresentation::Ambient::Affine, 2, {chart}, v.field};
    auto base = fast_plane_curve_count(affine, F, emb);
    if (!base) return std::nullopt;
    // line at infinity: points (x : y : 0), normalized (1 : t : 0) and (0 : 1 : 0)
    TruncSeries<FFElem> lifted = lift_series(f, emb);
    Int inf = 0;
    for (std::uint64_t i = 0; i < F.q(); ++i) {
        std::vector<FFElem> pt{F.one(), F.element(i), F.zero()};
        if (lifted.eval(pt).is_zero()) ++inf;
    }
    {
        std::vector<FFElem> pt{F.zero(), F.one(), F.zero()};
        if (lifted.eval(pt).is_zero()) ++inf;
    }
    return *base + inf;
}

}  // namespace

void VarietyPresentation::validate() const {
    if (!field) throw usage_error("variety has no base field");
    for (const auto& f : polys) {
        if (f.nvars() != ncoords())
            throw usage_error("polynomial variable count disagrees with the ambient space");
        if (ambient == Ambient::Projective && !is_homogeneous(f))
            throw usage_error("projective presentations need homogeneous polynomials");
    }
}

Int count_points(const VarietyPresentation& v, unsigned n, std::uint64_t cap) {
    v.validate();
    FieldPtr Fn = n == 1 ? v.field
                         : FiniteField::extension_any(v.field->p(), v.field->s() * n,
                                                      std::max<std::uint64_t>(cap, 100000000ull));
    FieldEmbedding emb(v.field, Fn);
    // fast path first: exact and cheap for the plane curves that need it
    if (auto fast = fast_plane_curve_count(v, *Fn, emb)) return *fast;

    std::vector<TruncSeries<FFElem>> lifted;
    for (const auto& f : v.polys) lifted.push_back(lift_series(f, emb));
    const std::uint64_t q = Fn->q();
    if (v.ambient == VarietyPresentation::Ambient::Affine) {
        std::uint64_t total = checked_pow(q, v.ambient_dim, cap);
        Int count = 0;
        std::vector<FFElem> pt(v.ambient_dim, Fn->zero());
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < v.ambient_dim; ++i) {
                pt[i] = Fn->element(t % q);
                t /= q;
            }
            if (all_vanish(lifted, pt)) ++count;
        }
        return count;
    }
    // projective: representatives with first nonzero coordinate 1
    checked_pow(q, v.ambient_dim, cap);
    Int count = 0;
    unsigned nc = v.ncoords();
    for (unsigned lead = 0; lead < nc; ++lead) {
        unsigned free_coords = nc - lead - 1;
        std::uint64_t total = 1;
        for (unsigned i = 0; i < free_coords; ++i) total *= q;
        std::vector<FFElem> pt(nc, Fn->zero());
        pt[lead] = Fn->one();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < free_coords; ++i) {
                pt[lead + 1 + i] = Fn->element(t % q);
                t /= q;
            }
            if (all_vanish(lifted, pt)) ++count;
        }
    }
    return count;
}

std::string ScanPoint::str() const {
    std::string out = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ":";
        out += coords[i].str();
    }
    return out + ")";
}

std::vector<ScanPoint> singular_points(const VarietyPresentation& v, unsigned s,
                                       std::uint64_t cap) {
    v.validate();
    if (s < 1 || s > 2) throw usage_error("singular scan supports extension degree 1 or 2");
    FieldPtr Fs = s == 1 ? v.field : FiniteField::extension_any(v.field->p(), v.field->s() * s);
    FieldEmbedding emb(v.field, Fs);
    std::vector<TruncSeries<FFElem>> eqs;
    for (const auto& f : v.polys) {
        eqs.push_back(lift_series(f, emb));
        for (unsigned i = 0; i < v.ncoords(); ++i)
            eqs.push_back(lift_series(f.derivative(i), emb));
    }
    const std::uint64_t q = Fs->q();
    std::vector<ScanPoint> out;
    if (v.ambient == VarietyPresentation::Ambient::Affine) {
        std::uint64_t total = checked_pow(q, v.ambient_dim, cap);
        std::vector<FFElem> pt(v.ambient_dim, Fs->zero());
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < v.ambient_dim; ++i) {
                pt[i] = Fs->element(t % q);
                t /= q;
            }
            if (all_vanish(eqs, pt)) out.push_back(ScanPoint{pt});
        }
        return out;
    }
    checked_pow(q, v.ambient_dim, cap);
    unsigned nc = v.ncoords();
    for (unsigned lead = 0; lead < nc; ++lead) {
        unsigned free_coords = nc - lead - 1;
        std::uint64_t total = 1;
        for (unsigned i = 0; i < free_coords; ++i) total *= q;
        std::vector<FFElem> pt(nc, Fs->zero());
        pt[lead] = Fs->one();
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (unsigned i = 0; i < free_coords; ++i) {
                pt[lead + 1 + i] = Fs->element(t % q);
                t /= q;
            }
            if (all_vanish(eqs, pt)) out.push_back(ScanPoint{pt});
        }
    }
    return out;
}

Int a_d_count(const VarietyPresentation& v, const std::vector<SingularPointData>& branch_data,
              unsigned n, std::uint64_t cap) {
    Int base = count_points(v, n, cap);
    // scan for singular points rational over F_{q^n} (n <= 2 for the scan)
    unsigned scan_ext = std::min(n, 2u);
    if (n > 2)
        throw usage_error("a_d_count: singular-point discovery is capped at quadratic "
                          "extensions");
    std::vector<ScanPoint> sing = singular_points(v, scan_ext, cap);
    FieldPtr Fs =
        scan_ext == 1 ? v.field : FiniteField::extension_any(v.field->p(), v.field->s() * scan_ext);
    Int corrections = 0;
    for (const auto& sp : sing) {
        bool matched = false;
        for (const auto& bd : branch_data) {
            if (bd.field_ext > scan_ext) continue;
            if (bd.point_index.size() != sp.coords.size()) continue;
            FieldPtr Fb = bd.field_ext == 1
                              ? v.field
                              : FiniteField::extension_any(v.field->p(),
                                                           v.field->s() * bd.field_ext);
            FieldEmbedding emb(Fb, Fs);
            bool same = true;
            for (size_t i = 0; i < sp.coords.size() && same; ++i) {
                FFElem want = emb(Fb->element(static_cast<std::uint64_t>(bd.point_index[i])));
                if (!(want == sp.coords[i])) same = false;
            }
            if (same) {
                corrections += Int(bd.r_local) - 1;
                matched = true;
                break;
            }
        }
        if (!matched)
            throw usage_error("singular point " + sp.str() +
                              " discovered by the Jacobian scan has no branch data");
    }
    return base + corrections;
}

QuadSurd weil_bound(unsigned r, const std::vector<Int>& genera, const Int& q) {
    if (genera.size() != r) throw usage_error("need one genus per geometric component");
    Int gsum = 0;
    for (const auto& g : genera) gsum += g;
    return QuadSurd(Rat((q + 1) * Int(r)), Rat(2 * gsum), q);
}

bool weil_check(const Int& a_d_value, unsigned r, const std::vector<Int>& genera, const Int& q) {
    return QuadSurd(Rat(a_d_value)) <= weil_bound(r, genera, q);
}

namespace {

// rank of a set of vectors over F_q via Gaussian elimination
unsigned ff_rank(std::vector<std::vector<FFElem>> rows) {
    unsigned rank = 0;
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    size_t rix = 0;
    for (size_t c = 0; c < cols && rix < rows.size(); ++c) {
        size_t pivot = rix;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rix], rows[pivot]);
        FFElem inv = rows[rix][c].inverse();
        for (size_t cc = c; cc < cols; ++cc) rows[rix][cc] = rows[rix][cc] * inv;
        for (size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == rix || rows[rr][c].is_zero()) continue;
            FFElem f = rows[rr][c];
            for (size_t cc = c; cc < cols; ++cc)
                rows[rr][cc] = rows[rr][cc] - f * rows[rix][cc];
        }
        ++rix;
        ++rank;
    }
    return rank;
}

long delta_at_order(
    const std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>>& branches,
    unsigned tb) {
    const unsigned r = static_cast<unsigned>(branches.size());
    const FiniteField& F = *branches[0].first.proto().field();
    // vectors live in the direct sum of r copies of k[t]/(t^tb)
    auto truncate_vec = [&](const std::vector<TruncSeries<FFElem>>& comps) {
        std::vector<FFElem> v;
        for (const auto& s : comps)
            for (unsigned d = 0; d < tb; ++d) v.push_back(s.coeff(Mono{static_cast<std::uint16_t>(d)}));
        return v;
    };
    // monomials u^a v^b with a+b <= tb; u = (phi1 on each branch), v = (phi2)
    std::vector<TruncSeries<FFElem>> u_comps, v_comps, one_comps;
    for (const auto& [f1, f2] : branches) {
        TruncSeries<FFElem> f1t(1, tb, F.one()), f2t(1, tb, F.one());
        for (const auto& [m, c] : f1.terms())
            if (m[0] <= tb) f1t.add_term(m, c);
        for (const auto& [m, c] : f2.terms())
            if (m[0] <= tb) f2t.add_term(m, c);
        u_comps.push_back(f1t);
        v_comps.push_back(f2t);
        one_comps.push_back(TruncSeries<FFElem>::constant(1, tb, F.one(), F.one()));
    }
    std::vector<std::vector<FFElem>> rows;
    // powers u^a componentwise
    std::vector<std::vector<TruncSeries<FFElem>>> upow{one_comps};
    for (unsigned a = 1; a <= tb; ++a) {
        std::vector<TruncSeries<FFElem>> nxt;
        for (unsigned i = 0; i < r; ++i) nxt.push_back(upow.back()[i] * u_comps[i]);
        upow.push_back(std::move(nxt));
    }
    for (unsigned a = 0; a <= tb; ++a) {
        std::vector<TruncSeries<FFElem>> cur = upow[a];
        for (unsigned b = 0; a + b <= tb; ++b) {
            if (b > 0)
                for (unsigned i = 0; i < r; ++i) cur[i] = cur[i] * v_comps[i];
            rows.push_back(truncate_vec(cur));
        }
    }
    unsigned rank = ff_rank(std::move(rows));
    return static_cast<long>(r) * static_cast<long>(tb) - static_cast<long>(rank);
}

}  // namespace

DeltaReport delta_invariant(
    const std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>>& branches,
    unsigned tb_start, unsigned tb_cap) {
    if (branches.empty()) throw usage_error("need at least one branch parametrization");
    for (const auto& [f1, f2] : branches) {
        if (f1.nvars() != 1 || f2.nvars() != 1)
            throw usage_error("branch parametrizations are one-variable");
        if (!f1.coeff(Mono{0}).is_zero() || !f2.coeff(Mono{0}).is_zero())
            throw usage_error("branch parametrizations must have zero constant term");
        if (f1.is_zero() && f2.is_zero())
            throw usage_error("a branch parametrization cannot be identically zero");
    }
    for (unsigned tb = tb_start; tb + 2 <= tb_cap; ++tb) {
        long d0 = delta_at_order(branches, tb);
        long d1 = delta_at_order(branches, tb + 1);
        long d2 = delta_at_order(branches, tb + 2);
        if (d0 == d1 && d1 == d2) {
            DeltaReport rep;
            rep.delta = d0;
            rep.r_local = static_cast<unsigned>(branches.size());
            rep.stabilized_at = tb;
            if (rep.r_local > rep.delta + 1)
                throw consistency_error("branch count exceeds delta + 1");
            return rep;
        }
    }
    throw inconclusive_error("delta invariant did not stabilize below the truncation cap");
}

Int genus_bookkeeping(const Int& geometric_genus, const std::vector<long>& deltas) {
    Int g = geometric_genus;
    for (long d : deltas) {
        if (d < 0) throw usage_error("delta invariants are non-negative");
        g += d;
    }
    return g;
}

long plane_curve_multiplicity(const TruncSeries<FFElem>& local_eq) {
    if (local_eq.is_zero()) throw usage_error("zero local equation");
    return static_cast<long>(local_eq.min_degree());
}

}  // namespace ccb
