#include "ccb/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "ccb/bounds.hpp"
#include "ccb/counting.hpp"
#include "ccb/formal_group.hpp"
#include "ccb/jets.hpp"
#include "ccb/presets.hpp"
#include "ccb/selftest.hpp"
#include "ccb/series_text.hpp"
#include "ccb/zero_est.hpp"
#include "ccb/zeta.hpp"

namespace ccb {

const char* const kCliVersion = "0.1.0";

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240717ull;

const char* kHelp = R"(usage: ccb <command> <subcommand> [--flag value ...]

commands:
  fgroup exp        --kind additive|multiplicative|elliptic|product-elliptic
                    [--a "a1,a2,a3,a4,a6"] [--curves "a;b;c"] [--n dim]
                    --p P [--prec N] [--order T] [--preset multiplicative-group]
  zeros count       --h "<series in z>" --p P --rexp RHO [--tail poly|factorial --mu MU]
  zeros mv          --H "<series>" --u "u1,..,un" --p P [--e E] [--f F] --N N
  disk-bound        [--preset product-e3] --p P --u "u1,..,un" --eq "j1,j2"
                    [--e E] [--f F] [--jet-link M] [--prec N] [--order T]
  jets mx           --omega1 "<form>" --omega2 "<form>" --p P [--mcap M] [--ext S]
                    [--preset rmk-sharp] [--branches FILE]
  count points      --poly "<poly>" --q Q [--ambient affine|projective] [--dim D] [--n N]
  count zeta        --poly "<poly>" --q Q --nmax B --cd C [--ambient ...] [--dim D]
  count weil        --branches FILE | --preset nodal-cubic|cuspidal-cubic|conic-pair --q Q
  bound surface     --p P --e E --f F --c1sq C --nxk N [--n DIM] [--b1 ..] [--degh2x ..]
                    [--deghkx ..] [--deghn ..] [--formula-only]
  bound sym2        --genus G --p P --count N | --preset sym2-genus3 [--count N]
  bound coleman     --genus G --p P --count N
  bound rh          --p P --f F --b1 B1 --b2 B2 --b3 B3
  selftest          [--quick|--full] [--seed S]

global flags: --json FILE (merge parameters), --out FILE, --stamp, --seed S
environment:  CC_ENUM_CAP overrides the enumeration cap
)";

struct Flags {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) != 0; }
    std::string get(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw usage_error("missing required flag --" + k);
        return it->second;
    }
    std::string get_or(const std::string& k, const std::string& dflt) const {
        auto it = kv.find(k);
        return it == kv.end() ? dflt : it->second;
    }
    std::int64_t get_int(const std::string& k) const { return std::stoll(get(k)); }
    std::int64_t get_int_or(const std::string& k, std::int64_t dflt) const {
        return has(k) ? std::stoll(get(k)) : dflt;
    }
    Rat get_rat(const std::string& k) const {
        std::string v = get(k);
        auto slash = v.find('/');
        if (slash == std::string::npos) return Rat(Int(v));
        return Rat(Int(v.substr(0, slash)), Int(v.substr(slash + 1)));
    }
};

const std::vector<std::string> kBoolFlags = {"quick", "full",  "formula-only",
                                             "stamp", "split", "inert"};

Flags parse_flags(const std::vector<std::string>& args, size_t start) {
    Flags f;
    for (size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0)
            throw usage_error("unexpected argument '" + a + "'");
        std::string key = a.substr(2);
        bool boolean = std::find(kBoolFlags.begin(), kBoolFlags.end(), key) != kBoolFlags.end();
        if (boolean) {
            f.kv[key] = "true";
            continue;
        }
        if (i + 1 >= args.size()) throw usage_error("flag --" + key + " needs a value");
        f.kv[key] = args[++i];
    }
    if (f.has("json")) {
        std::ifstream in(f.get("json"));
        if (!in) throw usage_error("cannot open parameter file " + f.get("json"));
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw usage_error(std::string("parameter file parse error: ") + e.what());
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (f.kv.count(it.key())) continue;  // explicit flags win
            if (it.value().is_string())
                f.kv[it.key()] = it.value().get<std::string>();
            else
                f.kv[it.key()] = it.value().dump();
        }
    }
    return f;
}

std::uint64_t enum_cap() {
    if (const char* env = std::getenv("CC_ENUM_CAP")) return std::strtoull(env, nullptr, 10);
    return kDefaultEnumCap;
}

Json manifest(const std::string& command, const Flags& f) {
    Json m;
    m["command"] = command;
    Json params = Json::object();
    for (const auto& [k, v] : f.kv) params[k] = v;
    m["params"] = params;
    m["version"] = kCliVersion;
    m["seed"] = std::stoull(f.get_or("seed", std::to_string(kDefaultSeed)));
    if (f.has("stamp")) m["timestamp"] = static_cast<std::uint64_t>(std::time(nullptr));
    return m;
}

struct Outcome {
    Json result = Json::object();
    Json inputs = Json::object();
    std::vector<CheckResult> checks;
    int exit_code = 0;
};

// the {p, v, unit, prec} object form of a p-adic number
Json padic_json(const PadicNum& c) {
    Json j;
    j["p"] = c.p();
    if (c.is_exact_zero()) {
        j["v"] = "+inf";
        j["unit"] = "0";
        j["prec"] = 0;
        return j;
    }
    j["v"] = *c.val();
    j["unit"] = c.unit().str();
    j["prec"] = c.prec();
    return j;
}

Json render_series(const TruncSeries<PadicNum>& s) {
    Json arr = Json::array();
    for (const auto& [m, c] : s.terms()) {
        Json term;
        term["exps"] = m;
        term["coeff"] = c.str();
        term["padic"] = padic_json(c);
        arr.push_back(term);
    }
    return arr;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    for (const auto& piece : split_list(text, ',')) out.emplace_back(piece);
    return out;
}

FormalGroupLaw law_from_flags(const Flags& f) {
    std::int64_t p = f.get_int("p");
    unsigned T = static_cast<unsigned>(f.get_int_or("order", 10));
    int prec = static_cast<int>(f.get_int_or("prec", static_cast<std::int64_t>(T) + 4));
    std::string kind = f.get_or("kind", "");
    if (f.get_or("preset", "") == "multiplicative-group") kind = "multiplicative";
    if (f.get_or("preset", "") == "product-e3") kind = "product-e3";
    if (kind == "additive")
        return FormalGroupLaw::additive(static_cast<unsigned>(f.get_int_or("n", 1)), p, prec, T);
    if (kind == "multiplicative") return FormalGroupLaw::multiplicative(p, prec, T);
    if (kind == "elliptic") {
        std::vector<Int> a = parse_int_list(f.get("a"));
        return FormalGroupLaw::elliptic(a, p, prec, T);
    }
    if (kind == "product-e3") return presets::product_e3(p, prec, T);
    if (kind == "product-elliptic") {
        std::vector<std::string> curves = split_list(f.get("curves"), ';');
        if (curves.size() < 2) throw usage_error("product-elliptic needs at least two curves");
        FormalGroupLaw acc = FormalGroupLaw::elliptic(parse_int_list(curves[0]), p, prec, T);
        for (size_t i = 1; i < curves.size(); ++i)
            acc = FormalGroupLaw::product(
                acc, FormalGroupLaw::elliptic(parse_int_list(curves[i]), p, prec, T));
        return acc;
    }
    throw usage_error("unknown --kind '" + kind + "'");
}

std::vector<PadicNum> parse_direction(const std::string& text, std::int64_t p, int prec) {
    std::vector<PadicNum> u;
    for (const auto& piece : split_list(text, ',')) u.push_back(PadicNum::parse(p, piece, prec));
    return u;
}

Outcome cmd_fgroup(const Flags& f) {
    Outcome o;
    FormalGroupLaw g = law_from_flags(f);
    o.inputs["kind"] = g.kind();
    o.inputs["p"] = g.p();
    o.inputs["prec"] = g.prec();
    o.inputs["order"] = g.order();
    const auto& exp = g.exp_series();
    const auto& log = g.log_series();
    Json je = Json::array(), jl = Json::array();
    for (const auto& s : exp) je.push_back(render_series(s));
    for (const auto& s : log) jl.push_back(render_series(s));
    o.result["exp"] = je;
    o.result["log"] = jl;
    o.checks.push_back({"axioms", true, "identity, commutativity, associativity to order T"});
    o.checks.push_back({"exp-log-inverse", true, "Exp o Log = Log o Exp = id to order T"});
    o.checks.push_back({"log-homomorphism", true, "Log(F(x,y)) = Log(x) + Log(y) to order T"});
    if (g.dim() == 1)
        o.checks.push_back({"invariant-differential",
                            true,
                            "Log matches the integral of 1/F_x(0,t) dt"});
    return o;
}

Outcome cmd_zeros(const std::string& sub, const Flags& f) {
    Outcome o;
    std::int64_t p = f.get_int("p");
    int prec = static_cast<int>(f.get_int_or("prec", 24));
    PadicNum one = PadicNum::one(p, prec);
    if (sub == "count") {
        unsigned trunc = static_cast<unsigned>(f.get_int_or("trunc", 24));
        TruncSeries<PadicNum> h = parse_padic_series(f.get("h"), 1, trunc, one);
        Rat rho = f.get_rat("rexp");
        TailGuard guard = TailGuard::polynomial();
        if (f.get_or("tail", "poly") == "factorial") guard = TailGuard::factorial(f.get_rat("mu"));
        RadiusNormReport rep = radius_norm(h, rho, guard);
        o.inputs["h"] = series_to_text(h);
        o.inputs["rexp"] = rat_str(rho);
        o.result["nu"] = rep.nu;
        o.result["h_norm_at_r"] = std::to_string(p) + "^-" + rat_str(rep.norm_exponent);
        Json hc = Json::array();
        for (const auto& c : rep.checks) hc.push_back(c);
        o.result["hypothesis_checks"] = hc;
        o.result["bound_real"] = std::to_string(rep.nu);
        o.result["bound_floor"] = std::to_string(rep.nu);
        o.checks.push_back({"zero-count-bound", true, "n0(h, r) <= nu(h, r)"});
        return o;
    }
    if (sub == "mv") {
        unsigned trunc = static_cast<unsigned>(f.get_int_or("trunc", 24));
        unsigned nv = static_cast<unsigned>(f.get_int_or("nvars", 0));
        std::vector<PadicNum> u = parse_direction(f.get("u"), p, prec);
        if (nv == 0) nv = static_cast<unsigned>(u.size());
        TruncSeries<PadicNum> H = parse_padic_series(f.get("H"), nv, trunc, one);
        LocalFieldParams lf(p, f.get_int_or("e", 1), f.get_int_or("f", 1));
        MVZeroReport rep = mv_zero_bound(H, u, lf, f.get_int("N"));
        o.inputs["H"] = series_to_text(H);
        o.result["N"] = rep.witness_degree;
        o.result["lambda"] = rat_str(rep.lambda);
        o.result["lambda_exact"] = rep.lambda_exact;
        o.result["bound_real"] = rat_str(rep.bound_real);
        o.result["bound_floor"] = rep.bound_floor.str();
        Json hc = Json::array();
        for (const auto& c : rep.hypothesis_checks) hc.push_back(c);
        o.result["hypothesis_checks"] = hc;
        o.checks.push_back({"mv-zero-bound", true, "(N - lambda)/(1 - lambda) with exact lambda"});
        return o;
    }
    throw usage_error("unknown zeros subcommand '" + sub + "'");
}

Outcome cmd_disk_bound(const Flags& f) {
    Outcome o;
    FormalGroupLaw g =
        f.has("kind") || f.has("preset") ? law_from_flags(f) : presets::product_e3(
            f.get_int("p"), static_cast<int>(f.get_int_or("prec", 12)),
            static_cast<unsigned>(f.get_int_or("order", 8)));
    std::vector<PadicNum> u = parse_direction(f.get("u"), g.p(), g.prec());
    long scale = FormalGroupLaw::normalize_direction(u);
    std::vector<unsigned> eq;
    for (const auto& piece : split_list(f.get("eq"), ','))
        eq.push_back(static_cast<unsigned>(std::stoul(piece)));
    LocalFieldParams lf(g.p(), f.get_int_or("e", 1), f.get_int_or("f", 1));
    std::optional<int> link;
    if (f.has("jet-link")) link = static_cast<int>(f.get_int("jet-link"));
    auto rep = g.disk_bound(u, eq, lf, link);
    o.inputs["kind"] = g.kind();
    o.inputs["u_rescaled_by_p^"] = scale;
    o.inputs["eq_indices"] = eq;
    o.result["status"] =
        rep.status == FormalGroupLaw::DiskBoundReport::Status::Ok ? "ok" : "inconclusive";
    if (rep.status == FormalGroupLaw::DiskBoundReport::Status::Ok) {
        o.result["N"] = rep.N;
        o.result["j0"] = rep.j0;
        o.result["lambda"] = rat_str(rep.lambda);
        o.result["bound_real"] = rat_str(rep.bound_real);
        o.result["bound_floor"] = rep.bound_floor.str();
        if (rep.jet_link_bound) o.result["jet_link_bound"] = rat_str(*rep.jet_link_bound);
        o.checks.push_back({"witness-degree", true,
                            "|P_{j0,N}(u)| >= 1 at N = " + std::to_string(rep.N)});
    } else {
        o.result["diagnostic"] = rep.diagnostic;
        o.result["scanned_up_to"] = rep.scanned_up_to;
        o.checks.push_back({"witness-degree", false, rep.diagnostic});
        o.exit_code = 3;
    }
    return o;
}

void require_field(const Json& j, const std::string& pointer) {
    nlohmann::json::json_pointer ptr(pointer);
    try {
        (void)j.at(ptr);
    } catch (...) {
        throw usage_error("input file is missing required field " + pointer);
    }
}

Outcome cmd_jets(const Flags& f) {
    Outcome o;
    std::int64_t p = f.get_int("p");
    auto fp = FiniteField::prime_field(p);
    PolyOneForm<FFElem> w1(TruncSeries<FFElem>::zero(2, 8, fp->one()),
                           TruncSeries<FFElem>::zero(2, 8, fp->one()));
    PolyOneForm<FFElem> w2 = w1;
    std::vector<BranchRecord> branches;
    bool have_branches = false;
    if (f.get_or("preset", "") == "rmk-sharp") {
        auto forms = presets::sharp_forms(fp);
        w1 = forms.first;
        w2 = forms.second;
        branches = presets::sharp_branches(fp);
        have_branches = true;
    } else {
        unsigned ptr = static_cast<unsigned>(f.get_int_or("degree-cap", 64));
        w1 = parse_ff_oneform(f.get("omega1"), ptr, fp->one());
        w2 = parse_ff_oneform(f.get("omega2"), ptr, fp->one());
    }
    if (f.has("branches")) {
        std::ifstream in(f.get("branches"));
        if (!in) throw usage_error("cannot open branch file " + f.get("branches"));
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw usage_error(std::string("branch file parse error: ") + e.what());
        }
        require_field(j, "/branches");
        branches.clear();
        for (size_t i = 0; i < j["branches"].size(); ++i) {
            std::string base = "/branches/" + std::to_string(i);
            require_field(j, base + "/params");
            unsigned ext = 1;
            if (j["branches"][i].contains("field_ext"))
                ext = j["branches"][i]["field_ext"].get<unsigned>();
            FieldPtr fld = ext == 1 ? fp : FiniteField::extension_any(p, fp->s() * ext);
            FieldEmbedding emb(fp, fld);
            PolyOneForm<FFElem> w0 = w1;
            if (ext > 1) {
                auto lift = [&](const TruncSeries<FFElem>& s) {
                    TruncSeries<FFElem> r(s.nvars(), s.trunc_order(), fld->one());
                    for (const auto& [m, c] : s.terms()) r.add_term(m, emb(c));
                    return r;
                };
                w0 = PolyOneForm<FFElem>(lift(w1.f1), lift(w1.f2));
            }
            for (const auto& pr : j["branches"][i]["params"]) {
                if (!pr.is_array() || pr.size() != 2)
                    throw usage_error("bad parametrization pair at " + base + "/params");
                unsigned tb = static_cast<unsigned>(f.get_int_or("tb", 10));
                auto ph1 = parse_ff_series(pr[0].get<std::string>(), 1, tb, fld->one(), {"t"});
                auto ph2 = parse_ff_series(pr[1].get<std::string>(), 1, tb, fld->one(), {"t"});
                BranchRecord br;
                br.a = Int(j["branches"][i].value("a", 1));
                BranchOrd bo = ord_on_branch(ph1, ph2, w0);
                br.ord_finite = bo.finite;
                br.ord_w0 = bo.ord;
                br.param = {ph1, ph2};
                branches.push_back(std::move(br));
            }
        }
        have_branches = true;
    }
    int mcap = static_cast<int>(f.get_int_or("mcap", 6));
    unsigned ext = static_cast<unsigned>(f.get_int_or("ext", 2));
    JetSearchResult r = max_jet_order(w1, w2, mcap, ext);
    o.inputs["omega1"] = oneform_to_text(w1);
    o.inputs["omega2"] = oneform_to_text(w2);
    o.inputs["mcap"] = mcap;
    o.inputs["ext"] = ext;
    o.result["m"] = r.m;
    o.result["status"] =
        r.status == JetSearchResult::Status::Exact ? "exact" : "at-cap-lower-bound";
    if (r.witness) {
        o.result["witness_jet"] = r.witness->str();
        o.result["witness_ext_degree"] = r.witness_ext_degree;
    }
    if (have_branches) {
        Int bound = overdetermined_bound(branches);
        o.result["bound_thm_over"] = bound.str();
        bool consistent = r.status != JetSearchResult::Status::Exact || Int(r.m) <= bound;
        o.checks.push_back({"m-le-bound", consistent,
                            "search m(x) vs the branch-data bound"});
        if (!consistent) o.exit_code = 2;
    }
    if (r.status == JetSearchResult::Status::AtCap) o.exit_code = 3;
    return o;
}

FieldPtr field_from_q(std::int64_t q) {
    for (std::int64_t p = 2; p <= q; ++p) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
        if (q % p != 0) continue;
        unsigned s = 0;
        std::int64_t v = q;
        while (v % p == 0) {
            v /= p;
            ++s;
        }
        if (v != 1) throw usage_error("q must be a prime power");
        return s == 1 ? FiniteField::prime_field(p) : FiniteField::extension_any(p, s);
    }
    throw usage_error("q must be a prime power >= 2");
}

VarietyPresentation variety_from_flags(const Flags& f, const FieldPtr& field) {
    VarietyPresentation v;
    v.field = field;
    std::string amb = f.get_or("ambient", "projective");
    v.ambient = amb == "affine" ? VarietyPresentation::Ambient::Affine
                                : VarietyPresentation::Ambient::Projective;
    v.ambient_dim = static_cast<unsigned>(f.get_int_or("dim", 2));
    unsigned nc = v.ncoords();
    unsigned trunc = static_cast<unsigned>(f.get_int_or("degree-cap", 512));
    for (const auto& ptxt : split_list(f.get("poly"), ';'))
        v.polys.push_back(parse_ff_series(ptxt, nc, trunc, field->one()));
    v.validate();
    return v;
}

Outcome cmd_count(const std::string& sub, const Flags& f) {
    Outcome o;
    if (sub == "points") {
        FieldPtr field = field_from_q(f.get_int("q"));
        VarietyPresentation v = variety_from_flags(f, field);
        unsigned n = static_cast<unsigned>(f.get_int_or("n", 1));
        Int c = count_points(v, n, enum_cap());
        o.inputs["q"] = f.get_int("q");
        o.inputs["n"] = n;
        o.result["count"] = c.str();
        return o;
    }
    if (sub == "zeta") {
        FieldPtr field = field_from_q(f.get_int("q"));
        VarietyPresentation v = variety_from_flags(f, field);
        unsigned nmax = static_cast<unsigned>(f.get_int("nmax"));
        Int cd = Int(f.get_or("cd", "0"));
        std::vector<Int> counts;
        for (unsigned n = 1; n <= nmax; ++n) counts.push_back(count_points(v, n, enum_cap()));
        ZetaTruncation zt = zeta_ops(counts, cd);
        Json jc = Json::array(), jz = Json::array(), jzs = Json::array();
        for (const auto& c : counts) jc.push_back(c.str());
        for (const auto& c : zt.z) jz.push_back(rat_str(c));
        for (const auto& c : zt.zstar) jzs.push_back(rat_str(c));
        o.result["counts"] = jc;
        o.result["z_coefficients"] = jz;
        o.result["zstar_coefficients"] = jzs;
        o.checks.push_back({"z-integrality", true, "all Z coefficients are integers"});
        o.checks.push_back({"nstar-recovery", true, "log-derivative recovers N_n + c_D"});
        return o;
    }
    if (sub == "weil") {
        Outcome out;
        FieldPtr field;
        VarietyPresentation v;
        std::vector<SingularPointData> sdata;
        std::vector<std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>>> params;
        unsigned r = 0;
        std::vector<Int> genera;
        std::string preset = f.get_or("preset", "");
        if (!preset.empty()) {
            field = field_from_q(f.get_int("q"));
            presets::CurvePreset cp;
            if (preset == "nodal-cubic")
                cp = presets::nodal_cubic(field, f.get_int_or("c", 1));
            else if (preset == "cuspidal-cubic")
                cp = presets::cuspidal_cubic(field);
            else if (preset == "conic-pair")
                cp = presets::conic_pair(field);
            else
                throw usage_error("unknown count preset '" + preset + "'");
            v = cp.variety;
            sdata = cp.singular_data;
            params = cp.branch_params;
            r = cp.r;
            genera = cp.genera;
        } else {
            std::ifstream in(f.get("branches"));
            if (!in) throw usage_error("cannot open branch file " + f.get("branches"));
            Json j;
            try {
                j = Json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw usage_error(std::string("branch file parse error: ") + e.what());
            }
            require_field(j, "/q");
            require_field(j, "/poly");
            require_field(j, "/components");
            require_field(j, "/branches");
            field = field_from_q(j["q"].get<std::int64_t>());
            Flags vf;
            vf.kv["poly"] = j["poly"].get<std::string>();
            if (j.contains("ambient")) vf.kv["ambient"] = j["ambient"].get<std::string>();
            if (j.contains("dim")) vf.kv["dim"] = std::to_string(j["dim"].get<int>());
            v = variety_from_flags(vf, field);
            for (size_t i = 0; i < j["components"].size(); ++i) {
                require_field(j, "/components/" + std::to_string(i) + "/genus");
                genera.emplace_back(j["components"][i]["genus"].get<std::int64_t>());
            }
            r = static_cast<unsigned>(genera.size());
            for (size_t i = 0; i < j["branches"].size(); ++i) {
                std::string base = "/branches/" + std::to_string(i);
                require_field(j, base + "/point");
                require_field(j, base + "/params");
                SingularPointData sp;
                for (const auto& c : j["branches"][i]["point"])
                    sp.point_index.push_back(c.get<std::int64_t>());
                sp.field_ext = j["branches"][i].value("field_ext", 1);
                sp.r_local = static_cast<unsigned>(j["branches"][i]["params"].size());
                FieldPtr fld = sp.field_ext == 1
                                   ? field
                                   : FiniteField::extension_any(field->p(),
                                                                field->s() * sp.field_ext);
                std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>> prm;
                for (const auto& pr : j["branches"][i]["params"]) {
                    if (!pr.is_array() || pr.size() != 2)
                        throw usage_error("bad parametrization pair at " + base + "/params");
                    unsigned tb = 10;
                    prm.emplace_back(
                        parse_ff_series(pr[0].get<std::string>(), 1, tb, fld->one(), {"t"}),
                        parse_ff_series(pr[1].get<std::string>(), 1, tb, fld->one(), {"t"}));
                }
                params.push_back(std::move(prm));
                sdata.push_back(std::move(sp));
            }
        }
        Int q(field->q());
        Int ad = a_d_count(v, sdata, 1, enum_cap());
        QuadSurd bound = weil_bound(r, genera, q);
        bool pass = QuadSurd(Rat(ad)) <= bound;
        Json deltas = Json::array();
        std::vector<long> dvals;
        for (size_t i = 0; i < params.size(); ++i) {
            DeltaReport dr = delta_invariant(params[i]);
            Json d;
            d["delta"] = dr.delta;
            d["r_local"] = dr.r_local;
            deltas.push_back(d);
            dvals.push_back(dr.delta);
        }
        out.result["a_d"] = ad.str();
        out.result["weil_bound"] = bound.str();
        out.result["deltas"] = deltas;
        Int delta_total = 0;
        for (long d : dvals) delta_total += d;
        out.result["delta_total"] = delta_total.str();
        if (r == 1 && !genera.empty()) {
            // Hironaka bookkeeping for an irreducible curve
            out.result["arithmetic_genus"] = genus_bookkeeping(genera[0], dvals).str();
        }
        out.checks.push_back({"weil-bound", pass, ad.str() + " <= " + bound.str()});
        if (!pass) out.exit_code = 2;
        return out;
    }
    throw usage_error("unknown count subcommand '" + sub + "'");
}

Outcome cmd_bound(const std::string& sub, const Flags& f) {
    Outcome o;
    if (sub == "surface") {
        SurfaceBoundInputs in;
        in.field = LocalFieldParams(f.get_int("p"), f.get_int_or("e", 1), f.get_int_or("f", 1));
        in.ambient_dim = static_cast<unsigned>(f.get_int_or("n", 3));
        in.c1sq = Int(f.get("c1sq"));
        if (f.has("nxk")) {
            in.nxk = Int(f.get("nxk"));
        } else if (f.has("b1") && f.has("b2") && f.has("b3")) {
            in.nxk = rh_point_upper(in.field.p, in.field.f, Int(f.get("b1")), Int(f.get("b2")),
                                    Int(f.get("b3")));
            o.inputs["nxk_from_rh"] = in.nxk.str();
        } else {
            throw usage_error("missing required flag --nxk (or Betti numbers --b1 --b2 --b3)");
        }
        if (f.has("b1")) in.b1 = Int(f.get("b1"));
        if (f.has("b2")) in.b2 = Int(f.get("b2"));
        if (f.has("b3")) in.b3 = Int(f.get("b3"));
        if (f.has("degh2x")) in.deg_h2x = Int(f.get("degh2x"));
        if (f.has("deghkx")) in.deg_hkx = Int(f.get("deghkx"));
        if (f.has("deghn")) in.deg_hn = Int(f.get("deghn"));
        MainBoundReport rep = main_bound(in, f.has("formula-only"));
        o.result["bound"] = rep.bound.str();
        o.result["bound_floor"] = rep.bound_floor.str();
        o.result["lambda"] = rat_str(rep.lambda);
        o.result["simplified_4p"] = rep.simplified.str();
        o.result["simplified_dominates"] = rep.simplified_dominates;
        o.result["hypotheses_met"] = rep.hypotheses_met;
        for (const auto& c : rep.guard_report.checks)
            o.checks.push_back({c.name, c.pass, c.witness});
        if (!rep.hypotheses_met) o.exit_code = 2;
        return o;
    }
    if (sub == "sym2") {
        bool preset = f.get_or("preset", "") == "sym2-genus3";
        Int g = preset ? Int(3) : Int(f.get("genus"));
        std::int64_t p = preset ? f.get_int_or("p", 521) : f.get_int("p");
        Sym2Report rep = sym2_bound(g, p, Int(f.get_or("count", "0")));
        Json inv;
        inv["c1sq"] = rep.inv.c1sq.str();
        inv["theta_k"] = rep.inv.theta_k.str();
        inv["deg_hg"] = rep.inv.deg_hg.str();
        inv["deg_h2x"] = rep.inv.deg_h2x.str();
        inv["deg_hkx"] = rep.inv.deg_hkx.str();
        inv["threshold"] = rep.inv.threshold.str();
        inv["v2"] = rep.inv.v2.str();
        inv["dv"] = rep.inv.dv.str();
        inv["d2"] = rep.inv.d2.str();
        o.result["invariants"] = inv;
        o.result["bound"] = rep.bound.str();
        o.result["bound_floor"] = rep.bound_floor.str();
        o.result["hypotheses_met"] = rep.hypotheses_met;
        o.checks.push_back({"threshold", rep.threshold_ok,
                            g == 3 ? "p >= 521" : "p > (8g-10)^g = " + rep.inv.threshold.str()});
        if (rep.genus3_margin_ok)
            o.checks.push_back({"genus3-margin", *rep.genus3_margin_ok,
                                "6 (p-1)/(p-2) (p + 4 sqrt p + 3) < 7.1 p"});
        if (!rep.hypotheses_met) o.exit_code = 2;
        return o;
    }
    if (sub == "coleman") {
        Int g(f.get("genus"));
        ColemanReport rep = coleman_bound(g, f.get_int("p"), Int(f.get("count")));
        o.result["bound"] = rep.bound.str();
        o.checks.push_back({"p-gt-2g", rep.p_admissible, "good-reduction prime above 2g"});
        if (!rep.p_admissible) o.exit_code = 2;
        return o;
    }
    if (sub == "rh") {
        Int up = rh_point_upper(f.get_int("p"), f.get_int_or("f", 1), Int(f.get_or("b1", "0")),
                                Int(f.get_or("b2", "0")), Int(f.get_or("b3", "0")));
        o.result["point_upper"] = up.str();
        return o;
    }
    throw usage_error("unknown bound subcommand '" + sub + "'");
}

Outcome cmd_selftest(const Flags& f) {
    Outcome o;
    bool full = f.has("full");
    std::uint64_t seed = std::stoull(f.get_or("seed", std::to_string(kDefaultSeed)));
    o.checks = run_selftest(full, seed);
    int failed = 0;
    for (const auto& c : o.checks)
        if (!c.pass) ++failed;
    o.result["mode"] = full ? "full" : "quick";
    o.result["total"] = o.checks.size();
    o.result["failed"] = failed;
    if (failed > 0) o.exit_code = 1;
    return o;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::string command;
    try {
        if (args.empty() || args[0] == "--help" || args[0] == "help") {
            err << kHelp;
            return args.empty() ? 1 : 0;
        }
        if (args[0] == "--version") {
            out << kCliVersion << "\n";
            return 0;
        }
        command = args[0];
        size_t flag_start = 1;
        std::string sub;
        if (args.size() > 1 && args[1].rfind("--", 0) != 0) {
            sub = args[1];
            flag_start = 2;
        }
        Flags flags = parse_flags(args, flag_start);
        std::string full_command = sub.empty() ? command : command + " " + sub;

        Outcome o;
        if (command == "fgroup") {
            if (sub != "exp") throw usage_error("unknown fgroup subcommand '" + sub + "'");
            o = cmd_fgroup(flags);
        } else if (command == "zeros") {
            o = cmd_zeros(sub, flags);
        } else if (command == "disk-bound") {
            o = cmd_disk_bound(flags);
        } else if (command == "jets") {
            if (sub != "mx") throw usage_error("unknown jets subcommand '" + sub + "'");
            o = cmd_jets(flags);
        } else if (command == "count") {
            o = cmd_count(sub, flags);
        } else if (command == "bound") {
            o = cmd_bound(sub, flags);
        } else if (command == "selftest") {
            o = cmd_selftest(flags);
        } else {
            throw usage_error("unknown command '" + command + "'");
        }

        Json doc;
        doc["manifest"] = manifest(full_command, flags);
        doc["inputs_echo"] = o.inputs;
        doc["result"] = o.result;
        Json checks = Json::array();
        for (const auto& c : o.checks) {
            Json jc;
            jc["name"] = c.name;
            jc["status"] = c.pass ? "pass" : "fail";
            jc["detail"] = c.detail;
            checks.push_back(jc);
        }
        doc["checks"] = checks;
        std::string text = doc.dump(2) + "\n";
        if (flags.has("out")) {
            std::ofstream of(flags.get("out"));
            if (!of) throw usage_error("cannot open output file " + flags.get("out"));
            of << text;
        } else {
            out << text;
        }
        return o.exit_code;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n" << kHelp;
        return 1;
    } catch (const hypothesis_error& e) {
        err << "hypothesis failure: " << e.what() << "\n";
        return 2;
    } catch (const inconclusive_error& e) {
        err << "inconclusive: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ccb
