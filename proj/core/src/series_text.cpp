#include "ccb/series_text.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace ccb {

namespace {

struct Term {
    std::string coeff;  // raw coefficient text, may be empty (means 1)
    Mono mono;
    int sign = 1;
};

bool needs_wrapping(const std::string& c) {
    return c.find(' ') != std::string::npos || c.find('*') != std::string::npos;
}

template <class K>
std::string render(const TruncSeries<K>& s, std::vector<std::string> names) {
    if (names.empty()) names = default_var_names(s.nvars());
    if (s.terms().empty()) return "0";
    // graded-lex order for readability and determinism
    std::vector<std::pair<Mono, K>> terms(s.terms().begin(), s.terms().end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        unsigned da = mono_degree(a.first), db = mono_degree(b.first);
        if (da != db) return da < db;
        return a.first < b.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms) {
        if (!first) os << " + ";
        first = false;
        std::string cs = CoeffOps<K>::to_text(c);
        if (needs_wrapping(cs)) cs = "(" + cs + ")";
        bool has_vars = mono_degree(m) > 0;
        if (!has_vars) {
            os << cs;
            continue;
        }
        bool coeff_is_one = (cs == "1");
        if (!coeff_is_one) os << cs << "*";
        bool firstv = true;
        for (unsigned i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << names[i];
            if (m[i] > 1) os << "^" << static_cast<unsigned>(m[i]);
        }
    }
    return os.str();
}

// Splits a series string into signed terms at top-level +/- (no nesting
// besides (...) and [...] groups).
std::vector<std::pair<int, std::string>> split_terms(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::string cur;
    int sign = 1, depth = 0;
    auto flush = [&](int next_sign) {
        std::string t;
        for (char ch : cur)
            if (!isspace(static_cast<unsigned char>(ch)) || true) t += ch;
        // trim
        size_t b = t.find_first_not_of(" \t");
        size_t e = t.find_last_not_of(" \t");
        if (b != std::string::npos) out.emplace_back(sign, t.substr(b, e - b + 1));
        cur.clear();
        sign = next_sign;
    };
    for (char ch : text) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && (ch == '+' || ch == '-')) {
            bool is_sign_prefix = cur.find_first_not_of(" \t") == std::string::npos;
            if (is_sign_prefix && ch == '-') {
                sign = -sign;
                continue;
            }
            if (is_sign_prefix && ch == '+') continue;
            // check it is not an exponent sign like ^-1 inside a coefficient
            size_t lastgood = cur.find_last_not_of(" \t");
            if (lastgood != std::string::npos && cur[lastgood] == '^') {
                cur += ch;
                continue;
            }
            flush(ch == '-' ? -1 : 1);
            continue;
        }
        cur += ch;
    }
    flush(1);
    if (out.empty()) throw usage_error("empty series text");
    return out;
}

// Splits one term into factors at top-level '*'.
std::vector<std::string> split_factors(const std::string& term) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : term) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth == 0 && ch == '*') {
            out.push_back(cur);
            cur.clear();
            continue;
        }
        cur += ch;
    }
    out.push_back(cur);
    for (auto& f : out) {
        size_t b = f.find_first_not_of(" \t");
        size_t e = f.find_last_not_of(" \t");
        f = (b == std::string::npos) ? "" : f.substr(b, e - b + 1);
        if (f.empty()) throw usage_error("empty factor in term '" + term + "'");
    }
    return out;
}

int find_var(const std::string& name, const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

template <class K, class ParseCoeff>
TruncSeries<K> parse_impl(const std::string& text, unsigned nvars, unsigned trunc,
                          const K& proto, std::vector<std::string> names, ParseCoeff pc) {
    if (names.empty()) names = default_var_names(nvars);
    TruncSeries<K> s(nvars, trunc, proto);
    std::string t = text;
    {
        size_t b = t.find_first_not_of(" \t");
        size_t e = t.find_last_not_of(" \t");
        if (b == std::string::npos) throw usage_error("empty series text");
        t = t.substr(b, e - b + 1);
    }
    if (t == "0") return s;
    for (auto& [sign, term] : split_terms(t)) {
        Mono m(nvars, 0);
        K coeff = CoeffOps<K>::from_long(proto, sign);
        for (const std::string& f : split_factors(term)) {
            // variable factor?
            std::string base = f;
            long expo = 1;
            auto caret = f.rfind('^');
            bool treated_as_var = false;
            if (caret != std::string::npos && f.find('(') == std::string::npos &&
                f.find('[') == std::string::npos) {
                base = f.substr(0, caret);
                int vi = find_var(base, names);
                if (vi >= 0) {
                    try {
                        expo = std::stol(f.substr(caret + 1));
                    } catch (const std::exception&) {
                        throw usage_error("bad exponent in factor '" + f + "'");
                    }
                    if (expo < 0) throw usage_error("negative exponent on a variable");
                    m[vi] = static_cast<std::uint16_t>(m[vi] + expo);
                    treated_as_var = true;
                }
            } else {
                int vi = find_var(f, names);
                if (vi >= 0) {
                    m[vi] = static_cast<std::uint16_t>(m[vi] + 1);
                    treated_as_var = true;
                }
            }
            if (treated_as_var) continue;
            std::string raw = f;
            if (raw.size() >= 2 && raw.front() == '(' && raw.back() == ')')
                raw = raw.substr(1, raw.size() - 2);
            coeff = coeff * pc(raw);
        }
        s.add_term(m, coeff);
    }
    return s;
}

}  // namespace

std::vector<std::string> default_var_names(unsigned nvars) {
    std::vector<std::string> names;
    if (nvars == 1) return {"z"};
    for (unsigned i = 1; i <= nvars; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

std::string series_to_text(const TruncSeries<FFElem>& s, const std::vector<std::string>& names) {
    return render(s, names);
}

std::string series_to_text(const TruncSeries<PadicNum>& s, const std::vector<std::string>& names) {
    return render(s, names);
}

TruncSeries<FFElem> parse_ff_series(const std::string& text, unsigned nvars, unsigned trunc,
                                    const FFElem& proto, const std::vector<std::string>& names) {
    auto field = proto.field();
    return parse_impl(text, nvars, trunc, proto, names, [&](const std::string& raw) {
        try {
            if (!raw.empty() && raw.front() == '[') {
                if (raw.back() != ']')
                    throw usage_error("unterminated coefficient vector: " + raw);
                std::vector<std::int64_t> cs;
                std::string body = raw.substr(1, raw.size() - 2);
                std::istringstream is(body);
                std::string piece;
                while (std::getline(is, piece, ',')) cs.push_back(std::stoll(piece));
                return field->from_coeffs(std::move(cs));
            }
            return field->from_int(Int(raw));
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("unrecognized coefficient '" + raw + "'");
        }
    });
}

TruncSeries<PadicNum> parse_padic_series(const std::string& text, unsigned nvars, unsigned trunc,
                                         const PadicNum& proto,
                                         const std::vector<std::string>& names) {
    int prec = proto.prec() > 0 ? proto.prec() : PadicNum::kDefaultPrec;
    return parse_impl(text, nvars, trunc, proto, names, [&](const std::string& raw) {
        try {
            return PadicNum::parse(proto.p(), raw, prec);
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("unrecognized coefficient '" + raw + "'");
        }
    });
}

PolyOneForm<FFElem> parse_ff_oneform(const std::string& text, unsigned trunc,
                                     const FFElem& proto) {
    // Treat ds1/ds2 as extra variables and demand each term be linear in
    // exactly one of them.
    std::vector<std::string> names{"s1", "s2", "ds1", "ds2"};
    TruncSeries<FFElem> combined =
        parse_ff_series(text, 4, trunc + 1, proto, names);
    TruncSeries<FFElem> f1(2, trunc, proto), f2(2, trunc, proto);
    for (const auto& [m, c] : combined.terms()) {
        if (m[2] + m[3] != 1)
            throw usage_error("every term of a one-form needs exactly one ds1 or ds2");
        Mono mm{m[0], m[1]};
        if (m[2] == 1)
            f1.add_term(mm, c);
        else
            f2.add_term(mm, c);
    }
    return PolyOneForm<FFElem>(std::move(f1), std::move(f2));
}

namespace {

template <class K>
std::string json_render(const TruncSeries<K>& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [m, c] : s.terms()) {
        nlohmann::ordered_json term;
        term["exps"] = m;
        term["coeff"] = CoeffOps<K>::to_text(c);
        arr.push_back(term);
    }
    return arr.dump();
}

template <class K, class ParseCoeff>
TruncSeries<K> json_parse(const std::string& json, unsigned nvars, unsigned trunc, const K& proto,
                          ParseCoeff pc) {
    nlohmann::json arr;
    try {
        arr = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
        throw usage_error(std::string("series JSON parse error: ") + e.what());
    }
    if (!arr.is_array()) throw usage_error("series JSON must be an array of terms");
    TruncSeries<K> s(nvars, trunc, proto);
    for (size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].contains("exps") || !arr[i].contains("coeff"))
            throw usage_error("series JSON term /" + std::to_string(i) +
                              " needs exps and coeff");
        Mono m;
        for (const auto& e : arr[i]["exps"]) m.push_back(e.get<std::uint16_t>());
        s.add_term(m, pc(arr[i]["coeff"].template get<std::string>()));
    }
    return s;
}

}  // namespace

std::string series_to_json(const TruncSeries<FFElem>& s) { return json_render(s); }
std::string series_to_json(const TruncSeries<PadicNum>& s) { return json_render(s); }

TruncSeries<FFElem> ff_series_from_json(const std::string& json, unsigned nvars, unsigned trunc,
                                        const FFElem& proto) {
    auto field = proto.field();
    return json_parse(json, nvars, trunc, proto, [&](const std::string& raw) {
        try {
            if (!raw.empty() && raw.front() == '[') {
                std::vector<std::int64_t> cs;
                std::istringstream is(raw.substr(1, raw.size() - 2));
                std::string piece;
                while (std::getline(is, piece, ',')) cs.push_back(std::stoll(piece));
                return field->from_coeffs(std::move(cs));
            }
            return field->from_int(Int(raw));
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("unrecognized coefficient '" + raw + "'");
        }
    });
}

TruncSeries<PadicNum> padic_series_from_json(const std::string& json, unsigned nvars,
                                             unsigned trunc, const PadicNum& proto) {
    int prec = proto.prec() > 0 ? proto.prec() : PadicNum::kDefaultPrec;
    return json_parse(json, nvars, trunc, proto,
                      [&](const std::string& raw) { return PadicNum::parse(proto.p(), raw, prec); });
}

std::string oneform_to_text(const PolyOneForm<FFElem>& w) {
    // Expand back into the 4-variable encoding so the result re-parses.
    std::vector<std::string> names{"s1", "s2", "ds1", "ds2"};
    unsigned trunc = w.f1.trunc_order() + 1;
    TruncSeries<FFElem> combined(4, trunc, w.f1.proto());
    for (const auto& [m, c] : w.f1.terms()) combined.add_term(Mono{m[0], m[1], 1, 0}, c);
    for (const auto& [m, c] : w.f2.terms()) combined.add_term(Mono{m[0], m[1], 0, 1}, c);
    if (combined.is_zero()) return "0";
    return series_to_text(combined, names);
}

}  // namespace ccb
