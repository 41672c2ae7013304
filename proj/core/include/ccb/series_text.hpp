#pragma once

#include <string>
#include <vector>

#include "ccb/series.hpp"

namespace ccb {

// Text format: sum of terms "c * x1^a1*x2^a2"; coefficients print in their
// exact form ("3", "[1,2]", "(5^-1 * 3 mod 5^12)", "3/4"). Parse(print(s))
// reproduces s bit-exactly.

std::vector<std::string> default_var_names(unsigned nvars);

std::string series_to_text(const TruncSeries<FFElem>& s,
                           const std::vector<std::string>& names = {});
std::string series_to_text(const TruncSeries<PadicNum>& s,
                           const std::vector<std::string>& names = {});

TruncSeries<FFElem> parse_ff_series(const std::string& text, unsigned nvars, unsigned trunc,
                                    const FFElem& proto,
                                    const std::vector<std::string>& names = {});
TruncSeries<PadicNum> parse_padic_series(const std::string& text, unsigned nvars, unsigned trunc,
                                         const PadicNum& proto,
                                         const std::vector<std::string>& names = {});

// One-forms on the (s1, s2) chart: "ds1 + s1^2*ds2", "s2*ds1 - s1^3*ds2".
PolyOneForm<FFElem> parse_ff_oneform(const std::string& text, unsigned trunc,
                                     const FFElem& proto);
std::string oneform_to_text(const PolyOneForm<FFElem>& w);

// JSON form: an array of {"exps": [...], "coeff": "<exact string>"};
// the serialized text round-trips bit-exactly through the parser.
std::string series_to_json(const TruncSeries<FFElem>& s);
std::string series_to_json(const TruncSeries<PadicNum>& s);
TruncSeries<FFElem> ff_series_from_json(const std::string& json, unsigned nvars, unsigned trunc,
                                        const FFElem& proto);
TruncSeries<PadicNum> padic_series_from_json(const std::string& json, unsigned nvars,
                                             unsigned trunc, const PadicNum& proto);

}  // namespace ccb
