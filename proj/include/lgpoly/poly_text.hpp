#pragma once

#include <string>

#include "lgpoly/polyring.hpp"

namespace lgpoly {

// Accepts either a dense coefficient list `[c0, c1, ..., cd]` (JSON array of
// decimal strings or numbers) or an expression over the variable `x` or `n`
// with + - * ^, integer literals, parentheses and implicit multiplication
// ("2x", "3(x-1)"). Throws ParseError.
IntPoly parse_poly(const std::string& text);

// Dense canonical form as a JSON array of decimal strings, e.g.
// ["-10","2"] for 2x - 10. The zero polynomial prints as ["0"].
std::string to_dense_list(const IntPoly& f);

// Human-readable expanded form, e.g. "2*n - 10".
std::string to_display(const IntPoly& f, char variable = 'x');

}  // namespace lgpoly
