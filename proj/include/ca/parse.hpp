#pragma once

#include <string>

#include "ca/calculus.hpp"

namespace ca {

// Expression grammar: integers, rationals p/q, coordinate identifiers,
// + - * / ^ with nonnegative integer exponents, parentheses; whitespace
// insignificant.  Canonical printing (Scalar::str) uses descending
// graded-lex monomial order; parse(print(s)) == s.
//
// Errors carry 1-based line/column positions into the given text.
Scalar parse_scalar(const std::string& text, const Chart& chart);

// Differential-form expressions: sums of terms `c * dx^dy^...` where c is a
// scalar factor under the grammar above and each `dx` is `d` followed by a
// coordinate name.  All terms must have the same wedge degree.
DifferentialForm parse_form(const std::string& text, const Chart& chart);

std::string print_form(const DifferentialForm& w);

}  // namespace ca
