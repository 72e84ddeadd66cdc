#pragma once

#include <gmpxx.h>

#include <string>

namespace eoq {

// Exact rational coefficients. GMP keeps values canonical (reduced,
// positive denominator) as long as inputs are canonical, so parsing is
// the only place that needs an explicit canonicalize step.
using Rational = mpq_class;

Rational parse_rational(const std::string& text);
std::string rational_str(const Rational& q);

bool rat_is_integer(const Rational& q);
long rat_to_long(const Rational& q);

} // namespace eoq
