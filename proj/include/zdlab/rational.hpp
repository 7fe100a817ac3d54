#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace zdlab {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

// Exact parse of "p/q", integer, and decimal literals such as "-0.25" or
// "1.5e-3". Throws Error(kInvalidInput) on anything else.
Rational parse_rational(std::string_view text);

// Shortest round-trip decimal of `value`, read back exactly. This is how JSON
// number literals like 0.1 become 1/10.
Rational rational_from_double(double value);

std::string to_string(const Rational& value);
double to_double(const Rational& value);

bool is_probability(const Rational& value);
bool is_zero(const RationalVector& v);

std::vector<double> to_doubles(const RationalVector& v);

}  // namespace zdlab
