#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace natspec {

// Exact field element of Q. gmpxx keeps every value in lowest terms with a
// positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "p/q", optional leading sign on p. Throws ParseError.
Rational parse_rational(std::string_view text);

// Always "p/q", e.g. "3/1", "-1/2", "0/1".
std::string to_string(const Rational& value);

std::string to_string(const Integer& value);

bool is_integer(const Rational& value);

}  // namespace natspec
