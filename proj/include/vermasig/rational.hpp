#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace vermasig {

using Rational = mpq_class;

/// num / den in canonical form.
Rational make_rational(std::int64_t num, std::int64_t den);

/// Parses "p/q", "p", or a plain decimal such as "-0.35". The result is canonical.
Rational parse_rational(std::string_view text);

/// Comma separated list of rationals.
std::vector<Rational> parse_rational_list(std::string_view text);

/// Comma separated list of integers.
std::vector<std::int64_t> parse_int_list(std::string_view text);

/// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational &x);

std::int64_t floor_int(const Rational &x);
std::int64_t ceil_int(const Rational &x);
bool is_integer(const Rational &x);
int sign_of(const Rational &x);
double to_double(const Rational &x);

}  // namespace vermasig
