#include "vermasig/rational.hpp"

#include <cctype>
#include <limits>

#include "vermasig/errors.hpp"

namespace vermasig {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_signed_digits(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_signed_digits(s)) throw ParseError("malformed rational '" + std::string(whole) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

std::vector<std::string_view> split_commas(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto comma = text.find(',', start);
    parts.push_back(trim(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  if (s.empty()) throw ParseError("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto int_part = s.substr(0, dot);
    auto frac_part = s.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::string_view digits = int_part;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if ((digits.empty() && frac_part.empty()) || (!digits.empty() && !is_signed_digits(digits)) ||
        (!frac_part.empty() && (!is_signed_digits(frac_part) || frac_part.front() == '-' ||
                                frac_part.front() == '+')))
      throw ParseError("malformed rational '" + std::string(s) + "'");
    mpz_class whole = digits.empty() ? mpz_class(0) : mpz_class(std::string(digits), 10);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    mpz_class frac = frac_part.empty() ? mpz_class(0) : mpz_class(std::string(frac_part), 10);
    Rational r(whole * scale + frac, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  return Rational(parse_integer(s, s));
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  for (auto part : split_commas(text)) out.push_back(parse_rational(part));
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (auto part : split_commas(text)) {
    mpz_class z = parse_integer(part, part);
    if (!z.fits_slong_p()) throw ParseError("integer out of range '" + std::string(part) + "'");
    out.push_back(z.get_si());
  }
  return out;
}

std::string to_string(const Rational &x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::int64_t floor_int(const Rational &x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

std::int64_t ceil_int(const Rational &x) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q.get_si();
}

bool is_integer(const Rational &x) { return x.get_den() == 1; }

int sign_of(const Rational &x) { return sgn(x); }

double to_double(const Rational &x) { return x.get_d(); }

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

}  // namespace vermasig
