#include "vermasig/sigchar.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "vermasig/combinatorics.hpp"
#include "vermasig/errors.hpp"

namespace vermasig::sigchar {

void require_generic(const HighestWeight &w) {
  if (!w.is_generic())
    throw GenericityError("weight " + to_string(w.value()) + " is a nonnegative integer");
}

Rational total_weight(std::span<const HighestWeight> lams) {
  Rational total = 0;
  for (const auto &w : lams) total += w.value();
  return total;
}

void require_generic_tuple(std::span<const HighestWeight> lams) {
  for (std::size_t i = 0; i < lams.size(); ++i)
    if (!lams[i].is_generic())
      throw GenericityError("weight lambda_" + std::to_string(i + 1) + " = " +
                            to_string(lams[i].value()) + " is a nonnegative integer");
  const Rational total = total_weight(lams);
  if (!HighestWeight(total).is_generic())
    throw GenericityError("total weight " + to_string(total) + " is a nonnegative integer");
}

std::vector<HighestWeight> to_weights(std::span<const Rational> values) {
  return {values.begin(), values.end()};
}

SignatureSeries SignatureSeries::monomial(Rational base, int depth, SCoeff c) {
  if (depth < 0) throw DomainError("negative truncation depth");
  SignatureSeries out{std::move(base), std::vector<SCoeff>(static_cast<std::size_t>(depth) + 1)};
  out.coeffs[0] = c;
  return out;
}

SignatureSeries verma_character(const HighestWeight &lam, int depth) {
  require_generic(lam);
  if (depth < 0) throw DomainError("negative truncation depth");
  SignatureSeries out{lam.value(), std::vector<SCoeff>(static_cast<std::size_t>(depth) + 1)};
  if (!lam.is_positive()) {
    for (int j = 0; j <= depth; ++j) out.coeffs[static_cast<std::size_t>(j)] = SCoeff::s_power(j);
    return out;
  }
  const std::int64_t fl = floor_int(lam.value());
  const std::int64_t cl = fl + 1;
  for (int j = 0; j <= depth; ++j)
    out.coeffs[static_cast<std::size_t>(j)] = (j <= fl) ? SCoeff::one() : SCoeff::s_power(j + cl);
  return out;
}

SignatureSeries multiply(const SignatureSeries &x, const SignatureSeries &y) {
  const int depth = std::min(x.depth(), y.depth());
  SignatureSeries out{x.base + y.base, std::vector<SCoeff>(static_cast<std::size_t>(depth) + 1)};
  for (int i = 0; i <= depth; ++i) {
    const SCoeff &xi = x.coeffs[static_cast<std::size_t>(i)];
    if (xi.is_zero()) continue;
    for (int j = 0; i + j <= depth; ++j)
      out.coeffs[static_cast<std::size_t>(i + j)] += xi * y.coeffs[static_cast<std::size_t>(j)];
  }
  return out;
}

SignatureSeries tensor_character(std::span<const HighestWeight> lams, int depth) {
  SignatureSeries acc = SignatureSeries::monomial(0, depth);
  for (const auto &w : lams) acc = multiply(acc, verma_character(w, depth));
  return acc;
}

Decomposition peel_decompose(std::span<const HighestWeight> lams, int depth) {
  if (lams.size() < 2) throw DomainError("peel_decompose needs at least two factors");
  if (depth < 0) throw DomainError("negative truncation depth");
  require_generic_tuple(lams);

  const int n = static_cast<int>(lams.size());
  SignatureSeries remainder = tensor_character(lams, depth);
  Decomposition out{n, remainder.base, {}};
  out.entries.reserve(static_cast<std::size_t>(depth) + 1);

  for (int m = 0; m <= depth; ++m) {
    const SCoeff c = remainder.coeffs[static_cast<std::size_t>(m)];
    const SignatureSeries beta = verma_character(HighestWeight(out.lambda_total - 2 * m), depth - m);
    for (int k = 0; m + k <= depth; ++k)
      remainder.coeffs[static_cast<std::size_t>(m + k)] -= c * beta.coeffs[static_cast<std::size_t>(k)];

    DecompositionEntry e{m, c.plain, c.twisted};
    const std::int64_t dim = multiplicity_dimension(n, m);
    if (e.a < 0 || e.b < 0 || e.dim() != dim)
      throw std::logic_error("peel_decompose: level " + std::to_string(m) + " gives (" +
                             std::to_string(e.a) + ", " + std::to_string(e.b) +
                             "), expected a+b = " + std::to_string(dim));
    out.entries.push_back(e);
  }
  return out;
}

SignatureSeries reconstruct(const Decomposition &d) {
  const int depth = static_cast<int>(d.entries.size()) - 1;
  SignatureSeries out{d.lambda_total, std::vector<SCoeff>(static_cast<std::size_t>(depth) + 1)};
  for (const auto &e : d.entries) {
    const SCoeff c{e.a, e.b};
    const SignatureSeries beta = verma_character(HighestWeight(d.lambda_total - 2 * e.m), depth - e.m);
    for (int k = 0; e.m + k <= depth; ++k)
      out.coeffs[static_cast<std::size_t>(e.m + k)] += c * beta.coeffs[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<std::int64_t> asymptotic_polynomial(std::span<const HighestWeight> lams) {
  std::vector<std::int64_t> poly{1};
  for (const auto &w : lams) {
    if (!w.is_positive()) continue;
    const std::int64_t k = ceil_int(w.value());
    // V_k(x) = 1 + 2x + ... + 2x^k
    std::vector<std::int64_t> next(poly.size() + static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::int64_t j = 0; j <= k; ++j)
        next[i + static_cast<std::size_t>(j)] += poly[i] * (j == 0 ? 1 : 2);
    poly = std::move(next);
  }
  return poly;
}

std::int64_t asymptotic_signature(std::span<const HighestWeight> lams, int m) {
  require_generic_tuple(lams);
  const int n = static_cast<int>(lams.size());
  if (n < 2) throw DomainError("asymptotic_signature needs at least two factors");
  const auto c = asymptotic_polynomial(lams);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t term = binomial_poly(m + n - 2 - static_cast<std::int64_t>(i), n - 2) * c[i];
    sum += (i % 2 == 0) ? term : -term;
  }
  return (m % 2 == 0) ? sum : -sum;
}

int asymptotic_threshold(std::span<const HighestWeight> lams, int max_level) {
  const Decomposition d = peel_decompose(lams, max_level);
  int threshold = max_level + 1;
  for (int m = max_level; m >= 0; --m) {
    if (asymptotic_signature(lams, m) != d.level(m).signature()) break;
    threshold = m;
  }
  return threshold;
}

namespace {

std::vector<std::int64_t> beta_minus(const Rational &mu, int depth) {
  const SignatureSeries beta = verma_character(HighestWeight(mu), depth);
  std::vector<std::int64_t> out;
  out.reserve(beta.coeffs.size());
  for (const auto &c : beta.coeffs) out.push_back(c.at_minus_one());
  return out;
}

void add_shifted(std::vector<std::int64_t> &acc, std::int64_t factor, const Rational &mu, int shift) {
  const int depth = static_cast<int>(acc.size()) - 1;
  if (factor == 0 || shift > depth) return;
  const auto beta = beta_minus(mu, depth - shift);
  for (std::size_t k = 0; k < beta.size(); ++k) acc[k + static_cast<std::size_t>(shift)] += factor * beta[k];
}

}  // namespace

bool e_decomposition_check(const Rational &mu, int depth) {
  require_generic(HighestWeight(mu));
  if (depth < 0) throw DomainError("negative truncation depth");
  std::vector<std::int64_t> rhs(static_cast<std::size_t>(depth) + 1, 0);
  add_shifted(rhs, 1, mu, 0);
  add_shifted(rhs, -sign_of(mu), mu - 2, 1);
  const std::int64_t third = sign_of(Rational(1 - mu)) - 1;
  if (third != 0) {
    const std::int64_t c = ceil_int(mu);
    add_shifted(rhs, third, mu - 2 * c, static_cast<int>(c));
  }
  std::vector<std::int64_t> lhs(rhs.size(), 0);
  lhs[0] = 1;
  return lhs == rhs;
}

}  // namespace vermasig::sigchar
