#pragma once

// Signature characters of sl2 Verma modules and their tensor products.
//
// A signature character is a formal sum  sum_k (a_k + s b_k) e^{base - 2k}  with
// coefficients in Z[s]/(s^2 - 1); a_k and b_k count the positive and negative squares
// of the weight space at level k. Series here are truncated at a finite depth.

#include <cstdint>
#include <span>
#include <vector>

#include "vermasig/rational.hpp"

namespace vermasig::sigchar {

/// A real highest weight, stored exactly. Generic means not a nonnegative integer.
class HighestWeight {
public:
  HighestWeight() = default;
  HighestWeight(Rational value) : value_(std::move(value)) { value_.canonicalize(); }

  const Rational &value() const { return value_; }
  bool is_generic() const { return !(is_integer(value_) && value_ >= 0); }
  bool is_positive() const { return value_ > 0; }

  friend bool operator==(const HighestWeight &, const HighestWeight &) = default;

private:
  Rational value_{0};
};

/// Throws GenericityError unless `w` is generic.
void require_generic(const HighestWeight &w);

/// Throws GenericityError unless every entry and the total are generic.
void require_generic_tuple(std::span<const HighestWeight> lams);

Rational total_weight(std::span<const HighestWeight> lams);

std::vector<HighestWeight> to_weights(std::span<const Rational> values);

/// a + s b with s^2 = 1.
struct SCoeff {
  std::int64_t plain = 0;
  std::int64_t twisted = 0;

  static SCoeff one() { return {1, 0}; }
  static SCoeff s() { return {0, 1}; }
  /// s^e, reduced by parity.
  static SCoeff s_power(std::int64_t e) { return (e % 2 == 0) ? one() : s(); }

  SCoeff &operator+=(const SCoeff &o) {
    plain += o.plain;
    twisted += o.twisted;
    return *this;
  }
  SCoeff &operator-=(const SCoeff &o) {
    plain -= o.plain;
    twisted -= o.twisted;
    return *this;
  }
  friend SCoeff operator+(SCoeff x, const SCoeff &y) { return x += y; }
  friend SCoeff operator-(SCoeff x, const SCoeff &y) { return x -= y; }
  friend SCoeff operator*(const SCoeff &x, const SCoeff &y) {
    return {x.plain * y.plain + x.twisted * y.twisted, x.plain * y.twisted + x.twisted * y.plain};
  }
  friend bool operator==(const SCoeff &, const SCoeff &) = default;

  /// Value at s = -1, i.e. the signature a - b.
  std::int64_t at_minus_one() const { return plain - twisted; }
  bool is_zero() const { return plain == 0 && twisted == 0; }
};

/// Truncated signature character; coeffs[k] multiplies e^{base - 2k}.
struct SignatureSeries {
  Rational base;
  std::vector<SCoeff> coeffs;

  int depth() const { return static_cast<int>(coeffs.size()) - 1; }
  const SCoeff &at(int level) const { return coeffs.at(static_cast<std::size_t>(level)); }

  /// Single term c * e^{base}, truncated at `depth`.
  static SignatureSeries monomial(Rational base, int depth, SCoeff c = SCoeff::one());

  friend bool operator==(const SignatureSeries &, const SignatureSeries &) = default;
};

/// ch_s(M_lam) truncated at `depth`:
///   lam < 0: s^j at level j;
///   lam > 0: 1 at levels j <= floor(lam), s^{j + ceil(lam)} at levels j >= ceil(lam).
SignatureSeries verma_character(const HighestWeight &lam, int depth);

/// Product of truncated characters; output depth is the smaller input depth.
SignatureSeries multiply(const SignatureSeries &x, const SignatureSeries &y);

/// Product of the Verma characters of every factor, truncated at `depth`.
SignatureSeries tensor_character(std::span<const HighestWeight> lams, int depth);

struct DecompositionEntry {
  int m = 0;
  std::int64_t a = 0;  // positive squares in E_m
  std::int64_t b = 0;  // negative squares in E_m

  std::int64_t dim() const { return a + b; }
  std::int64_t signature() const { return a - b; }
  bool is_definite() const { return a == 0 || b == 0; }
  friend bool operator==(const DecompositionEntry &, const DecompositionEntry &) = default;
};

struct Decomposition {
  int n = 0;
  Rational lambda_total;
  std::vector<DecompositionEntry> entries;  // entries[m] describes E_m

  const DecompositionEntry &level(int m) const { return entries.at(static_cast<std::size_t>(m)); }
};

/// Writes prod_i ch_s(M_{lam_i}) = sum_m (a_m + s b_m) ch_s(M_{lam - 2m}) for levels 0..depth
/// by peeling one Verma character per level off the product.
Decomposition peel_decompose(std::span<const HighestWeight> lams, int depth);

/// Reassembles sum_m (a_m + s b_m) beta_{lam - 2m} up to the decomposition's depth.
SignatureSeries reconstruct(const Decomposition &d);

/// The large-m closed form for sgn(E_m): with p positive weights and
/// prod_{i<=p} V_{ceil(lam_i)}(x) = sum_i c_i x^i,  V_k(x) = 1 + 2x + ... + 2x^k,
/// returns (-1)^m sum_{i=0}^{T} C(m+n-2-i, n-2) (-1)^i c_i  (binomials as polynomials in m).
/// Only claimed for m beyond some threshold; see asymptotic_threshold.
std::int64_t asymptotic_signature(std::span<const HighestWeight> lams, int m);

/// Coefficients c_0..c_T of prod_{lam_i > 0} V_{ceil(lam_i)}(x).
std::vector<std::int64_t> asymptotic_polynomial(std::span<const HighestWeight> lams);

/// Smallest M0 <= max_level such that asymptotic_signature agrees with the peeled signature
/// for every m in [M0, max_level]; returns max_level + 1 if they disagree at max_level.
int asymptotic_threshold(std::span<const HighestWeight> lams, int max_level);

/// Checks e^mu = beta^-_mu - sign(mu) beta^-_{mu-2} + (sign(1-mu) - 1) beta^-_{mu - 2 ceil(mu)}
/// as series evaluated at s = -1, truncated at `depth`.
bool e_decomposition_check(const Rational &mu, int depth);

}  // namespace vermasig::sigchar
