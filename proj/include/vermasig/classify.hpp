#pragma once

// Classification of definite multiplicity spaces E_m in tensor products of generic
// sl2 Verma modules, keyed by the explicit type <floor(lam), floor(lam_1), ..., floor(lam_n)>.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vermasig/rational.hpp"
#include "vermasig/sigchar.hpp"

namespace vermasig::classify {

class ExplicitType {
public:
  /// `factor_floors` may be given in any order; it is stored descending.
  /// Throws DomainError if n < 2 or the floors are inconsistent with the total.
  ExplicitType(std::int64_t total_floor, std::vector<std::int64_t> factor_floors);

  /// Explicit type of a weight tuple (weights sorted descending first).
  static ExplicitType of(std::span<const sigchar::HighestWeight> lams);

  /// Parses "T,f1,...,fn".
  static ExplicitType parse(std::string_view text);

  std::int64_t total_floor() const { return total_floor_; }
  const std::vector<std::int64_t> &factor_floors() const { return floors_; }
  int n() const { return static_cast<int>(floors_.size()); }
  /// Number of positive weights; lam_i > 0 iff floor(lam_i) >= 0.
  int p() const { return p_; }

  std::string to_string() const;
  friend bool operator==(const ExplicitType &, const ExplicitType &) = default;

private:
  std::int64_t total_floor_;
  std::vector<std::int64_t> floors_;
  int p_ = 0;
};

/// Every consistent explicit type with the given n and factor floors in [lo, hi].
std::vector<ExplicitType> enumerate_types(int n, std::int64_t lo, std::int64_t hi);

struct DefiniteLevel {
  int level = 0;
  int sign = 1;  // +1 positive definite, -1 negative definite
  friend bool operator==(const DefiniteLevel &, const DefiniteLevel &) = default;
};

struct DefiniteReport {
  std::vector<DefiniteLevel> entries;  // strictly increasing levels
  int complete_up_to = 0;

  friend bool operator==(const DefiniteReport &, const DefiniteReport &) = default;
};

std::string to_string(const DefiniteReport &r);

/// The branch formula for g(x1, x2, k), on x1 > x2 with x1, x2 non-integral and x1 + x2 not
/// a nonnegative integer, taken literally. In the x1 > x2 > 0 branch the additive correction 2(floor x1 + floor x2 -
/// floor(x1 + x2)) can push the value to -3; only its sign is meaningful.
std::int64_t g_branch_value(const Rational &x1, const Rational &x2, std::int64_t k);

/// sign(g_branch_value(x1, x2, k)), always +1 or -1: the sign of the level-k space in
/// M_{x1} (x) M_{x2}.
std::int64_t g_function(const Rational &x1, const Rational &x2, std::int64_t k);

/// Default horizon 2 max(floor(lam_1), 0) + 6.
int default_level_bound(const ExplicitType &t);

/// Horizon used by the exhaustive sweep: 2 sum_{floor(lam_i) >= 0} (floor(lam_i) + 1) + 2n.
int sweep_level_bound(const ExplicitType &t);

/// Definite levels up to `level_bound`, as predicted by the classification list.
DefiniteReport classify_definite(const ExplicitType &t, int level_bound);

/// Fixed weights of type t (denominator 1009) used where the list needs actual weights.
std::vector<sigchar::HighestWeight> representative_weights(const ExplicitType &t);

/// Random generic weights of type t, fractional parts p/1009, sorted descending.
std::vector<sigchar::HighestWeight> sample_weights(const ExplicitType &t, std::mt19937_64 &rng);

/// Definite levels read off a peeling decomposition, up to `level_bound`.
DefiniteReport definite_levels(const sigchar::Decomposition &d, int level_bound);

struct Verification {
  bool agrees = false;
  DefiniteReport predicted;
  DefiniteReport observed;
  std::vector<sigchar::HighestWeight> weights;
};

/// Compares classify_definite with the peeled decomposition of sampled weights of type t.
Verification verify_type_detailed(const ExplicitType &t, int level_bound, std::mt19937_64 &rng);

bool verify_type(const ExplicitType &t, int level_bound, std::mt19937_64 &rng);

}  // namespace vermasig::classify
