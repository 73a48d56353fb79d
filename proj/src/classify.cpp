#include "vermasig/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vermasig/errors.hpp"

namespace vermasig::classify {

using vermasig::to_string;

namespace {

constexpr std::int64_t kFractionDenominator = 1009;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int parity_sign(std::int64_t e) { return (e % 2 == 0) ? 1 : -1; }

std::int64_t floor_sum(const std::vector<std::int64_t> &floors) {
  return std::accumulate(floors.begin(), floors.end(), std::int64_t{0});
}

std::vector<sigchar::HighestWeight> assemble(const ExplicitType &t, const std::vector<std::int64_t> &nums) {
  std::vector<sigchar::HighestWeight> out;
  for (std::size_t i = 0; i < nums.size(); ++i)
    out.emplace_back(Rational(t.factor_floors()[i]) + make_rational(nums[i], kFractionDenominator));
  std::sort(out.begin(), out.end(),
            [](const auto &x, const auto &y) { return x.value() > y.value(); });
  return out;
}

}  // namespace

ExplicitType::ExplicitType(std::int64_t total_floor, std::vector<std::int64_t> factor_floors)
    : total_floor_(total_floor), floors_(std::move(factor_floors)) {
  if (floors_.size() < 2) throw DomainError("explicit type needs n >= 2 factors");
  std::sort(floors_.begin(), floors_.end(), std::greater<>());
  const std::int64_t s = floor_sum(floors_);
  const auto n = static_cast<std::int64_t>(floors_.size());
  if (total_floor_ < s || total_floor_ > s + n - 1)
    throw DomainError("inconsistent explicit type " + to_string() + ": total floor must lie in [" +
                      std::to_string(s) + ", " + std::to_string(s + n - 1) + "]");
  p_ = static_cast<int>(std::count_if(floors_.begin(), floors_.end(), [](auto f) { return f >= 0; }));
}

ExplicitType ExplicitType::of(std::span<const sigchar::HighestWeight> lams) {
  std::vector<Rational> values;
  for (const auto &w : lams) values.push_back(w.value());
  std::sort(values.begin(), values.end(), std::greater<>());
  std::vector<std::int64_t> floors;
  Rational total = 0;
  for (const auto &v : values) {
    floors.push_back(floor_int(v));
    total += v;
  }
  return ExplicitType(floor_int(total), std::move(floors));
}

ExplicitType ExplicitType::parse(std::string_view text) {
  auto values = parse_int_list(text);
  if (values.size() < 3) throw ParseError("explicit type needs a total floor and at least two factor floors");
  return ExplicitType(values.front(), std::vector<std::int64_t>(values.begin() + 1, values.end()));
}

std::string ExplicitType::to_string() const {
  std::ostringstream os;
  os << '<' << total_floor_;
  for (auto f : floors_) os << ',' << f;
  os << '>';
  return os.str();
}

std::vector<ExplicitType> enumerate_types(int n, std::int64_t lo, std::int64_t hi) {
  std::vector<ExplicitType> out;
  std::vector<std::int64_t> floors(static_cast<std::size_t>(n));
  std::function<void(int, std::int64_t)> fill = [&](int slot, std::int64_t cap) {
    if (slot == n) {
      const std::int64_t s = floor_sum(floors);
      for (std::int64_t t = s; t <= s + n - 1; ++t) out.emplace_back(t, floors);
      return;
    }
    for (std::int64_t f = cap; f >= lo; --f) {
      floors[static_cast<std::size_t>(slot)] = f;
      fill(slot + 1, f);
    }
  };
  fill(0, hi);
  return out;
}

std::string to_string(const DefiniteReport &r) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    if (i) os << ',';
    os << r.entries[i].level << ':' << (r.entries[i].sign > 0 ? '+' : '-');
  }
  os << "} up to " << r.complete_up_to;
  return os.str();
}

std::int64_t g_branch_value(const Rational &x1, const Rational &x2, std::int64_t k) {
  if (k < 0) throw DomainError("g: k must be nonnegative");
  const Rational s = x1 + x2;
  if (!(x1 > x2) || is_integer(x1) || is_integer(x2) || (is_integer(s) && s >= 0))
    throw DomainError("g: need x1 > x2 with x1, x2 non-integral and x1 + x2 not a nonnegative integer (got " + to_string(x1) + ", " +
                      to_string(x2) + ")");

  if (x1 < 0) return parity_sign(k);

  if (x2 < 0) {
    if (s < 0) {
      // sign of C(x1, k) = prod_{i<k} (x1 - i) / k!; the factors with i >= ceil(x1) are negative
      return parity_sign(std::max<std::int64_t>(0, k - ceil_int(x1)));
    }
    const std::int64_t half_floor = floor_int(s / 2);
    const std::int64_t half_ceil = ceil_int(s / 2);
    const std::int64_t shifted_half_floor = floor_int((s + 1) / 2);
    const std::int64_t shifted_half_ceil = ceil_int((s + 1) / 2);
    const std::int64_t sum_ceil = ceil_int(s);
    const std::int64_t x1_ceil = ceil_int(x1);
    if (k <= half_floor) return parity_sign(k);
    if (k <= shifted_half_floor) return parity_sign(half_ceil);
    if (k <= sum_ceil) return parity_sign(half_ceil + shifted_half_ceil + k);
    if (k <= x1_ceil) return 1;
    return parity_sign(x1_ceil + k);
  }

  const std::int64_t f1 = floor_int(x1), f2 = floor_int(x2);
  const std::int64_t c1 = f1 + 1, c2 = f2 + 1;
  if (k <= f2) return 1;
  const std::int64_t middle = std::max(c2, f1);
  if (k <= middle) return g_branch_value(x1, x2 - 2 * c2, k - c2);
  if (k <= c1 + c2)
    return g_branch_value(x1, x2 - 2 * c2, k - c2) + 2 * f1 + 2 * f2 - 2 * floor_int(s);
  return parity_sign(k - c1 - c2);
}

std::int64_t g_function(const Rational &x1, const Rational &x2, std::int64_t k) {
  const std::int64_t v = g_branch_value(x1, x2, k);
  return (v > 0) - (v < 0);
}

int default_level_bound(const ExplicitType &t) {
  return static_cast<int>(2 * std::max<std::int64_t>(t.factor_floors().front(), 0) + 6);
}

int sweep_level_bound(const ExplicitType &t) {
  std::int64_t s = 0;
  for (auto f : t.factor_floors())
    if (f >= 0) s += f + 1;
  return static_cast<int>(2 * s + 2 * t.n());
}

std::vector<sigchar::HighestWeight> representative_weights(const ExplicitType &t) {
  const auto n = static_cast<std::int64_t>(t.n());
  const std::int64_t excess = t.total_floor() - floor_sum(t.factor_floors());
  // Fractional parts near (excess + 1/2)/n, spread so equal floors stay strictly ordered.
  const std::int64_t base = ((2 * excess + 1) * kFractionDenominator) / (2 * n);
  std::vector<std::int64_t> nums;
  for (std::int64_t i = 0; i < n; ++i) nums.push_back(base + (n - 1) - 2 * i);
  return assemble(t, nums);
}

std::vector<sigchar::HighestWeight> sample_weights(const ExplicitType &t, std::mt19937_64 &rng) {
  const auto n = static_cast<std::size_t>(t.n());
  const std::int64_t excess = t.total_floor() - floor_sum(t.factor_floors());
  std::uniform_int_distribution<std::int64_t> frac(1, kFractionDenominator - 1);
  std::vector<std::int64_t> nums(n);
  for (int attempt = 0; attempt < 1'000'000; ++attempt) {
    std::int64_t sum = 0;
    for (auto &x : nums) sum += (x = frac(rng));
    if (sum % kFractionDenominator == 0) continue;
    if (sum / kFractionDenominator != excess) continue;
    return assemble(t, nums);
  }
  throw std::runtime_error("sample_weights: no consistent fractional parts found for " + t.to_string());
}

DefiniteReport classify_definite(const ExplicitType &t, int level_bound) {
  if (level_bound < 0) throw DomainError("negative level bound");
  const int n = t.n();
  const int p = t.p();
  const auto &fl = t.factor_floors();
  const std::int64_t total = t.total_floor();
  std::map<int, int> levels;

  auto add = [&](std::int64_t level, int sign) {
    if (level < 0 || level > level_bound) return;
    auto [it, inserted] = levels.emplace(static_cast<int>(level), sign);
    if (!inserted && it->second != sign)
      throw std::logic_error("classification assigns both signs to level " + std::to_string(level));
  };
  auto add_range = [&](std::int64_t from, std::int64_t to, int sign) {
    for (std::int64_t m = from; m <= to; ++m) add(m, sign);
  };
  auto is_type = [&](std::int64_t tot, std::vector<std::int64_t> floors) {
    return total == tot && fl == floors;
  };

  if (p == 0) {
    // No positive weight: all definite, alternating.
    for (int m = 0; m <= level_bound; ++m) add(m, parity_sign(m));
  } else if (n == 2) {
    // Two factors: all definite with sign g(lam_1, lam_2, m).
    const auto w = representative_weights(t);
    for (int m = 0; m <= level_bound; ++m) {
      add(m, static_cast<int>(g_function(w[0].value(), w[1].value(), m)));
    }
  } else if (p == 1) {
    // One positive weight: levels 0..max(0, ceil(lam/2)), alternating.
    const std::int64_t half_ceil = floor_div(total, 2) + 1;
    for (std::int64_t m = 0; m <= std::max<std::int64_t>(0, half_ceil); ++m) add(m, parity_sign(m));
  } else if (p <= n - 2) {
    // At most n - 2 positive weights: only the top level.
    add(0, 1);
  } else if (p == n - 1) {
    // Exactly n - 1 positive weights.
    const std::int64_t lam_p_ceil = fl[static_cast<std::size_t>(p - 1)] + 1;
    const std::int64_t lam_plus_one_ceil = total + 2;
    if (total < 0) {
      add_range(0, lam_p_ceil, 1);
    } else if (lam_plus_one_ceil <= lam_p_ceil) {
      add(0, 1);
      add_range(lam_plus_one_ceil, lam_p_ceil, 1);
    } else {
      add(0, 1);
      if (is_type(1, {0, 0, -1})) add(2, -1);
    }
  } else {
    // Every weight positive.
    const std::int64_t lam_p_ceil = fl.back() + 1;
    add_range(0, lam_p_ceil, 1);
    if (n == 3) {
      const std::int64_t d = fl[0];
      if (fl[1] == d && fl[2] == d) {
        if (total == 3 * d) {
          add(2 * d + 1, 1);
          add(2 * d + 2, 1);
        } else if (total == 3 * d + 2) {
          add(2 * d + 2, -1);
          add(2 * d + 3, -1);
        }
      } else if (d >= 1 && fl[1] == d && fl[2] == d - 1) {
        if (total == 3 * d - 1) add(2 * d + 1, 1);
        if (total == 3 * d + 1) add(2 * d + 2, -1);
      } else if (d >= 1 && fl[1] == d - 1 && fl[2] == d - 1) {
        if (total == 3 * d - 2) add(2 * d, 1);
        if (total == 3 * d) add(2 * d + 1, -1);
      }
    }
    if (is_type(3, {0, 0, 0, 0})) add(3, -1);
    if (is_type(4, {1, 1, 1, 1})) add(4, 1);
    if (p >= 4) {
      std::vector<std::int64_t> zeros(static_cast<std::size_t>(n), 0);
      if (is_type(0, zeros)) add(2, 1);
      zeros[0] = 1;
      if (is_type(1, zeros)) add(2, 1);
    }
  }

  DefiniteReport out;
  out.complete_up_to = level_bound;
  for (auto [level, sign] : levels) out.entries.push_back({level, sign});
  return out;
}

DefiniteReport definite_levels(const sigchar::Decomposition &d, int level_bound) {
  DefiniteReport out;
  out.complete_up_to = level_bound;
  for (const auto &e : d.entries) {
    if (e.m > level_bound) break;
    if (e.b == 0) out.entries.push_back({e.m, 1});
    else if (e.a == 0) out.entries.push_back({e.m, -1});
  }
  return out;
}

Verification verify_type_detailed(const ExplicitType &t, int level_bound, std::mt19937_64 &rng) {
  Verification v;
  v.weights = sample_weights(t, rng);
  v.predicted = classify_definite(t, level_bound);
  v.observed = definite_levels(sigchar::peel_decompose(v.weights, level_bound), level_bound);
  v.agrees = (v.predicted == v.observed);
  return v;
}

bool verify_type(const ExplicitType &t, int level_bound, std::mt19937_64 &rng) {
  return verify_type_detailed(t, level_bound, rng).agrees;
}

}  // namespace vermasig::classify
