#include "vermasig/combinatorics.hpp"

#include <functional>
#include <stdexcept>

#include "vermasig/errors.hpp"

namespace vermasig {

std::int64_t binomial(std::int64_t top, std::int64_t bottom) {
  if (top < 0 || bottom < 0) throw DomainError("binomial: negative argument");
  if (bottom > top) return 0;
  if (bottom > top - bottom) bottom = top - bottom;
  __int128 acc = 1;
  for (std::int64_t j = 1; j <= bottom; ++j) {
    acc = acc * (top - bottom + j) / j;
    if (acc > INT64_MAX) throw std::overflow_error("binomial: int64 overflow");
  }
  return static_cast<std::int64_t>(acc);
}

std::int64_t binomial_poly(std::int64_t top, std::int64_t bottom) {
  if (bottom < 0) throw DomainError("binomial_poly: negative bottom");
  if (top >= 0) return binomial(top, bottom);
  // C(-x, k) = (-1)^k C(x+k-1, k)
  const std::int64_t value = binomial(-top + bottom - 1, bottom);
  return (bottom % 2 == 0) ? value : -value;
}

std::int64_t multiplicity_dimension(int n, int m) {
  if (n < 2 || m < 0) throw DomainError("multiplicity_dimension: need n >= 2, m >= 0");
  return binomial(m + n - 2, n - 2);
}

std::vector<Composition> compositions(int n, int m) {
  if (n < 1 || m < 0) throw DomainError("compositions: need n >= 1, m >= 0");
  std::vector<Composition> out;
  Composition current(static_cast<std::size_t>(n), 0);
  // Fill from the last slot so that the last coordinate varies slowest.
  std::function<void(int, int)> fill = [&](int slot, int remaining) {
    if (slot == 0) {
      current[0] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current[static_cast<std::size_t>(slot)] = k;
      fill(slot - 1, remaining - k);
    }
  };
  fill(n - 1, m);
  return out;
}

}  // namespace vermasig
