#pragma once

#include <cstdint>
#include <vector>

namespace vermasig {

/// C(top, bottom) for nonnegative arguments; zero when bottom > top. Throws on int64 overflow.
std::int64_t binomial(std::int64_t top, std::int64_t bottom);

/// C(top, bottom) read as the polynomial top(top-1)...(top-bottom+1)/bottom! in `top`,
/// so negative tops are allowed. Bottom must be nonnegative.
std::int64_t binomial_poly(std::int64_t top, std::int64_t bottom);

/// dim E_m = C(m+n-2, n-2) for a tensor product of n generic Verma modules.
std::int64_t multiplicity_dimension(int n, int m);

using Composition = std::vector<int>;

/// All (k_1,...,k_n) with k_i >= 0 and sum m, in colexicographic order: tuples are
/// compared on k_n first, then k_{n-1}, and so on, ascending. For n = 2, m = 2 this
/// gives (2,0), (1,1), (0,2).
std::vector<Composition> compositions(int n, int m);

}  // namespace vermasig
