#pragma once

// Exact Shapovalov forms on tensor products of sl2 Verma modules.
//
// The weight space of weight lam - 2m in  M_{lam_1} (x) ... (x) M_{lam_n}  has the basis
// (x)_i F^{k_i} v_i over compositions k of m (colexicographic order, see compositions()).
// Everything in this module is exact rational arithmetic.

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "vermasig/combinatorics.hpp"
#include "vermasig/dense_matrix.hpp"
#include "vermasig/rational.hpp"
#include "vermasig/sigchar.hpp"

namespace vermasig::shapovalov {

using sigchar::HighestWeight;
using RationalMatrix = DenseMatrix<Rational>;
using GramMatrix = RationalMatrix;

struct WeightSpaceBasis {
  int n = 0;
  int m = 0;
  std::vector<Composition> compositions;
  std::map<Composition, std::size_t> index;

  WeightSpaceBasis(int n, int m);
  std::size_t size() const { return compositions.size(); }
};

/// (F^k v, F^k v) = prod_{j=1}^{k} j (lam - j + 1), normalised by (v, v) = 1.
Rational shapovalov_norm(const HighestWeight &lam, int k);

/// Norm of the basis vector (x)_i F^{k_i} v_i under the product form.
Rational product_norm(std::span<const HighestWeight> lams, const Composition &k);

/// Diagonal of the product form on the level-m weight space.
std::vector<Rational> weight_space_norms(std::span<const HighestWeight> lams, int m);

/// Matrix of the coproduct of E from level m to level m - 1 (acting on column vectors):
/// E F^k v = k (lam - k + 1) F^{k-1} v in each factor.
RationalMatrix e_action(std::span<const HighestWeight> lams, int m);

/// Matrix of the coproduct of F from level m to level m + 1.
RationalMatrix f_action(std::span<const HighestWeight> lams, int m);

/// Rows spanning the nullspace of A, from the reduced row echelon form: row r has a 1 in
/// free_columns[r] and zeros in the other free columns.
struct NullspaceBasis {
  RationalMatrix vectors;
  std::vector<std::size_t> free_columns;
};

NullspaceBasis nullspace(const RationalMatrix &a);

/// Singular vectors of weight lam - 2m, i.e. ker(Delta E), as rows in the composition basis.
struct SingularBasis {
  RationalMatrix vectors;
  std::vector<std::size_t> free_columns;

  std::size_t dim() const { return vectors.rows(); }
};

/// Throws GenericityError if the kernel dimension differs from C(m+n-2, n-2).
SingularBasis singular_basis(std::span<const HighestWeight> lams, int m);

/// Gram matrix of the product form restricted to the singular basis.
GramMatrix gram_on_multiplicity(std::span<const HighestWeight> lams, int m);
GramMatrix gram_on_multiplicity(std::span<const HighestWeight> lams, const SingularBasis &basis, int m);

struct Inertia {
  std::int64_t pos = 0;
  std::int64_t neg = 0;

  std::int64_t signature() const { return pos - neg; }
  friend bool operator==(const Inertia &, const Inertia &) = default;
};

/// Sylvester inertia by rational congruence diagonalisation. When every remaining diagonal
/// entry vanishes, row/column j is added to row/column i to create the pivot 2 G_ij.
/// Throws GenericityError on a singular matrix.
Inertia exact_signature(const GramMatrix &g);

}  // namespace vermasig::shapovalov
