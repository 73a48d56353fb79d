#include "vermasig/shapovalov.hpp"

#include <string>
#include <utility>

#include "vermasig/errors.hpp"

namespace vermasig::shapovalov {

WeightSpaceBasis::WeightSpaceBasis(int n_, int m_) : n(n_), m(m_), compositions(vermasig::compositions(n_, m_)) {
  for (std::size_t i = 0; i < compositions.size(); ++i) index.emplace(compositions[i], i);
}

Rational shapovalov_norm(const HighestWeight &lam, int k) {
  if (k < 0) throw DomainError("shapovalov_norm: negative level");
  Rational acc = 1;
  for (int j = 1; j <= k; ++j) acc *= j * (lam.value() - j + 1);
  return acc;
}

Rational product_norm(std::span<const HighestWeight> lams, const Composition &k) {
  Rational acc = 1;
  for (std::size_t i = 0; i < lams.size(); ++i) acc *= shapovalov_norm(lams[i], k[i]);
  return acc;
}

std::vector<Rational> weight_space_norms(std::span<const HighestWeight> lams, int m) {
  const WeightSpaceBasis basis(static_cast<int>(lams.size()), m);
  std::vector<Rational> out;
  out.reserve(basis.size());
  for (const auto &k : basis.compositions) out.push_back(product_norm(lams, k));
  return out;
}

RationalMatrix e_action(std::span<const HighestWeight> lams, int m) {
  const int n = static_cast<int>(lams.size());
  const WeightSpaceBasis source(n, m);
  if (m == 0) return RationalMatrix(0, source.size());
  const WeightSpaceBasis target(n, m - 1);
  RationalMatrix out(target.size(), source.size());
  for (std::size_t col = 0; col < source.size(); ++col) {
    Composition k = source.compositions[col];
    for (std::size_t i = 0; i < k.size(); ++i) {
      const int ki = k[i];
      if (ki == 0) continue;
      --k[i];
      out(target.index.at(k), col) += ki * (lams[i].value() - ki + 1);
      ++k[i];
    }
  }
  return out;
}

RationalMatrix f_action(std::span<const HighestWeight> lams, int m) {
  const int n = static_cast<int>(lams.size());
  const WeightSpaceBasis source(n, m);
  const WeightSpaceBasis target(n, m + 1);
  RationalMatrix out(target.size(), source.size());
  for (std::size_t col = 0; col < source.size(); ++col) {
    Composition k = source.compositions[col];
    for (std::size_t i = 0; i < k.size(); ++i) {
      ++k[i];
      out(target.index.at(k), col) += 1;
      --k[i];
    }
  }
  return out;
}

NullspaceBasis nullspace(const RationalMatrix &a) {
  RationalMatrix r = a;
  const std::size_t rows = r.rows(), cols = r.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows && r(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pivot_row)
      for (std::size_t j = 0; j < cols; ++j) std::swap(r(sel, j), r(pivot_row, j));
    const Rational inv = 1 / r(pivot_row, c);
    for (std::size_t j = c; j < cols; ++j) r(pivot_row, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pivot_row || r(i, c) == 0) continue;
      const Rational factor = r(i, c);
      for (std::size_t j = c; j < cols; ++j) r(i, j) -= factor * r(pivot_row, j);
    }
    pivot_cols.push_back(c);
    ++pivot_row;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  NullspaceBasis out;
  for (std::size_t c = 0; c < cols; ++c)
    if (!is_pivot[c]) out.free_columns.push_back(c);

  out.vectors = RationalMatrix(out.free_columns.size(), cols);
  for (std::size_t row = 0; row < out.free_columns.size(); ++row) {
    const std::size_t f = out.free_columns[row];
    out.vectors(row, f) = 1;
    for (std::size_t pr = 0; pr < pivot_cols.size(); ++pr) out.vectors(row, pivot_cols[pr]) = -r(pr, f);
  }
  return out;
}

SingularBasis singular_basis(std::span<const HighestWeight> lams, int m) {
  const int n = static_cast<int>(lams.size());
  if (n < 2) throw DomainError("singular_basis needs at least two factors");
  if (m < 0) throw DomainError("singular_basis: negative level");
  NullspaceBasis ns = nullspace(e_action(lams, m));
  const auto expected = static_cast<std::size_t>(multiplicity_dimension(n, m));
  if (ns.vectors.rows() != expected)
    throw GenericityError("ker(Delta E) at level " + std::to_string(m) + " has dimension " +
                          std::to_string(ns.vectors.rows()) + ", expected " + std::to_string(expected));
  return {std::move(ns.vectors), std::move(ns.free_columns)};
}

GramMatrix gram_on_multiplicity(std::span<const HighestWeight> lams, const SingularBasis &basis, int m) {
  const auto norms = weight_space_norms(lams, m);
  const RationalMatrix &s = basis.vectors;
  GramMatrix g(s.rows(), s.rows());
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = r; c < s.rows(); ++c) {
      Rational acc = 0;
      for (std::size_t k = 0; k < s.cols(); ++k)
        if (s(r, k) != 0 && s(c, k) != 0) acc += s(r, k) * norms[k] * s(c, k);
      g(r, c) = acc;
      g(c, r) = acc;
    }
  return g;
}

GramMatrix gram_on_multiplicity(std::span<const HighestWeight> lams, int m) {
  sigchar::require_generic_tuple(lams);
  return gram_on_multiplicity(lams, singular_basis(lams, m), m);
}

Inertia exact_signature(const GramMatrix &g_in) {
  if (!g_in.is_symmetric()) throw DomainError("exact_signature: matrix is not symmetric");
  GramMatrix g = g_in;
  const std::size_t n = g.rows();
  std::vector<bool> done(n, false);
  Inertia out;

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n && pivot == n; ++i)
      if (!done[i] && g(i, i) != 0) pivot = i;

    if (pivot == n) {
      // All remaining diagonal entries vanish: fold j into i to expose G_ii = 2 G_ij.
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i)
        for (std::size_t j = i + 1; j < n && !done[i]; ++j)
          if (!done[j] && g(i, j) != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) throw GenericityError("exact_signature: singular form");
      for (std::size_t c = 0; c < n; ++c) g(pi, c) += g(pj, c);
      for (std::size_t r = 0; r < n; ++r) g(r, pi) += g(r, pj);
      pivot = pi;
    }

    const Rational d = g(pivot, pivot);
    (d > 0 ? out.pos : out.neg) += 1;
    done[pivot] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || g(i, pivot) == 0) continue;
      const Rational factor = g(i, pivot) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) g(i, j) -= factor * g(pivot, j);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) g(pivot, i) = g(i, pivot) = 0;
  }
  return out;
}

}  // namespace vermasig::shapovalov
