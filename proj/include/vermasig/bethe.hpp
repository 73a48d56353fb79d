#pragma once

// Master function critical points (Bethe roots), Gaudin Hamiltonians on multiplicity
// spaces, Bethe vectors and the count of real critical points.
//
// A critical point t = (t_1, ..., t_m) solves the Bethe equations
//   sum_{j != i} 2 / (t_i - t_j) - sum_k lam_k / (t_i - z_k) = 0,
// and is recorded through the monic polynomial Q(x) = prod_i (x - t_i).

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vermasig/rational.hpp"
#include "vermasig/shapovalov.hpp"
#include "vermasig/sigchar.hpp"

namespace vermasig::bethe {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;
using shapovalov::GramMatrix;
using shapovalov::RationalMatrix;
using sigchar::HighestWeight;

struct MasterConfig {
  std::vector<Rational> z;
  std::vector<HighestWeight> lams;
  int m = 1;

  int n() const { return static_cast<int>(lams.size()); }
  /// Throws ArrangementError on repeated z, GenericityError on a non-generic tuple,
  /// DomainError on size mismatch, n < 2 or m < 0.
  void validate() const;
  std::int64_t dimension() const;
};

/// prod_{i<j} (t_i - t_j)^2 prod_{i,k} |t_i - z_k|^{-lam_k} for real t.
double master_value(const MasterConfig &cfg, std::span<const double> t);

/// Left-hand sides of the Bethe equations.
ComplexVector bethe_equations(const MasterConfig &cfg, std::span<const Complex> t);

/// max_i |f_i(t)|. Throws ArrangementError if t meets the arrangement.
double bethe_residual(const MasterConfig &cfg, std::span<const Complex> t);

/// Coefficients c_0, ..., c_m (c_m = 1) of Q(x) = prod (x - t_i).
ComplexVector polynomial_from_roots(std::span<const Complex> t);

/// Evaluates a polynomial given by low-to-high coefficients and its derivative.
Complex poly_eval(std::span<const Complex> coeffs, Complex x);
Complex poly_derivative_eval(std::span<const Complex> coeffs, Complex x);

/// |Im c| < tol (1 + |c|) for every coefficient.
bool is_real_polynomial(std::span<const Complex> coeffs, double tol = 1e-7);

struct CriticalPoint {
  ComplexVector roots;
  ComplexVector qpoly;  // low to high, monic
  double residual = 0;
  bool is_real = false;
};

struct SearchOptions {
  std::uint64_t seed = 1;
  int budget = 0;  // attempts; 0 means 200 * dim
  double tol = 1e-10;
  int max_iterations = 150;
  double reality_tol = 1e-7;
  unsigned threads = 1;
};

struct SearchResult {
  std::vector<CriticalPoint> points;
  std::int64_t expected = 0;
  int attempts = 0;

  bool complete() const { return static_cast<std::int64_t>(points.size()) >= expected; }
  std::int64_t real_count() const;
};

/// Multistart Newton. Starts are real roots between the z_k, Gaussian clouds, clusters around
/// the z_k, or conjugation-symmetric roots. Each start is driven to a solution of the equivalent
/// polynomial system P Q'' - R Q' = V Q in the coefficients of Q and V (P = prod (x - z_k),
/// R / P = sum lam_k / (x - z_k), deg V = n - 2), and the roots of Q are then polished by
/// Newton on the Bethe equations. The conjugate of a non-real point is added directly.
/// Stops once dim E_m distinct points are found or the budget is spent.
SearchResult find_critical_points(const MasterConfig &cfg, const SearchOptions &options = {});

/// One damped Newton run on the Bethe equations from `start`; returns the converged roots
/// or nothing.
std::optional<ComplexVector> newton_solve(const MasterConfig &cfg, ComplexVector start, double tol,
                                          int max_iterations);

/// H_i-eigenvalue of the Bethe vector: -lam_i Q'(z_i)/Q(z_i) + (lam_i/2) sum_{j != i} lam_j/(z_i - z_j).
ComplexVector bethe_eigenvalues(const MasterConfig &cfg, std::span<const Complex> qpoly);

/// (lam_i/2) sum_{j != i} lam_j / (z_i - z_j), exactly.
std::vector<Rational> vacuum_eigenvalues(const MasterConfig &cfg);

/// Omega_{ij} = E_i F_j + F_i E_j + H_i H_j / 2 on the level-m weight space.
RationalMatrix casimir(std::span<const HighestWeight> lams, int i, int j, int m);

/// H_i = sum_{j != i} Omega_{ij} / (z_i - z_j) on the level-m weight space.
RationalMatrix gaudin_hamiltonian(const MasterConfig &cfg, int i, int m);

struct GaudinSystem {
  shapovalov::SingularBasis basis;
  GramMatrix gram;
  std::vector<RationalMatrix> matrices;  // H_i acting on coordinates in `basis`

  std::size_t dim() const { return basis.dim(); }
};

/// Restricts every H_i to the singular vectors of level cfg.m. Throws std::logic_error if
/// the restriction, commutation or self-adjointness fails to hold exactly.
GaudinSystem gaudin_system(const MasterConfig &cfg);

/// b_Q = Y(t_1) ... Y(t_m) v in the composition basis, Y(t) = sum_i F_i / (t - z_i).
ComplexVector bethe_vector(const MasterConfig &cfg, std::span<const Complex> t);

/// The same vector from the expansion: the coefficient of (x)_i F^{a_i} v_i is
/// sum over maps sigma : {1..m} -> {1..n} with fibre sizes a of prod_j 1/(t_j - z_sigma(j)).
ComplexVector bethe_vector_expansion(const MasterConfig &cfg, std::span<const Complex> t);

/// max |Delta(E) b| / max |b|.
double e_residual(const MasterConfig &cfg, std::span<const Complex> b);

/// max_i |H_i b - mu_i b| / (max|b| (1 + |mu_i|)) on the full weight space.
double eigen_residual(const MasterConfig &cfg, std::span<const Complex> b, std::span<const Complex> mu);

struct SpectrumWitness {
  Complex eigenvalue;  // of the random combination
  ComplexVector joint;  // (mu_1, ..., mu_n)
  bool is_real = false;
};

struct SpectrumCount {
  std::int64_t real_count = 0;
  std::int64_t dim = 0;
  std::vector<std::int64_t> weights;  // coefficients c_i of the combination
  std::vector<SpectrumWitness> witnesses;
  int tries = 0;
};

/// Diagonalises sum_i c_i H_i on E_m for random integers c_i in [1, 10^6] and counts the
/// eigenvectors whose joint eigenvalue is real. Retries on a near-degenerate spectrum and
/// throws std::runtime_error after `max_tries`.
SpectrumCount count_real_by_spectrum(const MasterConfig &cfg, std::uint64_t seed = 1, double tol = 1e-7,
                                     int max_tries = 8);
SpectrumCount count_real_by_spectrum(const MasterConfig &cfg, const GaudinSystem &system, std::uint64_t seed = 1,
                                     double tol = 1e-7, int max_tries = 8);

struct BoundRecord {
  int n = 0;
  int m = 0;
  std::int64_t dim = 0;
  std::int64_t sgn = 0;
  std::int64_t n_spectrum = 0;

  bool holds() const { return (sgn < 0 ? -sgn : sgn) <= n_spectrum && n_spectrum <= dim; }
  bool tight() const { return (sgn < 0 ? -sgn : sgn) == n_spectrum; }
};

/// |sgn(E_m)| <= N <= dim E_m with sgn from the peeling decomposition and N from the spectrum.
BoundRecord bound_check(const MasterConfig &cfg, std::uint64_t seed = 1);

/// Exact check of [Z(t_a), Y(t_b)] = 2/(t_a - t_b) (Y(t_a) - Y(t_b)) between levels
/// l and l + 1 for every l < depth, Z(t) = sum_i H_i / (t - z_i) with H_i the Cartan element.
bool zy_commutator_check(const Rational &t_a, const Rational &t_b, const MasterConfig &cfg, int depth);

}  // namespace vermasig::bethe
