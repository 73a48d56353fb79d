#include "vermasig/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include <Eigen/Dense>

#include "vermasig/combinatorics.hpp"
#include "vermasig/errors.hpp"

namespace vermasig::bethe {

using shapovalov::WeightSpaceBasis;

void MasterConfig::validate() const {
  if (z.size() != lams.size())
    throw DomainError("z has " + std::to_string(z.size()) + " entries but there are " +
                      std::to_string(lams.size()) + " weights");
  if (lams.size() < 2) throw DomainError("need at least two tensor factors");
  if (m < 0) throw DomainError("level m must be nonnegative");
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (z[i] == z[j]) throw ArrangementError("z_" + std::to_string(i + 1) + " = z_" + std::to_string(j + 1));
  sigchar::require_generic_tuple(lams);
}

std::int64_t MasterConfig::dimension() const { return multiplicity_dimension(n(), m); }

namespace {

std::vector<double> z_double(const MasterConfig &cfg) {
  std::vector<double> out;
  for (const auto &z : cfg.z) out.push_back(to_double(z));
  return out;
}

std::vector<double> lam_double(const MasterConfig &cfg) {
  std::vector<double> out;
  for (const auto &l : cfg.lams) out.push_back(to_double(l.value()));
  return out;
}

double max_abs(std::span<const Complex> v) {
  double s = 0;
  for (const auto &x : v) s = std::max(s, std::abs(x));
  return s;
}

ComplexVector to_complex(const RationalMatrix &a, std::span<const Complex> x) {
  ComplexVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) out[r] += to_double(a(r, c)) * x[c];
  return out;
}

}  // namespace

double master_value(const MasterConfig &cfg, std::span<const double> t) {
  const auto z = z_double(cfg);
  const auto lam = lam_double(cfg);
  double value = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) throw ArrangementError("t_i = t_j");
      value *= (t[i] - t[j]) * (t[i] - t[j]);
    }
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (t[i] == z[k]) throw ArrangementError("t_i = z_k");
      value *= std::pow(std::abs(t[i] - z[k]), -lam[k]);
    }
  }
  return value;
}

namespace {

// Bethe equation values; false when t meets the arrangement.
bool equations_into(std::span<const double> z, std::span<const double> lam, std::span<const Complex> t,
                    ComplexVector &f) {
  const std::size_t m = t.size();
  f.assign(m, Complex(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const Complex d = t[i] - t[j];
      if (d == Complex(0)) return false;
      f[i] += 2.0 / d;
    }
    for (std::size_t k = 0; k < z.size(); ++k) {
      const Complex d = t[i] - z[k];
      if (d == Complex(0)) return false;
      f[i] -= lam[k] / d;
    }
  }
  return true;
}

}  // namespace

ComplexVector bethe_equations(const MasterConfig &cfg, std::span<const Complex> t) {
  ComplexVector f;
  if (!equations_into(z_double(cfg), lam_double(cfg), t, f))
    throw ArrangementError("point lies on the arrangement t_i = t_j or t_i = z_k");
  return f;
}

double bethe_residual(const MasterConfig &cfg, std::span<const Complex> t) {
  const auto f = bethe_equations(cfg, t);
  return max_abs(f);
}

ComplexVector polynomial_from_roots(std::span<const Complex> t) {
  ComplexVector c{Complex(1)};
  for (const auto &root : t) {
    ComplexVector next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= root * c[i];
    }
    c = std::move(next);
  }
  return c;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex poly_derivative_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc = 0;
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

bool is_real_polynomial(std::span<const Complex> coeffs, double tol) {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [&](const Complex &c) { return std::abs(c.imag()) < tol * (1 + std::abs(c)); });
}

std::int64_t SearchResult::real_count() const {
  return std::count_if(points.begin(), points.end(), [](const CriticalPoint &p) { return p.is_real; });
}

namespace {

std::optional<ComplexVector> newton_run(std::span<const double> z, std::span<const double> lam, ComplexVector t,
                                        double tol, int max_iterations) {
  const std::size_t m = t.size();
  if (m == 0) return t;
  ComplexVector f, trial_f;
  if (!equations_into(z, lam, t, f)) return std::nullopt;
  double res = max_abs(f);
  int polish = 0;
  Eigen::MatrixXcd jac(m, m);
  Eigen::VectorXcd rhs(m);
  for (int iter = 0; iter < max_iterations; ++iter) {
    if (res < tol && ++polish > 2) return t;
    for (std::size_t i = 0; i < m; ++i) {
      Complex diag = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == i) continue;
        const Complex d = t[i] - t[j];
        const Complex w = 2.0 / (d * d);
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
        diag -= w;
      }
      for (std::size_t k = 0; k < z.size(); ++k) {
        const Complex d = t[i] - z[k];
        diag += lam[k] / (d * d);
      }
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag;
      rhs(static_cast<Eigen::Index>(i)) = -f[i];
    }
    const Eigen::VectorXcd step = jac.partialPivLu().solve(rhs);
    if (!step.allFinite()) return std::nullopt;

    double damping = 1;
    ComplexVector trial(m);
    bool accepted = false;
    for (int halving = 0; halving < 12; ++halving, damping /= 2) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = t[i] + damping * step(static_cast<Eigen::Index>(i));
      if (!equations_into(z, lam, trial, trial_f)) continue;
      const double trial_res = max_abs(trial_f);
      if (std::isfinite(trial_res) && (trial_res < res || halving == 11)) {
        t = trial;
        f = trial_f;
        res = trial_res;
        accepted = true;
        break;
      }
    }
    if (!accepted || !std::isfinite(res)) return std::nullopt;
    if (max_abs(t) > 1e8) return std::nullopt;
  }
  return res < tol ? std::optional<ComplexVector>(t) : std::nullopt;
}

// Polynomial helpers, coefficients low to high.
ComplexVector poly_mul(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexVector c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

ComplexVector poly_der(std::span<const Complex> a) {
  if (a.size() <= 1) return {Complex(0)};
  ComplexVector c(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) c[i - 1] = static_cast<double>(i) * a[i];
  return c;
}

// The Bethe equations say Q''(t_i) = W(t_i) Q'(t_i) with W = sum_k lam_k / (x - z_k) = R / P,
// so P Q'' - R Q' = V Q for some V of degree n - 2. Newton runs on the coefficients of the
// monic Q and of V, where the system is polynomial and has no poles.
class StieltjesSystem {
public:
  StieltjesSystem(std::span<const double> z, std::span<const double> lam, int m)
      : n_(static_cast<int>(z.size())), m_(m), size_(n_ + m - 1) {
    p_ = {Complex(1)};
    for (double zk : z) p_ = poly_mul(p_, ComplexVector{-zk, 1.0});
    r_.assign(static_cast<std::size_t>(n_), Complex(0));
    for (int k = 0; k < n_; ++k) {
      ComplexVector term{Complex(1)};
      for (int l = 0; l < n_; ++l)
        if (l != k) term = poly_mul(term, ComplexVector{-z[static_cast<std::size_t>(l)], 1.0});
      for (std::size_t i = 0; i < term.size(); ++i) r_[i] += lam[static_cast<std::size_t>(k)] * term[i];
    }
  }

  int size() const { return size_; }

  ComplexVector q_of(const Eigen::VectorXcd &x) const {
    ComplexVector q(static_cast<std::size_t>(m_) + 1);
    for (int i = 0; i < m_; ++i) q[static_cast<std::size_t>(i)] = x(i);
    q[static_cast<std::size_t>(m_)] = 1;
    return q;
  }

  // Coefficients of P f'' - R f' - V f, truncated to the equation count.
  Eigen::VectorXcd apply(std::span<const Complex> f, std::span<const Complex> v) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size_);
    const auto add = [&](const ComplexVector &poly, double sign) {
      for (std::size_t i = 0; i < poly.size() && static_cast<int>(i) < size_; ++i)
        out(static_cast<Eigen::Index>(i)) += sign * poly[i];
    };
    const ComplexVector d1 = poly_der(f);
    add(poly_mul(p_, poly_der(d1)), 1);
    add(poly_mul(r_, d1), -1);
    add(poly_mul(v, f), -1);
    return out;
  }

  void evaluate(const Eigen::VectorXcd &x, Eigen::VectorXcd &residual, Eigen::MatrixXcd &jac) const {
    const ComplexVector q = q_of(x);
    const ComplexVector v(x.data() + m_, x.data() + size_);
    residual = apply(q, v);
    jac.setZero(size_, size_);
    for (int i = 0; i < m_; ++i) {
      ComplexVector e(static_cast<std::size_t>(i) + 1);
      e[static_cast<std::size_t>(i)] = 1;
      jac.col(i) = apply(e, v);
    }
    for (int j = 0; j < n_ - 1; ++j)
      for (int k = 0; k <= m_ && k + j < size_; ++k) jac(k + j, m_ + j) -= q[static_cast<std::size_t>(k)];
  }

private:
  int n_, m_, size_;
  ComplexVector p_, r_;
};

std::optional<ComplexVector> stieltjes_run(std::span<const double> z, std::span<const double> lam,
                                           std::span<const Complex> start, double tol, int max_iterations) {
  const int m = static_cast<int>(start.size());
  if (m == 0) return ComplexVector{};
  const StieltjesSystem sys(z, lam, m);
  const ComplexVector q0 = polynomial_from_roots(start);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(sys.size());
  for (int i = 0; i < m; ++i) x(i) = q0[static_cast<std::size_t>(i)];
  Eigen::VectorXcd res;
  Eigen::MatrixXcd jac;
  // V from least squares for the starting Q.
  sys.evaluate(x, res, jac);
  x.tail(sys.size() - m) += jac.rightCols(sys.size() - m).colPivHouseholderQr().solve(-res);

  bool converged = false;
  Eigen::VectorXcd trial_res;
  Eigen::MatrixXcd trial_jac;
  sys.evaluate(x, res, jac);
  for (int iter = 0; iter < max_iterations; ++iter) {
    const double norm = res.norm();
    if (res.cwiseAbs().maxCoeff() < 1e-13 * (1 + x.cwiseAbs().maxCoeff())) {
      converged = true;
      break;
    }
    const Eigen::VectorXcd step = jac.partialPivLu().solve(-res);
    if (!step.allFinite()) return std::nullopt;
    // Backtrack on the residual norm; the last halving is taken regardless.
    double damping = 1;
    for (int halving = 0; halving < 10; ++halving, damping /= 2) {
      const Eigen::VectorXcd trial = x + damping * step;
      sys.evaluate(trial, trial_res, trial_jac);
      if (trial_res.allFinite() && (trial_res.norm() < norm || halving == 9)) {
        x = trial;
        res.swap(trial_res);
        jac.swap(trial_jac);
        break;
      }
    }
    if (!x.allFinite()) return std::nullopt;
  }
  if (!converged) return std::nullopt;

  // Roots via the companion matrix, then polished on the Bethe equations themselves.
  const ComplexVector q = sys.q_of(x);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -q[static_cast<std::size_t>(i)];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
  if (eig.info() != Eigen::Success) return std::nullopt;
  ComplexVector roots(eig.eigenvalues().data(), eig.eigenvalues().data() + m);
  return newton_run(z, lam, std::move(roots), tol, 30);
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ComplexVector make_start(std::span<const double> z, int m, int attempt, std::mt19937_64 &rng) {
  std::vector<double> sorted(z.begin(), z.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front(), hi = sorted.back();
  // Bethe roots can sit far outside the z-range, so the start scale is log-uniform
  // between the spread of the z and ten times it.
  std::uniform_real_distribution<double> decades(0.0, 1.0);
  const double spread = std::max(1.0, hi - lo) * std::pow(10.0, decades(rng));
  const double centre = (lo + hi) / 2;
  std::normal_distribution<double> gauss(0.0, spread);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  ComplexVector t(static_cast<std::size_t>(m));
  switch (attempt % 4) {
    case 0: {  // real points in the gaps between consecutive z, or just outside
      std::uniform_int_distribution<std::size_t> gap(0, sorted.size());
      for (auto &x : t) {
        const std::size_t g = gap(rng);
        const double left = g == 0 ? lo - spread : sorted[g - 1];
        const double right = g == sorted.size() ? hi + spread : sorted[g];
        x = left + unit(rng) * (right - left);
      }
      break;
    }
    case 1: {  // a Gaussian cloud of random centre, from a tenth of the spread upwards
      const double width = std::max(1.0, hi - lo);
      std::uniform_real_distribution<double> box(-width, width), shrink(-2.0, 0.0);
      const Complex c(centre + box(rng), box(rng));
      std::normal_distribution<double> cloud(0.0, spread * std::pow(10.0, shrink(rng)));
      for (auto &x : t) x = c + Complex(cloud(rng), cloud(rng));
      break;
    }
    case 2: {  // clustered around the z, at distances from 1e-4 to 1
      std::uniform_int_distribution<std::size_t> pick(0, sorted.size() - 1);
      std::uniform_real_distribution<double> angle(0.0, 2 * std::acos(-1.0)), exponent(-4.0, 0.0);
      for (auto &x : t) x = sorted[pick(rng)] + std::polar(std::pow(10.0, exponent(rng)), angle(rng));
      break;
    }
    default: {  // conjugation-symmetric start
      std::size_t i = 0;
      for (; i + 1 < t.size(); i += 2) {
        const Complex w(centre + gauss(rng), gauss(rng));
        t[i] = w;
        t[i + 1] = std::conj(w);
      }
      if (i < t.size()) t[i] = centre + gauss(rng);
    }
  }
  return t;
}

bool same_point(const ComplexVector &a, const ComplexVector &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 1e-6 * (1 + std::abs(a[i]))) return false;
  return true;
}

}  // namespace

std::optional<ComplexVector> newton_solve(const MasterConfig &cfg, ComplexVector start, double tol,
                                          int max_iterations) {
  return newton_run(z_double(cfg), lam_double(cfg), std::move(start), tol, max_iterations);
}

SearchResult find_critical_points(const MasterConfig &cfg, const SearchOptions &options) {
  cfg.validate();
  SearchResult result;
  result.expected = cfg.dimension();
  const auto z = z_double(cfg);
  const auto lam = lam_double(cfg);
  const int budget = options.budget > 0 ? options.budget : static_cast<int>(200 * result.expected);
  const unsigned threads = std::max(1u, options.threads);
  constexpr int batch = 32;

  for (int first = 0; first < budget && !result.complete(); first += batch) {
    const int count = std::min(batch, budget - first);
    std::vector<std::optional<ComplexVector>> found(static_cast<std::size_t>(count));
    auto work = [&](unsigned worker) {
      for (int k = static_cast<int>(worker); k < count; k += static_cast<int>(threads)) {
        const int attempt = first + k;
        std::mt19937_64 rng(splitmix(options.seed ^ splitmix(static_cast<std::uint64_t>(attempt))));
        found[static_cast<std::size_t>(k)] =
            stieltjes_run(z, lam, make_start(z, cfg.m, attempt, rng), options.tol, options.max_iterations);
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
      for (auto &th : pool) th.join();
    }
    for (int k = 0; k < count && !result.complete(); ++k) {
      result.attempts = first + k + 1;
      if (!found[static_cast<std::size_t>(k)]) continue;
      CriticalPoint p;
      p.roots = *found[static_cast<std::size_t>(k)];
      p.qpoly = polynomial_from_roots(p.roots);
      const bool duplicate = std::any_of(result.points.begin(), result.points.end(),
                                         [&](const CriticalPoint &q) { return same_point(q.qpoly, p.qpoly); });
      if (duplicate) continue;
      ComplexVector f;
      equations_into(z, lam, p.roots, f);
      p.residual = max_abs(f);
      p.is_real = is_real_polynomial(p.qpoly, options.reality_tol);
      // The equations have real coefficients, so a non-real point brings its conjugate.
      std::optional<ComplexVector> mirror;
      if (!p.is_real) {
        ComplexVector conj(p.roots.size());
        std::transform(p.roots.begin(), p.roots.end(), conj.begin(), [](Complex c) { return std::conj(c); });
        mirror = newton_run(z, lam, std::move(conj), options.tol, options.max_iterations);
      }
      result.points.push_back(std::move(p));
      if (!mirror || result.complete()) continue;
      CriticalPoint c;
      c.roots = std::move(*mirror);
      c.qpoly = polynomial_from_roots(c.roots);
      if (std::any_of(result.points.begin(), result.points.end(),
                      [&](const CriticalPoint &q) { return same_point(q.qpoly, c.qpoly); }))
        continue;
      equations_into(z, lam, c.roots, f);
      c.residual = max_abs(f);
      c.is_real = is_real_polynomial(c.qpoly, options.reality_tol);
      result.points.push_back(std::move(c));
    }
  }
  return result;
}

std::vector<Rational> vacuum_eigenvalues(const MasterConfig &cfg) {
  std::vector<Rational> out(static_cast<std::size_t>(cfg.n()), 0);
  for (int i = 0; i < cfg.n(); ++i)
    for (int j = 0; j < cfg.n(); ++j) {
      if (j == i) continue;
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      out[ui] += cfg.lams[ui].value() * cfg.lams[uj].value() / (2 * (cfg.z[ui] - cfg.z[uj]));
    }
  return out;
}

ComplexVector bethe_eigenvalues(const MasterConfig &cfg, std::span<const Complex> qpoly) {
  const auto vac = vacuum_eigenvalues(cfg);
  ComplexVector out;
  for (int i = 0; i < cfg.n(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const double zi = to_double(cfg.z[ui]);
    const double li = to_double(cfg.lams[ui].value());
    out.push_back(-li * poly_derivative_eval(qpoly, zi) / poly_eval(qpoly, zi) + to_double(vac[ui]));
  }
  return out;
}

RationalMatrix casimir(std::span<const HighestWeight> lams, int i, int j, int m) {
  if (i == j) throw DomainError("casimir needs distinct factors");
  const WeightSpaceBasis basis(static_cast<int>(lams.size()), m);
  RationalMatrix out(basis.size(), basis.size());
  const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Composition &k = basis.compositions[col];
    const Rational &li = lams[ui].value();
    const Rational &lj = lams[uj].value();
    out(col, col) += (li - 2 * k[ui]) * (lj - 2 * k[uj]) / 2;
    // E_i F_j and F_i E_j
    for (auto [lower, raise] : {std::pair{ui, uj}, std::pair{uj, ui}}) {
      const int kl = k[lower];
      if (kl == 0) continue;
      Composition target = k;
      --target[lower];
      ++target[raise];
      out(basis.index.at(target), col) += kl * (lams[lower].value() - kl + 1);
    }
  }
  return out;
}

RationalMatrix gaudin_hamiltonian(const MasterConfig &cfg, int i, int m) {
  const std::size_t size = WeightSpaceBasis(cfg.n(), m).size();
  RationalMatrix out(size, size);
  for (int j = 0; j < cfg.n(); ++j) {
    if (j == i) continue;
    const Rational scale = 1 / Rational(cfg.z[static_cast<std::size_t>(i)] - cfg.z[static_cast<std::size_t>(j)]);
    out = out + scale * casimir(cfg.lams, i, j, m);
  }
  return out;
}

GaudinSystem gaudin_system(const MasterConfig &cfg) {
  cfg.validate();
  GaudinSystem sys{shapovalov::singular_basis(cfg.lams, cfg.m), {}, {}};
  sys.gram = shapovalov::gram_on_multiplicity(cfg.lams, sys.basis, cfg.m);
  const RationalMatrix columns = sys.basis.vectors.transpose();
  const std::size_t d = sys.dim();
  for (int i = 0; i < cfg.n(); ++i) {
    const RationalMatrix image = gaudin_hamiltonian(cfg, i, cfg.m) * columns;
    RationalMatrix a(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) a(r, c) = image(sys.basis.free_columns[r], c);
    if (!(columns * a == image))
      throw std::logic_error("H_" + std::to_string(i + 1) + " does not preserve the singular vectors");
    if (!(sys.gram * a).is_symmetric())
      throw std::logic_error("H_" + std::to_string(i + 1) + " is not self-adjoint for the induced form");
    sys.matrices.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < sys.matrices.size(); ++i)
    for (std::size_t j = i + 1; j < sys.matrices.size(); ++j)
      if (!(sys.matrices[i] * sys.matrices[j] == sys.matrices[j] * sys.matrices[i]))
        throw std::logic_error("H_" + std::to_string(i + 1) + " and H_" + std::to_string(j + 1) + " do not commute");
  return sys;
}

ComplexVector bethe_vector(const MasterConfig &cfg, std::span<const Complex> t) {
  const auto z = z_double(cfg);
  const int n = cfg.n();
  ComplexVector current{Complex(1)};
  for (int level = 0; level < static_cast<int>(t.size()); ++level) {
    const WeightSpaceBasis from(n, level), to(n, level + 1);
    ComplexVector next(to.size());
    const Complex tj = t[t.size() - 1 - static_cast<std::size_t>(level)];
    for (std::size_t col = 0; col < from.size(); ++col) {
      Composition k = from.compositions[col];
      for (std::size_t i = 0; i < k.size(); ++i) {
        const Complex d = tj - z[i];
        if (d == Complex(0)) throw ArrangementError("t_j = z_k in Y(t)");
        ++k[i];
        next[to.index.at(k)] += current[col] / d;
        --k[i];
      }
    }
    current = std::move(next);
  }
  return current;
}

namespace {

Complex assignment_sum(std::span<const double> z, std::span<const Complex> t, std::size_t j, Composition &left) {
  if (j == t.size()) return 1;
  Complex acc = 0;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] == 0) continue;
    const Complex d = t[j] - z[i];
    if (d == Complex(0)) throw ArrangementError("t_j = z_k in the Bethe vector");
    --left[i];
    acc += assignment_sum(z, t, j + 1, left) / d;
    ++left[i];
  }
  return acc;
}

// The level whose weight space has `size` compositions of n parts.
int level_of(int n, std::size_t size) {
  int level = 0;
  while (static_cast<std::size_t>(multiplicity_dimension(n + 1, level)) < size) ++level;
  if (static_cast<std::size_t>(multiplicity_dimension(n + 1, level)) != size)
    throw DomainError("vector length matches no weight space");
  return level;
}

}  // namespace

ComplexVector bethe_vector_expansion(const MasterConfig &cfg, std::span<const Complex> t) {
  const auto z = z_double(cfg);
  const WeightSpaceBasis basis(cfg.n(), static_cast<int>(t.size()));
  ComplexVector out(basis.size());
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    Composition left = basis.compositions[idx];
    out[idx] = assignment_sum(z, t, 0, left);
  }
  return out;
}

double e_residual(const MasterConfig &cfg, std::span<const Complex> b) {
  const int level = level_of(cfg.n(), b.size());
  const auto eb = to_complex(shapovalov::e_action(cfg.lams, level), b);
  return max_abs(eb) / max_abs(b);
}

double eigen_residual(const MasterConfig &cfg, std::span<const Complex> b, std::span<const Complex> mu) {
  const int level = level_of(cfg.n(), b.size());
  const double scale = max_abs(b);
  double worst = 0;
  for (int i = 0; i < cfg.n(); ++i) {
    const auto hb = to_complex(gaudin_hamiltonian(cfg, i, level), b);
    double r = 0;
    for (std::size_t k = 0; k < b.size(); ++k) r = std::max(r, std::abs(hb[k] - mu[static_cast<std::size_t>(i)] * b[k]));
    worst = std::max(worst, r / (scale * (1 + std::abs(mu[static_cast<std::size_t>(i)]))));
  }
  return worst;
}

namespace {

Eigen::MatrixXd to_eigen(const RationalMatrix &a) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(a.rows()), static_cast<Eigen::Index>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = to_double(a(r, c));
  return out;
}

}  // namespace

SpectrumCount count_real_by_spectrum(const MasterConfig &cfg, std::uint64_t seed, double tol, int max_tries) {
  return count_real_by_spectrum(cfg, gaudin_system(cfg), seed, tol, max_tries);
}

SpectrumCount count_real_by_spectrum(const MasterConfig &, const GaudinSystem &system, std::uint64_t seed,
                                     double tol, int max_tries) {
  const std::size_t d = system.dim();
  std::vector<Eigen::MatrixXd> numeric;
  for (const auto &a : system.matrices) numeric.push_back(to_eigen(a));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coeff(1, 1000000);

  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    SpectrumCount out;
    out.dim = static_cast<std::int64_t>(d);
    out.tries = attempt;
    RationalMatrix combo(d, d);
    for (const auto &a : system.matrices) {
      out.weights.push_back(coeff(rng));
      combo = combo + Rational(out.weights.back()) * a;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(combo));
    if (solver.info() != Eigen::Success) continue;
    const Eigen::VectorXcd values = solver.eigenvalues();
    double scale = 1;
    for (Eigen::Index k = 0; k < values.size(); ++k) scale = std::max(scale, std::abs(values(k)));
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index p = 0; p < values.size(); ++p)
      for (Eigen::Index q = p + 1; q < values.size(); ++q) gap = std::min(gap, std::abs(values(p) - values(q)));
    if (gap < 1e-9 * scale) continue;

    const Eigen::MatrixXcd vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < values.size(); ++k) {
      const Eigen::VectorXcd x = vectors.col(k);
      SpectrumWitness w;
      w.eigenvalue = values(k);
      w.is_real = true;
      for (const auto &a : numeric) {
        const Complex mu = x.dot(a.cast<Complex>() * x) / x.squaredNorm();
        w.joint.push_back(mu);
        if (std::abs(mu.imag()) >= tol * (1 + std::abs(mu))) w.is_real = false;
      }
      out.real_count += w.is_real;
      out.witnesses.push_back(std::move(w));
    }
    return out;
  }
  throw std::runtime_error("no simple spectrum found for a random combination after " + std::to_string(max_tries) +
                           " tries");
}

BoundRecord bound_check(const MasterConfig &cfg, std::uint64_t seed) {
  cfg.validate();
  BoundRecord rec;
  rec.n = cfg.n();
  rec.m = cfg.m;
  rec.dim = cfg.dimension();
  rec.sgn = sigchar::peel_decompose(cfg.lams, cfg.m).level(cfg.m).signature();
  rec.n_spectrum = count_real_by_spectrum(cfg, seed).real_count;
  return rec;
}

namespace {

// Y(t) = sum_i F_i / (t - z_i) from level l to level l + 1.
RationalMatrix y_operator(const MasterConfig &cfg, const Rational &t, int level) {
  const WeightSpaceBasis from(cfg.n(), level), to(cfg.n(), level + 1);
  RationalMatrix out(to.size(), from.size());
  for (std::size_t col = 0; col < from.size(); ++col) {
    Composition k = from.compositions[col];
    for (std::size_t i = 0; i < k.size(); ++i) {
      ++k[i];
      out(to.index.at(k), col) += 1 / Rational(t - cfg.z[i]);
      --k[i];
    }
  }
  return out;
}

// Z(t) = sum_i H_i / (t - z_i) on level l (diagonal).
RationalMatrix z_operator(const MasterConfig &cfg, const Rational &t, int level) {
  const WeightSpaceBasis basis(cfg.n(), level);
  RationalMatrix out(basis.size(), basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Composition &k = basis.compositions[col];
    for (std::size_t i = 0; i < k.size(); ++i)
      out(col, col) += (cfg.lams[i].value() - 2 * k[i]) / (t - cfg.z[i]);
  }
  return out;
}

}  // namespace

bool zy_commutator_check(const Rational &t_a, const Rational &t_b, const MasterConfig &cfg, int depth) {
  if (t_a == t_b) throw DomainError("zy_commutator_check needs t_a != t_b");
  for (const auto &z : cfg.z)
    if (z == t_a || z == t_b) throw ArrangementError("t meets some z_k");
  for (int level = 0; level < depth; ++level) {
    const RationalMatrix ya = y_operator(cfg, t_a, level), yb = y_operator(cfg, t_b, level);
    const RationalMatrix lhs = z_operator(cfg, t_a, level + 1) * yb - yb * z_operator(cfg, t_a, level);
    const RationalMatrix rhs = Rational(2 / Rational(t_a - t_b)) * (ya - yb);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

}  // namespace vermasig::bethe
