// Runs every acceptance criterion at its stated tolerance and prints one PASS/FAIL line
// per criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vermasig/bethe.hpp"
#include "vermasig/classify.hpp"
#include "vermasig/combinatorics.hpp"
#include "vermasig/errors.hpp"
#include "vermasig/quantum.hpp"
#include "vermasig/shapovalov.hpp"
#include "vermasig/sigchar.hpp"

using namespace vermasig;
using sigchar::HighestWeight;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Rational> random_generic(std::mt19937_64 &rng, int n, int max_den = 97) {
  std::uniform_int_distribution<int> num(-600, 600), den(2, max_den);
  while (true) {
    std::vector<Rational> v;
    for (int i = 0; i < n; ++i) v.push_back(make_rational(num(rng), den(rng)));
    try {
      sigchar::require_generic_tuple(sigchar::to_weights(v));
      return v;
    } catch (const GenericityError &) {
    }
  }
}

// 1. Classification list against peeling for every explicit type, n <= 5, floors in [-4, 4].
Outcome classification() {
  std::mt19937_64 rng(1);
  std::size_t types = 0, mismatched = 0;
  std::string first;
  for (int n = 2; n <= 5; ++n)
    for (const auto &t : classify::enumerate_types(n, -4, 4)) {
      ++types;
      for (int bound : {classify::default_level_bound(t), classify::sweep_level_bound(t)}) {
        if (!classify::verify_type(t, bound, rng)) {
          if (mismatched++ == 0) first = t.to_string() + " at bound " + std::to_string(bound);
        }
      }
    }
  Outcome o{mismatched == 0, std::to_string(types) + " types, default and extended horizons, " +
                                 std::to_string(mismatched) + " mismatches"};
  if (mismatched) o.detail += ", first " + first;
  return o;
}

// 2. Gram inertia against the peeling decomposition.
Outcome gram_oracle() {
  std::mt19937_64 rng(2);
  int instances = 0, bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const auto lams = sigchar::to_weights(random_generic(rng, n));
    const auto d = sigchar::peel_decompose(lams, 6);
    for (int m = 0; m <= 6; ++m) {
      const auto in = shapovalov::exact_signature(shapovalov::gram_on_multiplicity(lams, m));
      ++instances;
      bad += (in.pos != d.level(m).a || in.neg != d.level(m).b);
    }
  }
  return {bad == 0, "200 tuples, " + std::to_string(instances) + " levels, " + std::to_string(bad) + " mismatches"};
}

// 3. Signature formula at q = 1 against peeling.
Outcome formula_at_one() {
  std::mt19937_64 rng(3);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const auto v = random_generic(rng, n);
    const auto d = sigchar::peel_decompose(sigchar::to_weights(v), 8);
    for (int m = 0; m <= 8; ++m) bad += quantum::thm_signature(v, m, quantum::Classical{}) != d.level(m).signature();
  }
  return {bad == 0, "100 tuples, levels 0..8, " + std::to_string(bad) + " mismatches"};
}

// 4. Coboundary norm, closed form, formula sign and the quantum Vandermonde identity.
Outcome two_factor_quantum() {
  double worst = 0;
  int sign_bad = 0, vandermonde_bad = 0, cases = 0;
  for (const quantum::QParam qp : {quantum::QParam(1, 23), quantum::QParam(2, 31), quantum::QParam(5, 47)})
    for (int a = 0; a <= 8; ++a)
      for (int b = 0; b <= 8; ++b)
        for (int m = 0; m <= std::min(a, b); ++m) {
          ++cases;
          const auto x = quantum::coboundary_norm(a, b, m, qp.t());
          const auto y = quantum::closed_form_norm(a, b, m, qp.t());
          worst = std::max(worst, std::abs(x - y) / std::abs(y));
          const std::vector<Rational> ab{Rational(a), Rational(b)};
          const int numeric = x.real() > 0 ? 1 : -1;
          sign_bad += quantum::thm_signature(ab, m, qp) != numeric;
          vandermonde_bad += !quantum::q_vandermonde_check(a, b, m, qp.t(), 1e-10);
        }
  std::ostringstream s;
  s << cases << " cases, max relative gap " << worst << ", " << sign_bad << " sign mismatches, " << vandermonde_bad
    << " Vandermonde failures";
  return {worst <= 1e-10 && sign_bad == 0 && vandermonde_bad == 0, s.str()};
}

bethe::MasterConfig random_config(std::mt19937_64 &rng, int n, int m, bool negative) {
  std::uniform_int_distribution<int> num(-300, 300), den(2, 29), zpick(-40, 40);
  while (true) {
    bethe::MasterConfig cfg;
    cfg.m = m;
    for (int i = 0; i < n; ++i) {
      Rational l = make_rational(num(rng), den(rng));
      if (negative && l > 0) l = -l;
      cfg.lams.emplace_back(l);
      cfg.z.push_back(make_rational(zpick(rng), 4));
    }
    try {
      cfg.validate();
      return cfg;
    } catch (const std::domain_error &) {
    }
  }
}

struct BetheRun {
  std::vector<bethe::BoundRecord> records;
  std::vector<bool> negative;
};

BetheRun bethe_instances;

// 5. Gaudin structure, Bethe vectors and the two counts of real critical points.
Outcome gaudin_bethe() {
  std::mt19937_64 rng(5);
  std::ostringstream s;
  bool pass = true;

  int structure_cases = 0;
  for (int n = 2; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m) {
      try {
        bethe::gaudin_system(random_config(rng, n, m, false));  // throws unless exact identities hold
        ++structure_cases;
      } catch (const std::logic_error &e) {
        pass = false;
        s << "structure failure n=" << n << " m=" << m << ": " << e.what() << "; ";
      }
    }

  double worst_e = 0, worst_h = 0;
  int count_bad = 0, incomplete = 0, points = 0;
  for (int trial = 0; trial < 24; ++trial) {
    const bool negative = trial >= 20;
    const auto cfg = random_config(rng, 3, 1 + trial % 3, negative);
    const auto system = bethe::gaudin_system(cfg);
    const auto spectrum = bethe::count_real_by_spectrum(cfg, system, 1000 + static_cast<std::uint64_t>(trial));
    bethe::SearchOptions opts;
    opts.seed = 2000 + static_cast<std::uint64_t>(trial);
    const auto search = bethe::find_critical_points(cfg, opts);
    incomplete += !search.complete();
    count_bad += spectrum.real_count != search.real_count();
    for (const auto &p : search.points) {
      ++points;
      const auto b = bethe::bethe_vector(cfg, p.roots);
      worst_e = std::max(worst_e, bethe::e_residual(cfg, b));
      worst_h = std::max(worst_h, bethe::eigen_residual(cfg, b, bethe::bethe_eigenvalues(cfg, p.qpoly)));
    }
    bethe::BoundRecord rec;
    rec.n = cfg.n();
    rec.m = cfg.m;
    rec.dim = cfg.dimension();
    rec.sgn = sigchar::peel_decompose(cfg.lams, cfg.m).level(cfg.m).signature();
    rec.n_spectrum = spectrum.real_count;
    bethe_instances.records.push_back(rec);
    bethe_instances.negative.push_back(negative);
  }
  pass = pass && worst_e < 1e-8 && worst_h < 1e-8 && count_bad == 0 && incomplete == 0;
  s << structure_cases << " exact Gaudin systems (n<=4, m<=4); 24 instances (20 random, 4 all-negative), " << points
    << " critical points, max E residual " << worst_e << ", max eigen residual " << worst_h << ", " << count_bad
    << " count mismatches, " << incomplete << " incomplete searches";
  return {pass, s.str()};
}

// 6. |sgn| <= N <= dim on the instances of criterion 5; N = dim when every weight is negative.
Outcome signature_bound() {
  if (bethe_instances.records.empty()) return {false, "criterion 5 produced no instances"};
  int violated = 0, not_tight = 0, tight = 0;
  for (std::size_t i = 0; i < bethe_instances.records.size(); ++i) {
    const auto &r = bethe_instances.records[i];
    violated += !r.holds();
    if (bethe_instances.negative[i]) not_tight += r.n_spectrum != r.dim;
    tight += r.tight();
  }
  return {violated == 0 && not_tight == 0,
          std::to_string(bethe_instances.records.size()) + " instances, " + std::to_string(violated) +
              " violations, " + std::to_string(tight) + " with |sgn| = N, " + std::to_string(not_tight) +
              " all-negative instances with N != dim"};
}

// 7. Large-m closed form and the ratio |sgn| / dim.
Outcome large_levels() {
  std::ostringstream s;
  bool pass = true;
  const std::vector<std::vector<Rational>> tuples{
      {make_rational(23, 10), make_rational(17, 10), make_rational(-2, 5)},
      {make_rational(13, 7), make_rational(5, 3), make_rational(-4, 9), make_rational(7, 11)},
      {make_rational(41, 9), make_rational(-3, 8), make_rational(-13, 6)},
      {make_rational(31, 10), make_rational(21, 10), make_rational(11, 10), make_rational(-9, 7)}};
  for (const auto &v : tuples) {
    const auto lams = sigchar::to_weights(v);
    const int n = static_cast<int>(v.size());
    const auto d = sigchar::peel_decompose(lams, 200);
    const int threshold = sigchar::asymptotic_threshold(lams, 200);
    bool agree = threshold <= 200;
    for (int m = threshold; m <= 200; ++m) agree = agree && sigchar::asymptotic_signature(lams, m) == d.level(m).signature();
    double worst_ratio = 1;
    for (int m = 100; m <= 200; ++m)
      worst_ratio = std::min(worst_ratio, std::abs(static_cast<double>(d.level(m).signature())) /
                                              static_cast<double>(multiplicity_dimension(n, m)));
    const auto c = sigchar::asymptotic_polynomial(lams);
    std::int64_t alternating = 0;
    for (std::size_t i = 0; i < c.size(); ++i) alternating += (i % 2 == 0 ? 1 : -1) * c[i];
    const bool leading = alternating == 1 || alternating == -1;
    pass = pass && agree && worst_ratio >= 0.8 && leading && threshold <= 100;
    s << "n=" << n << " threshold " << threshold << " min ratio " << worst_ratio << " leading "
      << (leading ? "ok" : "bad") << "; ";
  }
  return {pass, s.str()};
}

// 8. The e^mu identity and the Bethe vector expansion.
Outcome expansion_identities() {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-4999, 4999);
  int e_bad = 0, checked = 0;
  while (checked < 100) {
    const Rational mu = make_rational(num(rng), 1000);
    if (is_integer(mu)) continue;
    e_bad += !sigchar::e_decomposition_check(mu, 12);
    ++checked;
  }
  double worst = 0;
  std::normal_distribution<double> g(0, 2);
  for (int n = 2; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m)
      for (int trial = 0; trial < 10; ++trial) {
        const auto cfg = random_config(rng, n, m, false);
        std::vector<bethe::Complex> t(static_cast<std::size_t>(m));
        for (auto &x : t) x = bethe::Complex(g(rng), g(rng));
        const auto x = bethe::bethe_vector(cfg, t), y = bethe::bethe_vector_expansion(cfg, t);
        for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]) / (1 + std::abs(x[k])));
      }
  std::ostringstream s;
  s << "100 values of mu, " << e_bad << " failures; Bethe expansion max gap " << worst;
  return {e_bad == 0 && worst <= 1e-12, s.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classification list", classification},
      {"Gram inertia vs peeling", gram_oracle},
      {"signature formula at q = 1", formula_at_one},
      {"two-factor quantum norm", two_factor_quantum},
      {"Gaudin and Bethe structure", gaudin_bethe},
      {"real critical point bound", signature_bound},
      {"large-level signatures", large_levels},
      {"expansion identities", expansion_identities},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("criterion %zu %-28s %s  %s  [%.1fs]\n", i + 1, criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
