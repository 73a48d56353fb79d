#include "vermasig/quantum.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "vermasig/combinatorics.hpp"
#include "vermasig/errors.hpp"

namespace vermasig::quantum {

using vermasig::to_string;

QParam::QParam(std::int64_t num, std::int64_t den) {
  if (den <= 0 || num <= 0 || num >= den)
    throw DomainError("q parameter t = " + std::to_string(num) + "/" + std::to_string(den) +
                      " must lie in (0, 1)");
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

QParam QParam::parse(std::string_view text) {
  const Rational t = parse_rational(text);
  if (!t.get_num().fits_slong_p() || !t.get_den().fits_slong_p())
    throw ParseError("q parameter out of range");
  return QParam(t.get_num().get_si(), t.get_den().get_si());
}

std::string QParam::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

int q_int_sign(std::int64_t j, const QParam &qp) {
  if (j == 0) return 0;
  const std::int64_t period = 2 * qp.den();
  const std::int64_t r = ((static_cast<__int128>(j) * qp.num()) % period + period) % period;
  if (r == 0 || r == qp.den())
    throw RootOfUnityError("[" + std::to_string(j) + "] vanishes at t = " + qp.to_string());
  return r < qp.den() ? 1 : -1;
}

int q_real_int_sign(const Rational &x, const QParam &qp) {
  const Rational y = x * qp.t_exact();
  const Rational r = y - 2 * floor_int(Rational(y / 2));  // y mod 2, in [0, 2)
  if (r == 0 || r == 1) return 0;
  return r < 1 ? 1 : -1;
}

int q_binomial_sign(std::int64_t top, std::int64_t bottom, const QParam &qp) {
  if (bottom < 0) throw DomainError("q_binomial_sign: negative bottom");
  if (bottom == 0) return 1;
  if (top < 0) {
    const int reflected = q_binomial_sign(bottom - top - 1, bottom, qp);
    return (bottom % 2 == 0) ? reflected : -reflected;
  }
  if (top < bottom) return 0;
  int s = 1;
  for (std::int64_t j = 1; j <= bottom; ++j) s *= q_int_sign(top - j + 1, qp) * q_int_sign(j, qp);
  return s;
}

int classical_binomial_sign(const Rational &top, std::int64_t bottom) {
  if (bottom < 0) throw DomainError("classical_binomial_sign: negative bottom");
  int s = 1;
  for (std::int64_t i = 0; i < bottom; ++i) s *= sign_of(Rational(top - i));
  return s;
}

int q_binomial_sign_real(const Rational &top, std::int64_t bottom, const QParam &qp) {
  if (bottom < 0) throw DomainError("q_binomial_sign_real: negative bottom");
  int s = 1;
  for (std::int64_t j = 1; j <= bottom; ++j) s *= q_real_int_sign(top - j + 1, qp) * q_int_sign(j, qp);
  return s;
}

int binomial_sign(const Rational &top, std::int64_t bottom, const QSetting &q) {
  if (std::holds_alternative<Classical>(q)) return classical_binomial_sign(top, bottom);
  const auto &qp = std::get<QParam>(q);
  if (is_integer(top)) {
    if (!top.get_num().fits_slong_p()) throw DomainError("binomial_sign: top out of range");
    return q_binomial_sign(top.get_num().get_si(), bottom, qp);
  }
  return q_binomial_sign_real(top, bottom, qp);
}

namespace {

template <class Visit>
void for_each_composition_term(std::span<const Rational> a, int m, const QSetting &q, Visit visit) {
  const int n = static_cast<int>(a.size());
  if (n < 2) throw DomainError("thm_signature needs at least two factors");
  if (m < 0) throw DomainError("thm_signature: negative level");

  std::vector<Rational> prefix_a(static_cast<std::size_t>(n) + 1, 0);  // prefix_a[j] = a_1 + ... + a_j
  for (int j = 1; j <= n; ++j) prefix_a[static_cast<std::size_t>(j)] = prefix_a[static_cast<std::size_t>(j) - 1] + a[static_cast<std::size_t>(j) - 1];

  for (const auto &parts : compositions(n - 1, m)) {
    int term = 1;
    std::int64_t before = 0;  // m_1 + ... + m_{j-1}
    for (int j = 1; j <= n - 1 && term != 0; ++j) {
      // Step j pairs V_{a_1 + ... + a_j - 2(m_1 + ... + m_{j-1})} with V_{a_{j+1}} at level m_j.
      const std::int64_t mj = parts[static_cast<std::size_t>(j) - 1];
      const Rational top1 = 1 + prefix_a[static_cast<std::size_t>(j) + 1] - 2 * before - mj;
      const Rational top2 = prefix_a[static_cast<std::size_t>(j)] - 2 * before;
      const Rational &top3 = a[static_cast<std::size_t>(j)];
      term *= binomial_sign(top1, mj, q);
      if (term != 0) term *= binomial_sign(top2, mj, q);
      if (term != 0) term *= binomial_sign(top3, mj, q);
      before += mj;
    }
    visit(term);
  }
}

}  // namespace

std::int64_t thm_signature(std::span<const Rational> a, int m, const QSetting &q) {
  std::int64_t sum = 0;
  for_each_composition_term(a, m, q, [&](int term) { sum += term; });
  return sum;
}

std::int64_t thm_nonvanishing_terms(std::span<const Rational> a, int m, const QSetting &q) {
  std::int64_t count = 0;
  for_each_composition_term(a, m, q, [&](int term) { count += (term != 0); });
  return count;
}

std::int64_t finite_multiplicity(std::span<const std::int64_t> a, int m) {
  if (m < 0) return 0;
  const std::int64_t total = std::accumulate(a.begin(), a.end(), std::int64_t{0});
  if (2 * m > total) return 0;
  // count[l] = number of (k_i) with 0 <= k_i <= a_i and sum l
  std::vector<std::int64_t> count{1};
  for (auto ai : a) {
    std::vector<std::int64_t> next(count.size() + static_cast<std::size_t>(ai), 0);
    for (std::size_t l = 0; l < count.size(); ++l)
      for (std::int64_t k = 0; k <= ai; ++k) next[l + static_cast<std::size_t>(k)] += count[l];
    count = std::move(next);
  }
  const auto at = [&](int l) { return (l < 0 || l >= static_cast<int>(count.size())) ? 0 : count[static_cast<std::size_t>(l)]; };
  return at(m) - at(m - 1);
}

Complex q_power(double t, double exponent) { return std::polar(1.0, std::numbers::pi * t * exponent); }

Complex q_number(double t, double x) {
  return (q_power(t, x) - q_power(t, -x)) / (q_power(t, 1) - q_power(t, -1));
}

Complex q_binomial(double t, std::int64_t top, std::int64_t bottom) {
  if (bottom < 0) throw DomainError("q_binomial: negative bottom");
  Complex acc = 1;
  for (std::int64_t j = 1; j <= bottom; ++j)
    acc *= q_number(t, static_cast<double>(top - j + 1)) / q_number(t, static_cast<double>(j));
  return acc;
}

double QTensorState::norm() const {
  double s = 0;
  for (const auto &c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

QTensorState apply_delta_e(const QTensorState &x, double t) {
  QTensorState out(x.a, x.b);
  for (int i = 0; i <= x.a; ++i)
    for (int j = 0; j <= x.b; ++j) {
      const Complex c = x.at(i, j);
      if (c == Complex(0)) continue;
      if (i >= 1) out.at(i - 1, j) += c * q_number(t, x.a - i + 1);
      if (j >= 1) out.at(i, j - 1) += c * q_power(t, x.a - 2 * i) * q_number(t, x.b - j + 1);
    }
  return out;
}

QTensorState apply_tr(const QTensorState &x, double t) {
  QTensorState out(x.b, x.a);
  const Complex gap = q_power(t, 1) - q_power(t, -1);
  for (int i = 0; i <= x.a; ++i)
    for (int j = 0; j <= x.b; ++j) {
      const Complex c = x.at(i, j);
      if (c == Complex(0)) continue;
      // F^k v_i = [i+1]...[i+k] v_{i+k},  E^k w_j = [b-j+1]...[b-j+k] w_{j-k}
      Complex factor = 1;
      for (int k = 0; i + k <= x.a && j - k >= 0; ++k) {
        if (k > 0)
          factor *= gap / q_number(t, k) * q_number(t, i + k) * q_number(t, x.b - j + k);
        const int i2 = i + k;
        const int j2 = j - k;
        const double cartan = static_cast<double>(x.a - 2 * i2) * (x.b - 2 * j2) / 2.0;
        out.at(j2, i2) += c * factor * q_power(t, k * (k - 1) / 2.0 + cartan);
      }
    }
  return out;
}

namespace {

void require_level(int a, int b, int m) {
  if (a < 0 || b < 0 || m < 0 || m > std::min(a, b))
    throw DomainError("need 0 <= m <= min(a, b); got a = " + std::to_string(a) + ", b = " + std::to_string(b) +
                      ", m = " + std::to_string(m));
}

double sign_power(int i) { return (i % 2 == 0) ? 1.0 : -1.0; }

Complex hwv_coefficient(int a, int b, int m, int i, double t) {
  return sign_power(i) * q_power(t, a * i - i * i + i) * q_binomial(t, b - m + i, i) / q_binomial(t, a, i);
}

}  // namespace

QTensorState unit_normalized_hwv(int a, int b, int m, double t) {
  require_level(a, b, m);
  QTensorState u(a, b);
  for (int i = 0; i <= m; ++i) u.at(i, m - i) = hwv_coefficient(a, b, m, i, t);
  return u;
}

Complex coboundary_norm(int a, int b, int m, double t) {
  require_level(a, b, m);
  const double ab = static_cast<double>(a) * b;
  std::vector<Complex> c(static_cast<std::size_t>(m) + 1), c_tr(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) c[static_cast<std::size_t>(i)] = hwv_coefficient(a, b, m, i, t);

  // T R u = sum_i c'_i w_i (x) v_{m-i}
  c_tr[0] = sign_power(m) * q_power(t, ab / 2 - a * m - b * m + m * m - m) * q_binomial(t, b, m) /
            q_binomial(t, a, m);
  for (int i = 1; i <= m; ++i)
    c_tr[static_cast<std::size_t>(i)] = sign_power(i) * q_power(t, b * i - i * i + i) *
                                        q_binomial(t, a - m + i, i) / q_binomial(t, b, i) * c_tr[0];

  const Complex scalar = q_power(t, -ab / 2 + a * m + b * m - m * m + m);
  Complex sum = 0;
  for (int i = 0; i <= m; ++i)
    sum += c_tr[static_cast<std::size_t>(m - i)] * std::conj(c[static_cast<std::size_t>(i)]) *
           q_binomial(t, a, i) * q_binomial(t, b, m - i);
  return scalar * sum;
}

Complex closed_form_norm(int a, int b, int m, double t) {
  require_level(a, b, m);
  return q_binomial(t, b, m) / q_binomial(t, a, m) * q_binomial(t, a + b + 1 - m, m);
}

VandermondeSides q_vandermonde_sides(int a, int b, int m, double t) {
  require_level(a, b, m);
  Complex sum = 0;
  for (int i = 0; i <= m; ++i)
    sum += q_power(t, -(a + b + 2 - 2 * m) * i) * q_binomial(t, m - b - 1, i) * q_binomial(t, m - a - 1, m - i);
  return {q_power(t, b * m - m * m + m) * sum, q_binomial(t, 2 * m - a - b - 2, m)};
}

bool q_vandermonde_check(int a, int b, int m, double t, double rel_tol) {
  const auto [lhs, rhs] = q_vandermonde_sides(a, b, m, t);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) <= rel_tol * scale;
}

}  // namespace vermasig::quantum
