#pragma once

// Signs of quantum integers and binomials at q = e^{i pi t} on the unit circle, the
// multiplicity-space signature formula for tensor products of U_q(sl2) modules, and a
// floating-point check of the two-factor form through the R-matrix coboundary.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vermasig/rational.hpp"

namespace vermasig::quantum {

/// q = e^{i pi t} with t = num/den a reduced rational in (0, 1).
class QParam {
public:
  QParam(std::int64_t num, std::int64_t den);
  static QParam parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double t() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  Rational t_exact() const { return Rational(num_, den_); }
  std::string to_string() const;

private:
  std::int64_t num_;
  std::int64_t den_;
};

/// The classical point q = 1 (generalised binomials with rational tops).
struct Classical {};

using QSetting = std::variant<Classical, QParam>;

/// Sign of [j] = sin(j pi t) / sin(pi t), from j*num mod 2*den. [-j] = -[j].
/// Throws RootOfUnityError when [j] = 0 for j != 0.
int q_int_sign(std::int64_t j, const QParam &qp);

/// Sign of sin(pi t x)/sin(pi t) for rational x (0 when it vanishes). Experimental real-top path.
int q_real_int_sign(const Rational &x, const QParam &qp);

/// Sign of the quantum binomial [top]...[top-bottom+1] / [bottom]! for integer top.
/// Zero when 0 <= top < bottom; negative tops use C(l1, l2)_q = (-1)^l2 C(l2 - l1 - 1, l2)_q.
int q_binomial_sign(std::int64_t top, std::int64_t bottom, const QParam &qp);

/// Sign of the generalised binomial x(x-1)...(x-bottom+1)/bottom! (q = 1).
int classical_binomial_sign(const Rational &top, std::int64_t bottom);

/// Sign of prod_{j=1}^{bottom} [top-j+1]/[j] with real quantum integers; experimental.
int q_binomial_sign_real(const Rational &top, std::int64_t bottom, const QParam &qp);

/// Sign of C(top, bottom) at the given q; integer tops at q != 1 take the exact integer path.
int binomial_sign(const Rational &top, std::int64_t bottom, const QSetting &q);

/// Signature of the level-m multiplicity space, tensoring one factor at a time. With
/// A_j = a_1 + ... + a_j and M_j = m_1 + ... + m_j, the sum over compositions
/// m_1 + ... + m_{n-1} = m of
///   prod_j sign[ C(1 + A_{j+1} - 2 M_{j-1} - m_j, m_j) C(A_j - 2 M_{j-1}, m_j) C(a_{j+1}, m_j) ],
/// which is the two-factor sign C(1 + x + y - k, k) C(x, k) C(y, k) applied to
/// x = A_j - 2 M_{j-1}, y = a_{j+1}, k = m_j. Weights are integers at q != 1 (or rationals on
/// the experimental path) and generic rationals at q = 1.
std::int64_t thm_signature(std::span<const Rational> a, int m, const QSetting &q);

/// Number of compositions whose product of signs is nonzero.
std::int64_t thm_nonvanishing_terms(std::span<const Rational> a, int m, const QSetting &q);

/// Multiplicity of V_{sum a - 2m} in V_{a_1} (x) ... (x) V_{a_n} (Clebsch-Gordan count).
std::int64_t finite_multiplicity(std::span<const std::int64_t> a, int m);

// ---- floating-point side, q = e^{i pi t} ----

using Complex = std::complex<double>;

Complex q_power(double t, double exponent);
/// [x] = (q^x - q^{-x}) / (q - q^{-1}).
Complex q_number(double t, double x);
/// Quantum binomial with integer top (any sign) and nonnegative bottom.
Complex q_binomial(double t, std::int64_t top, std::int64_t bottom);

/// Vector in V_a (x) V_b over the basis v_i (x) w_j, stored at index i (b + 1) + j.
struct QTensorState {
  int a = 0;
  int b = 0;
  std::vector<Complex> coeffs;

  QTensorState(int a, int b) : a(a), b(b), coeffs(static_cast<std::size_t>((a + 1) * (b + 1))) {}
  Complex &at(int i, int j) { return coeffs[static_cast<std::size_t>(i * (b + 1) + j)]; }
  const Complex &at(int i, int j) const { return coeffs[static_cast<std::size_t>(i * (b + 1) + j)]; }
  double norm() const;
};

/// Delta(E) = E (x) 1 + K (x) E with E v_i = [a-i+1] v_{i-1}, K v_i = q^{a-2i} v_i.
QTensorState apply_delta_e(const QTensorState &x, double t);

/// T R x in V_b (x) V_a, R = q^{H (x) H / 2} sum_k q^{k(k-1)/2} (q - q^{-1})^k / [k]! F^k (x) E^k.
QTensorState apply_tr(const QTensorState &x, double t);

/// u = sum_i c_{m,i} v_i (x) w_{m-i},  c_{m,i} = (-1)^i q^{ai - i^2 + i} C(b-m+i, i)_q / C(a, i)_q.
QTensorState unit_normalized_hwv(int a, int b, int m, double t);

/// (u, u) = <T Rbar u, u> for the unit-normalised highest weight vector, built from the
/// TR coefficients, the coboundary scalar q^{-ab/2 + am + bm - m^2 + m}, and the diagonal
/// Shapovalov values C(a, i)_q, C(b, j)_q.
Complex coboundary_norm(int a, int b, int m, double t);

/// C(b, m)_q / C(a, m)_q * C(a + b + 1 - m, m)_q.
Complex closed_form_norm(int a, int b, int m, double t);

struct VandermondeSides {
  Complex lhs;
  Complex rhs;
};

/// q^{bm - m^2 + m} sum_i q^{-(a+b+2-2m) i} C(m-b-1, i)_q C(m-a-1, m-i)_q  vs  C(2m-a-b-2, m)_q.
VandermondeSides q_vandermonde_sides(int a, int b, int m, double t);
bool q_vandermonde_check(int a, int b, int m, double t, double rel_tol = 1e-10);

}  // namespace vermasig::quantum
