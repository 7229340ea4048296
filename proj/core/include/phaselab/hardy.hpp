#pragma once

// Vectors, symbols and Toeplitz sections on the Hardy space H^2(D).
//
// A vector f = sum_n c_n e_n is stored by its finitely supported Taylor
// coefficients; e_n(z) = z^n. Symbols are functions on the circle described
// exactly enough that their Fourier coefficients
//   phi_hat(k) = (1/2pi) int_{-pi}^{pi} phi(theta) e^{-ik theta} d theta
// have closed forms. The Toeplitz section of a symbol has
//   entry(n, m) = phi_hat(n - m).

#include <cstdint>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "phaselab/linalg.hpp"

namespace phaselab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Finitely supported coefficient sequence, trimmed so the last stored
/// coefficient is nonzero.
class CoeffVec {
 public:
  CoeffVec() = default;
  explicit CoeffVec(std::vector<Complex> coeffs);

  static CoeffVec basis(std::size_t n, Complex weight = 1.0);

  /// Support length L: c_n = 0 for all n >= L.
  std::size_t size() const noexcept { return c_.size(); }
  bool empty() const noexcept { return c_.empty(); }

  /// c_n, zero past the support.
  Complex operator[](std::size_t n) const noexcept { return n < c_.size() ? c_[n] : Complex{}; }

  std::span<const Complex> coeffs() const noexcept { return c_; }

  /// First `len` coefficients, zero padded.
  std::vector<Complex> dense(std::size_t len) const;

  double norm() const;

  friend CoeffVec operator+(const CoeffVec& f, const CoeffVec& g);
  friend CoeffVec operator-(const CoeffVec& f, const CoeffVec& g);
  friend CoeffVec operator*(Complex a, const CoeffVec& f);
  friend bool operator==(const CoeffVec&, const CoeffVec&) = default;

 private:
  void trim();
  std::vector<Complex> c_;
};

/// <f, g> = sum_n f_n conj(g_n).
Complex inner(const CoeffVec& f, const CoeffVec& g);

/// N f: coefficients n c_n.
CoeffVec apply_number(const CoeffVec& f);

/// Half-open arc {e^{i theta} : theta in (a, b]}, angles read modulo 2pi.
class Arc {
 public:
  /// Requires 0 < b - a <= 2pi.
  Arc(double a, double b);

  static Arc full_circle() { return Arc(-kPi, kPi); }

  double a() const noexcept { return a_; }
  double b() const noexcept { return a_ + len_; }
  double length() const noexcept { return len_; }
  bool is_full_circle() const noexcept { return len_ == kTwoPi; }

  /// e^{it} B: the arc (a + t, b + t]. Length is carried over exactly.
  Arc rotated(double t) const;

  /// The same set written as at most two arcs inside (-pi, pi].
  std::vector<Arc> pieces() const;

  /// Membership of the angle theta (mod 2pi) in (a, b].
  bool contains(double theta) const;

 private:
  double a_;
  double len_;
};

namespace symbol {

/// arg(z) in (-pi, pi].
struct Arg {};

struct Indicator {
  Arc arc;
};

/// lambda^k.
struct TrigMonomial {
  std::int64_t k;
};

struct StepPiece {
  Arc arc;
  double value;
};

/// Real step function; arcs must be pairwise disjoint modulo 2pi.
struct Step {
  std::vector<StepPiece> pieces;
};

}  // namespace symbol

using Symbol = std::variant<symbol::Arg, symbol::Indicator, symbol::TrigMonomial, symbol::Step>;

/// Build a step symbol, rejecting overlapping arcs.
symbol::Step make_step(std::vector<symbol::StepPiece> pieces);

/// arg_k: value -pi + 2 pi j / k on the cell I_j of the k-equipartition.
symbol::Step arg_step(std::size_t k);

bool is_real_valued(const Symbol& s);

/// Point value, for quadrature cross-checks.
Complex evaluate(const Symbol& s, double theta);

/// Closed-form Fourier coefficient phi_hat(k).
Complex fourier_coefficient(const Symbol& s, std::int64_t k);

TruncatedOperator toeplitz(const Symbol& s, std::size_t dim);

/// Phase operator section Phi_D = toeplitz(Arg, D).
inline TruncatedOperator phase_operator(std::size_t dim) { return toeplitz(symbol::Arg{}, dim); }

/// N_D = diag(0, 1, ..., D-1).
TruncatedOperator number_operator(std::size_t dim);

/// e^{itN_D} = diag(e^{i n t}).
TruncatedOperator number_rotation(double t, std::size_t dim);

/// V_D with V e_0 = 0, V e_n = e_{n-1}.
TruncatedOperator left_shift(std::size_t dim);

/// First `out_len` coefficients of Phi f, (Phi f)_n = sum_m phi_hat_arg(n - m) c_m.
/// Every listed coefficient is exact: f has finite support, so no truncation
/// enters the sum.
CoeffVec phi_apply_exact(const CoeffVec& f, std::size_t out_len);

/// S = f(-1) = sum_j (-1)^j c_j.
Complex eval_at_minus_one(const CoeffVec& f);

}  // namespace phaselab
