#pragma once

// Dense complex linear algebra on finite sections of operators on H^2.
//
// Matrix entries follow one convention throughout the library:
//   entry(n, m) = <T e_m, e_n>
// i.e. the column index is the input basis vector and the row index the
// output coordinate.

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace phaselab {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Largest section dimension any constructor accepts.
inline constexpr std::size_t kDefaultDimCap = 4096;

/// Absolute tolerance used when deciding whether a matrix is Hermitian.
inline constexpr double kHermitianTol = 1e-13;

struct EigenOptions {
  double tol = 1e-12;  // relative off-diagonal Frobenius mass at convergence
  int max_sweeps = 64;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// D x D complex matrix, the finite section P_D T P_D of an operator on H.
///
/// The Hermitian flag is never trusted from the caller: it is recomputed by
/// an explicit entrywise test whenever a value is produced by this module.
class TruncatedOperator {
 public:
  explicit TruncatedOperator(std::size_t dim);
  TruncatedOperator(std::size_t dim, std::vector<Complex> row_major);

  static TruncatedOperator identity(std::size_t dim);
  static TruncatedOperator diagonal(std::span<const Complex> diag);

  std::size_t dim() const noexcept { return dim_; }
  bool hermitian() const noexcept { return hermitian_; }

  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  Complex& operator()(std::size_t row, std::size_t col) {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return entries_; }

  /// Re-run the explicit Hermitian test after in-place edits.
  /// Throws if any stored entry is NaN or infinite.
  void refresh();

  std::vector<Complex> apply(std::span<const Complex> x) const;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
  bool hermitian_ = false;
};

TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator subtract(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator adjoint(const TruncatedOperator& a);
TruncatedOperator scale(const TruncatedOperator& a, Complex factor);

inline TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
  return add(a, b);
}
inline TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
  return subtract(a, b);
}
inline TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
  return multiply(a, b);
}
inline TruncatedOperator operator*(Complex factor, const TruncatedOperator& a) {
  return scale(a, factor);
}

/// Frobenius norm.
double frobenius_norm(const TruncatedOperator& m);

/// Largest entry modulus.
double max_abs_entry(const TruncatedOperator& m);

struct HermitianEigen {
  std::vector<double> eigenvalues;  // ascending
  TruncatedOperator vectors;        // column j is the eigenvector of eigenvalues[j]
  int sweeps = 0;
};

/// Cyclic complex Jacobi diagonalisation of a Hermitian section.
/// Throws std::invalid_argument for non-Hermitian input and ConvergenceError
/// when the sweep budget is exhausted.
HermitianEigen hermitian_eigen(const TruncatedOperator& m, const EigenOptions& opts = {});

/// Same iteration without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const TruncatedOperator& m,
                                          const EigenOptions& opts = {});

/// e^{isM} = U e^{is Lambda} U*.
TruncatedOperator unitary_exp(const HermitianEigen& eig, double s);
TruncatedOperator unitary_exp(const TruncatedOperator& m, double s,
                              const EigenOptions& opts = {});

/// Spectral norm. Hermitian input uses max |eigenvalue|; anything else uses
/// sqrt of the top eigenvalue of M*M.
double operator_norm(const TruncatedOperator& m, const EigenOptions& opts = {});

}  // namespace phaselab
