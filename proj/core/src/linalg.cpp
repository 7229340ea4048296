#include "phaselab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

namespace phaselab {

namespace {

void check_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("TruncatedOperator: dimension must be >= 1");
  if (dim > kDefaultDimCap) {
    std::ostringstream os;
    os << "TruncatedOperator: dimension " << dim << " exceeds cap " << kDefaultDimCap;
    throw std::invalid_argument(os.str());
  }
}

void check_same_dim(const TruncatedOperator& a, const TruncatedOperator& b, const char* op) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
    throw std::invalid_argument(os.str());
  }
}

double off_diagonal_mass(const std::vector<Complex>& a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (p != q) sum += std::norm(a[p * n + q]);
  return std::sqrt(sum);
}

// Plain complex product. std::complex's operator* goes through the C99
// NaN/Inf recovery path, which dominates the inner loops below.
inline Complex fmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

// Cyclic Jacobi on a Hermitian matrix held in `a` (row-major, overwritten).
// For the pivot a_pq = |a_pq| e^{i alpha} the unitary
//   U_pp = c, U_pq = s e^{i alpha}, U_qp = -s e^{-i alpha}, U_qq = c
// zeroes the (p,q) entry of U* A U; c, s are the real symmetric Jacobi
// rotation for the modulus |a_pq|. Only rows p, q are rotated; columns are
// restored by Hermitian symmetry. `vt`, if given, accumulates the
// eigenvectors as rows (vt[j*n + k] = k-th component of vector j).
int jacobi_sweeps(std::vector<Complex>& a, std::size_t n, std::vector<Complex>* vt,
                  const EigenOptions& opts) {
  double fro0 = 0.0;
  for (const auto& x : a) fro0 += std::norm(x);
  fro0 = std::sqrt(fro0);
  const double threshold = opts.tol * fro0;

  for (int sweep = 0; sweep <= opts.max_sweeps; ++sweep) {
    const double off = off_diagonal_mass(a, n);
    if (off <= threshold) return sweep;
    if (sweep == opts.max_sweeps) {
      std::ostringstream os;
      os << "hermitian_eigen: no convergence after " << opts.max_sweeps
         << " sweeps (relative off-diagonal mass " << off / fro0 << ")";
      throw ConvergenceError(os.str(), off / fro0);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const Complex phase = apq / b;  // e^{i alpha}
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex s_up = s * phase;             // U_pq
        const Complex s_dn = s * std::conj(phase);  // -U_qp

        Complex* row_p = a.data() + p * n;
        Complex* row_q = a.data() + q * n;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = row_p[k];
          const Complex aqk = row_q[k];
          row_p[k] = c * apk - fmul(s_up, aqk);
          row_q[k] = fmul(s_dn, apk) + c * aqk;
        }
        row_p[p] = app - t * b;
        row_q[q] = aqq + t * b;
        row_p[q] = 0.0;
        row_q[p] = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a[k * n + p] = std::conj(row_p[k]);
          a[k * n + q] = std::conj(row_q[k]);
        }

        if (vt != nullptr) {
          // V <- V U, i.e. rows p, q of V^T mix like columns p, q of V.
          Complex* vp = vt->data() + p * n;
          Complex* vq = vt->data() + q * n;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vp[k];
            const Complex vkq = vq[k];
            vp[k] = c * vkp - fmul(s_dn, vkq);
            vq[k] = fmul(s_up, vkp) + c * vkq;
          }
        }
      }
    }
  }
  return opts.max_sweeps;  // unreachable
}

void require_hermitian(const TruncatedOperator& m, const char* op) {
  if (!m.hermitian()) throw std::invalid_argument(std::string(op) + ": input is not Hermitian");
}

}  // namespace

TruncatedOperator::TruncatedOperator(std::size_t dim) : dim_(dim) {
  check_dim(dim);
  entries_.assign(dim * dim, Complex{});
  hermitian_ = true;
}

TruncatedOperator::TruncatedOperator(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  check_dim(dim);
  if (entries_.size() != dim * dim)
    throw std::invalid_argument("TruncatedOperator: entry count does not match dim*dim");
  refresh();
}

TruncatedOperator TruncatedOperator::identity(std::size_t dim) {
  TruncatedOperator m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

TruncatedOperator TruncatedOperator::diagonal(std::span<const Complex> diag) {
  TruncatedOperator m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  m.refresh();
  return m;
}

void TruncatedOperator::refresh() {
  for (const auto& x : entries_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument("TruncatedOperator: non-finite entry");
  hermitian_ = true;
  for (std::size_t n = 0; n < dim_ && hermitian_; ++n)
    for (std::size_t m = n; m < dim_; ++m)
      if (std::abs((*this)(n, m) - std::conj((*this)(m, n))) > kHermitianTol) {
        hermitian_ = false;
        break;
      }
}

std::vector<Complex> TruncatedOperator::apply(std::span<const Complex> x) const {
  if (x.size() != dim_) throw std::invalid_argument("apply: vector length does not match dim");
  std::vector<Complex> y(dim_);
  for (std::size_t n = 0; n < dim_; ++n) {
    Complex acc{};
    for (std::size_t m = 0; m < dim_; ++m) acc += (*this)(n, m) * x[m];
    y[n] = acc;
  }
  return y;
}

TruncatedOperator add(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_same_dim(a, b, "add");
  std::vector<Complex> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.data()[i];
  return TruncatedOperator(a.dim(), std::move(out));
}

TruncatedOperator subtract(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_same_dim(a, b, "sub");
  std::vector<Complex> out(a.data().begin(), a.data().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.data()[i];
  return TruncatedOperator(a.dim(), std::move(out));
}

TruncatedOperator multiply(const TruncatedOperator& a, const TruncatedOperator& b) {
  check_same_dim(a, b, "mul");
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  const auto A = a.data();
  const auto B = b.data();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = A[i * n + k];
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += fmul(aik, B[k * n + j]);
    }
  return TruncatedOperator(n, std::move(out));
}

TruncatedOperator adjoint(const TruncatedOperator& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a(i, j));
  return TruncatedOperator(n, std::move(out));
}

TruncatedOperator scale(const TruncatedOperator& a, Complex factor) {
  std::vector<Complex> out(a.data().begin(), a.data().end());
  for (auto& x : out) x *= factor;
  return TruncatedOperator(a.dim(), std::move(out));
}

double frobenius_norm(const TruncatedOperator& m) {
  double sum = 0.0;
  for (const auto& x : m.data()) sum += std::norm(x);
  return std::sqrt(sum);
}

double max_abs_entry(const TruncatedOperator& m) {
  double best = 0.0;
  for (const auto& x : m.data()) best = std::max(best, std::abs(x));
  return best;
}

HermitianEigen hermitian_eigen(const TruncatedOperator& m, const EigenOptions& opts) {
  require_hermitian(m, "hermitian_eigen");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("hermitian_eigen: tol must be positive");
  const std::size_t n = m.dim();
  std::vector<Complex> a(m.data().begin(), m.data().end());
  // Symmetrise so the iteration sees an exactly Hermitian matrix.
  for (std::size_t p = 0; p < n; ++p) {
    a[p * n + p] = a[p * n + p].real();
    for (std::size_t q = p + 1; q < n; ++q) {
      const Complex avg = 0.5 * (a[p * n + q] + std::conj(a[q * n + p]));
      a[p * n + q] = avg;
      a[q * n + p] = std::conj(avg);
    }
  }
  std::vector<Complex> vt(n * n);
  for (std::size_t i = 0; i < n; ++i) vt[i * n + i] = 1.0;

  const int sweeps = jacobi_sweeps(a, n, &vt, opts);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x].real() < a[y * n + y].real();
  });

  HermitianEigen out{std::vector<double>(n), TruncatedOperator(n), sweeps};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.eigenvalues[j] = a[src * n + src].real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = vt[src * n + k];
  }
  out.vectors.refresh();
  return out;
}

std::vector<double> hermitian_eigenvalues(const TruncatedOperator& m, const EigenOptions& opts) {
  require_hermitian(m, "hermitian_eigenvalues");
  if (!(opts.tol > 0.0)) throw std::invalid_argument("hermitian_eigenvalues: tol must be positive");
  const std::size_t n = m.dim();
  std::vector<Complex> a(m.data().begin(), m.data().end());
  for (std::size_t p = 0; p < n; ++p) {
    a[p * n + p] = a[p * n + p].real();
    for (std::size_t q = p + 1; q < n; ++q) {
      const Complex avg = 0.5 * (a[p * n + q] + std::conj(a[q * n + p]));
      a[p * n + q] = avg;
      a[q * n + p] = std::conj(avg);
    }
  }
  jacobi_sweeps(a, n, nullptr, opts);
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i * n + i].real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

TruncatedOperator unitary_exp(const HermitianEigen& eig, double s) {
  const std::size_t n = eig.vectors.dim();
  std::vector<Complex> phases(n);
  for (std::size_t j = 0; j < n; ++j) phases[j] = std::polar(1.0, s * eig.eigenvalues[j]);
  std::vector<Complex> out(n * n);
  const auto U = eig.vectors.data();
  std::vector<Complex> ut(n * n);  // U^H, so the inner loop is contiguous
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) ut[c * n + r] = std::conj(U[r * n + c]);
  // out(r, c) = sum_j U(r, j) e^{is lambda_j} conj(U(c, j))
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex w = fmul(U[r * n + j], phases[j]);
      const Complex* row = ut.data() + j * n;
      for (std::size_t c = 0; c < n; ++c) out[r * n + c] += fmul(w, row[c]);
    }
  return TruncatedOperator(n, std::move(out));
}

TruncatedOperator unitary_exp(const TruncatedOperator& m, double s, const EigenOptions& opts) {
  if (s == 0.0) {
    require_hermitian(m, "unitary_exp");
    return TruncatedOperator::identity(m.dim());
  }
  return unitary_exp(hermitian_eigen(m, opts), s);
}

double operator_norm(const TruncatedOperator& m, const EigenOptions& opts) {
  if (m.hermitian()) {
    const auto ev = hermitian_eigenvalues(m, opts);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
  }
  const auto gram = multiply(adjoint(m), m);
  const auto ev = hermitian_eigenvalues(gram, opts);
  return std::sqrt(std::max(ev.back(), 0.0));
}

}  // namespace phaselab
