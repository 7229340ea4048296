#include "phaselab/commutator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phaselab {

Complex sesquilinear_defect(const CoeffVec& f, const CoeffVec& g) {
  // <Nf, Phi g> only needs (Phi g)_n on the support of f, and vice versa.
  const CoeffVec nf = apply_number(f);
  const CoeffVec ng = apply_number(g);
  const CoeffVec phi_g = phi_apply_exact(g, std::max<std::size_t>(f.size(), 1));
  const CoeffVec phi_f = phi_apply_exact(f, std::max<std::size_t>(g.size(), 1));
  return inner(nf, phi_g) - inner(phi_f, ng) - kI * inner(f, g);
}

bool in_commutator_domain(const CoeffVec& f, double tol) {
  return std::abs(eval_at_minus_one(f)) <= tol * std::max(1.0, f.norm());
}

HeisenbergReport heisenberg_residuals(const CoeffVec& f, std::span<const std::size_t> dims) {
  if (dims.empty()) throw std::invalid_argument("heisenberg_residuals: no dimensions given");
  std::vector<std::size_t> sorted(dims.begin(), dims.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.front() <= f.size()) {
    std::ostringstream os;
    os << "heisenberg_residuals: D = " << sorted.front() << " must exceed support length "
       << f.size();
    throw std::invalid_argument(os.str());
  }

  // One exact pass at the largest D; smaller sections are prefixes.
  const std::size_t dmax = sorted.back();
  const CoeffVec phi_nf = phi_apply_exact(apply_number(f), dmax);
  const CoeffVec phi_f = phi_apply_exact(f, dmax);

  HeisenbergReport report{eval_at_minus_one(f), {}, 0.0};
  double acc = 0.0;
  std::size_t next = 0;
  for (std::size_t n = 0; n < dmax; ++n) {
    const Complex defect = phi_nf[n] - static_cast<double>(n) * phi_f[n] - kI * f[n];
    acc += std::norm(defect);
    if (n + 1 == sorted[next]) {
      report.rows.push_back({sorted[next], std::sqrt(acc)});
      ++next;
    }
  }
  const auto& last = report.rows.back();
  report.slope = last.residual * last.residual / static_cast<double>(last.dim);
  return report;
}

DensityWitness density_witness(std::size_t k) {
  if (k == 0) throw std::invalid_argument("density_witness: k must be >= 1");
  std::vector<Complex> c(2 * k);
  c[0] = 1.0;
  const double w = 1.0 / static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) c[2 * j + 1] = w;
  return {CoeffVec(std::move(c)), w};
}

double graph_norm_witness(std::size_t max_n) {
  if (max_n == 0) throw std::invalid_argument("graph_norm_witness: M must be >= 1");
  const CoeffVec phi_one = phi_apply_exact(CoeffVec::basis(0), max_n + 1);
  double sum = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) sum += std::norm(static_cast<double>(n) * phi_one[n]);
  return sum;
}

double log_series_crosscheck(std::size_t max_n) {
  if (max_n == 0) throw std::invalid_argument("log_series_crosscheck: M must be >= 1");
  const CoeffVec phi_one = phi_apply_exact(CoeffVec::basis(0), max_n + 1);
  double worst = 0.0;
  for (std::size_t n = 1; n <= max_n; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const Complex expected(0.0, sign / static_cast<double>(n));
    worst = std::max(worst, std::abs(phi_one[n] - expected));
  }
  return worst;
}

CancellationReport cancellation_report(const CoeffVec& f, std::size_t n_max) {
  if (n_max <= 4 * f.size()) {
    std::ostringstream os;
    os << "cancellation_report: n_max = " << n_max << " must exceed 4 x support length "
       << f.size();
    throw std::invalid_argument(os.str());
  }
  const CoeffVec phi_f = phi_apply_exact(f, n_max + 1);

  CancellationReport report{};
  report.boundary_value = eval_at_minus_one(f);
  report.rows.reserve(n_max + 1);
  double partial = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double term = std::norm(static_cast<double>(n) * phi_f[n]);
    partial += term;
    report.rows.push_back({n, term, partial});
  }

  report.window_start = std::max<std::size_t>(1, (3 * n_max) / 4);
  double tail = 0.0;
  for (std::size_t n = report.window_start; n <= n_max; ++n) tail += report.rows[n].term;
  report.tail_average = tail / static_cast<double>(n_max - report.window_start + 1);
  report.target = std::norm(report.boundary_value);
  report.tolerance = 5.0 * report.target / static_cast<double>(report.window_start) + 1e-10;
  return report;
}

}  // namespace phaselab
