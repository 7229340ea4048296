#include "phaselab/povm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phaselab {

TruncatedOperator povm_element(const Arc& arc, std::size_t dim) {
  return toeplitz(symbol::Indicator{arc}, dim);
}

std::vector<Arc> equipartition(std::size_t k) {
  if (k == 0) throw std::invalid_argument("equipartition: k must be >= 1");
  std::vector<Arc> cells;
  cells.reserve(k);
  for (std::size_t j = 1; j <= k; ++j) cells.emplace_back(cell_value(j - 1, k), cell_value(j, k));
  return cells;
}

double cell_value(std::size_t j, std::size_t k) {
  if (k == 0) throw std::invalid_argument("cell_value: k must be >= 1");
  return -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(k);
}

TruncatedOperator riemann_phase(std::size_t k, std::size_t dim) {
  const auto cells = equipartition(k);
  TruncatedOperator sum(dim);
  for (std::size_t j = 1; j <= k; ++j) {
    const double value = cell_value(j, k);
    if (value == 0.0) continue;
    const auto q = povm_element(cells[j - 1], dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) sum(r, c) += value * q(r, c);
  }
  sum.refresh();
  return sum;
}

RiemannReport riemann_convergence(std::span<const std::size_t> ks, std::size_t dim,
                                  const EigenOptions& opts) {
  if (ks.empty()) throw std::invalid_argument("riemann_convergence: no k values given");
  const auto phi = phase_operator(dim);
  RiemannReport report{dim, {}};
  for (auto k : ks) {
    const double err = operator_norm(phi - riemann_phase(k, dim), opts);
    report.rows.push_back({k, err, kTwoPi / static_cast<double>(k)});
  }
  return report;
}

double moment_defect(std::size_t k, std::size_t dim, const EigenOptions& opts) {
  auto power = TruncatedOperator::identity(dim);
  const auto shift = left_shift(dim);
  for (std::size_t i = 0; i < k; ++i) power = power * shift;
  const auto monomial = toeplitz(symbol::TrigMonomial{-static_cast<std::int64_t>(k)}, dim);
  return operator_norm(power - monomial, opts);
}

double step_symbol_consistency(const symbol::Step& step, std::size_t dim,
                               const EigenOptions& opts) {
  if (step.pieces.empty()) throw std::invalid_argument("step_symbol_consistency: empty step");
  TruncatedOperator sum(dim);
  for (const auto& piece : step.pieces) {
    const auto q = povm_element(piece.arc, dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) sum(r, c) += piece.value * q(r, c);
  }
  sum.refresh();
  return operator_norm(toeplitz(step, dim) - sum, opts);
}

PhaseDistribution phase_distribution(const CoeffVec& f, std::size_t k, std::size_t dim) {
  if (f.empty()) throw std::invalid_argument("phase_distribution: zero vector");
  if (dim <= f.size()) {
    std::ostringstream os;
    os << "phase_distribution: D = " << dim << " must exceed support length " << f.size();
    throw std::invalid_argument(os.str());
  }
  const auto x = f.dense(dim);
  const double norm_sq = f.norm() * f.norm();
  PhaseDistribution out{k, {}};
  out.masses.reserve(k);
  for (const auto& cell : equipartition(k)) {
    const auto qx = povm_element(cell, dim).apply(x);
    Complex quad{};
    for (std::size_t n = 0; n < dim; ++n) quad += qx[n] * std::conj(x[n]);
    out.masses.push_back(quad.real() / norm_sq);
  }
  return out;
}

}  // namespace phaselab
