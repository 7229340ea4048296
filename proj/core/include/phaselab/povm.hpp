#pragma once

// The phase POVM Q(B) = T_{1_B} (compression of the boundary multiplication
// projections to H^2), Riemann reconstruction of Phi, and phase
// distributions of states.

#include <cstddef>
#include <span>
#include <vector>

#include "phaselab/hardy.hpp"

namespace phaselab {

/// Q_D(B). Hermitian with spectrum in [0, 1].
TruncatedOperator povm_element(const Arc& arc, std::size_t dim);

/// I_j = (-pi + 2pi(j-1)/k, -pi + 2pi j/k], j = 1..k.
std::vector<Arc> equipartition(std::size_t k);

/// Right endpoint -pi + 2pi j/k of the cell I_j (1-based j).
double cell_value(std::size_t j, std::size_t k);

/// sum_j cell_value(j, k) Q_D(I_j).
TruncatedOperator riemann_phase(std::size_t k, std::size_t dim);

struct RiemannRow {
  std::size_t k;
  double error;  // ||Phi_D - riemann_phase(k, D)||_op
  double bound;  // 2pi / k
};

struct RiemannReport {
  std::size_t dim;
  std::vector<RiemannRow> rows;  // in the order the ks were given
};

RiemannReport riemann_convergence(std::span<const std::size_t> ks, std::size_t dim,
                                  const EigenOptions& opts = {});

/// ||V_D^k - T_{lambda^{-k}}||_op with V the left shift. In the
/// entry(n, m) = phi_hat(n - m) convention V^k carries the monomial of
/// index -k; the sign is fixed by exact agreement at k = 1, D = 2.
double moment_defect(std::size_t k, std::size_t dim, const EigenOptions& opts = {});

/// ||toeplitz(step) - sum_j value_j Q_D(arc_j)||_op.
double step_symbol_consistency(const symbol::Step& step, std::size_t dim,
                               const EigenOptions& opts = {});

struct PhaseDistribution {
  std::size_t k;
  std::vector<double> masses;  // <Q_D(I_j) f, f> / ||f||^2
};

/// Requires f nonzero and D > support length of f.
PhaseDistribution phase_distribution(const CoeffVec& f, std::size_t k, std::size_t dim);

}  // namespace phaselab
