#pragma once

// Heisenberg relation [Phi, N] f = i f and its exact failure law.
//
// Every quantity here routes through phi_apply_exact, so residuals measure
// the untruncated operators on finitely supported vectors. P_D commutes with
// the diagonal N, which makes r_D the exact norm of the projected defect.

#include <cstddef>
#include <span>
#include <vector>

#include "phaselab/hardy.hpp"

namespace phaselab {

/// <Nf, Phi g> - <Phi f, Ng> - i<f, g>. Equals -i f(-1) conj(g(-1)).
Complex sesquilinear_defect(const CoeffVec& f, const CoeffVec& g);

/// f lies in the subspace Y (f(-1) = 0) up to `tol` scaled by ||f||.
bool in_commutator_domain(const CoeffVec& f, double tol = 1e-13);

struct ResidualRow {
  std::size_t dim;
  double residual;  // r_D = ||P_D([Phi,N] f - i f)||
};

struct HeisenbergReport {
  Complex boundary_value;  // S = f(-1)
  std::vector<ResidualRow> rows;  // ascending D
  double slope;  // r_D^2 / D at the largest D
};

/// r_D for every D in `dims`; each D must exceed the support length of f.
HeisenbergReport heisenberg_residuals(const CoeffVec& f, std::span<const std::size_t> dims);

/// f_k = e_0 + sum_{j<k} (1/k) e_{2j+1}, with ||e_0 - f_k||^2 = 1/k.
struct DensityWitness {
  CoeffVec vector;
  double distance_sq;
};
DensityWitness density_witness(std::size_t k);

/// sum_{n=1}^{M} n^2 |(Phi e_0)_n|^2. Each term is 1, so the sum grows like M
/// and Phi e_0 is not in the domain of N.
double graph_norm_witness(std::size_t max_n);

/// max_{1<=n<=M} |(Phi e_0)_n - i(-1)^n/n|.
double log_series_crosscheck(std::size_t max_n);

struct CancellationRow {
  std::size_t n;
  double term;         // n^2 |(Phi f)_n|^2
  double partial_sum;  // sum_{j<=n} term_j
};

struct CancellationReport {
  Complex boundary_value;
  std::vector<CancellationRow> rows;  // n = 0..n_max
  std::size_t window_start;           // first n of the tail window
  double tail_average;                // mean term over [window_start, n_max]
  /// |S|^2 and the admissible deviation 5|S|^2 / window_start + 1e-10.
  double target;
  double tolerance;
};

/// Requires n_max > 4 * support length. Tail window is the last quartile.
CancellationReport cancellation_report(const CoeffVec& f, std::size_t n_max);

}  // namespace phaselab
