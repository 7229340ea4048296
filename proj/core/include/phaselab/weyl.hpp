#pragma once

// Weyl relation e^{itN} e^{is Phi} e^{-itN} = e^{-ist} e^{is Phi} and the
// number-group covariance of the phase POVM, on finite sections.

#include <cstddef>
#include <optional>
#include <vector>

#include "phaselab/hardy.hpp"

namespace phaselab {

/// ||e^{itN_D} e^{is Phi_D} e^{-itN_D} - e^{-ist} e^{is Phi_D}||_op. Requires D >= 2.
double weyl_defect(double s, double t, std::size_t dim, const EigenOptions& opts = {});

struct WeylGrid {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<std::size_t> dims;

  /// s in {-2,-1,-1/2,0,1/2,1,2}, t in {0, pi/4, pi/3, 1, 2}, D in {32,64,128,256}.
  static WeylGrid defaults();
};

struct WeylPoint {
  double s;
  double t;
  std::size_t dim;
  double defect;
};

struct WeylStabilization {
  double s;
  double t;
  std::size_t dim_from;
  std::size_t dim_to;
  /// |defect(dim_to) - defect(dim_from)| / defect(dim_to); empty when
  /// defect(dim_to) is numerically zero.
  std::optional<double> relative_change;
};

struct WeylDefectReport {
  std::vector<WeylPoint> grid;                   // ordered by (s, t, D)
  std::vector<WeylStabilization> stabilization;  // ordered by (s, t, D)
};

/// Evaluates the full grid. Points are computed concurrently on up to
/// `threads` workers (0 = hardware concurrency); output order is fixed.
WeylDefectReport weyl_scan(const WeylGrid& grid, const EigenOptions& opts = {},
                           unsigned threads = 0);

/// Arc rotated by the number group: conjugation by e^{itN} acts on Toeplitz
/// sections as phi_hat(k) -> e^{ikt} phi_hat(k), which is the indicator of
/// the arc turned by -t.
Arc covariant_arc(const Arc& arc, double t);

/// ||e^{itN_D} Q_D(B) e^{-itN_D} - Q_D(covariant_arc(B, t))||_op.
double covariance_defect(const Arc& arc, double t, std::size_t dim,
                         const EigenOptions& opts = {});

}  // namespace phaselab
