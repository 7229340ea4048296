#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cli.hpp"
#include "phaselab/commutator.hpp"
#include "phaselab/hardy.hpp"

namespace phaselab::cli {

/// `[[re, im], ...]` (bare numbers are real) inline, or a path to a file
/// holding that JSON. Throws UsageError.
CoeffVec parse_vector(const std::string& text);

/// "a:b" for the arc (a, b]. Throws UsageError.
Arc parse_arc(const std::string& text);

struct PhiMatrixParams {
  std::size_t dim = 8;
};
struct HeisenbergParams {
  std::string vector = "[[1,0]]";
  std::vector<std::size_t> dims{64, 256, 1024};
};
struct CancellationParams {
  std::string vector = "[[1,0]]";
  std::size_t n_max = 512;
};
struct DensityParams {
  std::vector<std::size_t> ks{1, 4, 100};
  std::vector<std::size_t> dims{64, 512};
};
struct GraphNormParams {
  std::vector<std::size_t> ms{10, 1000};
  std::size_t log_n = 100;
};
struct WeylParams {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<std::size_t> dims;
  unsigned threads = 0;
};
struct CovarianceParams {
  std::vector<std::string> arcs;
  std::vector<double> t;
  std::vector<std::size_t> dims{32, 128};
};
struct PovmParams {
  std::size_t k = 8;
  std::size_t dim = 64;
};
struct RiemannParams {
  std::vector<std::size_t> ks{4, 16, 64, 256};
  std::size_t dim = 64;
};
struct MomentsParams {
  std::size_t k_max = 8;
  std::vector<std::size_t> dims{4, 8, 64};
};
struct DistributionParams {
  std::string vector = "[[1,0]]";
  std::size_t k = 8;
  std::optional<std::size_t> dim;
};
struct SpectrumParams {
  std::size_t dim = 64;
};

Report phi_matrix(const RunConfig& cfg, const PhiMatrixParams& p);
Report heisenberg(const RunConfig& cfg, const HeisenbergParams& p);
Report cancellation(const RunConfig& cfg, const CancellationParams& p);
Report density(const RunConfig& cfg, const DensityParams& p);
Report graphnorm(const RunConfig& cfg, const GraphNormParams& p);
Report weyl(const RunConfig& cfg, const WeylParams& p);
Report covariance(const RunConfig& cfg, const CovarianceParams& p);
Report povm(const RunConfig& cfg, const PovmParams& p);
Report riemann(const RunConfig& cfg, const RiemannParams& p);
Report moments(const RunConfig& cfg, const MomentsParams& p);
Report distribution(const RunConfig& cfg, const DistributionParams& p);
Report spectrum(const RunConfig& cfg, const SpectrumParams& p);
Report selftest(const RunConfig& cfg);

/// Cancellation verdict shared by the subcommand and selftest. For S != 0
/// the tail average must sit within the report's tolerance of |S|^2; for
/// S = 0 the last-quartile average must be below the preceding quartile's.
bool cancellation_ok(const CancellationReport& r, double membership_tol, double f_norm);

}  // namespace phaselab::cli
