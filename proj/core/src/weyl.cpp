#include "phaselab/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace phaselab {

namespace {

double defect_from_exponential(const TruncatedOperator& w, double s, double t,
                               const EigenOptions& opts) {
  const std::size_t n = w.dim();
  const Complex target = std::polar(1.0, -s * t);
  std::vector<Complex> rot(n);
  for (std::size_t k = 0; k < n; ++k) rot[k] = std::polar(1.0, static_cast<double>(k) * t);
  std::vector<Complex> mismatch(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      // (e^{itN} W e^{-itN})(r, c) = e^{irt} W(r, c) e^{-ict}
      const Complex conj_entry = rot[r] * w(r, c) * std::conj(rot[c]);
      mismatch[r * n + c] = conj_entry - target * w(r, c);
    }
  return operator_norm(TruncatedOperator(n, std::move(mismatch)), opts);
}

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

double weyl_defect(double s, double t, std::size_t dim, const EigenOptions& opts) {
  if (dim < 2) throw std::invalid_argument("weyl_defect: D must be >= 2");
  const auto w = unitary_exp(phase_operator(dim), s, opts);
  return defect_from_exponential(w, s, t, opts);
}

WeylGrid WeylGrid::defaults() {
  return WeylGrid{{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0},
                  {0.0, kPi / 4.0, kPi / 3.0, 1.0, 2.0},
                  {32, 64, 128, 256}};
}

WeylDefectReport weyl_scan(const WeylGrid& grid, const EigenOptions& opts, unsigned threads) {
  if (grid.s.empty() || grid.t.empty() || grid.dims.empty())
    throw std::invalid_argument("weyl_scan: grids must be nonempty");
  for (auto d : grid.dims)
    if (d < 2) throw std::invalid_argument("weyl_scan: every D must be >= 2");

  std::vector<std::size_t> dims = grid.dims;
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());

  // Phi_D is diagonalised once per D; e^{is Phi_D} once per (s, D).
  std::vector<std::optional<HermitianEigen>> eig(dims.size());
  parallel_for(dims.size(), threads,
               [&](std::size_t i) { eig[i].emplace(hermitian_eigen(phase_operator(dims[i]), opts)); });

  const std::size_t ns = grid.s.size();
  const std::size_t nt = grid.t.size();
  const std::size_t nd = dims.size();
  std::vector<std::optional<TruncatedOperator>> expo(ns * nd);
  parallel_for(ns * nd, threads, [&](std::size_t i) {
    expo[i].emplace(unitary_exp(*eig[i % nd], grid.s[i / nd]));
  });

  WeylDefectReport report;
  report.grid.resize(ns * nt * nd);
  parallel_for(report.grid.size(), threads, [&](std::size_t i) {
    const std::size_t si = i / (nt * nd);
    const std::size_t ti = (i / nd) % nt;
    const std::size_t di = i % nd;
    const double s = grid.s[si];
    const double t = grid.t[ti];
    report.grid[i] = {s, t, dims[di], defect_from_exponential(*expo[si * nd + di], s, t, opts)};
  });

  constexpr double zero_defect = 1e-10;
  for (std::size_t si = 0; si < ns; ++si)
    for (std::size_t ti = 0; ti < nt; ++ti)
      for (std::size_t di = 1; di < nd; ++di) {
        const auto& prev = report.grid[(si * nt + ti) * nd + di - 1];
        const auto& cur = report.grid[(si * nt + ti) * nd + di];
        WeylStabilization row{cur.s, cur.t, prev.dim, cur.dim, std::nullopt};
        if (cur.defect > zero_defect)
          row.relative_change = std::abs(cur.defect - prev.defect) / cur.defect;
        report.stabilization.push_back(row);
      }
  return report;
}

Arc covariant_arc(const Arc& arc, double t) { return arc.rotated(-t); }

double covariance_defect(const Arc& arc, double t, std::size_t dim, const EigenOptions& opts) {
  const auto q = toeplitz(symbol::Indicator{arc}, dim);
  const auto conjugated = number_rotation(t, dim) * q * number_rotation(-t, dim);
  const auto rotated = toeplitz(symbol::Indicator{covariant_arc(arc, t)}, dim);
  return operator_norm(conjugated - rotated, opts);
}

}  // namespace phaselab
