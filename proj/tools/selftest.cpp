#include <algorithm>
#include <cmath>
#include <random>

#include "commands.hpp"
#include "phaselab/commutator.hpp"
#include "phaselab/povm.hpp"
#include "phaselab/weyl.hpp"

namespace phaselab::cli {

namespace {

enum class Rel { le, ge, gt };

void check(Report& r, const char* module, const std::string& name, double value, Rel rel, double limit) {
  bool ok = false;
  const char* sym = "";
  switch (rel) {
    case Rel::le:
      ok = value <= limit;
      sym = "<=";
      break;
    case Rel::ge:
      ok = value >= limit;
      sym = ">=";
      break;
    case Rel::gt:
      ok = value > limit;
      sym = ">";
      break;
  }
  r.add_row({module, name, value, sym, limit, ok});
  r.require(ok, std::string(module) + "/" + name);
}

void check_report(Report& r, const char* module, const Report& sub) {
  r.add_row({module, sub.command, sub.pass ? 1.0 : 0.0, "==", 1.0, sub.pass});
  r.require(sub.pass, std::string(module) + "/" + sub.command);
}

CoeffVec random_vector(std::mt19937_64& rng, std::size_t max_support) {
  std::uniform_int_distribution<std::size_t> len(1, max_support);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> c(len(rng));
  for (auto& x : c) x = {u(rng), u(rng)};
  return CoeffVec(std::move(c));
}

TruncatedOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TruncatedOperator m(n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = u(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = Complex(u(rng), u(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  m.refresh();
  return m;
}

void linalg_checks(Report& r, const RunConfig& cfg, std::mt19937_64& rng) {
  const auto a = random_hermitian(32, rng);
  const auto eig = hermitian_eigen(a, cfg.eigen());
  std::vector<Complex> lambda(eig.eigenvalues.begin(), eig.eigenvalues.end());
  const auto rebuilt = eig.vectors * TruncatedOperator::diagonal(lambda) * adjoint(eig.vectors);
  check(r, "linalg", "eigen_reconstruction", frobenius_norm(rebuilt - a) / frobenius_norm(a), Rel::le, 1e-9);
  const auto gram = adjoint(eig.vectors) * eig.vectors;
  check(r, "linalg", "eigen_orthonormality", max_abs_entry(gram - TruncatedOperator::identity(32)), Rel::le,
        1e-10);
  const auto us = unitary_exp(eig, 0.7);
  const auto ut = unitary_exp(eig, -1.9);
  check(r, "linalg", "unitary_group_law", operator_norm(unitary_exp(eig, 0.7 - 1.9) - us * ut, cfg.eigen()),
        Rel::le, 1e-9);
}

void hardy_checks(Report& r, const RunConfig& cfg, std::mt19937_64& rng) {
  check_report(r, "hardy", phi_matrix(cfg, {32}));
  for (std::size_t d : {64u, 256u}) {
    const auto sp = spectrum(cfg, {d});
    check(r, "hardy", "spectrum_D" + std::to_string(d) + "_max_abs",
          std::max(-sp.summary["min"].get<double>(), sp.summary["max"].get<double>()), Rel::le,
          kPi + cfg.tol("spectrum_slack"));
  }
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double asym = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(rng);
    const Symbol ind = symbol::Indicator{Arc(a, a + std::abs(u(rng)) + 0.1)};
    for (std::int64_t k = 1; k <= 40; ++k)
      asym = std::max(asym, std::abs(fourier_coefficient(ind, -k) - std::conj(fourier_coefficient(ind, k))));
  }
  check(r, "hardy", "conjugate_symmetry", asym, Rel::le, 0.0);
}

void commutator_checks(Report& r, const RunConfig& cfg, std::mt19937_64& rng) {
  double law = 0.0, sym = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_vector(rng, 40);
    const auto g = random_vector(rng, 40);
    const Complex d = sesquilinear_defect(f, g);
    law = std::max(law, std::abs(d + kI * eval_at_minus_one(f) * std::conj(eval_at_minus_one(g))));
    sym = std::max(sym, std::abs(d + std::conj(sesquilinear_defect(g, f))));
  }
  check(r, "commutator", "defect_law", law, Rel::le, cfg.tol("defect_law"));
  check(r, "commutator", "defect_symmetry", sym, Rel::le, 1e-12);

  double on_y = 0.0;
  const std::vector<std::size_t> dims{64, 512};
  for (std::size_t n = 0; n <= 20; ++n) {
    const auto h = heisenberg_residuals(CoeffVec::basis(n) + CoeffVec::basis(n + 1), dims);
    for (const auto& row : h.rows) on_y = std::max(on_y, row.residual);
  }
  check(r, "commutator", "heisenberg_on_Y", on_y, Rel::le, cfg.tol("residual_zero"));

  const std::vector<std::size_t> fail_dims{64, 1024};
  double law_e0 = 0.0;
  for (const auto& row : heisenberg_residuals(CoeffVec::basis(0), fail_dims).rows) {
    const double d = static_cast<double>(row.dim);
    law_e0 = std::max(law_e0, std::abs(row.residual * row.residual - d) / d);
  }
  check(r, "commutator", "failure_law_e0", law_e0, Rel::le, 1e-10);

  std::uniform_real_distribution<double> target(0.5, 2.0);
  const std::vector<std::size_t> big{4096};
  double slope_dev = 0.0;
  for (int done = 0; done < 5;) {
    auto f = random_vector(rng, 8);
    const Complex s = eval_at_minus_one(f);
    if (std::abs(s) < 1e-3) continue;
    f = (target(rng) / std::abs(s)) * f;
    const auto h = heisenberg_residuals(f, big);
    slope_dev = std::max(slope_dev, std::abs(h.slope / std::norm(eval_at_minus_one(f)) - 1.0));
    ++done;
  }
  check(r, "commutator", "failure_slope_deviation", slope_dev, Rel::le, 0.2);

  for (const char* v : {"[[1,0],[1,0]]", "[[1,0]]", "[[2,0]]"}) {
    auto c = cancellation(cfg, {v, 512});
    c.command += std::string(" ") + v;
    check_report(r, "commutator", c);
  }
  check_report(r, "commutator", density(cfg, {}));
  check_report(r, "commutator", graphnorm(cfg, {}));
}

void weyl_checks(Report& r, const RunConfig& cfg) {
  const auto defaults = WeylGrid::defaults();
  const WeylGrid g{defaults.s, defaults.t, {64, 128}};
  const auto w = weyl_scan(g, cfg.eigen());
  double trivial = 0.0, least = 2.0, stab = 0.0;
  for (const auto& p : w.grid) {
    if (p.s == 0.0 || p.t == 0.0) trivial = std::max(trivial, p.defect);
    else least = std::min(least, p.defect);
  }
  for (const auto& st : w.stabilization)
    if (st.relative_change) stab = std::max(stab, *st.relative_change);
  check(r, "weyl", "trivial_axes", trivial, Rel::le, cfg.tol("weyl_trivial"));
  check(r, "weyl", "nontrivial_min_defect", least, Rel::gt, cfg.tol("weyl_trivial"));
  check(r, "weyl", "relative_change_64_128", stab, Rel::le, cfg.tol("stabilization"));
  check(r, "weyl", "integer_s_periodicity",
        std::abs(weyl_defect(1.0, 1.0, 32, cfg.eigen()) - weyl_defect(1.0, 1.0 + kTwoPi, 32, cfg.eigen())),
        Rel::le, 1e-10);
  check_report(r, "weyl", covariance(cfg, {}));
}

void povm_checks(Report& r, const RunConfig& cfg, std::mt19937_64& rng) {
  double res = 0.0;
  for (std::size_t k : {2u, 7u, 64u})
    for (std::size_t d : {16u, 128u}) {
      TruncatedOperator sum(d);
      for (const auto& arc : equipartition(k)) sum = sum + povm_element(arc, d);
      res = std::max(res, max_abs_entry(sum - TruncatedOperator::identity(d)));
    }
  check(r, "povm", "resolution_of_identity", res, Rel::le, cfg.tol("resolution"));
  check_report(r, "povm", povm(cfg, {}));
  const auto q = povm_element(Arc(0.0, kPi / 2), 64);
  check(r, "povm", "non_projectivity", operator_norm(q * q - q, cfg.eigen()), Rel::gt, 0.01);
  check_report(r, "povm", riemann(cfg, {}));
  check_report(r, "povm", moments(cfg, {}));

  std::uniform_real_distribution<double> cut(-kPi, kPi);
  std::uniform_real_distribution<double> val(-3.0, 3.0);
  std::vector<double> c(5);
  for (auto& x : c) x = cut(rng);
  std::sort(c.begin(), c.end());
  std::vector<symbol::StepPiece> pieces;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) pieces.push_back({Arc(c[i], c[i + 1]), val(rng)});
  pieces.push_back({Arc(c.back(), c.front() + kTwoPi), val(rng)});
  check(r, "povm", "step_symbol_consistency", step_symbol_consistency(make_step(pieces), 32, cfg.eigen()),
        Rel::le, cfg.tol("step"));
  check(r, "povm", "arg_step_vs_riemann",
        max_abs_entry(toeplitz(arg_step(16), 24) - riemann_phase(16, 24)), Rel::le, cfg.tol("step"));

  check_report(r, "povm", distribution(cfg, {"[[1,0]]", 8, 64}));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Json vec = Json::array();
  for (int i = 0; i < 6; ++i) vec.push_back({u(rng), u(rng)});
  auto d = distribution(cfg, {vec.dump(), 8, 32});
  d.command += " random";
  check_report(r, "povm", d);
}

}  // namespace

Report selftest(const RunConfig& cfg) {
  Report r;
  r.command = "selftest";
  r.columns = {"module", "check", "value", "relation", "limit", "pass"};
  std::mt19937_64 rng(cfg.seed);
  linalg_checks(r, cfg, rng);
  hardy_checks(r, cfg, rng);
  commutator_checks(r, cfg, rng);
  weyl_checks(r, cfg);
  povm_checks(r, cfg, rng);

  std::size_t failed = 0;
  for (const auto& row : r.rows)
    if (!row[5].get<bool>()) ++failed;
  r.summary["checks"] = r.rows.size();
  r.summary["failed_count"] = failed;
  r.headline = "selftest " + std::to_string(r.rows.size() - failed) + "/" + std::to_string(r.rows.size()) +
               " checks passed " + (r.pass ? "PASS" : "FAIL");
  return r;
}

}  // namespace phaselab::cli
