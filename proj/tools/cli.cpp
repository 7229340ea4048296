#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>

#include "commands.hpp"

namespace phaselab::cli {

namespace {

void apply_tolerances(RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const auto& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects name=value, got '" + item + "'");
    const std::string name = item.substr(0, eq);
    if (!cfg.tolerances.count(name)) throw UsageError("unknown tolerance '" + name + "'");
    const std::string text = item.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size() || !(value >= 0.0) || !std::isfinite(value))
      throw UsageError("bad value for tolerance '" + name + "': '" + text + "'");
    cfg.tolerances[name] = value;
  }
}

std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("PHASELAB_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
      return std::filesystem::path(dir) / p;
  }
  return p;
}

std::string tolerance_help() {
  std::string s = "name=value override; names:";
  for (const auto& [name, value] : default_tolerances()) s += " " + name;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-section lab for the number-phase operator pair on the Hardy space.", "phaselab"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> tol_overrides;
  std::string format = "json";
  app.add_option("--dim-cap", cfg.dim_cap, "largest admissible section dimension")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  app.add_option("--tol", tol_overrides, tolerance_help());
  app.add_option("--seed", cfg.seed, "seed for randomised checks")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--out", cfg.out_path,
                 "write the report here (relative paths resolve under PHASELAB_OUTPUT_DIR if set); "
                 "default is standard output");

  std::function<Report()> action;
  auto sub = [&](const char* name, const char* desc, const char* columns) {
    auto* s = app.add_subcommand(name, desc);
    s->fallthrough();
    s->footer(std::string("CSV columns: ") + columns);
    return s;
  };

  PhiMatrixParams phi;
  auto* s_phi = sub("phi-matrix", "entries of the phase operator section Phi_D", "n,m,re,im");
  s_phi->add_option("--dim", phi.dim, "section dimension D")->capture_default_str();
  s_phi->callback([&] { action = [&] { return phi_matrix(cfg, phi); }; });

  HeisenbergParams heis;
  auto* s_heis = sub("heisenberg", "residuals r_D of [Phi,N]f - if on finite sections",
                     "dim,residual,residual_sq,residual_sq_over_dim");
  s_heis->add_option("--vector", heis.vector, "[[re,im],...] inline or a file path")->capture_default_str();
  s_heis->add_option("--dims", heis.dims, "comma-separated section dimensions")->delimiter(',');
  s_heis->callback([&] { action = [&] { return heisenberg(cfg, heis); }; });

  CancellationParams canc;
  auto* s_canc = sub("cancellation", "terms n^2 |(Phi f)_n|^2 and their tail average", "n,term,partial_sum");
  s_canc->add_option("--vector", canc.vector, "[[re,im],...] inline or a file path")->capture_default_str();
  s_canc->add_option("--n-max", canc.n_max, "largest index n (must exceed 4x the support)")->capture_default_str();
  s_canc->callback([&] { action = [&] { return cancellation(cfg, canc); }; });

  DensityParams dens;
  auto* s_dens = sub("density", "density witnesses f_k approaching e_0 inside the commutator domain",
                     "k,dim,distance_sq,measured_distance_sq,S_abs,residual (empty when dim <= 2k)");
  s_dens->add_option("--ks", dens.ks, "comma-separated k values")->delimiter(',');
  s_dens->add_option("--dims", dens.dims, "comma-separated section dimensions")->delimiter(',');
  s_dens->callback([&] { action = [&] { return density(cfg, dens); }; });

  GraphNormParams gn;
  auto* s_gn = sub("graphnorm", "sum_{n<=M} n^2 |(Phi e_0)_n|^2 and the log-series cross-check", "m,witness,exact");
  s_gn->add_option("--ms", gn.ms, "comma-separated M values")->delimiter(',');
  s_gn->add_option("--log-n", gn.log_n, "coefficients checked against -i log(1+z)")->capture_default_str();
  s_gn->callback([&] { action = [&] { return graphnorm(cfg, gn); }; });

  WeylParams wp;
  auto* s_weyl = sub("weyl", "Weyl mismatch ||e^{itN} e^{isPhi} e^{-itN} - e^{-ist} e^{isPhi}|| over a grid",
                     "s,t,dim,defect");
  s_weyl->add_option("--s", wp.s, "comma-separated s values (default grid if omitted)")->delimiter(',');
  s_weyl->add_option("--t", wp.t, "comma-separated t values (default grid if omitted)")->delimiter(',');
  s_weyl->add_option("--dim,--dims", wp.dims, "comma-separated section dimensions")->delimiter(',');
  s_weyl->add_option("--threads", wp.threads, "worker threads, 0 = hardware concurrency")->capture_default_str();
  s_weyl->callback([&] { action = [&] { return weyl(cfg, wp); }; });

  CovarianceParams cov;
  auto* s_cov = sub("covariance", "e^{itN} Q(B) e^{-itN} against Q of the turned arc", "a,b,t,dim,defect");
  s_cov->add_option("--arcs", cov.arcs, "comma-separated arcs a:b meaning (a, b]")->delimiter(',');
  s_cov->add_option("--t", cov.t, "comma-separated rotation angles")->delimiter(',');
  s_cov->add_option("--dims", cov.dims, "comma-separated section dimensions")->delimiter(',');
  s_cov->callback([&] { action = [&] { return covariance(cfg, cov); }; });

  PovmParams pv;
  auto* s_povm = sub("povm", "POVM elements on the k-cell equipartition",
                     "j,a,b,min_eig,max_eig,idempotence_defect");
  s_povm->add_option("--k", pv.k, "number of cells")->capture_default_str();
  s_povm->add_option("--dim", pv.dim, "section dimension D")->capture_default_str();
  s_povm->callback([&] { action = [&] { return povm(cfg, pv); }; });

  RiemannParams rp;
  auto* s_riem = sub("riemann", "Riemann sums of the POVM against Phi_D", "k,error,bound,ratio (empty unless k = 4x previous)");
  s_riem->add_option("--ks", rp.ks, "comma-separated partition sizes")->delimiter(',');
  s_riem->add_option("--dim", rp.dim, "section dimension D")->capture_default_str();
  s_riem->callback([&] { action = [&] { return riemann(cfg, rp); }; });

  MomentsParams mp;
  auto* s_mom = sub("moments", "shift powers V^k against the monomial moments of the POVM", "k,dim,defect");
  s_mom->add_option("--k-max", mp.k_max, "largest k")->capture_default_str();
  s_mom->add_option("--dims", mp.dims, "comma-separated section dimensions")->delimiter(',');
  s_mom->callback([&] { action = [&] { return moments(cfg, mp); }; });

  DistributionParams dp;
  std::size_t dist_dim = 0;
  auto* s_dist = sub("distribution", "phase distribution of a state on the k-cell equipartition",
                     "j,a,b,mass,rotated_mass");
  s_dist->add_option("--vector", dp.vector, "[[re,im],...] inline or a file path")->capture_default_str();
  s_dist->add_option("--k", dp.k, "number of cells")->capture_default_str();
  auto* dist_dim_opt = s_dist->add_option("--dim", dist_dim, "section dimension (default max(64, support+1))");
  s_dist->callback([&] {
    if (dist_dim_opt->count() > 0) dp.dim = dist_dim;
    action = [&] { return distribution(cfg, dp); };
  });

  SpectrumParams sp;
  auto* s_spec = sub("spectrum", "eigenvalues of Phi_D", "index,eigenvalue");
  s_spec->add_option("--dim", sp.dim, "section dimension D")->capture_default_str();
  s_spec->callback([&] { action = [&] { return spectrum(cfg, sp); }; });

  auto* s_self = sub("selftest", "every module invariant in one report", "module,check,value,relation,limit,pass");
  s_self->callback([&] { action = [&] { return selftest(cfg); }; });

  std::vector<std::string> argv_store{"phaselab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Report report;
  try {
    apply_tolerances(cfg, tol_overrides);
    cfg.format = format == "csv" ? Format::csv : Format::json;
    report = action();
  } catch (const UsageError& e) {
    err << "phaselab: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "phaselab: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "phaselab: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "phaselab: " << e.what() << "\n";
    return 1;
  }

  const std::string text = cfg.format == Format::json ? to_json(report, cfg) : to_csv(report);
  if (cfg.out_path.empty()) {
    out << text;
    err << report.headline << "\n";
  } else {
    const auto path = resolve_output(cfg.out_path);
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
      err << "phaselab: cannot write " << path.string() << "\n";
      return 2;
    }
    out << report.headline << "\n";
  }
  return report.pass ? 0 : 1;
}

}  // namespace phaselab::cli
