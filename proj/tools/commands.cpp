#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phaselab/commutator.hpp"
#include "phaselab/povm.hpp"
#include "phaselab/weyl.hpp"

namespace phaselab::cli {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string verdict(const Report& r) { return r.pass ? "PASS" : "FAIL"; }

void put_complex(Json& obj, const std::string& key, Complex z) {
  obj[key + "_re"] = z.real();
  obj[key + "_im"] = z.imag();
  obj[key + "_abs"] = std::abs(z);
}

Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("cannot parse vector from " + origin + ": " + e.what());
  }
}

}  // namespace

CoeffVec parse_vector(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  Json j;
  if (first != std::string::npos && text[first] == '[') {
    j = parse_json_text(text, "command line");
  } else {
    std::ifstream in(text);
    if (!in) throw UsageError("cannot read vector file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    j = parse_json_text(ss.str(), "'" + text + "'");
  }
  if (!j.is_array()) throw UsageError("vector must be a JSON array of [re, im] pairs");
  std::vector<Complex> c;
  for (const auto& e : j) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
      c.emplace_back(e[0].get<double>(), e[1].get<double>());
    } else {
      throw UsageError("vector entries must be numbers or [re, im] pairs");
    }
  }
  try {
    return CoeffVec(std::move(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Arc parse_arc(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("arc '" + text + "' is not of the form a:b");
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string sa = text.substr(0, colon), sb = text.substr(colon + 1);
    const double a = std::stod(sa, &used_a);
    const double b = std::stod(sb, &used_b);
    if (used_a != sa.size() || used_b != sb.size()) throw std::invalid_argument("trailing text");
    return Arc(a, b);
  } catch (const std::exception& e) {
    throw UsageError("bad arc '" + text + "': " + e.what());
  }
}

Report phi_matrix(const RunConfig& cfg, const PhiMatrixParams& p) {
  cfg.check_dim(p.dim);
  Report r;
  r.command = "phi-matrix";
  r.params = {{"dim", p.dim}};
  r.columns = {"n", "m", "re", "im"};
  const auto phi = phase_operator(p.dim);
  double worst = 0.0;
  for (std::size_t n = 0; n < p.dim; ++n)
    for (std::size_t m = 0; m < p.dim; ++m) {
      Complex expected{};
      if (n != m) {
        const double diff = static_cast<double>(m) - static_cast<double>(n);
        const double sign = ((m > n ? m - n : n - m) % 2 == 0) ? 1.0 : -1.0;
        expected = Complex(0.0, -sign / diff);
      }
      worst = std::max(worst, std::abs(phi(n, m) - expected));
      r.add_row({n, m, phi(n, m).real(), phi(n, m).imag()});
    }
  r.summary["dim"] = p.dim;
  r.summary["max_entry_error"] = worst;
  r.summary["hermitian"] = phi.hermitian();
  r.require(worst <= cfg.tol("phi_entry"), "closed-form entries");
  r.require(phi.hermitian(), "hermitian");
  r.headline = "phi-matrix D=" + std::to_string(p.dim) + " max entry error " + fmt(worst) + " " + verdict(r);
  return r;
}

Report heisenberg(const RunConfig& cfg, const HeisenbergParams& p) {
  const CoeffVec f = parse_vector(p.vector);
  for (auto d : p.dims) cfg.check_dim(d);
  if (f.empty()) throw UsageError("heisenberg: vector is zero");
  const auto h = heisenberg_residuals(f, p.dims);
  Report r;
  r.command = "heisenberg";
  r.params = {{"vector", p.vector}, {"dims", p.dims}};
  r.columns = {"dim", "residual", "residual_sq", "residual_sq_over_dim"};
  bool monotone = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const auto& row = h.rows[i];
    const double sq = row.residual * row.residual;
    r.add_row({row.dim, row.residual, sq, sq / static_cast<double>(row.dim)});
    if (i > 0 && row.residual < h.rows[i - 1].residual) monotone = false;
    worst = std::max(worst, row.residual);
  }
  const bool in_y = in_commutator_domain(f, cfg.tol("membership"));
  put_complex(r.summary, "S", h.boundary_value);
  r.summary["in_domain"] = in_y;
  r.summary["slope"] = h.slope;
  if (!in_y) r.summary["slope_over_S_sq"] = h.slope / std::norm(h.boundary_value);
  r.require(monotone, "residuals non-decreasing in D");
  if (in_y) r.require(worst <= cfg.tol("residual_zero"), "residuals vanish on the commutator domain");
  r.headline = "heisenberg |S|=" + fmt(std::abs(h.boundary_value)) + " slope " + fmt(h.slope) + " over " +
               std::to_string(h.rows.size()) + " dims " + verdict(r);
  return r;
}

bool cancellation_ok(const CancellationReport& c, double membership_tol, double f_norm) {
  if (std::abs(c.boundary_value) > membership_tol * std::max(1.0, f_norm))
    return std::abs(c.tail_average - c.target) <= c.tolerance;
  // S = 0: the terms decay, so the last quartile averages below the previous one.
  const std::size_t n_max = c.rows.size() - 1;
  const std::size_t lo = std::max<std::size_t>(1, n_max / 2);
  double prev = 0.0;
  std::size_t count = 0;
  for (std::size_t n = lo; n < c.window_start; ++n, ++count) prev += c.rows[n].term;
  if (count == 0) return true;
  prev /= static_cast<double>(count);
  return c.tail_average <= prev;
}

Report cancellation(const RunConfig& cfg, const CancellationParams& p) {
  const CoeffVec f = parse_vector(p.vector);
  if (f.empty()) throw UsageError("cancellation: vector is zero");
  const auto c = cancellation_report(f, p.n_max);
  Report r;
  r.command = "cancellation";
  r.params = {{"vector", p.vector}, {"n_max", p.n_max}};
  r.columns = {"n", "term", "partial_sum"};
  bool nonneg = true;
  for (const auto& row : c.rows) {
    r.add_row({row.n, row.term, row.partial_sum});
    if (row.term < 0.0) nonneg = false;
  }
  put_complex(r.summary, "S", c.boundary_value);
  r.summary["window_start"] = c.window_start;
  r.summary["tail_average"] = c.tail_average;
  r.summary["target"] = c.target;
  r.summary["tolerance"] = c.tolerance;
  r.require(nonneg, "terms nonnegative");
  r.require(cancellation_ok(c, cfg.tol("membership"), f.norm()), "tail average tends to |S|^2");
  r.headline = "cancellation tail average " + fmt(c.tail_average) + " target " + fmt(c.target) + " " + verdict(r);
  return r;
}

Report density(const RunConfig& cfg, const DensityParams& p) {
  for (auto d : p.dims) cfg.check_dim(d);
  Report r;
  r.command = "density";
  r.params = {{"ks", p.ks}, {"dims", p.dims}};
  r.columns = {"k", "dim", "distance_sq", "measured_distance_sq", "S_abs", "residual"};
  double worst_dist = 0.0, worst_s = 0.0, worst_res = 0.0;
  for (auto k : p.ks) {
    if (k == 0) throw UsageError("density: k must be >= 1");
    const auto w = density_witness(k);
    const double measured = std::pow((CoeffVec::basis(0) - w.vector).norm(), 2);
    const double s_abs = std::abs(eval_at_minus_one(w.vector));
    worst_dist = std::max(worst_dist, std::abs(measured - w.distance_sq));
    worst_s = std::max(worst_s, s_abs);
    for (auto d : p.dims) {
      Json residual = nullptr;  // D must exceed the support 2k
      if (d > w.vector.size()) {
        const std::vector<std::size_t> one{d};
        const double res = heisenberg_residuals(w.vector, one).rows.front().residual;
        worst_res = std::max(worst_res, res);
        residual = res;
      }
      r.add_row({k, d, w.distance_sq, measured, s_abs, residual});
    }
  }
  r.summary["max_distance_error"] = worst_dist;
  r.summary["max_S_abs"] = worst_s;
  r.summary["max_residual"] = worst_res;
  r.require(worst_dist <= 1e-15, "distance^2 = 1/k");
  r.require(worst_s <= 1e-15, "witness in the commutator domain");
  r.require(worst_res <= cfg.tol("residual_zero"), "residuals vanish");
  r.headline = "density max |dist^2 - 1/k| " + fmt(worst_dist) + " max residual " + fmt(worst_res) + " " + verdict(r);
  return r;
}

Report graphnorm(const RunConfig& cfg, const GraphNormParams& p) {
  Report r;
  r.command = "graphnorm";
  r.params = {{"ms", p.ms}, {"log_n", p.log_n}};
  r.columns = {"m", "witness", "exact"};
  bool all_exact = true;
  for (auto m : p.ms) {
    if (m == 0) throw UsageError("graphnorm: M must be >= 1");
    const double w = graph_norm_witness(m);
    const bool exact = w == static_cast<double>(m);
    all_exact = all_exact && exact;
    r.add_row({m, w, exact});
  }
  if (p.log_n == 0) throw UsageError("graphnorm: --log-n must be >= 1");
  const double log_err = log_series_crosscheck(p.log_n);
  r.summary["all_exact"] = all_exact;
  r.summary["log_series_max_error"] = log_err;
  r.require(all_exact, "witness equals M");
  r.require(log_err <= cfg.tol("log_series"), "log-series coefficients");
  r.headline = "graphnorm " + std::string(all_exact ? "exact" : "inexact") + ", log-series error " + fmt(log_err) +
               " " + verdict(r);
  return r;
}

Report weyl(const RunConfig& cfg, const WeylParams& p) {
  const auto defaults = WeylGrid::defaults();
  WeylGrid g{p.s.empty() ? defaults.s : p.s, p.t.empty() ? defaults.t : p.t,
             p.dims.empty() ? defaults.dims : p.dims};
  for (auto d : g.dims) cfg.check_dim(d, 2);
  const auto w = weyl_scan(g, cfg.eigen(), p.threads);

  Report r;
  r.command = "weyl";
  r.params = {{"s", g.s}, {"t", g.t}, {"dims", g.dims}};
  r.columns = {"s", "t", "dim", "defect"};
  const std::size_t dmax = *std::max_element(g.dims.begin(), g.dims.end());
  double trivial = 0.0, biggest = 0.0, worst_stab = 0.0;
  bool bounded = true, stable = true;
  for (const auto& pt : w.grid) {
    r.add_row({pt.s, pt.t, pt.dim, pt.defect});
    if (pt.s == 0.0 || pt.t == 0.0) trivial = std::max(trivial, pt.defect);
    biggest = std::max(biggest, pt.defect);
    if (pt.defect > 2.0 + 1e-10) bounded = false;
  }
  Json stab = Json::array();
  for (const auto& st : w.stabilization) {
    Json change = nullptr;
    if (st.relative_change) {
      change = *st.relative_change;
      if (st.dim_to == dmax) {
        worst_stab = std::max(worst_stab, *st.relative_change);
        if (*st.relative_change >= cfg.tol("stabilization")) stable = false;
      }
    }
    stab.push_back({{"s", st.s}, {"t", st.t}, {"dim_from", st.dim_from}, {"dim_to", st.dim_to},
                    {"relative_change", change}});
  }
  r.summary["max_trivial_defect"] = trivial;
  r.summary["max_defect"] = biggest;
  r.summary["max_relative_change_at_largest_dim"] = worst_stab;
  r.summary["stabilization"] = std::move(stab);
  r.require(trivial <= cfg.tol("weyl_trivial"), "trivial axes s = 0, t = 0");
  r.require(bounded, "defect <= 2");
  r.require(stable, "defect stabilised between the two largest dims");
  r.headline = "weyl " + std::to_string(w.grid.size()) + " points, max defect " + fmt(biggest) +
               ", max relative change " + fmt(worst_stab) + " " + verdict(r);
  return r;
}

Report covariance(const RunConfig& cfg, const CovarianceParams& p) {
  std::vector<std::string> arc_text = p.arcs;
  if (arc_text.empty())
    arc_text = {"0:1.5707963267948966", "-3.141592653589793:3.141592653589793", "2.5:4.2", "-3:-2.9", "-1:1.5"};
  std::vector<double> ts = p.t.empty() ? std::vector<double>{-2.0, 0.3, 1.0, kPi, 5.5} : p.t;
  for (auto d : p.dims) cfg.check_dim(d);
  Report r;
  r.command = "covariance";
  r.params = {{"arcs", arc_text}, {"t", ts}, {"dims", p.dims}};
  r.columns = {"a", "b", "t", "dim", "defect"};
  double worst = 0.0;
  for (const auto& text : arc_text) {
    const Arc arc = parse_arc(text);
    for (double t : ts)
      for (auto d : p.dims) {
        const double def = covariance_defect(arc, t, d, cfg.eigen());
        worst = std::max(worst, def);
        r.add_row({arc.a(), arc.b(), t, d, def});
      }
  }
  r.summary["max_defect"] = worst;
  r.require(worst <= cfg.tol("covariance"), "number-rotation covariance");
  r.headline = "covariance " + std::to_string(r.rows.size()) + " cases, max defect " + fmt(worst) + " " + verdict(r);
  return r;
}

Report povm(const RunConfig& cfg, const PovmParams& p) {
  cfg.check_dim(p.dim);
  if (p.k == 0) throw UsageError("povm: k must be >= 1");
  Report r;
  r.command = "povm";
  r.params = {{"k", p.k}, {"dim", p.dim}};
  r.columns = {"j", "a", "b", "min_eig", "max_eig", "idempotence_defect"};
  const double slack = cfg.tol("positivity");
  TruncatedOperator sum(p.dim);
  bool positive = true, not_projection = true;
  const auto cells = equipartition(p.k);
  for (std::size_t j = 0; j < cells.size(); ++j) {
    const auto q = povm_element(cells[j], p.dim);
    sum = sum + q;
    const auto ev = hermitian_eigenvalues(q, cfg.eigen());
    const double idem = operator_norm(q * q - q, cfg.eigen());
    if (ev.front() < -slack || ev.back() > 1.0 + slack) positive = false;
    if (!cells[j].is_full_circle() && !(idem > 0.0)) not_projection = false;
    r.add_row({j + 1, cells[j].a(), cells[j].b(), ev.front(), ev.back(), idem});
  }
  const double resolution = max_abs_entry(sum - TruncatedOperator::identity(p.dim));
  r.summary["resolution_error"] = resolution;
  r.require(resolution <= cfg.tol("resolution"), "resolution of identity");
  r.require(positive, "0 <= Q <= I");
  r.require(not_projection, "proper arcs give non-projections");
  r.headline = "povm k=" + std::to_string(p.k) + " D=" + std::to_string(p.dim) + " resolution error " +
               fmt(resolution) + " " + verdict(r);
  return r;
}

Report riemann(const RunConfig& cfg, const RiemannParams& p) {
  cfg.check_dim(p.dim);
  for (auto k : p.ks)
    if (k == 0) throw UsageError("riemann: k must be >= 1");
  const auto rc = riemann_convergence(p.ks, p.dim, cfg.eigen());
  Report r;
  r.command = "riemann";
  r.params = {{"ks", p.ks}, {"dim", p.dim}};
  r.columns = {"k", "error", "bound", "ratio"};
  bool within = true, rate = true;
  for (std::size_t i = 0; i < rc.rows.size(); ++i) {
    const auto& row = rc.rows[i];
    Json ratio = nullptr;  // only for k = 4 * previous k
    if (i > 0 && row.k == 4 * rc.rows[i - 1].k && rc.rows[i - 1].error > 0.0) {
      const double q = row.error / rc.rows[i - 1].error;
      ratio = q;
      if (q > 0.5) rate = false;
    }
    if (row.error > row.bound + cfg.tol("riemann_slack")) within = false;
    r.add_row({row.k, row.error, row.bound, ratio});
  }
  r.require(within, "error_k <= 2pi/k");
  r.require(rate, "error_{4k}/error_k <= 0.5");
  r.summary["all_within_bound"] = within;
  r.headline = "riemann " + std::to_string(rc.rows.size()) + " rows at D=" + std::to_string(p.dim) + ", last error " +
               fmt(rc.rows.back().error) + " " + verdict(r);
  return r;
}

Report moments(const RunConfig& cfg, const MomentsParams& p) {
  for (auto d : p.dims) cfg.check_dim(d);
  Report r;
  r.command = "moments";
  r.params = {{"k_max", p.k_max}, {"dims", p.dims}};
  r.columns = {"k", "dim", "defect"};
  double worst = 0.0;
  for (std::size_t k = 0; k <= p.k_max; ++k)
    for (auto d : p.dims) {
      const double def = moment_defect(k, d, cfg.eigen());
      worst = std::max(worst, def);
      r.add_row({k, d, def});
    }
  r.summary["max_defect"] = worst;
  r.require(worst <= cfg.tol("moment"), "V^k matches the monomial moment");
  r.headline = "moments k<=" + std::to_string(p.k_max) + " max defect " + fmt(worst) + " " + verdict(r);
  return r;
}

Report distribution(const RunConfig& cfg, const DistributionParams& p) {
  const CoeffVec f = parse_vector(p.vector);
  if (f.empty()) throw UsageError("distribution: vector is zero");
  if (p.k == 0) throw UsageError("distribution: k must be >= 1");
  const std::size_t dim = p.dim.value_or(std::max<std::size_t>(64, f.size() + 1));
  cfg.check_dim(dim);
  const auto pd = phase_distribution(f, p.k, dim);

  // e^{itN} f with t = 2pi/k turns the cells by one step.
  const double t = kTwoPi / static_cast<double>(p.k);
  std::vector<Complex> rc(f.coeffs().begin(), f.coeffs().end());
  for (std::size_t n = 0; n < rc.size(); ++n) rc[n] *= std::polar(1.0, t * static_cast<double>(n));
  const auto turned = phase_distribution(CoeffVec(std::move(rc)), p.k, dim);

  Report r;
  r.command = "distribution";
  r.params = {{"vector", p.vector}, {"k", p.k}, {"dim", dim}};
  r.columns = {"j", "a", "b", "mass", "rotated_mass"};
  const auto cells = equipartition(p.k);
  double total = 0.0, least = 1.0, shift = 0.0;
  for (std::size_t j = 0; j < p.k; ++j) {
    total += pd.masses[j];
    least = std::min(least, pd.masses[j]);
    shift = std::max(shift, std::abs(turned.masses[j] - pd.masses[(j + 1) % p.k]));
    r.add_row({j + 1, cells[j].a(), cells[j].b(), pd.masses[j], turned.masses[j]});
  }
  r.summary["total_mass"] = total;
  r.summary["min_mass"] = least;
  r.summary["cyclic_shift_defect"] = shift;
  r.require(least >= -1e-12, "masses nonnegative");
  r.require(std::abs(total - 1.0) <= cfg.tol("distribution"), "masses sum to 1");
  r.require(shift <= cfg.tol("distribution"), "rotation shifts the distribution");
  r.headline = "distribution k=" + std::to_string(p.k) + " total " + fmt(total) + " shift defect " + fmt(shift) +
               " " + verdict(r);
  return r;
}

Report spectrum(const RunConfig& cfg, const SpectrumParams& p) {
  cfg.check_dim(p.dim);
  const auto ev = hermitian_eigenvalues(phase_operator(p.dim), cfg.eigen());
  Report r;
  r.command = "spectrum";
  r.params = {{"dim", p.dim}};
  r.columns = {"index", "eigenvalue"};
  for (std::size_t i = 0; i < ev.size(); ++i) r.add_row({i, ev[i]});
  const double slack = cfg.tol("spectrum_slack");
  r.summary["min"] = ev.front();
  r.summary["max"] = ev.back();
  r.require(ev.front() >= -kPi - slack && ev.back() <= kPi + slack, "spectrum inside [-pi, pi]");
  r.headline = "spectrum D=" + std::to_string(p.dim) + " in [" + fmt(ev.front()) + ", " + fmt(ev.back()) + "] " +
               verdict(r);
  return r;
}

}  // namespace phaselab::cli
