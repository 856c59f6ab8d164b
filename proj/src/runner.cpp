#include "wsl/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "wsl/dispersive.hpp"
#include "wsl/exponents.hpp"
#include "wsl/fields.hpp"
#include "wsl/inls.hpp"
#include "wsl/necessity.hpp"
#include "wsl/propagator.hpp"
#include "wsl/quadrature.hpp"
#include "wsl/report.hpp"

namespace wsl {

namespace {
using nlohmann::json;
namespace fs = std::filesystem;

// --- config access with field-level diagnostics --------------------------

const json& field(const json& j, const std::string& section,
                  const std::string& key) {
  if (!j.contains(section))
    throw std::invalid_argument("config: missing section '" + section + "'");
  const json& s = j.at(section);
  if (!s.contains(key))
    throw std::invalid_argument("config: missing field '" + section + "." +
                                key + "'");
  return s.at(key);
}

Rat jrat(const json& j, const std::string& section, const std::string& key) {
  const json& v = field(j, section, key);
  if (!v.is_string())
    throw std::invalid_argument("config: field '" + section + "." + key +
                                "' must be a rational string \"p/q\"");
  try {
    return parse_rat(v.get<std::string>());
  } catch (const std::exception& e) {
    throw std::invalid_argument("config: field '" + section + "." + key +
                                "': " + e.what());
  }
}

double jnum(const json& j, const std::string& section, const std::string& key) {
  const json& v = field(j, section, key);
  if (!v.is_number())
    throw std::invalid_argument("config: field '" + section + "." + key +
                                "' must be a number");
  return v.get<double>();
}

int jint(const json& j, const std::string& section, const std::string& key) {
  const json& v = field(j, section, key);
  if (!v.is_number_integer())
    throw std::invalid_argument("config: field '" + section + "." + key +
                                "' must be an integer");
  return v.get<int>();
}

json load_config(const RunOptions& opts) {
  std::string text;
  if (opts.config_path.empty()) {
    text = default_config_json();
  } else {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in)
      throw std::invalid_argument("config: cannot open '" + opts.config_path +
                                  "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: parse error: ") +
                                e.what());
  }
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// manifest.json holds an append-only array of run records.
void manifest_append(const std::string& out_dir, const json& entry) {
  fs::path path = fs::path(out_dir) / "manifest.json";
  json all = json::array();
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    try {
      in >> all;
    } catch (...) {
      all = json::array();
    }
    if (!all.is_array()) all = json::array();
  }
  all.push_back(entry);
  write_text_atomic(path.string(), all.dump(2) + "\n");
}

struct SubResult {
  std::vector<CheckResult> checks;
  std::vector<std::string> outputs;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

ExponentConfig exponents_from(const json& cfg, const std::string& section) {
  ExponentConfig e;
  e.inv_q = jrat(cfg, section, "inv_q");
  e.inv_r = jrat(cfg, section, "inv_r");
  e.inv_qt = jrat(cfg, section, "inv_qt");
  e.inv_rt = jrat(cfg, section, "inv_rt");
  e.gamma = jrat(cfg, section, "gamma");
  e.gamma_t = jrat(cfg, section, "gamma_t");
  return e;
}

// --- subcommands ----------------------------------------------------------

SubResult cmd_region(const json& cfg, const std::string& out_dir) {
  Rat gamma = jrat(cfg, "region", "gamma");
  Rat gamma_t = jrat(cfg, "region", "gamma_t");
  auto poly = region_polygon(gamma, gamma_t);

  SubResult res;
  Csv verts;
  verts.columns = {"inv_r", "inv_rt", "inv_r_num", "inv_rt_num", "on_lines"};
  std::vector<double> px, py;
  bool vertices_ok = true;
  for (const auto& v : poly.vertices) {
    verts.add_row({rat_str(v.inv_r), rat_str(v.inv_rt),
                   fmt_num(to_double(v.inv_r)), fmt_num(to_double(v.inv_rt)),
                   join(v.on_lines, ";")});
    px.push_back(to_double(v.inv_r));
    py.push_back(to_double(v.inv_rt));
    if (!region_contains(v.inv_r, v.inv_rt, gamma, gamma_t, true))
      vertices_ok = false;
  }
  fs::path vpath = fs::path(out_dir) / "region_vertices.csv";
  verts.write(vpath.string());
  res.outputs.push_back(vpath.string());

  Csv lines;
  lines.columns = {"name", "a", "b", "c", "strict"};
  for (const auto& l : poly.lines)
    lines.add_row({l.name, rat_str(l.a), rat_str(l.b), rat_str(l.c),
                   l.strict ? "1" : "0"});
  fs::path lpath = fs::path(out_dir) / "region_lines.csv";
  lines.write(lpath.string());
  res.outputs.push_back(lpath.string());

  Csv grid;
  grid.columns = {"inv_r", "inv_rt", "status"};
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j) {
      Rat ir = frac(i, 24), irt = frac(j, 24);
      const char* status = region_contains(ir, irt, gamma, gamma_t, false)
                               ? "interior"
                           : region_contains(ir, irt, gamma, gamma_t, true)
                               ? "boundary"
                               : "outside";
      grid.add_row({rat_str(ir), rat_str(irt), status});
    }
  fs::path gpath = fs::path(out_dir) / "region_membership.csv";
  grid.write(gpath.string());
  res.outputs.push_back(gpath.string());

  SvgPlot plot;
  plot.log_x = plot.log_y = false;
  plot.title = "admissible (1/r, 1/rt) region";
  plot.x_label = "1/r";
  plot.y_label = "1/rt";
  if (!poly.empty) plot.add_polygon("off-diagonal region", px, py);
  if (poly.diagonal_segment) {
    double lo = to_double(poly.diagonal_segment->first);
    double hi = to_double(poly.diagonal_segment->second);
    plot.add_series("diagonal segment", {lo, hi}, {lo, hi});
  }
  fs::path spath = fs::path(out_dir) / "region.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  res.checks.push_back({"region_nonempty", !poly.empty,
                        std::to_string(poly.vertices.size()) + " vertices"});
  res.checks.push_back(
      {"vertices_in_closure", vertices_ok, "exact closure membership"});
  res.checks.push_back({"diagonal_present", poly.diagonal_segment.has_value(),
                        ""});
  return res;
}

struct DecaySetResult {
  DecayExperiment ex;
  Rat inv_q, inv_p_prime, gamma, gamma_t;
};

std::vector<DecaySetResult> run_decay_sets(const json& cfg) {
  double t_min = jnum(cfg, "decay", "t_min");
  double t_max = jnum(cfg, "decay", "t_max");
  if (!(t_min > 0 && t_max > 2 * t_min))
    throw std::invalid_argument("config: decay.t_min/t_max invalid");
  std::vector<double> times;
  for (double t = t_min; t <= t_max; t *= 2) times.push_back(t);
  const json& sets = field(cfg, "decay", "sets");
  if (!sets.is_array() || sets.empty())
    throw std::invalid_argument("config: decay.sets must be a nonempty array");

  Gaussian g(1.0, 1.0);
  std::vector<DecaySetResult> out;
  for (size_t i = 0; i < sets.size(); ++i) {
    json wrapper;
    wrapper["set"] = sets[i];
    DecaySetResult r;
    r.inv_q = jrat(wrapper, "set", "inv_q");
    r.inv_p_prime = jrat(wrapper, "set", "inv_p_prime");
    r.gamma = jrat(wrapper, "set", "gamma");
    r.gamma_t = jrat(wrapper, "set", "gamma_t");
    r.ex = decay_rate_fit(g, r.inv_q, r.inv_p_prime, r.gamma, r.gamma_t, times);
    out.push_back(std::move(r));
  }
  return out;
}

SubResult cmd_decay(const json& cfg, const std::string& out_dir) {
  auto sets = run_decay_sets(cfg);
  SubResult res;
  Csv csv;
  csv.columns = {"set",      "inv_q",    "inv_p_prime", "gamma", "gamma_t",
                 "fitted",   "predicted", "residual",   "pass"};
  SvgPlot plot;
  plot.title = "weighted dispersive decay";
  plot.x_label = "t";
  plot.y_label = "weighted norm";
  bool all = true;
  for (size_t i = 0; i < sets.size(); ++i) {
    const auto& s = sets[i];
    bool ok = std::abs(s.ex.fitted_slope - s.ex.predicted_slope) <= 0.02;
    all = all && ok;
    csv.add_row({std::to_string(i), rat_str(s.inv_q), rat_str(s.inv_p_prime),
                 rat_str(s.gamma), rat_str(s.gamma_t),
                 fmt_num(s.ex.fitted_slope), fmt_num(s.ex.predicted_slope),
                 fmt_num(s.ex.residual), ok ? "1" : "0"});
    plot.add_series("set " + std::to_string(i), s.ex.times, s.ex.norms);
  }
  fs::path cpath = fs::path(out_dir) / "decay.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());
  fs::path spath = fs::path(out_dir) / "decay.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());
  res.checks.push_back({"decay_slopes_match", all, "tolerance 0.02"});
  return res;
}

SubResult cmd_homog(const json& cfg, const std::string& out_dir) {
  Gaussian g(1.0, 1.0);
  auto scan = homogeneous_strichartz_ratio(
      g, jrat(cfg, "homog", "inv_q"), jrat(cfg, "homog", "inv_r"),
      jrat(cfg, "homog", "gamma"), jrat(cfg, "homog", "sigma"),
      jnum(cfg, "homog", "t_max"), jint(cfg, "homog", "time_samples"));

  SubResult res;
  Csv csv;
  csv.columns = {"window_end", "ratio"};
  bool monotone = true;
  for (size_t i = 0; i < scan.ratios.size(); ++i) {
    csv.add_row({fmt_num(scan.window_ends[i]), fmt_num(scan.ratios[i])});
    if (i && scan.ratios[i] < scan.ratios[i - 1]) monotone = false;
  }
  fs::path cpath = fs::path(out_dir) / "homog.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  SvgPlot plot;
  plot.title = "homogeneous estimate ratio";
  plot.x_label = "window end";
  plot.y_label = "LHS/RHS";
  plot.add_series("cumulative ratio", scan.window_ends, scan.ratios);
  fs::path spath = fs::path(out_dir) / "homog.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  size_t m = scan.ratios.size();
  bool stable =
      m >= 2 && std::abs(scan.ratios[m - 1] / scan.ratios[m - 2] - 1.0) < 0.01;
  res.checks.push_back({"ratio_monotone", monotone, ""});
  res.checks.push_back({"ratio_stabilized", stable,
                        "final ratio " + fmt_num(scan.final_ratio)});
  return res;
}

SubResult cmd_inhomog(const json& cfg, const std::string& out_dir) {
  ExponentConfig e = exponents_from(cfg, "exponents");
  InhomRatioParams params;
  params.box_length = jnum(cfg, "inhomog", "box_length");
  params.n = jint(cfg, "inhomog", "n");
  params.duhamel_steps = jint(cfg, "inhomog", "duhamel_steps");
  params.t_max = jnum(cfg, "inhomog", "t_max");
  params.time_samples = jint(cfg, "inhomog", "time_samples");
  double delta = jnum(cfg, "inhomog", "delta");

  auto base = inhomogeneous_strichartz_ratio(e, params);
  auto scaled = inhomogeneous_strichartz_ratio(e, params, delta);

  SubResult res;
  Csv csv;
  csv.columns = {"window_end", "ratio", "ratio_rescaled"};
  bool monotone = true;
  for (size_t i = 0; i < base.ratios.size(); ++i) {
    csv.add_row({fmt_num(base.window_ends[i]), fmt_num(base.ratios[i]),
                 fmt_num(scaled.ratios[i])});
    if (i && base.ratios[i] < base.ratios[i - 1]) monotone = false;
  }
  fs::path cpath = fs::path(out_dir) / "inhomog.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  SvgPlot plot;
  plot.title = "inhomogeneous estimate ratio";
  plot.x_label = "window end";
  plot.y_label = "LHS/RHS";
  plot.add_series("base", base.window_ends, base.ratios);
  plot.add_series("rescaled", scaled.window_ends, scaled.ratios);
  fs::path spath = fs::path(out_dir) / "inhomog.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  double spread = std::abs(scaled.final_ratio / base.final_ratio - 1.0);
  res.checks.push_back({"ratio_monotone", monotone, ""});
  res.checks.push_back({"ratio_finite",
                        std::isfinite(base.final_ratio) &&
                            base.final_ratio > 0,
                        "final ratio " + fmt_num(base.final_ratio)});
  res.checks.push_back({"scale_invariant", spread < 1e-6,
                        "relative spread " + fmt_num(spread)});
  return res;
}

SubResult cmd_necessity(const json& cfg, const std::string& out_dir) {
  std::vector<double> Ns, Rs;
  for (const auto& v : field(cfg, "necessity", "N_list"))
    Ns.push_back(v.get<double>());
  for (const auto& v : field(cfg, "necessity", "R_list"))
    Rs.push_back(v.get<double>());

  const json& cases = field(cfg, "necessity", "n2_cases");
  if (!cases.is_array() || cases.size() < 2)
    throw std::invalid_argument(
        "config: necessity.n2_cases needs >= 2 entries");
  std::vector<GrowthScan> n2;
  for (const auto& c : cases) {
    json wrapper;
    wrapper["case"] = c;
    n2.push_back(necessity_n2_scan(jrat(wrapper, "case", "inv_q"),
                                   jrat(wrapper, "case", "inv_r"),
                                   jrat(wrapper, "case", "gamma"), Ns));
  }

  json viol_wrap;
  viol_wrap["v"] = field(cfg, "necessity", "n5_violating");
  ExponentConfig viol = exponents_from(viol_wrap, "v");
  ExponentConfig adm = exponents_from(cfg, "exponents");
  auto n5_viol = necessity_n5_scan(viol, Rs);
  auto n5_adm = necessity_n5_scan(adm, Rs);

  SubResult res;
  Csv csv;
  csv.columns = {"scan", "param", "value"};
  auto dump = [&](const std::string& name, const GrowthScan& s) {
    for (size_t i = 0; i < s.params.size(); ++i)
      csv.add_row({name, fmt_num(s.params[i]), fmt_num(s.values[i])});
  };
  dump("n2_0", n2[0]);
  dump("n2_1", n2[1]);
  dump("n5_violating", n5_viol);
  dump("n5_admissible", n5_adm);
  fs::path cpath = fs::path(out_dir) / "necessity.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  Csv fits;
  fits.columns = {"scan", "fitted", "predicted", "demonstrated"};
  auto fitrow = [&](const std::string& name, const GrowthScan& s) {
    fits.add_row({name, fmt_num(s.fitted_exponent),
                  fmt_num(s.predicted_exponent),
                  s.necessity_demonstrated ? "1" : "0"});
  };
  fitrow("n2_0", n2[0]);
  fitrow("n2_1", n2[1]);
  fitrow("n5_violating", n5_viol);
  fitrow("n5_admissible", n5_adm);
  fs::path fpath = fs::path(out_dir) / "necessity_fits.csv";
  fits.write(fpath.string());
  res.outputs.push_back(fpath.string());

  SvgPlot plot;
  plot.title = "necessity growth scans";
  plot.x_label = "N (or R)";
  plot.y_label = "truncated ratio";
  plot.add_series("n2_0", n2[0].params, n2[0].values);
  plot.add_series("n2_1", n2[1].params, n2[1].values);
  plot.add_series("n5_violating", n5_viol.params, n5_viol.values);
  plot.add_series("n5_admissible", n5_adm.params, n5_adm.values);
  fs::path spath = fs::path(out_dir) / "necessity.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  bool n2_ok = true;
  for (const auto& s : n2)
    n2_ok = n2_ok &&
            std::abs(s.fitted_exponent - s.predicted_exponent) <= 0.03;
  bool n5_ok =
      std::abs(n5_viol.fitted_exponent - n5_viol.predicted_exponent) <= 0.05 &&
      std::abs(n5_adm.fitted_exponent - n5_adm.predicted_exponent) <= 0.05;
  res.checks.push_back({"n2_exponents_match", n2_ok, "tolerance 0.03"});
  res.checks.push_back({"n5_exponents_match", n5_ok, "tolerance 0.05"});
  res.checks.push_back({"growth_flags_correct",
                        n5_viol.necessity_demonstrated &&
                            !n5_adm.necessity_demonstrated,
                        ""});
  return res;
}

SubResult cmd_solve(const json& cfg, const std::string& out_dir) {
  EquationParams params;
  params.alpha = jnum(cfg, "solve", "alpha");
  params.lambda = jint(cfg, "solve", "lambda");
  params.eps = jnum(cfg, "solve", "eps");
  SolverConfig sc;
  sc.box_length = jnum(cfg, "solve", "box_length");
  sc.n = jint(cfg, "solve", "n");
  sc.dt = jnum(cfg, "solve", "dt");
  sc.t_final = jnum(cfg, "solve", "t_final");
  sc.cadence = jint(cfg, "solve", "cadence");
  double amp = jnum(cfg, "solve", "amplitude");
  double width = jnum(cfg, "solve", "width");

  auto u0 = Field3D::from_gaussian(sc.box_length, sc.n, Gaussian(width, amp));
  auto traj = splitstep_evolve(u0, params, sc);
  double mass0 = traj.snapshots.front().l2_norm();

  SubResult res;
  Csv csv;
  csv.columns = {"time", "mass", "mass_drift", "h1"};
  double max_drift = 0;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    double mass = traj.snapshots[i].l2_norm();
    double drift = std::abs(mass / mass0 - 1.0);
    max_drift = std::max(max_drift, drift);
    csv.add_row({fmt_num(traj.times[i]), fmt_num(mass), fmt_num(drift),
                 fmt_num(h1_norm(traj.snapshots[i]))});
  }
  fs::path cpath = fs::path(out_dir) / "solve.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  SvgPlot plot;
  plot.log_x = plot.log_y = false;
  plot.title = "split-step mass drift";
  plot.x_label = "t";
  plot.y_label = "|mass/mass0 - 1|";
  std::vector<double> drifts;
  for (size_t i = 0; i < traj.times.size(); ++i)
    drifts.push_back(std::abs(traj.snapshots[i].l2_norm() / mass0 - 1.0));
  plot.add_series("drift", traj.times, drifts);
  fs::path spath = fs::path(out_dir) / "solve.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  res.checks.push_back({"mass_conserved", max_drift <= 1e-9,
                        "max drift " + fmt_num(max_drift)});
  return res;
}

SubResult cmd_picard(const json& cfg, const std::string& out_dir) {
  EquationParams params;
  params.alpha = jnum(cfg, "picard", "alpha");
  params.lambda = jint(cfg, "picard", "lambda");
  params.eps = jnum(cfg, "picard", "eps");
  SolverConfig sc;
  sc.box_length = jnum(cfg, "picard", "box_length");
  sc.n = jint(cfg, "picard", "n");
  sc.dt = jnum(cfg, "picard", "dt");
  sc.t_final = jnum(cfg, "picard", "t_final");
  sc.cadence = jint(cfg, "picard", "cadence");
  int m_max = jint(cfg, "picard", "m_max");
  double amp = jnum(cfg, "picard", "amplitude");
  double width = jnum(cfg, "picard", "width");

  auto u0 = Field3D::from_gaussian(sc.box_length, sc.n, Gaussian(width, amp));
  auto traces = picard_iterate(u0, params, sc.t_final, m_max, sc);

  SubResult res;
  Csv csv;
  csv.columns = {"m", "w1_norm", "diff_norm", "ratio"};
  bool contracting = true;
  for (const auto& tr : traces) {
    csv.add_row({std::to_string(tr.m), fmt_num(tr.w1_norm),
                 fmt_num(tr.diff_norm), fmt_num(tr.ratio)});
    if (tr.m >= 2 && tr.ratio > 0.1) contracting = false;
  }
  fs::path cpath = fs::path(out_dir) / "picard.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  SvgPlot plot;
  plot.log_x = false;
  plot.title = "Picard iteration differences";
  plot.x_label = "iteration";
  plot.y_label = "surrogate difference norm";
  std::vector<double> ms, ds;
  for (const auto& tr : traces) {
    ms.push_back(tr.m);
    ds.push_back(tr.diff_norm);
  }
  plot.add_series("diff", ms, ds);
  fs::path spath = fs::path(out_dir) / "picard.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  res.checks.push_back(
      {"contraction_10x", contracting, "per-iteration ratio <= 0.1"});
  return res;
}

SubResult cmd_appendix(const json& cfg, const std::string& out_dir,
                       unsigned long long seed) {
  int theta_samples = jint(cfg, "appendix", "theta_samples");
  if (theta_samples < 1)
    throw std::invalid_argument("config: appendix.theta_samples must be >= 1");
  InterpOptions opts;
  opts.eps = jrat(cfg, "appendix", "eps");
  opts.endpoint_samples = jint(cfg, "appendix", "endpoint_samples");
  opts.seed = static_cast<unsigned long>(seed);
  std::vector<Rat> thetas;
  for (int j = 1; j <= theta_samples; ++j)
    thetas.push_back(frac(j, theta_samples + 1));
  auto report = appendix_interp_verify(thetas, opts);

  SubResult res;
  Csv csv;
  csv.columns = {"family", "condition", "theta"};
  for (const auto& v : report.violations)
    csv.add_row({v.family, v.condition, rat_str(v.theta)});
  fs::path cpath = fs::path(out_dir) / "appendix_violations.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  Csv summary;
  summary.columns = {"points_checked", "violations"};
  summary.add_row({std::to_string(report.points_checked),
                   std::to_string(report.violations.size())});
  fs::path upath = fs::path(out_dir) / "appendix_summary.csv";
  summary.write(upath.string());
  res.outputs.push_back(upath.string());

  SvgPlot plot;
  plot.log_x = plot.log_y = false;
  plot.title = "interpolation closure sweep";
  plot.x_label = "theta";
  plot.y_label = "violations";
  std::vector<double> xs, ys;
  for (const auto& th : thetas) {
    xs.push_back(to_double(th));
    ys.push_back(0.0);
  }
  for (const auto& v : report.violations) {
    xs.push_back(to_double(v.theta));
    ys.push_back(1.0);
  }
  plot.add_series("violations per theta", xs, ys);
  fs::path spath = fs::path(out_dir) / "appendix.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());

  res.checks.push_back({"closure_holds", report.violations.empty(),
                        std::to_string(report.points_checked) +
                            " points checked"});
  return res;
}

SubResult cmd_verify(const std::string& out_dir, unsigned long long seed) {
  auto results = acceptance_checks(seed);
  SubResult res;
  Csv csv;
  csv.columns = {"criterion", "name", "pass", "detail"};
  std::vector<double> idx, passes;
  for (size_t i = 0; i < results.size(); ++i) {
    csv.add_row({std::to_string(i + 1), results[i].name,
                 results[i].pass ? "1" : "0", results[i].detail});
    idx.push_back(double(i + 1));
    passes.push_back(results[i].pass ? 1.0 : 0.0);
    res.checks.push_back(results[i]);
  }
  fs::path cpath = fs::path(out_dir) / "verify.csv";
  csv.write(cpath.string());
  res.outputs.push_back(cpath.string());

  SvgPlot plot;
  plot.log_x = plot.log_y = false;
  plot.title = "acceptance criteria";
  plot.x_label = "criterion";
  plot.y_label = "pass";
  plot.add_series("verdicts", idx, passes);
  fs::path spath = fs::path(out_dir) / "verify.svg";
  plot.write(spath.string());
  res.outputs.push_back(spath.string());
  return res;
}
}  // namespace

int run_subcommand(const std::string& name, const RunOptions& opts,
                   std::string& diagnostics) {
  try {
    if (opts.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    json cfg = load_config(opts);
    fs::create_directories(opts.out_dir);

    SubResult res;
    if (name == "region") res = cmd_region(cfg, opts.out_dir);
    else if (name == "decay") res = cmd_decay(cfg, opts.out_dir);
    else if (name == "homog") res = cmd_homog(cfg, opts.out_dir);
    else if (name == "inhomog") res = cmd_inhomog(cfg, opts.out_dir);
    else if (name == "necessity") res = cmd_necessity(cfg, opts.out_dir);
    else if (name == "solve") res = cmd_solve(cfg, opts.out_dir);
    else if (name == "picard") res = cmd_picard(cfg, opts.out_dir);
    else if (name == "appendix") res = cmd_appendix(cfg, opts.out_dir, opts.seed);
    else if (name == "verify") res = cmd_verify(opts.out_dir, opts.seed);
    else throw std::invalid_argument("unknown subcommand '" + name + "'");

    json entry;
    entry["subcommand"] = name;
    entry["artifact_version"] = "1.0.0";
    entry["timestamp"] = timestamp_utc();
    entry["jobs"] = opts.jobs;
    entry["seed"] = opts.seed;
    entry["config"] = cfg;
    entry["outputs"] = res.outputs;
    json checks = json::array();
    std::ostringstream diag;
    for (const auto& c : res.checks) {
      checks.push_back({{"name", c.name}, {"pass", c.pass},
                        {"detail", c.detail}});
      diag << c.name << ": " << (c.pass ? "pass" : "FAIL");
      if (!c.detail.empty()) diag << " (" << c.detail << ")";
      diag << "\n";
    }
    entry["checks"] = checks;
    manifest_append(opts.out_dir, entry);
    diagnostics = diag.str();
    return res.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    diagnostics = e.what();
    return 2;  // validation / execution error, as opposed to a failed check
  }
}

std::string default_config_json() {
  return R"({
  "exponents": {
    "inv_q": "81/400", "inv_r": "269/600", "inv_qt": "119/200",
    "inv_rt": "27/100", "gamma": "1/4", "gamma_t": "1/2", "sigma": "0"
  },
  "region": { "gamma": "3/10", "gamma_t": "3/10" },
  "decay": {
    "t_min": 10, "t_max": 1500,
    "sets": [
      { "inv_q": "1/6", "inv_p_prime": "5/6", "gamma": "0", "gamma_t": "0" },
      { "inv_q": "1/2", "inv_p_prime": "1/2", "gamma": "3/10", "gamma_t": "3/10" },
      { "inv_q": "1/3", "inv_p_prime": "2/3", "gamma": "3/10", "gamma_t": "3/10" }
    ]
  },
  "homog": {
    "inv_q": "3/10", "inv_r": "2/5", "gamma": "3/10", "sigma": "0",
    "t_max": 200, "time_samples": 40
  },
  "inhomog": {
    "box_length": 32, "n": 64, "duhamel_steps": 32, "t_max": 4,
    "time_samples": 16, "delta": 2
  },
  "necessity": {
    "N_list": [8, 16, 32, 64, 128, 256],
    "R_list": [64, 128, 256, 512, 1024],
    "n2_cases": [
      { "inv_q": "1/10", "inv_r": "1/2", "gamma": "0" },
      { "inv_q": "0", "inv_r": "1/2", "gamma": "1/10" }
    ],
    "n5_violating": {
      "inv_q": "1/4", "inv_r": "149/300", "inv_qt": "23/40",
      "inv_rt": "23/150", "gamma": "3/10", "gamma_t": "3/10"
    }
  },
  "solve": {
    "alpha": 1.5, "lambda": 1, "eps": 1.0, "box_length": 16, "n": 64,
    "dt": 0.03125, "t_final": 1.0, "cadence": 8,
    "amplitude": 0.5, "width": 1.0
  },
  "picard": {
    "alpha": 1.5, "lambda": 1, "eps": 1.0, "box_length": 16, "n": 32,
    "dt": 0.015625, "t_final": 0.25, "cadence": 4, "m_max": 4,
    "amplitude": 0.01, "width": 1.0
  },
  "appendix": { "eps": "1/100", "theta_samples": 100, "endpoint_samples": 50 }
}
)";
}

namespace {
std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

std::vector<CheckResult> acceptance_checks(unsigned long long seed) {
  std::vector<CheckResult> out;
  auto timed = [&out](const std::string& name, double budget_s, auto&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    bool in_budget = secs <= budget_s;
    if (!detail.empty()) detail += "; ";
    detail += fmt_num(secs) + "s of " + fmt_num(budget_s) + "s budget";
    out.push_back({name, pass && in_budget, detail});
  };

  // 1. Admissibility implies the necessary conditions on a >= 1e5 grid.
  timed("implication_sweep", 30.0, [](std::string& d) {
    const std::array<Rat, 4> gs = {frac(1, 10), frac(1, 5), frac(3, 10),
                                   frac(2, 5)};
    long total = 0, members = 0, exceptions = 0;
    for (const Rat& g : gs)
      for (const Rat& gt : gs)
        for (int i = 1; i <= 15; ++i)
          for (int j = 1; j <= 15; ++j)
            for (int k = 0; k <= 30; ++k) {
              ExponentConfig c;
              c.inv_r = frac(i, 30);
              c.inv_rt = frac(j, 30);
              c.inv_q = frac(k, 30);
              c.gamma = g;
              c.gamma_t = gt;
              // Solve 1/qt from the scaling identity when it lands in [0, 1];
              // otherwise keep an off-scaling grid point.
              Rat iqt = frac(3, 2) * (1 - c.inv_r - c.inv_rt) + (g + gt) / 2 -
                        c.inv_q;
              if (iqt < 0 || iqt > 1) iqt = frac(1, 2);
              c.inv_qt = iqt;
              ++total;
              if (inhomogeneous_admissible(c).membership.is_member()) {
                ++members;
                if (!necessary_conditions(c).is_member()) ++exceptions;
              }
            }
    d = std::to_string(total) + " configs, " + std::to_string(members) +
        " admissible, " + std::to_string(exceptions) + " exceptions";
    return total >= 100000 && members > 0 && exceptions == 0;
  });

  // 2. Perturbed localization exponents are exactly (2/100, -1/100, -1/100).
  timed("perturbation_betas", 1.0, [seed](std::string& d) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> half(1, 29);
    std::uniform_int_distribution<int> box(2, 58);
    int found = 0;
    bool ok = true;
    while (found < 100) {
      ExponentConfig c;
      c.inv_r = frac(half(rng), 60);
      c.inv_rt = frac(half(rng), 60);
      c.gamma = frac(half(rng), 60);
      c.gamma_t = frac(half(rng), 60);
      c.inv_q = frac(box(rng), 60);
      Rat iqt = frac(3, 2) * (1 - c.inv_r - c.inv_rt) +
                (c.gamma + c.gamma_t) / 2 - c.inv_q;
      if (iqt < frac(1, 50) || iqt > 1 - frac(1, 50)) continue;
      c.inv_qt = iqt;
      ++found;
      auto p = perturb_exponents(c, frac(1, 100));
      if (!(p.both_down.beta == frac(2, 100) &&
            p.down_up.beta == frac(-1, 100) &&
            p.up_down.beta == frac(-1, 100)))
        ok = false;
    }
    d = "100 scaling-exact configs, eps0 = 1/100";
    return ok;
  });

  // 3. Default well-posedness tuple + feasibility across the alpha range.
  timed("wellposedness_exponents", 5.0, [](std::string& d) {
    auto wp =
        wellposedness_exponents(frac(3, 2), frac(1, 100), frac(1, 4),
                                frac(1, 2));
    bool tuple_ok = wp.inv_q0 == frac(81, 400) &&
                    wp.inv_r0 == frac(269, 600) &&
                    wp.inv_qt0 == frac(119, 200) &&
                    wp.inv_rt0 == frac(27, 100);
    ExponentConfig c;
    c.inv_q = wp.inv_q0;
    c.inv_r = wp.inv_r0;
    c.inv_qt = wp.inv_qt0;
    c.inv_rt = wp.inv_rt0;
    c.gamma = wp.gamma0;
    c.gamma_t = wp.gammat0;
    auto adm = inhomogeneous_admissible(c);
    bool lower =
        adm.membership.is_member() && adm.branch == InhomBranch::Lower;
    bool c31 = false, c32 = false;
    for (const auto& cr : adm.membership.conditions) {
      if (cr.name == "(main_cond_31)") c31 = cr.ok();
      if (cr.name == "(main_cond_32)") c32 = cr.ok();
    }
    bool search_ok = true;
    for (const Rat& a : {frac(3, 2), frac(8, 5), frac(17, 10), frac(9, 5),
                         frac(547, 300)})
      if (!wellposedness_search(a)) search_ok = false;
    d = std::string("tuple ") + (tuple_ok ? "exact" : "MISMATCH") +
        ", branch " + (lower ? "lower" : "other");
    return tuple_ok && lower && c31 && c32 && search_ok;
  });

  // 4. Interpolation-closure sweep has zero violations for both families.
  timed("interpolation_closure", 10.0, [seed](std::string& d) {
    std::vector<Rat> thetas;
    for (int j = 1; j <= 100; ++j) thetas.push_back(frac(j, 101));
    InterpOptions o;
    o.eps = frac(1, 100);
    o.endpoint_samples = 50;
    o.seed = static_cast<unsigned long>(seed);
    auto rep = appendix_interp_verify(thetas, o);
    d = std::to_string(rep.points_checked) + " points, " +
        std::to_string(rep.violations.size()) + " violations";
    return rep.violations.empty();
  });

  // 5. Weighted decay slopes for the three example exponent sets.
  timed("weighted_decay_rates", 30.0, [](std::string& d) {
    Gaussian g(1.0, 1.0);
    std::vector<double> times;
    for (double t = 10; t <= 1000; t *= 2) times.push_back(t);
    struct Set {
      Rat iq, ipp, ga, gt;
    };
    const Set sets[3] = {
        {frac(1, 6), frac(5, 6), frac(0, 1), frac(0, 1)},
        {frac(1, 2), frac(1, 2), frac(3, 10), frac(3, 10)},
        {frac(1, 3), frac(2, 3), frac(3, 10), frac(3, 10)}};
    bool ok = true;
    std::string parts;
    for (const auto& s : sets) {
      auto ex = decay_rate_fit(g, s.iq, s.ipp, s.ga, s.gt, times);
      ok = ok && std::abs(ex.fitted_slope - ex.predicted_slope) <= 0.02;
      if (!parts.empty()) parts += ", ";
      parts += fmt_num(ex.fitted_slope);
    }
    d = "fitted slopes " + parts;
    return ok;
  });

  // 6. Unweighted L^6 decay slope is the classical -1.
  timed("classical_decay_anchor", 10.0, [](std::string& d) {
    Gaussian g(1.0, 1.0);
    std::vector<double> times;
    for (double t = 10; t <= 1000; t *= 2) times.push_back(t);
    auto ex = decay_rate_fit(g, frac(1, 6), frac(5, 6), frac(0, 1),
                             frac(0, 1), times);
    d = "fitted slope " + fmt_num(ex.fitted_slope);
    return std::abs(ex.fitted_slope + 1.0) <= 0.02;
  });

  // 7. Annulus plateau decay + time-decay necessity exponents.
  timed("annulus_necessity", 120.0, [](std::string& d) {
    std::vector<double> ts, amps;
    for (double t = 32; t <= 512; t *= 2) {
      ts.push_back(t);
      amps.push_back(std::abs(ttstar_annulus(t, 3 * t)));
    }
    double slope = fit_loglog(ts, amps).slope;
    std::vector<double> Ns = {8, 16, 32, 64, 128, 256};
    auto grow = necessity_n2_scan(frac(1, 10), frac(1, 2), frac(0, 1), Ns);
    auto decay = necessity_n2_scan(frac(0, 1), frac(1, 2), frac(1, 10), Ns);
    bool fits =
        std::abs(grow.fitted_exponent - grow.predicted_exponent) <= 0.03 &&
        std::abs(decay.fitted_exponent - decay.predicted_exponent) <= 0.03;
    d = "plateau slope " + fmt_num(slope) + ", scan exponents " +
        fmt_num(grow.fitted_exponent) + " / " +
        fmt_num(decay.fitted_exponent);
    return std::abs(slope + 1.5) <= 0.05 && fits &&
           grow.necessity_demonstrated && !decay.necessity_demonstrated;
  });

  // 8. Chirped-ball lower-bound constant + scaling necessity exponents.
  timed("chirped_ball_necessity", 300.0, [](std::string& d) {
    double c_min = 1e300;
    for (double R : {8.0, 16.0, 32.0}) {
      double amp = std::abs(ttstar_chirped(R, 4.5, {3 * R, 0, 0}));
      c_min = std::min(c_min, amp * R * R * R * R);
    }
    bool const_ok = c_min >= 1.0 / 32.0 && c_min <= 0.5;
    std::vector<double> Rs = {64, 128, 256, 512, 1024};
    ExponentConfig bad;
    bad.inv_q = frac(1, 4);
    bad.inv_r = frac(149, 300);
    bad.inv_qt = frac(23, 40);
    bad.inv_rt = frac(23, 150);
    bad.gamma = frac(3, 10);
    bad.gamma_t = frac(3, 10);
    ExponentConfig good;
    good.inv_q = frac(81, 400);
    good.inv_r = frac(269, 600);
    good.inv_qt = frac(119, 200);
    good.inv_rt = frac(27, 100);
    good.gamma = frac(1, 4);
    good.gamma_t = frac(1, 2);
    auto grow = necessity_n5_scan(bad, Rs);
    auto bounded = necessity_n5_scan(good, Rs);
    bool fits =
        std::abs(grow.fitted_exponent - grow.predicted_exponent) <= 0.05 &&
        std::abs(bounded.fitted_exponent - bounded.predicted_exponent) <=
            0.05;
    d = "measured constant " + fmt_num(c_min) + " vs [1/32, 1/2], scan fits " +
        (fits ? "ok" : "off");
    return const_ok && fits;
  });

  // 9. Stationary-phase remainder order and the reference critical point.
  // The remainder order is measured on a nondegenerate phase whose critical
  // point sits well inside the interval; the chirp phase's near-endpoint
  // critical point pushes its asymptotic regime beyond this N range.
  timed("stationary_phase", 30.0, [](std::string& d) {
    StationaryPhaseProblem p;
    p.a = 0;
    p.b = 1;
    p.phase = [](double s) { return 2 * (s - 0.5) * (s - 0.5); };
    p.dphase = [](double s) { return 4 * (s - 0.5); };
    p.d2phase = [](double) { return 4.0; };
    p.amplitude = [](double s) { return std::pow(2.0 - s, -1.5); };
    std::vector<double> Ns, rems;
    for (double N = 16; N <= 1024; N *= 2) {
      Ns.push_back(N);
      rems.push_back(stationary_phase_eval(p, N).remainder);
    }
    double slope = fit_loglog(Ns, rems).slope;
    auto ref = stationary_phase_eval(chirp_problem(4.0, 1.0), 4096.0);
    bool s_ok = std::abs(ref.s_star - 0.01575) <= 1e-4 &&
                ref.s_star >= 0.01 && ref.s_star <= 1.0 / 9.0;
    d = "remainder slope " + fmt_num(slope) + ", s_star " +
        fmt_num(ref.s_star);
    return slope <= -0.9 && s_ok;
  });

  // 10. Solver: mass conservation, Picard contraction, rescaling invariance.
  timed("solver_suite", 180.0, [](std::string& d) {
    EquationParams ep;
    ep.alpha = 1.5;
    ep.lambda = 1;
    ep.eps = 1.0;
    SolverConfig sc;
    sc.box_length = 16;
    sc.n = 128;
    sc.dt = 1.0 / 32;
    sc.t_final = 1.0;
    sc.cadence = 8;
    auto u0 = Field3D::from_gaussian(16, 128, Gaussian(1.0, 0.5));
    auto traj = splitstep_evolve(u0, ep, sc);
    double mass0 = traj.snapshots.front().l2_norm();
    double drift = 0;
    for (const auto& s : traj.snapshots)
      drift = std::max(drift, std::abs(s.l2_norm() / mass0 - 1.0));

    SolverConfig pc;
    pc.box_length = 16;
    pc.n = 32;
    pc.dt = 1.0 / 64;
    pc.t_final = 0.25;
    pc.cadence = 4;
    auto small = Field3D::from_gaussian(16, 32, Gaussian(1.0, 0.01));
    auto traces = picard_iterate(small, ep, 0.25, 4, pc);
    bool contracting = true;
    for (const auto& tr : traces)
      if (tr.m >= 2 && tr.ratio > 0.1) contracting = false;

    SolverConfig rc = pc;
    auto rtraj = splitstep_evolve(small, ep, rc);
    bool h1_ok = true;
    for (double delta : {2.0, 1.7}) {
      auto scaled = rescale_solution(rtraj, delta);
      double a = h1_norm(rtraj.snapshots.back());
      double b = h1_norm(scaled.snapshots.back());
      if (std::abs(b / a - 1.0) > 1e-6) h1_ok = false;
    }
    d = "mass drift " + fmt_num(drift) + ", contraction " +
        (contracting ? "ok" : "FAIL") + ", H1 rescale " +
        (h1_ok ? "ok" : "FAIL");
    return drift <= 1e-9 && contracting && h1_ok;
  });

  // 11. Determinism: repeated runs emit byte-identical CSV artifacts.
  timed("deterministic_artifacts", 1.0, [seed](std::string& d) {
    fs::path base = fs::temp_directory_path();
    fs::path dirs[2] = {base / "wsl_det_a", base / "wsl_det_b"};
    bool ran = true;
    for (const auto& dir : dirs) {
      fs::remove_all(dir);
      RunOptions o;
      o.out_dir = dir.string();
      o.seed = seed;
      std::string diag;
      if (run_subcommand("region", o, diag) != 0) ran = false;
      if (run_subcommand("decay", o, diag) != 0) ran = false;
    }
    bool identical = true;
    for (const char* f : {"region_vertices.csv", "region_lines.csv",
                          "region_membership.csv", "decay.csv"})
      if (read_bytes(dirs[0] / f) != read_bytes(dirs[1] / f) ||
          read_bytes(dirs[0] / f).empty())
        identical = false;
    for (const auto& dir : dirs) fs::remove_all(dir);
    d = identical ? "4 CSV artifacts byte-identical across reruns"
                  : "artifact mismatch";
    return ran && identical;
  });

  return out;
}

}  // namespace wsl
