#include "temple/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "temple/errors.hpp"
#include "temple/io.hpp"

namespace temple {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : j.items()) {
    if (!allowed.contains(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

const json& required(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double number(const json& j, const std::string& key, const std::string& where) {
  const json& v = required(j, key, where);
  if (!v.is_number()) throw ValidationError(where + ": key '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(where + ": key '" + key + "' must be finite");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ValidationError("key '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ValidationError("key '" + key + "' must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ValidationError("key '" + key + "' must be true or false");
  return v.get<bool>();
}

InitialData parse_initial_data(const json& j) {
  const std::string where = "initial_data";
  if (!j.is_object()) throw ValidationError("key 'initial_data' must be an object");
  const json& type = required(j, "type", where);
  if (!type.is_string()) throw ValidationError("initial_data: key 'type' must be a string");
  const auto t = type.get<std::string>();
  if (t == "riemann") {
    reject_unknown(j, {"type", "left", "right", "x0"}, where);
    return RiemannData{number(j, "left", where), number(j, "right", where), number(j, "x0", where)};
  }
  if (t == "piecewise") {
    reject_unknown(j, {"type", "breaks", "values"}, where);
    return PiecewiseData{number_list(required(j, "breaks", where), "initial_data.breaks"),
                         number_list(required(j, "values", where), "initial_data.values")};
  }
  if (t == "sine") {
    reject_unknown(j, {"type", "mean", "amp", "period"}, where);
    return SineData{number(j, "mean", where), number(j, "amp", where), number(j, "period", where)};
  }
  throw ValidationError("initial_data: unknown type '" + t + "' (riemann, piecewise, sine)");
}

std::string fmt_time(double t) {
  std::ostringstream s;
  s.precision(6);
  s << t;
  return s.str();
}

std::string csv(const auto& writer) {
  std::ostringstream s;
  writer(s);
  return s.str();
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  reject_unknown(j,
                 {"flux", "interval", "initial_data", "span", "h", "cfl", "T", "output_dir", "compare",
                  "entropy_audit", "entropy_centers", "snapshot_times", "K"},
                 "config");
  RunConfig c;
  const json& flux = required(j, "flux", "config");
  if (flux.is_string()) {
    c.flux = flux.get<std::string>();
    const auto& names = catalog_names();
    if (std::find(names.begin(), names.end(), std::get<std::string>(c.flux)) == names.end()) {
      throw ValidationError("key 'flux': unknown catalog name '" + std::get<std::string>(c.flux) + "'");
    }
  } else if (flux.is_array()) {
    c.flux = number_list(flux, "flux");
    if (std::get<std::vector<double>>(c.flux).empty()) throw ValidationError("key 'flux': empty coefficient list");
  } else {
    throw ValidationError("key 'flux' must be a catalog name or a coefficient list");
  }

  const auto interval = number_list(required(j, "interval", "config"), "interval");
  if (interval.size() != 2 || !(interval[0] < interval[1])) {
    throw ValidationError("key 'interval' must be [a, b] with a < b");
  }
  c.interval = {interval[0], interval[1]};

  c.initial_data = parse_initial_data(required(j, "initial_data", "config"));

  const auto span = number_list(required(j, "span", "config"), "span");
  if (span.size() != 2 || !(span[0] < span[1])) throw ValidationError("key 'span' must be [x_min, x_max]");
  c.x_min = span[0];
  c.x_max = span[1];

  c.h = number(j, "h", "config");
  if (!(c.h > 0.0)) throw ValidationError("key 'h' must be positive");
  const double cells = (c.x_max - c.x_min) / c.h;
  if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells) || std::round(cells) < 2) {
    throw ValidationError("key 'h' must divide the span into at least two cells");
  }

  c.T = number(j, "T", "config");
  if (!(c.T > 0.0)) throw ValidationError("key 'T' must be positive");
  if (j.contains("cfl")) {
    c.cfl = number(j, "cfl", "config");
    if (!(c.cfl > 0.0 && c.cfl < 1.0)) throw ValidationError("key 'cfl' must lie in (0, 1)");
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ValidationError("key 'output_dir' must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("compare")) c.compare = boolean(j["compare"], "compare");
  if (j.contains("entropy_audit")) c.entropy_audit = boolean(j["entropy_audit"], "entropy_audit");
  if (j.contains("entropy_centers")) c.entropy_centers = number_list(j["entropy_centers"], "entropy_centers");
  if (j.contains("snapshot_times")) {
    c.snapshot_times = number_list(j["snapshot_times"], "snapshot_times");
    for (double t : c.snapshot_times) {
      if (!(t > 0.0 && t <= c.T)) throw ValidationError("key 'snapshot_times': times must lie in (0, T]");
    }
  }
  if (j.contains("K")) c.K = number(j, "K", "config");

  const Interval range = c.initial_data.range();
  if (!c.interval.contains(range.lo, 1e-12) || !c.interval.contains(range.hi, 1e-12)) {
    throw ValidationError("key 'initial_data': values leave the interval [a, b]");
  }
  for (double x : c.initial_data.breakpoints()) {
    if (x < c.x_min || x > c.x_max) throw ValidationError("key 'initial_data': discontinuity outside the span");
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto upto = text.substr(0, byte > 0 ? byte - 1 : 0);
    const long line = 1 + std::count(upto.begin(), upto.end(), '\n');
    const auto nl = upto.rfind('\n');
    const long col = static_cast<long>(upto.size() - (nl == std::string::npos ? 0 : nl + 1)) + 1;
    throw ValidationError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
  return parse_config(j);
}

FluxSpec make_flux(const RunConfig& config) {
  FluxSpec flux = std::holds_alternative<std::string>(config.flux)
                      ? catalog_flux(std::get<std::string>(config.flux), config.interval)
                      : polynomial_flux(std::get<std::vector<double>>(config.flux), config.interval);
  validate_flux(flux);
  return flux;
}

Stage parse_stage(const std::string& name) {
  if (name == "transform-info") return Stage::transform_info;
  if (name == "solve") return Stage::solve;
  if (name == "recover") return Stage::recover;
  if (name == "compare") return Stage::compare;
  if (name == "audit") return Stage::audit;
  throw ValidationError("unknown subcommand '" + name + "'");
}

std::string stage_name(Stage stage) {
  switch (stage) {
    case Stage::transform_info: return "transform-info";
    case Stage::solve: return "solve";
    case Stage::recover: return "recover";
    case Stage::compare: return "compare";
    case Stage::audit: return "audit";
  }
  return "?";
}

ScalarField recovered_field(const History& history, const GammaField& gamma, const TransformSpec& spec, double t,
                            const Grid& grid, long* flags) {
  std::vector<double> ys(static_cast<std::size_t>(grid.n_cells));
  for (int j = 0; j < grid.n_cells; ++j) ys[j] = grid.center(j);
  Recovered rec = recover_solution(history, gamma, spec, t, ys);
  if (flags) *flags += rec.flagged;
  return {grid, t, std::move(rec.values)};
}

RunResult run_pipeline(const RunConfig& config, Stage stage) {
  const auto started = std::chrono::steady_clock::now();
  RunResult r;
  r.stage = stage;
  r.config = config;

  const FluxSpec flux = make_flux(config);
  r.transform = make_transform(flux, config.K);
  const TransformSpec& spec = *r.transform;
  const Velocity vel = build_velocity(spec);
  const InitialData sigma0 = config.initial_data.mapped(spec.orientation(), spec.L());
  const Grid grid = make_grid(config.x_min, config.x_max, config.h);
  const CellField init = init_cells(sigma0, grid);
  r.region = build_region(init);
  r.sup_lambda2 = sup_lambda2(r.region, vel.G_prime);
  if (stage == Stage::transform_info) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
  }

  r.snapshot_times = config.snapshot_times.empty() ? std::vector<double>{config.T} : config.snapshot_times;
  std::sort(r.snapshot_times.begin(), r.snapshot_times.end());
  EvolveOptions opts;
  opts.cfl_fraction = config.cfl;
  opts.stop_times = r.snapshot_times;
  r.history = evolve(init, config.T, vel, opts);
  const History& hist = *r.history;

  const double region_tol = 1e-12 * r.region.M;
  double worst_region = 0.0;
  double prev_tv = hist.tv0;
  for (const StepDiagnostics& d : hist.diagnostics) {
    worst_region = std::max(worst_region, d.max_region_violation);
    if (d.tv > prev_tv + 1e-12 * std::max(1.0, hist.tv0)) {
      r.violations.push_back("tv increased at t=" + fmt_time(d.time));
    }
    prev_tv = d.tv;
  }
  if (worst_region > region_tol) r.violations.push_back("invariant region breached by " + std::to_string(worst_region));

  if (stage == Stage::solve) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return r;
  }

  r.gamma = build_gamma(hist, vel.G);
  for (double t : r.snapshot_times) {
    const Interval g = gamma_range(*r.gamma, t);
    r.windows.push_back({std::max(config.x_min, g.lo), std::min(config.x_max, g.hi)});
    r.recovered.push_back(recovered_field(hist, *r.gamma, spec, t, grid, nullptr));
    // Cells outside the gamma range are clamped by design; only in-window
    // queries count as recovery flags.
    std::vector<double> ys;
    for (int j = 0; j < grid.n_cells; ++j) {
      const double y = grid.center(j);
      if (y >= r.windows.back().lo && y <= r.windows.back().hi) ys.push_back(y);
    }
    r.recovery_flags += recover_solution(hist, *r.gamma, spec, t, ys).flagged;
  }

  if (stage == Stage::compare || (stage == Stage::audit && config.compare)) {
    const ScalarField rho0 = scalar_init(config.initial_data, grid);
    const auto* riemann = std::get_if<RiemannData>(&config.initial_data.data());
    std::optional<ScalarField> evolved;
    for (std::size_t i = 0; i < r.snapshot_times.size(); ++i) {
      const double t = r.snapshot_times[i];
      std::optional<ScalarField> exact;
      if (riemann) {
        try {
          const RiemannData d = *riemann;
          exact = sample_field(grid, t, [&](double y) { return exact_riemann_convex(flux, d.left, d.right, y - d.x0, t); });
        } catch (const ValidationError&) {
          exact.reset();
        }
      }
      if (exact) {
        r.oracle.push_back(*exact);
        r.comparisons.push_back({t, "exact_riemann", r.windows[i], l1_distance(r.recovered[i], *exact, r.windows[i]).value});
      } else {
        ScalarField sf = scalar_evolve(flux, rho0, t, config.cfl);
        r.comparisons.push_back({t, "scalar_godunov", r.windows[i], l1_distance(r.recovered[i], sf, r.windows[i]).value});
        r.oracle.push_back(std::move(sf));
      }
    }
  }

  if (stage == Stage::audit || config.entropy_audit) {
    std::vector<double> centers = config.entropy_centers;
    if (centers.empty()) centers = {r.region.m, 0.5 * (r.region.m + r.region.M), r.region.M};
    const Interval check = spec.interval_tilde();
    for (double c : centers) {
      const ScalarEntropyPair scalar =
          quadratic_entropy(c, [&spec](double s) { return spec.g_prime(s); }, check.lo, check);
      const SystemEntropyPair sys = lift_entropy(scalar, vel.G);
      EntropySummary s{c, 0.0, discrete_entropy_residuals(hist, sys)};
      if (!s.per_step.empty()) s.max_residual = *std::max_element(s.per_step.begin(), s.per_step.end());
      if (s.max_residual > 1e-10) {
        r.violations.push_back("entropy residual " + std::to_string(s.max_residual) + " for center " + fmt_time(c));
      }
      r.entropy.push_back(std::move(s));
    }
  }

  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

nlohmann::json report_json(const RunResult& r) {
  json j;
  j["stage"] = stage_name(r.stage);
  const TransformSpec& spec = *r.transform;
  j["transform"] = {{"orientation", spec.orientation()},
                    {"L", spec.L()},
                    {"K", spec.K()},
                    {"K_bound", spec.K_bound()},
                    {"margin", spec.margin()},
                    {"interval_tilde", {spec.interval_tilde().lo, spec.interval_tilde().hi}},
                    {"flux", spec.flux().name}};
  j["region"] = {{"m", r.region.m}, {"M", r.region.M}};
  j["sup_lambda2"] = r.sup_lambda2;
  if (!r.history) {
    j["k"] = cfl_timestep(r.region, [&spec](double s) { return spec.G_prime(s); }, r.config.h, r.config.cfl);
    return j;
  }
  const History& h = *r.history;
  j["k"] = h.k;
  j["h"] = h.levels.front().grid.h;
  j["n_cells"] = h.levels.front().grid.n_cells;
  j["n_steps"] = h.diagnostics.size();
  std::vector<double> tv{h.tv0};
  double worst = 0.0;
  for (const auto& d : h.diagnostics) {
    tv.push_back(d.tv);
    worst = std::max(worst, d.max_region_violation);
  }
  j["tv"] = tv;
  j["max_region_violation"] = worst;
  j["snapshot_times"] = r.snapshot_times;
  if (r.gamma) j["recovery_flags"] = r.recovery_flags;
  if (!r.comparisons.empty()) {
    json cmp = json::array();
    for (const Comparison& c : r.comparisons) {
      cmp.push_back({{"time", c.time}, {"oracle", c.oracle}, {"window", {c.window.lo, c.window.hi}}, {"l1", c.l1}});
    }
    j["l1_vs_oracle"] = cmp;
  }
  if (!r.entropy.empty()) {
    json ent = json::array();
    for (const EntropySummary& e : r.entropy) ent.push_back({{"center", e.center}, {"max_residual", e.max_residual}});
    j["max_entropy_residual"] = ent;
  }
  j["violations"] = r.violations;
  return j;
}

nlohmann::json entropy_audit_json(const RunResult& r) {
  json j;
  j["entropies"] = json::array();
  for (const EntropySummary& e : r.entropy) {
    j["entropies"].push_back({{"center", e.center}, {"max_residual", e.max_residual}, {"per_step", e.per_step}});
  }
  return j;
}

std::string plot_script(const RunResult& r) {
  std::ostringstream s;
  s << "# gnuplot script\n";
  s << "set datafile separator ','\n";
  s << "set key outside\n";
  for (std::size_t i = 0; i < r.snapshot_times.size(); ++i) {
    const std::string t = fmt_time(r.snapshot_times[i]);
    s << "\nset title 'Temple state, t=" << t << "'\n";
    s << "set xlabel 'x'\n";
    s << "plot 'cells_t" << t << ".csv' using 1:2 with steps title 'eta', \\\n";
    s << "     'cells_t" << t << ".csv' using 1:4 with steps title 'p = v/eta'\n";
    s << "pause -1\n";
    if (r.gamma) {
      s << "\nset title 'Recovered rho, t=" << t << "'\n";
      s << "set xlabel 'y'\n";
      s << "plot 'rho_t" << t << ".csv' using 1:2 with steps title 'recovered'";
      if (i < r.oracle.size()) s << ", \\\n     'oracle_t" << t << ".csv' using 1:2 with lines title 'oracle'";
      s << "\npause -1\n";
    }
  }
  if (r.gamma) {
    s << "\nset title 'gamma(x, t)'\n";
    s << "set xlabel 'x'\nset ylabel 'gamma'\n";
    s << "plot 'gamma.csv' using 2:($1==" << fmt_time(r.snapshot_times.back()) << " ? $3 : 1/0) with lines title 'gamma(., T)', \\\n";
    s << "     'gamma.csv' using 2:($1==0 ? $3 : 1/0) with lines title 'identity'\n";
    s << "pause -1\n";
  }
  return s.str();
}

std::map<std::string, std::string> render_artifacts(const RunResult& r) {
  std::map<std::string, std::string> files;
  files["report.json"] = report_json(r).dump(2) + "\n";
  if (!r.history) return files;
  const History& h = *r.history;
  for (std::size_t i = 0; i < r.snapshot_times.size(); ++i) {
    const std::string t = fmt_time(r.snapshot_times[i]);
    const CellField& f = h.exactly_at(r.snapshot_times[i]);
    files["cells_t" + t + ".csv"] = csv([&](std::ostream& o) { io::write_cells_csv(o, f); });
    if (r.gamma) {
      const ScalarField& rec = r.recovered[i];
      const Interval w = r.windows[i];
      std::vector<double> ys;
      std::vector<double> rho;
      for (int j = 0; j < rec.grid.n_cells; ++j) {
        const double y = rec.grid.center(j);
        if (y < w.lo || y > w.hi) continue;
        ys.push_back(y);
        rho.push_back(rec.values[static_cast<std::size_t>(j)]);
      }
      files["rho_t" + t + ".csv"] = csv([&](std::ostream& o) { io::write_profile_csv(o, ys, rho); });
    }
    if (i < r.oracle.size()) {
      files["oracle_t" + t + ".csv"] = csv([&](std::ostream& o) { io::write_profile_csv(o, r.oracle[i]); });
    }
  }
  if (r.gamma) {
    std::vector<double> rows{0.0};
    rows.insert(rows.end(), r.snapshot_times.begin(), r.snapshot_times.end());
    files["gamma.csv"] = csv([&](std::ostream& o) { io::write_gamma_csv(o, *r.gamma, rows); });
  }
  if (!r.entropy.empty()) files["entropy_audit.json"] = entropy_audit_json(r).dump(2) + "\n";
  files["plot.gp"] = plot_script(r);
  return files;
}

void write_artifacts(const RunResult& r, const std::string& dir) {
  for (const auto& [name, content] : render_artifacts(r)) io::write_file(dir + "/" + name, content);
  io::write_file(dir + "/timing.json", json{{"seconds", r.seconds}}.dump(2) + "\n");
}

}  // namespace temple
