#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "temple/entropy.hpp"
#include "temple/lagrange.hpp"
#include "temple/scalar_oracle.hpp"

namespace temple {

/// Flat JSON run configuration. Initial data and interval are in rho units;
/// entropy centers are sigma values (empty means {m, (m+M)/2, M}).
struct RunConfig {
  std::variant<std::string, std::vector<double>> flux;
  Interval interval;
  InitialData initial_data = RiemannData{1.0, 1.0, 0.0};
  double x_min = 0.0;
  double x_max = 1.0;
  double h = 0.0;
  double cfl = 0.9;
  double T = 0.0;
  std::string output_dir = "out";
  bool compare = false;
  bool entropy_audit = false;
  std::vector<double> entropy_centers;
  std::vector<double> snapshot_times;  // defaults to {T}
  std::optional<double> K;             // must be an admissible shift when given
};

/// Validates and converts a parsed config; unknown keys are rejected. Throws
/// ValidationError naming the offending key.
RunConfig parse_config(const nlohmann::json& j);

/// Reads and parses a config file; JSON syntax errors report line and column.
RunConfig load_config(const std::string& path);

FluxSpec make_flux(const RunConfig& config);

enum class Stage { transform_info, solve, recover, compare, audit };

Stage parse_stage(const std::string& name);
std::string stage_name(Stage stage);

struct Comparison {
  double time;
  std::string oracle;  // "exact_riemann" or "scalar_godunov"
  Interval window;
  double l1;
};

struct EntropySummary {
  double center;
  double max_residual;
  std::vector<double> per_step;
};

/// Everything a run produced. Optional parts are filled according to the stage.
struct RunResult {
  Stage stage = Stage::transform_info;
  RunConfig config;
  std::optional<TransformSpec> transform;
  RegionQ region;
  double sup_lambda2 = 0.0;
  std::optional<History> history;
  std::optional<GammaField> gamma;
  std::vector<double> snapshot_times;
  std::vector<ScalarField> recovered;  // rho per snapshot on the span grid
  std::vector<ScalarField> oracle;     // oracle rho per snapshot
  std::vector<Interval> windows;       // gamma range intersected with the span per snapshot
  std::vector<Comparison> comparisons;
  std::vector<EntropySummary> entropy;
  long recovery_flags = 0;
  std::vector<std::string> violations;
  double seconds = 0.0;
};

/// Runs the prefix of transform -> solve -> gamma -> recover -> compare/audit
/// selected by `stage`.
RunResult run_pipeline(const RunConfig& config, Stage stage);

/// report.json content (deterministic: no timing).
nlohmann::json report_json(const RunResult& result);

/// Entropy audit JSON (per-step max residual, per-entropy summary).
nlohmann::json entropy_audit_json(const RunResult& result);

/// gnuplot script plotting the emitted CSVs.
std::string plot_script(const RunResult& result);

/// File name -> content for every artifact of the run.
std::map<std::string, std::string> render_artifacts(const RunResult& result);

/// Writes render_artifacts() plus timing.json into `dir`.
void write_artifacts(const RunResult& result, const std::string& dir);

/// rho recovered at the cell centres of `grid` (cells outside the gamma range are
/// clamped and counted in the returned flag count).
ScalarField recovered_field(const History& history, const GammaField& gamma, const TransformSpec& spec, double t,
                            const Grid& grid, long* flags = nullptr);

}  // namespace temple
