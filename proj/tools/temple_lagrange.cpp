// temple-lagrange: command-line front end for the transform -> solve -> recover pipeline.
//
//   temple-lagrange <transform-info|solve|recover|compare|audit> --config <path> [--out <dir>]
//
// Exit codes: 0 success, 2 invalid configuration, 3 property violation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "temple/errors.hpp"
#include "temple/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitViolation = 3;

void print_summary(const temple::RunResult& r) {
  const auto report = temple::report_json(r);
  if (r.stage == temple::Stage::transform_info) {
    std::cout << report.dump(2) << '\n';
    return;
  }
  const auto& t = report["transform"];
  std::cout << "orientation " << t["orientation"] << "  L " << t["L"] << "  K " << t["K"] << "  K_bound "
            << t["K_bound"] << '\n';
  std::cout << "Q = [" << r.region.m << ", " << r.region.M << "]  sup lambda2 " << r.sup_lambda2 << "  k "
            << report["k"] << "  steps " << report["n_steps"] << '\n';
  for (const auto& c : r.comparisons) {
    std::cout << "L1 vs " << c.oracle << " at t=" << c.time << ": " << c.l1 << '\n';
  }
  for (const auto& e : r.entropy) {
    std::cout << "entropy center " << e.center << ": max residual " << e.max_residual << '\n';
  }
  for (const auto& v : r.violations) std::cout << "VIOLATION: " << v << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian (weak diffeomorphism) solver for scalar conservation laws via a Temple system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  const std::pair<const char*, const char*> commands[] = {
      {"transform-info", "print the transform (orientation, L, K, Q) only"},
      {"solve", "solve the Temple system"},
      {"recover", "solve, build gamma and recover rho"},
      {"compare", "recover and compare with a scalar oracle"},
      {"audit", "recover and run the discrete entropy monitor"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (defaults to output_dir in the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const temple::Stage stage = temple::parse_stage(app.get_subcommands().front()->get_name());
    const temple::RunConfig config = temple::load_config(config_path);
    const temple::RunResult result = temple::run_pipeline(config, stage);
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
    temple::write_artifacts(result, dir);
    print_summary(result);
    return result.violations.empty() ? 0 : kExitViolation;
  } catch (const temple::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const temple::SchemeError& e) {
    std::cerr << "scheme error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const temple::PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
