#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "pdopt/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolverFailure = 1;
constexpr int kExitConfigError = 2;

std::string resolve_out_dir(const std::string& cli_out, const std::string& config_out) {
  // BENCH_OUT_DIR overrides both the --out flag and the config value.
  if (const char* env = std::getenv("BENCH_OUT_DIR"); env && *env) return env;
  if (!cli_out.empty()) return cli_out;
  return config_out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  pdopt::RunConfig cfg = pdopt::parse_run_config_file(config_path);
  cfg.out_dir = resolve_out_dir(out_dir, cfg.out_dir);
  pdopt::RunReport report = pdopt::run_benchmark(cfg);
  for (const pdopt::RunEntry& e : report.entries) {
    if (e.ok)
      std::cout << e.solver << ": ok, trace " << e.trace_path << ", final k=" << e.final_record.k
                << " objective=" << e.final_record.objective_residual
                << " feasibility=" << e.final_record.feasibility << "\n";
    else
      std::cout << e.solver << ": FAILED (" << e.error << ")\n";
  }
  std::cout << "report: " << report.report_path << "\n";
  return report.any_failed ? kExitSolverFailure : kExitOk;
}

int cmd_certify(const std::string& config_path) {
  pdopt::RunConfig cfg = pdopt::parse_run_config_file(config_path);
  pdopt::CertificateReport report = pdopt::certify(cfg);
  for (const pdopt::CertificateEntry& e : report.entries) {
    std::cout << e.name << ": " << e.status;
    if (e.checks > 0)
      std::cout << " (checks=" << e.checks << ", worst_slack=" << e.worst_slack << ")";
    std::cout << "\n";
  }
  return report.any_failed ? kExitSolverFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pdopt benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_dir;

  CLI::App* run = app.add_subcommand("run", "run the configured solvers and write CSV traces");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");

  CLI::App* cert = app.add_subcommand("certify", "evaluate convergence-bound certificates");
  cert->add_option("--config", config_path, "config file")->required();

  CLI::App* lp = app.add_subcommand("list-problems", "list problem builders");
  CLI::App* ls = app.add_subcommand("list-solvers", "list solver algorithms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (cert->parsed()) return cmd_certify(config_path);
    if (lp->parsed()) {
      for (const std::string& s : pdopt::list_problem_builders()) std::cout << s << "\n";
      return kExitOk;
    }
    if (ls->parsed()) {
      for (const std::string& s : pdopt::list_solver_algorithms()) std::cout << s << "\n";
      return kExitOk;
    }
  } catch (const pdopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  return kExitOk;
}
