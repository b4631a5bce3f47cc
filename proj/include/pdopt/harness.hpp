#ifndef PDOPT_HARNESS_HPP
#define PDOPT_HARNESS_HPP

#include <iosfwd>
#include <map>
#include <string>

#include "pdopt/problems.hpp"
#include "pdopt/solvers.hpp"

namespace pdopt {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// libsvm text format: "label idx:val idx:val ..." with 1-based, strictly
// increasing indices. Labels are coerced to +/-1 (positive values -> +1).
Dataset parse_libsvm(std::istream& in);
Dataset parse_libsvm(const std::string& path);
void write_libsvm(const Dataset& d, std::ostream& out);
void write_libsvm(const Dataset& d, const std::string& path);

// Plain-text config: [problem] / [solver] (repeatable) / [run] sections of
// key = value lines.
struct SolverSpec {
  std::string algorithm;  // asgard | asgard_restart | asgard_dl | chambolle_pock
  std::map<std::string, std::string> params;
};

struct RunConfig {
  std::string problem_builder;
  std::map<std::string, std::string> problem_params;
  std::vector<SolverSpec> solvers;
  long budget = 1000;
  double wall_limit_s = 0.0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_file(const std::string& path);

ProblemInstance build_problem(const RunConfig& cfg);

struct RunEntry {
  std::string solver;
  std::string trace_path;
  bool ok = false;
  std::string error;
  TraceRecord final_record;
};

struct CertificateEntry {
  std::string name;
  std::string status;  // PASS | FAIL | skipped: ...
  double worst_slack = 0.0;
  long checks = 0;
};

struct CertificateReport {
  std::vector<CertificateEntry> entries;
  bool any_failed = false;
};

struct RunReport {
  std::vector<RunEntry> entries;
  // filled when the instance carries a reference oracle and an asgard_dl
  // solver is configured
  std::vector<CertificateEntry> certificates;
  std::string report_path;
  bool any_failed = false;
};

// Builds the problem, runs every configured solver under the shared budget,
// writes one CSV per solver plus report.txt in the output directory.
RunReport run_benchmark(const RunConfig& cfg);

// Runs the double-loop solver and evaluates the outer-boundary bound
// certificates plus the optimality-estimate checks against the instance's
// reference; reports a skip status when no reference oracle is configured.
CertificateReport certify(const RunConfig& cfg);

void write_trace_csv(const std::string& path, const Trace& trace, bool has_reference);

std::vector<std::string> list_problem_builders();
std::vector<std::string> list_solver_algorithms();

}  // namespace pdopt

#endif  // PDOPT_HARNESS_HPP
