#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pdopt/harness.hpp"
#include "pdopt/rng.hpp"

using namespace pdopt;

namespace {

std::string scratch_dir(const char* leaf) {
  auto p = std::filesystem::temp_directory_path() / "pdopt_tests" / leaf;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::vector<std::string> lines;
  std::string l;
  while (std::getline(in, l)) lines.push_back(l);
  return lines;
}

RunConfig config_from_string(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

}  // namespace

TEST_CASE("libsvm parsing") {
  SUBCASE("plain line") {
    std::istringstream in("+1 1:0.5 3:2\n");
    Dataset d = parse_libsvm(in);
    REQUIRE(d.n_samples() == 1);
    CHECK(d.labels[0] == 1);
    REQUIRE(d.rows[0].size() == 2);
    CHECK(d.rows[0][0] == std::pair<std::size_t, double>{0, 0.5});
    CHECK(d.rows[0][1] == std::pair<std::size_t, double>{2, 2.0});
    CHECK(d.n_features == 3);
  }
  SUBCASE("label-only line") {
    std::istringstream in("-1\n");
    Dataset d = parse_libsvm(in);
    REQUIRE(d.n_samples() == 1);
    CHECK(d.labels[0] == -1);
    CHECK(d.rows[0].empty());
  }
  SUBCASE("labels are coerced to the sign") {
    std::istringstream in("3 1:1\n0 1:1\n-2 1:1\n");
    Dataset d = parse_libsvm(in);
    CHECK(d.labels == std::vector<int>{1, -1, -1});
  }
  SUBCASE("unsorted indices rejected with the line number") {
    std::istringstream in("+1 1:1\n+1 3:1 2:1\n");
    try {
      parse_libsvm(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("malformed token rejected with the line number") {
    std::istringstream in("+1 1:0.5\n+1 nonsense\n");
    try {
      parse_libsvm(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("empty input rejected") {
    std::istringstream in("");
    CHECK_THROWS_AS(parse_libsvm(in), ParseError);
  }
  SUBCASE("round trip is the identity") {
    Rng rng(6);
    Dataset d;
    d.n_features = 8;
    for (int i = 0; i < 10; ++i) {
      std::vector<std::pair<std::size_t, double>> row;
      for (std::size_t j = 0; j < 8; ++j)
        if (rng.uniform() < 0.5) row.emplace_back(j, rng.gaussian());
      d.rows.push_back(row);
      d.labels.push_back(rng.uniform() < 0.5 ? -1 : 1);
    }
    std::ostringstream out;
    write_libsvm(d, out);
    std::istringstream in(out.str());
    Dataset back = parse_libsvm(in);
    CHECK(back.labels == d.labels);
    REQUIRE(back.n_samples() == d.n_samples());
    for (std::size_t i = 0; i < d.rows.size(); ++i) CHECK(back.rows[i] == d.rows[i]);
  }
}

TEST_CASE("run config parsing") {
  SUBCASE("full config") {
    RunConfig cfg = config_from_string(
        "# comment\n"
        "[problem]\n"
        "builder = degenerate_lp\n"
        "p = 10\n"
        "n = 200\n"
        "[solver]\n"
        "algorithm = asgard_dl\n"
        "omega = 1.2\n"
        "[solver]\n"
        "algorithm = chambolle_pock\n"
        "[run]\n"
        "budget = 500\n"
        "seed = 3\n"
        "out = traces\n");
    CHECK(cfg.problem_builder == "degenerate_lp");
    CHECK(cfg.problem_params.at("p") == "10");
    REQUIRE(cfg.solvers.size() == 2);
    CHECK(cfg.solvers[0].algorithm == "asgard_dl");
    CHECK(cfg.solvers[0].params.at("omega") == "1.2");
    CHECK(cfg.solvers[1].algorithm == "chambolle_pock");
    CHECK(cfg.budget == 500);
    CHECK(cfg.seed == 3);
    CHECK(cfg.out_dir == "traces");
  }
  SUBCASE("missing solver section") {
    CHECK_THROWS_AS(config_from_string("[problem]\nbuilder = degenerate_lp\n"), ConfigError);
  }
  SUBCASE("missing builder") {
    CHECK_THROWS_AS(config_from_string("[solver]\nalgorithm = asgard\n"), ConfigError);
  }
  SUBCASE("garbage line") {
    CHECK_THROWS_AS(config_from_string("[problem]\nbuilder degenerate_lp\n"), ConfigError);
  }
  SUBCASE("unknown builder fails at build time") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = nope\n[solver]\nalgorithm = asgard\n[run]\nbudget = 1\n");
    CHECK_THROWS_AS(build_problem(cfg), ConfigError);
  }
}

TEST_CASE("run_benchmark") {
  SUBCASE("zero budget still writes traces and a report") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = degenerate_lp\np = 4\nn = 6\n"
        "[solver]\nalgorithm = asgard_dl\n"
        "[run]\nbudget = 0\n");
    cfg.out_dir = scratch_dir("zero_budget");
    RunReport rep = run_benchmark(cfg);
    CHECK(!rep.any_failed);
    REQUIRE(rep.entries.size() == 1);
    auto lines = read_lines(rep.entries[0].trace_path);
    REQUIRE(lines.size() == 1);  // header only
    CHECK(lines[0] == "k,objective_residual,feasibility,beta,wall_ns");
    CHECK(std::filesystem::exists(rep.report_path));
  }
  SUBCASE("traces are identical across repeated invocations") {
    std::string text =
        "[problem]\nbuilder = sqrt_lasso\nn = 10\np = 20\nseed = 5\n"
        "[solver]\nalgorithm = asgard_dl\n"
        "[solver]\nalgorithm = chambolle_pock\n"
        "[run]\nbudget = 50\nseed = 5\n";
    RunConfig cfg1 = config_from_string(text);
    cfg1.out_dir = scratch_dir("det_a");
    RunConfig cfg2 = config_from_string(text);
    cfg2.out_dir = scratch_dir("det_b");
    RunReport r1 = run_benchmark(cfg1);
    RunReport r2 = run_benchmark(cfg2);
    REQUIRE(r1.entries.size() == r2.entries.size());
    for (std::size_t i = 0; i < r1.entries.size(); ++i) {
      auto a = read_lines(r1.entries[i].trace_path);
      auto b = read_lines(r2.entries[i].trace_path);
      REQUIRE(a.size() == b.size());
      for (std::size_t l = 0; l < a.size(); ++l) {
        // strip the wall_ns column: compare everything before the last comma
        std::string sa = a[l].substr(0, a[l].rfind(','));
        std::string sb = b[l].substr(0, b[l].rfind(','));
        CHECK(sa == sb);
      }
    }
  }
  SUBCASE("final metrics equal the last trace row exactly") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = degenerate_lp\np = 6\nn = 12\n"
        "[solver]\nalgorithm = asgard_dl\n"
        "[run]\nbudget = 40\n");
    cfg.out_dir = scratch_dir("final_row");
    RunReport rep = run_benchmark(cfg);
    REQUIRE(rep.entries.size() == 1);
    auto lines = read_lines(rep.entries[0].trace_path);
    REQUIRE(lines.size() == 41);
    char buf[160];
    const TraceRecord& f = rep.entries[0].final_record;
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g", f.k, f.objective_residual,
                  f.feasibility, f.beta);
    CHECK(lines.back().rfind(buf, 0) == 0);
  }
  SUBCASE("chambolle-pock emits an ergodic companion trace") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = sqrt_lasso\nn = 8\np = 12\nseed = 2\n"
        "[solver]\nalgorithm = chambolle_pock\n"
        "[run]\nbudget = 10\n");
    cfg.out_dir = scratch_dir("cp_traces");
    RunReport rep = run_benchmark(cfg);
    CHECK(std::filesystem::exists(
        std::filesystem::path(cfg.out_dir) / "chambolle_pock.csv"));
    CHECK(std::filesystem::exists(
        std::filesystem::path(cfg.out_dir) / "chambolle_pock_ergodic.csv"));
  }
  SUBCASE("a failing solver does not abort its siblings") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = sqrt_lasso\nn = 8\np = 12\nseed = 2\n"
        "[solver]\nalgorithm = chambolle_pock\nsigma = 1e9\ntau = 1e9\n"
        "[solver]\nalgorithm = asgard\n"
        "[run]\nbudget = 10\n");
    cfg.out_dir = scratch_dir("sibling");
    RunReport rep = run_benchmark(cfg);
    CHECK(rep.any_failed);
    REQUIRE(rep.entries.size() == 2);
    CHECK(!rep.entries[0].ok);
    CHECK(rep.entries[1].ok);
  }
}

TEST_CASE("certify") {
  SUBCASE("skips without a reference oracle") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = sqrt_lasso\nn = 8\np = 12\nseed = 2\n"
        "[solver]\nalgorithm = asgard_dl\n"
        "[run]\nbudget = 20\n");
    CertificateReport rep = certify(cfg);
    CHECK(!rep.any_failed);
    REQUIRE(!rep.entries.empty());
    CHECK(rep.entries[0].status.rfind("skipped", 0) == 0);
  }
  SUBCASE("constrained certificates pass on a tiny basis pursuit") {
    RunConfig cfg = config_from_string(
        "[problem]\nbuilder = basis_pursuit\nn = 6\np = 15\nseed = 11\noracle = lp_exact\n"
        "[solver]\nalgorithm = asgard_dl\n"
        "[run]\nbudget = 400\n");
    CertificateReport rep = certify(cfg);
    CHECK(!rep.any_failed);
    bool saw_bound = false, saw_estimates = false;
    for (const auto& e : rep.entries) {
      if (e.name == "outer_bound_constrained") {
        saw_bound = true;
        CHECK(e.status == "PASS");
        CHECK(e.checks > 0);
      }
      if (e.name == "optimality_estimates") {
        saw_estimates = true;
        CHECK(e.status == "PASS");
      }
    }
    CHECK(saw_bound);
    CHECK(saw_estimates);
  }
}

TEST_CASE("run_benchmark attaches certificates when an oracle is present") {
  RunConfig cfg = config_from_string(
      "[problem]\nbuilder = basis_pursuit\nn = 6\np = 15\nseed = 11\noracle = lp_exact\n"
      "[solver]\nalgorithm = asgard_dl\n"
      "[run]\nbudget = 300\n");
  cfg.out_dir = scratch_dir("bench_cert");
  RunReport rep = run_benchmark(cfg);
  CHECK(!rep.certificates.empty());
  for (const CertificateEntry& c : rep.certificates) CHECK(c.status == "PASS");

  RunConfig plain = config_from_string(
      "[problem]\nbuilder = basis_pursuit\nn = 6\np = 15\nseed = 11\n"
      "[solver]\nalgorithm = asgard_dl\n"
      "[run]\nbudget = 50\n");
  plain.out_dir = scratch_dir("bench_nocert");
  RunReport rep2 = run_benchmark(plain);
  CHECK(rep2.certificates.empty());
}
