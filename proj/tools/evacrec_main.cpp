// evacrec: batch front end. Exit codes: 0 ok, 1 io/parse, 2 validation,
// 3 partial coverage, 4 oracle mismatch, 5 instance too large.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "evacrec/error.hpp"
#include "evacrec/kb/snapshot_io.hpp"
#include "evacrec/rec/explain.hpp"
#include "evacrec/rec/oracle.hpp"
#include "evacrec/rec/solver.hpp"
#include "evacrec/scenario/matrix_file.hpp"
#include "evacrec/scenario/random_instance.hpp"
#include "evacrec/scenario/scenario.hpp"
#include "evacrec/service/http_server.hpp"

namespace {

using namespace evacrec;
namespace fs = std::filesystem;

enum Exit : int {
  kOk = 0,
  kIo = 1,
  kValidation = 2,
  kPartial = 3,
  kMismatch = 4,
  kTooLarge = 5,
};

struct Globals {
  std::uint64_t seed = 42;
  bool verbose = false;
};

void report(const Error& e) {
  std::cerr << "error: " << e.what() << '\n';
  for (const auto& d : e.details()) std::cerr << "  " << d << '\n';
}

std::string objective_text(const rec::Objective& o) {
  return "uncovered_weight=" + std::to_string(o.uncovered_weight) +
         " total_time_s=" + std::to_string(o.total_time) +
         " vehicles_used=" + std::to_string(o.vehicles_used);
}

void print_summary(const scenario::Scenario& s, const rec::RecommendationPlan& plan) {
  std::printf("%-20s %-10s %-10s %-20s %-18s %8s %8s %6s %8s\n", "resource", "driver",
              "vehicle", "rescue_pt", "shelter", "to_rp_s", "to_sh_s", "load", "eta_s");
  for (const auto& a : plan.assignments) {
    const auto& mr = s.snapshot.mobile_resources.at(a.resource);
    const std::string load =
        std::to_string(a.evacuees_loaded) +
        (a.wheelchair_loaded ? "(" + std::to_string(a.wheelchair_loaded) + "w)" : "");
    std::printf("%-20s %-10s %-10s %-20s %-18s %8lld %8lld %6s %8lld\n", a.resource.str().c_str(),
                mr.driver.str().c_str(), mr.vehicle.str().c_str(), a.rescue_point.str().c_str(),
                a.shelter.str().c_str(), static_cast<long long>(a.t_to_rp),
                static_cast<long long>(a.t_rp_to_shelter), load.c_str(),
                static_cast<long long>(a.t_to_rp + a.t_rp_to_shelter));
  }
  std::printf("status: %s (%s)\n", std::string(rec::to_string(plan.status)).c_str(),
              std::string(rec::to_string(plan.solver)).c_str());
  std::printf("objective: %s\n", objective_text(plan.objective).c_str());
  if (plan.lower_bound_s) {
    std::printf("time lower bound: %lld s\n", static_cast<long long>(*plan.lower_bound_s));
  }
  for (const auto& [rp, left] : plan.uncovered) {
    std::printf("uncovered: %s %d evacuees (%d wheelchair)\n", rp.str().c_str(),
                left.evacuees_left, left.wheelchair_left);
  }
}

bool write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

int run_validate(const fs::path& path) {
  try {
    const auto report = scenario::validate_scenario(path);
    if (!report.ok()) {
      for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
      return kValidation;
    }
    std::cout << "ok: " << path.string() << '\n';
    return kOk;
  } catch (const Error& e) {
    report(e);
    return kIo;
  }
}

int run_solve(const fs::path& path, const std::optional<fs::path>& output, bool makespan,
              const std::optional<fs::path>& matrix, std::optional<int> exact_bound,
              const Globals& g) {
  scenario::Scenario s;
  try {
    s = scenario::load_scenario(path);
  } catch (const Error& e) {
    report(e);
    return kIo;
  }
  if (makespan) s.solver.objective = rec::TimeObjective::kMakespan;
  if (exact_bound) s.solver.exact_bound = *exact_bound;

  rec::ProblemInstance instance;
  try {
    if (matrix) {
      instance = scenario::make_instance(s, scenario::read_matrix_file(*matrix));
    } else {
      instance = scenario::make_instance(s);
    }
  } catch (const Error& e) {
    report(e);
    return e.code() == ErrorCode::kIoError || e.code() == ErrorCode::kSchemaViolation ? kIo
                                                                                      : kValidation;
  }

  const auto start = std::chrono::steady_clock::now();
  const auto plan = rec::solve(instance, {s.solver.exact_bound});
  const auto elapsed = std::chrono::steady_clock::now() - start;
  if (output && !write_text(*output, rec::to_json(plan).dump(2) + "\n")) {
    std::cerr << "error: cannot write '" << output->string() << "'\n";
    return kIo;
  }
  print_summary(s, plan);
  if (g.verbose) {
    std::cerr << "solve took "
              << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << " ms\n"
              << rec::to_json(rec::explain(instance, plan)).dump(2) << '\n';
  }
  return plan.objective.uncovered_weight > 0 ? kPartial : kOk;
}

// Returns true when solve matches the brute-force optimum.
bool compare(const rec::ProblemInstance& instance, const std::string& label, bool print,
             bool verbose) {
  const auto plan = rec::solve(instance);
  const auto truth = rec::oracle_optimum(instance);
  const bool same = plan.objective == truth.best.objective;
  if (print || !same) {
    std::cout << label << ": solve " << objective_text(plan.objective) << " | oracle "
              << objective_text(truth.best.objective) << (same ? "" : "  MISMATCH") << '\n';
  }
  if (verbose) {
    std::cerr << label << ": " << truth.stats.candidates << " candidates, " << truth.stats.feasible
              << " feasible, " << truth.optimal_count << " optimal\n";
  }
  return same;
}

int run_oracle(const std::optional<fs::path>& path, std::optional<int> random, const Globals& g) {
  if (random) {
    const auto batch = scenario::random_batch(g.seed, *random);
    int matches = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const auto instance = scenario::make_instance(batch[i]);
      if (compare(instance, "instance " + std::to_string(i), g.verbose, g.verbose)) ++matches;
    }
    std::cout << matches << "/" << batch.size() << " matches (seed " << g.seed << ")\n";
    return matches == static_cast<int>(batch.size()) ? kOk : kMismatch;
  }
  if (!path) {
    std::cerr << "error: oracle needs a scenario path or --random N\n";
    return kIo;
  }
  try {
    const auto s = scenario::load_scenario(*path);
    const auto instance = scenario::make_instance(s);
    return compare(instance, path->filename().string(), true, g.verbose) ? kOk : kMismatch;
  } catch (const Error& e) {
    report(e);
    switch (e.code()) {
      case ErrorCode::kInstanceTooLarge: return kTooLarge;
      case ErrorCode::kIoError:
      case ErrorCode::kSchemaViolation:
      case ErrorCode::kGraphViolation:
        return kIo;
      default: return kValidation;
    }
  }
}

int run_matrix(const fs::path& path, const fs::path& output) {
  try {
    const auto s = scenario::load_scenario(path);
    const auto file = scenario::build_matrix_file(s);
    scenario::write_matrix_file(output, file);
    std::cout << "matrix: " << file.to_rescue_points.rows() << " resources, "
              << file.to_shelters.rows() << " rescue points, " << file.to_shelters.cols()
              << " shelters -> " << output.string() << '\n';
    return kOk;
  } catch (const Error& e) {
    report(e);
    return kIo;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"evacuation resource recommender"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for random batches")->capture_default_str();
  app.add_flag("--verbose", g.verbose, "Extra diagnostics on standard error");

  fs::path scenario_path;
  std::optional<fs::path> output, matrix_path, console_dir, graph_path, opt_scenario;
  std::optional<int> exact_bound, random, port;
  bool makespan = false;

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("scenario", scenario_path, "Scenario JSON")->required();

  auto* solve = app.add_subcommand("solve", "Recommend a plan for a scenario");
  solve->add_option("scenario", scenario_path, "Scenario JSON")->required();
  solve->add_option("--output", output, "Write the plan JSON here");
  solve->add_flag("--makespan", makespan, "Minimize the longest trip instead of the sum");
  solve->add_option("--matrix", matrix_path, "Use a precomputed matrix file");
  solve->add_option("--exact-bound", exact_bound, "Largest fleet solved exactly");

  auto* oracle = app.add_subcommand("oracle", "Compare the solver with brute force");
  oracle->add_option("scenario", opt_scenario, "Scenario JSON");
  oracle->add_option("--random", random, "Check N seeded random instances instead");

  auto* matrix = app.add_subcommand("matrix", "Precompute travel times for a scenario");
  matrix->add_option("scenario", scenario_path, "Scenario JSON")->required();
  matrix->add_option("--output", output, "Matrix file to write")->required();

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Listen port (default EVACREC_PORT or 8080)");
  serve->add_option("--scenario", opt_scenario, "Scenario to load at start");
  serve->add_option("--graph", graph_path, "Road graph file (overrides the scenario's)");
  serve->add_option("--exact-bound", exact_bound, "Largest fleet solved exactly");
  serve->add_option("--console-dir", console_dir, "Static files served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kIo;
  }

  if (*validate) return run_validate(scenario_path);
  if (*solve) return run_solve(scenario_path, output, makespan, matrix_path, exact_bound, g);
  if (*oracle) return run_oracle(opt_scenario, random, g);
  if (*matrix) return run_matrix(scenario_path, *output);
  if (*serve) {
    service::ServeOptions options;
    options.port = port ? *port : service::port_from_env(8080);
    options.scenario = opt_scenario;
    options.graph = graph_path;
    options.exact_bound = exact_bound;
    options.console_dir = console_dir;
    return service::run_server(options);
  }
  return kIo;
}
