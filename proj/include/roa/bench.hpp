#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "roa/instgen.hpp"
#include "roa/qaoa.hpp"
#include "roa/qubo.hpp"

namespace roa {

// Solver names accepted by the harness and the CLI.
const std::vector<std::string>& known_solvers();
bool is_known_solver(const std::string& name);

struct SolverOptions {
  double exact_time_limit_s = 10.0;
  std::uint64_t seed = 0;
  int anneal_restarts = 1;  // SA/SQA: keep the best of this many seeded runs
  QaoaParams qaoa;
};

// Outcome of one solver call on one (normalised) instance, after repair.
struct RunOutcome {
  std::string status = "ok";
  std::string message;
  std::optional<double> raw_energy;
  int pre_repair_hard_violations = 0;
  Assignment raw_assignment;
  Assignment assignment;
  double post_objective = 0.0;
  double penalized_objective = 0.0;
  int gf_violations = 0;
  int sla_violations = 0;
  double runtime_ms = 0.0;
  double repair_ms = 0.0;
  bool repaired = false;
  bool proven_optimal = false;
};

// Builds the QUBO with default_penalties, runs the named solver, repairs the
// result and scores it. Solver failures (qubit limit, infeasibility) come
// back as a non-"ok" status; an unknown solver name throws InvalidConfig.
RunOutcome run_solver(const Instance& normalized, const std::string& solver,
                      const SolverOptions& options);

struct BenchRecord {
  int size = 0;
  std::uint64_t seed = 0;
  std::string solver;
  std::string status = "ok";
  std::optional<double> raw_energy;
  std::optional<int> pre_repair_hard_violations;
  std::optional<double> post_objective;
  std::optional<double> penalized_objective;
  std::optional<double> norm_objective;
  std::optional<int> gf_violations;
  std::optional<int> sla_violations;
  std::optional<double> runtime_ms;
  std::optional<double> repair_ms;
  std::optional<bool> repaired;
};

struct BenchConfig {
  std::vector<int> sizes;
  std::uint64_t seed_first = 0;
  std::uint64_t seed_last = 0;
  std::vector<std::string> solvers;
  std::string penalty_rule = "default";
  SolverOptions options;
  GenConfig generator;      // size and seed are overridden per instance
  std::size_t workers = 0;  // 0: BENCH_WORKERS or hardware concurrency
  // When set, one JSON file per run is written to <dir>/assignments.
  std::optional<std::filesystem::path> artifact_dir;
};

std::size_t default_worker_count();

// One record per (size, seed, solver), sorted in that order. The reference
// objective per (size, seed) is the exact solver's penalized objective when
// optimality was proven, otherwise the best penalized objective among the
// successful runs.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

extern const std::vector<std::string> kResultColumns;

void write_results_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_results_csv(std::istream& in);

struct SummaryRow {
  int size = 0;
  std::string solver;
  std::size_t runs = 0;  // successful records aggregated
  double mean_norm_objective = 0.0;
  double median_norm_objective = 0.0;
  double mean_penalized_objective = 0.0;
  double mean_runtime_ms = 0.0;
  double mean_gf_violations = 0.0;
  double mean_sla_violations = 0.0;
};

// Aggregates "ok" records per (size, solver), sorted by size then solver.
std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
// Long format: size, solver, metric, value.
void write_long_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Shortest round-trip decimal representation.
std::string format_double(double value);

}  // namespace roa
