// Command-line front end: instance generation, single solves, benchmark
// batches and report aggregation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "roa/bench.hpp"
#include "roa/instgen.hpp"
#include "roa/json_io.hpp"

namespace fs = std::filesystem;

namespace {

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

SeedRange parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoull(text);
      return {v, v};
    }
    SeedRange r{std::stoull(text.substr(0, dots)), std::stoull(text.substr(dots + 2))};
    if (r.last < r.first) throw roa::InvalidConfig("seed range " + text + " is empty");
    return r;
  } catch (const std::logic_error&) {
    throw roa::InvalidConfig("expected a seed range A..B, got '" + text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> sizes;
  for (const auto& item : split_list(text)) {
    try {
      sizes.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw roa::InvalidConfig("bad size '" + item + "'");
    }
  }
  return sizes;
}

int cmd_gen(int size, const std::string& seeds, const fs::path& out) {
  const SeedRange range = parse_seed_range(seeds);
  fs::create_directories(out);
  for (std::uint64_t seed = range.first; seed <= range.last; ++seed) {
    roa::GenConfig config;
    config.size = size;
    config.seed = seed;
    const auto path =
        out / ("instance_n" + std::to_string(size) + "_s" + std::to_string(seed) + ".json");
    roa::save_instance(path, roa::generate(config));
    std::cout << path.string() << '\n';
  }
  return 0;
}

int cmd_solve(const fs::path& instance_path, const std::string& solver, double time_limit,
              std::uint64_t seed, const fs::path& out) {
  const roa::Instance instance = roa::normalize(roa::load_instance(instance_path));
  roa::SolverOptions options;
  options.exact_time_limit_s = time_limit;
  options.seed = seed;
  const roa::RunOutcome o = roa::run_solver(instance, solver, options);
  nlohmann::json doc{{"instance", instance_path.string()},
                     {"solver", solver},
                     {"status", o.status},
                     {"message", o.message}};
  if (o.status == "ok") {
    doc["raw_energy"] = o.raw_energy ? nlohmann::json(*o.raw_energy) : nlohmann::json();
    doc["pre_repair_hard_violations"] = o.pre_repair_hard_violations;
    doc["post_objective"] = o.post_objective;
    doc["penalized_objective"] = o.penalized_objective;
    doc["gf_violations"] = o.gf_violations;
    doc["sla_violations"] = o.sla_violations;
    doc["runtime_ms"] = o.runtime_ms;
    doc["repair_ms"] = o.repair_ms;
    doc["repaired"] = o.repaired;
    doc["proven_optimal"] = o.proven_optimal;
    doc["raw_assignment"] = roa::to_json(o.raw_assignment);
    doc["assignment"] = roa::to_json(o.assignment);
  }
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  roa::write_json(out, doc);
  std::cout << solver << ": " << o.status;
  if (o.status == "ok") std::cout << " penalized_objective=" << o.penalized_objective;
  std::cout << '\n';
  return o.status == "ok" ? 0 : 2;
}

int cmd_bench(const std::string& sizes, const std::string& seeds, const std::string& solvers,
              double time_limit, std::size_t workers, const fs::path& out) {
  roa::BenchConfig config;
  config.sizes = parse_sizes(sizes);
  const SeedRange range = parse_seed_range(seeds);
  config.seed_first = range.first;
  config.seed_last = range.last;
  config.solvers = split_list(solvers);
  config.options.exact_time_limit_s = time_limit;
  config.workers = workers;
  config.artifact_dir = out;
  fs::create_directories(out);
  const auto records = roa::run_benchmark(config);
  std::ofstream csv(out / "results.csv", std::ios::binary);
  roa::write_results_csv(csv, records);
  std::cout << records.size() << " records written to " << (out / "results.csv").string() << '\n';
  return 0;
}

int cmd_report(const fs::path& in, const fs::path& out) {
  std::ifstream csv(in / "results.csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot open " + (in / "results.csv").string());
  const auto rows = roa::summarize(roa::read_results_csv(csv));
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream summary(out, std::ios::binary);
  roa::write_summary_csv(summary, rows);
  fs::path long_path = out;
  long_path.replace_filename(out.stem().string() + "_long" + out.extension().string());
  std::ofstream long_csv(long_path, std::ios::binary);
  roa::write_long_csv(long_csv, rows);
  std::cout << rows.size() << " summary rows written to " << out.string() << " and "
            << long_path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rider-order assignment solvers and benchmark harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate seeded instances");
  int gen_size = 0;
  std::string gen_seeds;
  std::string gen_out;
  gen->add_option("--size", gen_size, "Riders = orders = N")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seeds", gen_seeds, "Seed range A..B")->required();
  gen->add_option("--out", gen_out, "Output directory")->required();

  auto* solve = app.add_subcommand("solve", "Solve one instance and repair the result");
  std::string solve_instance, solve_solver, solve_out;
  double solve_limit = 10.0;
  std::uint64_t solve_seed = 0;
  solve->add_option("--instance", solve_instance, "Instance JSON")->required();
  solve->add_option("--solver", solve_solver, "greedy|exact|sa|sqa|qaoa|qaoansatz")->required();
  solve->add_option("--time-limit", solve_limit, "Exact solver time limit in seconds");
  solve->add_option("--seed", solve_seed, "Seed for stochastic solvers");
  solve->add_option("--out", solve_out, "Result JSON")->required();

  auto* bench = app.add_subcommand("bench", "Run a size x seed x solver matrix");
  std::string bench_sizes, bench_seeds, bench_solvers, bench_out;
  double bench_limit = 10.0;
  std::size_t bench_workers = 0;
  bench->add_option("--sizes", bench_sizes, "Comma-separated sizes")->required();
  bench->add_option("--seeds", bench_seeds, "Seed range A..B")->required();
  bench->add_option("--solvers", bench_solvers, "Comma-separated solver names")->required();
  bench->add_option("--time-limit", bench_limit, "Exact solver time limit in seconds");
  bench->add_option("--workers", bench_workers, "Worker threads (default: BENCH_WORKERS or cores)");
  bench->add_option("--out", bench_out, "Output directory")->required();

  auto* report = app.add_subcommand("report", "Summarise a results directory");
  std::string report_in, report_out;
  report->add_option("--in", report_in, "Directory holding results.csv")->required();
  report->add_option("--out", report_out, "Summary CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(gen_size, gen_seeds, gen_out);
    if (*solve) return cmd_solve(solve_instance, solve_solver, solve_limit, solve_seed, solve_out);
    if (*bench) {
      return cmd_bench(bench_sizes, bench_seeds, bench_solvers, bench_limit, bench_workers,
                       bench_out);
    }
    if (*report) return cmd_report(report_in, report_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
