#include "roa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "roa/anneal.hpp"
#include "roa/exact.hpp"
#include "roa/greedy.hpp"
#include "roa/json_io.hpp"
#include "roa/repair.hpp"
#include "roa/rng.hpp"

namespace roa {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t run_seed(std::uint64_t base, int size, std::uint64_t instance_seed,
                       const std::string& solver) {
  std::uint64_t state = base ^ fnv1a(solver);
  state = splitmix64(state) ^ (static_cast<std::uint64_t>(size) << 32) ^ instance_seed;
  return splitmix64(state);
}

struct RawSolve {
  Assignment assignment;
  std::optional<Bits> bits;
  double runtime_ms = 0.0;
  bool proven_optimal = false;
};

RawSolve raw_solve(const Instance& inst, const std::string& solver, const SolverOptions& opt,
                   const QuboModel* qubo, std::uint64_t seed) {
  const PenaltyWeights penalties = default_penalties(inst);
  if (solver == "greedy") {
    SolveResult r = solve_greedy(inst);
    return {r.assignment, std::nullopt, r.runtime_ms, false};
  }
  if (solver == "exact") {
    ExactResult r = solve_exact(inst, penalties.soft(), opt.exact_time_limit_s);
    return {r.solve.assignment, std::nullopt, r.solve.runtime_ms, r.optimal};
  }
  if (solver == "sa" || solver == "sqa") {
    const auto start = Clock::now();
    const IsingModel ising = to_ising(*qubo);
    const AnnealResult r = solver == "sa"
                               ? solve_sa(ising, default_sa_schedule(ising), seed)
                               : solve_sqa(ising, default_sqa_params(ising, seed));
    return {decode(*r.solve.bits, qubo->layout), r.solve.bits, ms_since(start), false};
  }
  if (solver == "qaoa" || solver == "qaoansatz") {
    QaoaParams params = opt.qaoa;
    params.seed = seed;
    const QaoaResult r = solver == "qaoa" ? solve_qaoa(*qubo, params)
                                          : solve_qaoansatz(inst, penalties, params);
    return {r.solve.assignment, r.solve.bits, r.solve.runtime_ms, false};
  }
  throw InvalidConfig("unknown solver '" + solver + "'");
}

std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }
std::string csv_field(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }
std::string csv_field(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : "";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::optional<double> parse_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::optional<int> parse_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stoi(s);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

const std::vector<std::string>& known_solvers() {
  static const std::vector<std::string> names{"greedy", "exact", "sa", "sqa", "qaoa", "qaoansatz"};
  return names;
}

bool is_known_solver(const std::string& name) {
  const auto& names = known_solvers();
  return std::find(names.begin(), names.end(), name) != names.end();
}

RunOutcome run_solver(const Instance& inst, const std::string& solver,
                      const SolverOptions& options) {
  if (!is_known_solver(solver)) throw InvalidConfig("unknown solver '" + solver + "'");
  const PenaltyWeights penalties = default_penalties(inst);
  const bool uses_qubo = solver != "greedy" && solver != "exact";
  std::optional<QuboModel> qubo;
  if (uses_qubo) qubo = build_qubo(inst, penalties);

  const bool annealer = solver == "sa" || solver == "sqa";
  const int attempts = annealer ? std::max(1, options.anneal_restarts) : 1;

  RunOutcome best;
  best.status = "error";
  double total_runtime = 0.0;
  double total_repair = 0.0;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    RunOutcome out;
    RawSolve raw;
    try {
      raw = raw_solve(inst, solver, options, qubo ? &*qubo : nullptr,
                      options.seed + static_cast<std::uint64_t>(attempt));
    } catch (const Infeasible& e) {
      out.status = "infeasible";
      out.message = e.what();
      return out;
    } catch (const InvalidInput& e) {
      out.status = "solver_limit";
      out.message = e.what();
      return out;
    }
    total_runtime += raw.runtime_ms;
    out.raw_assignment = raw.assignment;
    out.proven_optimal = raw.proven_optimal;
    if (raw.bits) out.raw_energy = energy(*qubo, *raw.bits);
    out.pre_repair_hard_violations = check_hard(inst, raw.assignment).hard_count();

    const auto repair_start = Clock::now();
    try {
      RepairResult fixed = repair(inst, raw.assignment, penalties.soft());
      out.assignment = std::move(fixed.assignment);
      out.repaired = fixed.stats.changed;
    } catch (const Infeasible& e) {
      out.status = "infeasible";
      out.message = e.what();
      return out;
    }
    total_repair += ms_since(repair_start);

    out.post_objective = evaluate_objective(inst, out.assignment);
    out.penalized_objective = penalized_objective(inst, out.assignment, penalties.soft());
    std::tie(out.gf_violations, out.sla_violations) = count_soft_violations(inst, out.assignment);
    if (best.status != "ok" || out.penalized_objective < best.penalized_objective) {
      best = std::move(out);
    }
  }
  best.runtime_ms = total_runtime;
  best.repair_ms = total_repair;
  return best;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("BENCH_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  for (const auto& s : config.solvers) {
    if (!is_known_solver(s)) throw InvalidConfig("unknown solver '" + s + "'");
  }
  if (config.penalty_rule != "default") {
    throw InvalidConfig("unknown penalty rule '" + config.penalty_rule + "'");
  }
  if (config.seed_last < config.seed_first) throw InvalidConfig("seed range is empty");
  if (config.solvers.empty()) return {};

  struct Item {
    std::size_t instance;
    std::string solver;
  };
  struct InstanceEntry {
    int size;
    std::uint64_t seed;
    Instance normalized;
  };
  std::vector<InstanceEntry> instances;
  for (int size : config.sizes) {
    for (std::uint64_t seed = config.seed_first; seed <= config.seed_last; ++seed) {
      GenConfig gen = config.generator;
      gen.size = size;
      gen.seed = seed;
      instances.push_back({size, seed, normalize(generate(gen))});
    }
  }
  std::vector<Item> items;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    for (const auto& s : config.solvers) items.push_back({k, s});
  }

  std::vector<RunOutcome> outcomes(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < items.size(); k = next++) {
      const InstanceEntry& entry = instances[items[k].instance];
      SolverOptions opt = config.options;
      opt.seed = run_seed(config.options.seed, entry.size, entry.seed, items[k].solver);
      try {
        outcomes[k] = run_solver(entry.normalized, items[k].solver, opt);
      } catch (const std::exception& e) {
        outcomes[k].status = "error";
        outcomes[k].message = e.what();
      }
    }
  };
  const std::size_t workers =
      std::min(items.size(), config.workers ? config.workers : default_worker_count());
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  // Reference objective per instance.
  std::vector<std::optional<double>> reference(instances.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    const RunOutcome& o = outcomes[k];
    if (o.status == "ok" && items[k].solver == "exact" && o.proven_optimal) {
      reference[items[k].instance] = o.penalized_objective;
    }
  }
  std::vector<std::optional<double>> best_seen(instances.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    const RunOutcome& o = outcomes[k];
    if (o.status != "ok") continue;
    auto& b = best_seen[items[k].instance];
    if (!b || o.penalized_objective < *b) b = o.penalized_objective;
  }

  std::vector<BenchRecord> records;
  records.reserve(items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    const InstanceEntry& entry = instances[items[k].instance];
    const RunOutcome& o = outcomes[k];
    BenchRecord r;
    r.size = entry.size;
    r.seed = entry.seed;
    r.solver = items[k].solver;
    r.status = o.status;
    if (o.status == "ok") {
      const auto ref = reference[items[k].instance] ? reference[items[k].instance]
                                                    : best_seen[items[k].instance];
      r.raw_energy = o.raw_energy;
      r.pre_repair_hard_violations = o.pre_repair_hard_violations;
      r.post_objective = o.post_objective;
      r.penalized_objective = o.penalized_objective;
      if (ref && *ref > 0.0) r.norm_objective = o.penalized_objective / *ref;
      r.gf_violations = o.gf_violations;
      r.sla_violations = o.sla_violations;
      r.runtime_ms = o.runtime_ms;
      r.repair_ms = o.repair_ms;
      r.repaired = o.repaired;
    }
    records.push_back(std::move(r));

    if (config.artifact_dir) {
      const auto dir = *config.artifact_dir / "assignments";
      std::filesystem::create_directories(dir);
      nlohmann::json doc{{"size", entry.size},
                         {"seed", entry.seed},
                         {"solver", items[k].solver},
                         {"status", o.status},
                         {"message", o.message}};
      if (o.status == "ok") {
        doc["raw_assignment"] = to_json(o.raw_assignment);
        doc["assignment"] = to_json(o.assignment);
      }
      write_json(dir / ("n" + std::to_string(entry.size) + "_s" + std::to_string(entry.seed) +
                        "_" + items[k].solver + ".json"),
                 doc);
    }
  }
  return records;
}

const std::vector<std::string> kResultColumns{
    "size",           "seed",          "solver",         "status",
    "raw_energy",     "pre_repair_hard_violations",      "post_objective",
    "penalized_objective",             "norm_objective", "gf_violations",
    "sla_violations", "runtime_ms",    "repair_ms",      "repaired"};

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_results_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  for (std::size_t c = 0; c < kResultColumns.size(); ++c) {
    out << (c ? "," : "") << kResultColumns[c];
  }
  out << '\n';
  for (const auto& r : records) {
    out << r.size << ',' << r.seed << ',' << r.solver << ',' << r.status << ','
        << csv_field(r.raw_energy) << ',' << csv_field(r.pre_repair_hard_violations) << ','
        << csv_field(r.post_objective) << ',' << csv_field(r.penalized_objective) << ','
        << csv_field(r.norm_objective) << ',' << csv_field(r.gf_violations) << ','
        << csv_field(r.sla_violations) << ',' << csv_field(r.runtime_ms) << ','
        << csv_field(r.repair_ms) << ',' << csv_field(r.repaired) << '\n';
  }
}

std::vector<BenchRecord> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("results CSV is empty");
  if (split_csv_line(line) != kResultColumns) throw InvalidInput("results CSV header mismatch");
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != kResultColumns.size()) {
      throw InvalidInput("results CSV row has " + std::to_string(f.size()) + " fields");
    }
    BenchRecord r;
    r.size = std::stoi(f[0]);
    r.seed = std::stoull(f[1]);
    r.solver = f[2];
    r.status = f[3];
    r.raw_energy = parse_double(f[4]);
    r.pre_repair_hard_violations = parse_int(f[5]);
    r.post_objective = parse_double(f[6]);
    r.penalized_objective = parse_double(f[7]);
    r.norm_objective = parse_double(f[8]);
    r.gf_violations = parse_int(f[9]);
    r.sla_violations = parse_int(f[10]);
    r.runtime_ms = parse_double(f[11]);
    r.repair_ms = parse_double(f[12]);
    if (!f[13].empty()) r.repaired = f[13] == "true";
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<SummaryRow> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::pair<int, std::string>, std::vector<const BenchRecord*>> groups;
  for (const auto& r : records) {
    if (r.status == "ok") groups[{r.size, r.solver}].push_back(&r);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, group] : groups) {
    SummaryRow row;
    row.size = key.first;
    row.solver = key.second;
    row.runs = group.size();
    std::vector<double> norms;
    double runtime = 0.0, gf = 0.0, sla = 0.0, penalized = 0.0;
    for (const BenchRecord* r : group) {
      if (r->norm_objective) norms.push_back(*r->norm_objective);
      penalized += r->penalized_objective.value_or(0.0);
      runtime += r->runtime_ms.value_or(0.0);
      gf += r->gf_violations.value_or(0);
      sla += r->sla_violations.value_or(0);
    }
    const double count = static_cast<double>(group.size());
    double norm_sum = 0.0;
    for (double v : norms) norm_sum += v;
    row.mean_norm_objective = norms.empty() ? 0.0 : norm_sum / norms.size();
    row.median_norm_objective = median(norms);
    row.mean_penalized_objective = penalized / count;
    row.mean_runtime_ms = runtime / count;
    row.mean_gf_violations = gf / count;
    row.mean_sla_violations = sla / count;
    rows.push_back(row);
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "size,solver,runs,mean_norm_objective,median_norm_objective,mean_penalized_objective,"
         "mean_runtime_ms,mean_gf_violations,mean_sla_violations\n";
  for (const auto& r : rows) {
    out << r.size << ',' << r.solver << ',' << r.runs << ',' << format_double(r.mean_norm_objective)
        << ',' << format_double(r.median_norm_objective) << ','
        << format_double(r.mean_penalized_objective) << ',' << format_double(r.mean_runtime_ms)
        << ',' << format_double(r.mean_gf_violations) << ','
        << format_double(r.mean_sla_violations) << '\n';
  }
}

void write_long_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "size,solver,metric,value\n";
  for (const auto& r : rows) {
    const std::pair<const char*, double> metrics[] = {
        {"mean_norm_objective", r.mean_norm_objective},
        {"median_norm_objective", r.median_norm_objective},
        {"mean_runtime_ms", r.mean_runtime_ms},
        {"mean_gf_violations", r.mean_gf_violations},
        {"mean_sla_violations", r.mean_sla_violations}};
    for (const auto& [name, value] : metrics) {
      out << r.size << ',' << r.solver << ',' << name << ',' << format_double(value) << '\n';
    }
  }
}

}  // namespace roa
