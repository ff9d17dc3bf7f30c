#include "roa/anneal.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "roa/rng.hpp"

namespace roa {

namespace {

// CSR adjacency over spins.
struct CompiledIsing {
  std::vector<double> h;
  std::vector<std::size_t> start;
  std::vector<std::size_t> neighbor;
  std::vector<double> coupling;

  explicit CompiledIsing(const IsingModel& model) : h(model.n_spins, 0.0) {
    for (const auto& [v, c] : model.h) h[v] = c;
    std::vector<std::size_t> degree(model.n_spins, 0);
    for (const auto& [key, c] : model.J) {
      ++degree[key.first];
      ++degree[key.second];
    }
    start.assign(model.n_spins + 1, 0);
    for (std::size_t q = 0; q < model.n_spins; ++q) start[q + 1] = start[q] + degree[q];
    neighbor.resize(start.back());
    coupling.resize(start.back());
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [key, c] : model.J) {
      neighbor[fill[key.first]] = key.second;
      coupling[fill[key.first]++] = c;
      neighbor[fill[key.second]] = key.first;
      coupling[fill[key.second]++] = c;
    }
  }

  std::size_t size() const { return h.size(); }

  // h_q + sum_r J_qr s_r for every q.
  std::vector<double> local_fields(const Spins& s) const {
    std::vector<double> f(h);
    for (std::size_t q = 0; q < size(); ++q) {
      for (std::size_t e = start[q]; e < start[q + 1]; ++e) f[q] += coupling[e] * s[neighbor[e]];
    }
    return f;
  }

  void flip(Spins& s, std::vector<double>& field, std::size_t q) const {
    s[q] = static_cast<std::int8_t>(-s[q]);
    const double delta = 2.0 * s[q];
    for (std::size_t e = start[q]; e < start[q + 1]; ++e) field[neighbor[e]] += coupling[e] * delta;
  }
};

double field_scale(const IsingModel& ising) {
  double hmax = 0.0, jmax = 0.0;
  for (const auto& [v, c] : ising.h) hmax = std::max(hmax, std::abs(c));
  for (const auto& [k, c] : ising.J) jmax = std::max(jmax, std::abs(c));
  const double scale = hmax + jmax;
  return scale > 0.0 ? scale : 1.0;
}

Spins random_spins(std::size_t n, Rng& rng) {
  Spins s(n);
  for (auto& v : s) v = (rng() >> 63) ? 1 : -1;
  return s;
}

double geometric(double from, double to, int step, int steps) {
  if (steps <= 1) return from;
  return from * std::pow(to / from, static_cast<double>(step) / (steps - 1));
}

bool metropolis(double delta, double temperature, Rng& rng) {
  return delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

AnnealResult finish(const IsingModel& ising, Spins best, std::vector<double> trace,
                    AnnealStats stats, std::chrono::steady_clock::time_point start) {
  AnnealResult out;
  out.solve.energy = energy(ising, best);
  out.solve.bits = spins_to_bits(best);
  out.spins = std::move(best);
  out.best_trace = std::move(trace);
  out.stats = stats;
  out.solve.runtime_ms = elapsed_ms(start);
  return out;
}

}  // namespace

SqaParams default_sqa_params(const IsingModel& ising, std::uint64_t seed) {
  SqaParams p;
  p.replicas = 20;
  p.temperature = 0.05 * field_scale(ising);
  p.gamma_initial = 2.0 * p.temperature * p.replicas;
  p.gamma_final = 0.01 * p.gamma_initial;
  p.sweeps = static_cast<int>(std::max<std::size_t>(1, 200 * ising.n_spins));
  p.seed = seed;
  return p;
}

SaSchedule default_sa_schedule(const IsingModel& ising) {
  const double scale = field_scale(ising);
  return {scale, 1e-3 * scale, static_cast<int>(std::max<std::size_t>(1, 200 * ising.n_spins))};
}

void validate(const SqaParams& p) {
  if (p.replicas < 1) throw InvalidConfig("SQA needs at least one replica");
  if (!(p.temperature > 0.0)) throw InvalidConfig("SQA temperature must be positive");
  if (!(p.gamma_final > 0.0) || !(p.gamma_initial > p.gamma_final)) {
    throw InvalidConfig("SQA transverse field must decrease from Gamma_0 to Gamma_f > 0");
  }
  if (p.sweeps < 1) throw InvalidConfig("SQA needs at least one sweep");
}

AnnealResult solve_sqa(const IsingModel& ising, const SqaParams& params) {
  const auto start = std::chrono::steady_clock::now();
  validate(params);
  const CompiledIsing model(ising);
  const std::size_t n = model.size();
  const auto P = static_cast<std::size_t>(params.replicas);
  const double T = params.temperature;
  Rng rng(params.seed);

  std::vector<Spins> spins;
  std::vector<std::vector<double>> fields;
  std::vector<double> energies;
  for (std::size_t k = 0; k < P; ++k) {
    spins.push_back(random_spins(n, rng));
    fields.push_back(model.local_fields(spins.back()));
    energies.push_back(energy(ising, spins.back()));
  }
  std::size_t best_replica = std::min_element(energies.begin(), energies.end()) - energies.begin();
  double best_energy = energies[best_replica];
  Spins best = spins[best_replica];

  std::vector<double> trace;
  trace.reserve(params.sweeps);
  AnnealStats stats;
  for (int sweep = 0; sweep < params.sweeps; ++sweep) {
    const double gamma = geometric(params.gamma_initial, params.gamma_final, sweep, params.sweeps);
    const double j_perp = -0.5 * P * T * std::log(std::tanh(gamma / (P * T)));
    for (std::size_t k = 0; k < P; ++k) {
      const std::size_t prev = (k + P - 1) % P;
      const std::size_t next = (k + 1) % P;
      Spins& s = spins[k];
      std::vector<double>& f = fields[k];
      for (std::size_t q = 0; q < n; ++q) {
        const int old_spin = s[q];
        const int new_spin = -old_spin;
        const double d_classical = -2.0 * old_spin * f[q];
        // With P = 1 the ring neighbours are the slice itself, so both
        // products are squares and the coupling term cancels exactly.
        const int prev_old = spins[prev][q];
        const int next_old = spins[next][q];
        const int prev_new = prev == k ? new_spin : prev_old;
        const int next_new = next == k ? new_spin : next_old;
        const int before = prev_old * old_spin + old_spin * next_old;
        const int after = prev_new * new_spin + new_spin * next_new;
        const double d_coupling = -j_perp * (after - before);
        ++stats.proposals;
        if (d_coupling != 0.0) ++stats.transverse_nonzero;
        if (metropolis(d_classical / P + d_coupling, T, rng)) {
          model.flip(s, f, q);
          energies[k] += d_classical;
          ++stats.accepted;
        }
      }
      if (energies[k] < best_energy) {
        best_energy = energies[k];
        best = s;
      }
    }
    trace.push_back(best_energy);
  }
  return finish(ising, std::move(best), std::move(trace), stats, start);
}

AnnealResult solve_sa(const IsingModel& ising, const SaSchedule& schedule, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  if (!(schedule.t_initial >= schedule.t_final) || !(schedule.t_final > 0.0) ||
      schedule.sweeps < 1) {
    throw InvalidConfig("SA schedule must cool from t_initial to t_final > 0 over >= 1 sweep");
  }
  const CompiledIsing model(ising);
  const std::size_t n = model.size();
  Rng rng(seed);
  Spins s = random_spins(n, rng);
  std::vector<double> f = model.local_fields(s);
  double e = energy(ising, s);
  double best_energy = e;
  Spins best = s;

  std::vector<double> trace;
  trace.reserve(schedule.sweeps);
  AnnealStats stats;
  for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
    const double T = geometric(schedule.t_initial, schedule.t_final, sweep, schedule.sweeps);
    for (std::size_t q = 0; q < n; ++q) {
      const double delta = -2.0 * s[q] * f[q];
      ++stats.proposals;
      if (metropolis(delta, T, rng)) {
        model.flip(s, f, q);
        e += delta;
        ++stats.accepted;
        if (e < best_energy) {
          best_energy = e;
          best = s;
        }
      }
    }
    trace.push_back(best_energy);
  }
  return finish(ising, std::move(best), std::move(trace), stats, start);
}

}  // namespace roa
