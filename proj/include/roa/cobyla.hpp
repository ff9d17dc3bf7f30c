#pragma once

#include <functional>
#include <span>
#include <vector>

namespace roa {

struct CobylaOptions {
  double rho_begin = 0.5;  // initial trust-region radius
  double rho_end = 1e-4;   // stop once the radius falls below this
  int max_evals = 150;
};

struct CobylaResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  // Objective value of every evaluation, in call order.
  std::vector<double> history;
};

using Objective = std::function<double(std::span<const double>)>;

// Unconstrained derivative-free minimisation in the style of Powell's
// COBYLA: a linear model interpolated on a simplex of n + 1 points, steps of
// length rho along the model's steepest descent, vertex replacement that
// keeps the simplex volume large, geometry repair for vertices that drift
// beyond 2 rho, and radius halving when a step fails to decrease the
// objective. The returned point is the best one evaluated.
CobylaResult minimize_cobyla(const Objective& f, std::vector<double> x0,
                             const CobylaOptions& options = {});

}  // namespace roa
