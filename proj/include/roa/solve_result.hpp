#pragma once

#include <optional>
#include <vector>

#include "roa/model.hpp"
#include "roa/qubo.hpp"

namespace roa {

// Raw solver output before repair. QUBO-based solvers fill bits and energy;
// constrained solvers leave them empty.
struct SolveResult {
  Assignment assignment;
  std::optional<Bits> bits;
  std::optional<double> energy;
  double runtime_ms = 0.0;
};

}  // namespace roa
