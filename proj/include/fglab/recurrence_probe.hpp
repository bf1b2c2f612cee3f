#pragma once

// Escape probabilities of simple random walk on finite balls: the chance of
// reaching distance r from the base before returning to it.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "fglab/rational.hpp"
#include "fglab/schreier.hpp"

namespace fglab {

/// Exact solution of the Dirichlet problem h = 0 at the base, h = 1 at
/// distance r, h harmonic in between; returns the average of h over the
/// base's neighbors. Uses the simple graph. Throws InvalidRadius for r = 0 or
/// r beyond the graph's certified range.
Rational escape_probability(const FiniteGraph& g, std::size_t r);

struct EscapePoint {
  std::size_t radius = 0;
  Rational probability;
};

/// One exact solve per radius (run concurrently).
std::vector<EscapePoint> escape_series(const FiniteGraph& g, const std::vector<std::size_t>& radii);

/// Ball of radius `radius` in the d-regular tree, rooted at vertex 0. The rim
/// is recorded so that the leaves count as incomplete.
FiniteGraph regular_tree_ball(std::size_t degree, std::size_t radius);

struct SimulationReport {
  std::size_t trials = 0;
  std::size_t escapes = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Monte Carlo cross-check of escape_probability.
SimulationReport simulate_escape(const FiniteGraph& g, std::size_t r, std::size_t trials, std::mt19937_64& rng);

}  // namespace fglab
