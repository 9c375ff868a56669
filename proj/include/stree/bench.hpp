#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stree/detector.hpp"
#include "stree/graph.hpp"

namespace stree {

struct ScalingRow {
  double fraction = 0.0;
  std::size_t edge_count = 0;
  double build_ms = 0.0;  // min over repetitions of detect() wall time
};

// Shuffles g's edges once under `seed`, then for every fraction times
// detect() on the subgraph made of that prefix of the shuffled edges.
std::vector<ScalingRow> measure_scaling(const BipartiteGraph& g,
                                        std::span<const double> fractions,
                                        std::size_t repetitions,
                                        const DetectOptions& options,
                                        std::uint64_t seed);

// Subgraph on the first `count` edges of `edges`; nodes interned in edge order.
BipartiteGraph edge_prefix_graph(const BipartiteGraph& g, std::span<const Edge> edges,
                                 std::size_t count);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares y = slope * x + intercept.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// "a..b" -> a, 2a, ... up to b (inclusive, step a); or "a,b,c".
std::vector<double> parse_fractions(std::string_view text);

}  // namespace stree
