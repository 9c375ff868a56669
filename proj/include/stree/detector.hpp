#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stree/basket.hpp"
#include "stree/graph.hpp"
#include "stree/tree.hpp"

namespace stree {

// Suspiciousness boundary: a node at tree level `depth` whose sus reaches
// `thickness` marks its whole root path and subtree as suspicious.
struct BoundaryParams {
  double thickness = 0.0;
  std::uint32_t depth = 1;
};

// Mean sus over all non-root nodes.
double default_thickness(const STree& tree);
// floor((basket mass - node count) / #baskets), at least 1.
std::uint32_t default_depth(std::span<const Basket> baskets, const STree& tree);

// Sorted, duplicate-free node refs.
struct SuspiciousSet {
  std::vector<TreeNodeRef> nodes;
};

SuspiciousSet select_suspicious(const STree& tree, const BoundaryParams& params);

// s(n) = sum of x.sus over selected nodes x with x.sn == n.
std::vector<double> s_scores(const STree& tree, const SuspiciousSet& selected,
                             std::size_t num_sources);

struct RankedSource {
  std::string label;
  double score = 0.0;

  friend bool operator==(const RankedSource&, const RankedSource&) = default;
};

// Descending score, ties broken by ascending label.
using SuspiciousnessRanking = std::vector<RankedSource>;

SuspiciousnessRanking rank_sources(std::span<const std::string> labels,
                                   std::span<const double> scores);

struct DetectOptions {
  BasketConfig baskets;
  std::optional<double> thickness;
  std::optional<std::uint32_t> depth;
};

struct Detection {
  BasketSet baskets;
  STree tree;
  BoundaryParams params;
  SuspiciousSet selected;
  std::vector<double> scores;  // indexed by source
  SuspiciousnessRanking ranking;
};

// baskets -> tree -> boundary (defaults unless overridden) -> s-scores.
Detection detect(const BipartiteGraph& g, const DetectOptions& options = {});

// `label<TAB>score` per line, in ranking order.
void write_ranking(std::ostream& out, const SuspiciousnessRanking& ranking);
std::string format_score(double score);

}  // namespace stree
