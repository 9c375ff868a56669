#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "stree/graph.hpp"

namespace stree {

// AOBG: targets are objects, popular ones are less suspicious.
// ARBG: targets are shared resources, popular ones are more suspicious.
enum class Mode { AOBG, ARBG };

// How sources are ordered inside every basket. Any ordering that is
// consistent across baskets yields the same biclique set; GScore is what the
// detector relies on.
enum class Ordering { GScore, NodeIndex };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

struct BasketConfig {
  Mode mode = Mode::ARBG;
  double c = 1.0;
  Ordering ordering = Ordering::GScore;
};

// Local suspiciousness of target m (natural log):
//   AOBG: ln(|E| / (|I(m)| + c))     ARBG: ln(|I(m)| + c)
double f_score(const BipartiteGraph& g, NodeIndex m, Mode mode, double c);

struct Basket {
  NodeIndex target = 0;
  std::vector<NodeIndex> sources;  // I(m), in global basket order
  double f = 0.0;
};

// Global source order: g descending, then source index ascending.
class GOrder {
 public:
  GOrder() = default;
  GOrder(std::vector<double> g, Ordering ordering);

  double g(NodeIndex n) const { return g_[n]; }
  const std::vector<double>& g_values() const { return g_; }
  // Position of n in the global order (0 = first).
  std::size_t rank(NodeIndex n) const { return rank_[n]; }
  bool precedes(NodeIndex a, NodeIndex b) const { return rank_[a] < rank_[b]; }
  // Sources in global order.
  const std::vector<NodeIndex>& sequence() const { return sequence_; }

 private:
  std::vector<double> g_;
  std::vector<std::size_t> rank_;
  std::vector<NodeIndex> sequence_;
};

struct BasketSet {
  std::vector<Basket> baskets;  // one per target, ascending target index
  GOrder order;
};

// Computes every f(m), then g(n) = sum of f over H(n), then lays each I(m)
// out in global order. Throws ContractError on an empty graph or c <= 0.
BasketSet build_baskets(const BipartiteGraph& g, const BasketConfig& config = {});

// Total number of source slots across all baskets.
std::size_t basket_mass(std::span<const Basket> baskets);

// Throws ConsistencyError unless basket_mass equals the graph's edge count.
void check_basket_mass(std::span<const Basket> baskets, const BipartiteGraph& g);

}  // namespace stree
