#include "stree/basket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "stree/errors.hpp"

namespace stree {

Mode parse_mode(std::string_view text) {
  if (text == "aobg" || text == "AOBG") return Mode::AOBG;
  if (text == "arbg" || text == "ARBG") return Mode::ARBG;
  throw ContractError("unknown mode '" + std::string(text) + "' (want aobg|arbg)");
}

std::string_view to_string(Mode mode) {
  return mode == Mode::AOBG ? "aobg" : "arbg";
}

double f_score(const BipartiteGraph& g, NodeIndex m, Mode mode, double c) {
  if (!(c > 0.0)) throw ContractError("c must be positive");
  if (g.empty()) throw ContractError("f-score undefined on a graph without edges");
  const double degree = static_cast<double>(g.neighbors_of_target(NodeId::target(m)).size());
  if (mode == Mode::AOBG) {
    return std::log(static_cast<double>(g.num_edges()) / (degree + c));
  }
  return std::log(degree + c);
}

GOrder::GOrder(std::vector<double> g, Ordering ordering) : g_(std::move(g)) {
  sequence_.resize(g_.size());
  std::iota(sequence_.begin(), sequence_.end(), NodeIndex{0});
  if (ordering == Ordering::GScore) {
    std::sort(sequence_.begin(), sequence_.end(), [this](NodeIndex a, NodeIndex b) {
      if (g_[a] != g_[b]) return g_[a] > g_[b];
      return a < b;
    });
  }
  rank_.resize(g_.size());
  for (std::size_t r = 0; r < sequence_.size(); ++r) rank_[sequence_[r]] = r;
}

BasketSet build_baskets(const BipartiteGraph& g, const BasketConfig& config) {
  if (g.empty()) throw ContractError("cannot build baskets for an empty graph");
  if (!(config.c > 0.0)) throw ContractError("c must be positive");

  BasketSet out;
  out.baskets.resize(g.num_targets());
  for (NodeIndex m = 0; m < g.num_targets(); ++m) {
    Basket& b = out.baskets[m];
    b.target = m;
    b.f = f_score(g, m, config.mode, config.c);
    b.sources.reserve(g.sources_of(m).size());
  }

  std::vector<double> gs(g.num_sources(), 0.0);
  for (NodeIndex n = 0; n < g.num_sources(); ++n) {
    double total = 0.0;
    for (NodeIndex m : g.targets_of(n)) total += out.baskets[m].f;
    gs[n] = total;
  }
  out.order = GOrder(std::move(gs), config.ordering);

  // Walking sources in global order and appending each to its targets'
  // baskets leaves every basket sorted without a per-basket sort.
  for (NodeIndex n : out.order.sequence()) {
    for (NodeIndex m : g.targets_of(n)) out.baskets[m].sources.push_back(n);
  }
  return out;
}

std::size_t basket_mass(std::span<const Basket> baskets) {
  std::size_t mass = 0;
  for (const Basket& b : baskets) mass += b.sources.size();
  return mass;
}

void check_basket_mass(std::span<const Basket> baskets, const BipartiteGraph& g) {
  const std::size_t mass = basket_mass(baskets);
  if (mass != g.num_edges()) {
    throw ConsistencyError("basket mass " + std::to_string(mass) +
                           " != edge count " + std::to_string(g.num_edges()));
  }
}

}  // namespace stree
