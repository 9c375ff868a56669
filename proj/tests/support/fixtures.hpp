#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "stree/graph.hpp"

namespace stree::testing {

using Pairs = std::vector<std::pair<std::string, std::string>>;

inline BipartiteGraph graph_of(const Pairs& pairs) { return BipartiteGraph::from_pairs(pairs); }

// {d,e,f,g,h} x {C,D,E}, complete.
inline BipartiteGraph fig2_graph() {
  Pairs pairs;
  for (const char* n : {"d", "e", "f", "g", "h"}) {
    for (const char* m : {"C", "D", "E"}) pairs.emplace_back(n, m);
  }
  return graph_of(pairs);
}

// Every source and target is interned (n0.., m0..) even if isolated.
inline BipartiteGraph random_graph(std::size_t ns, std::size_t nt, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  GraphBuilder b;
  for (std::size_t n = 0; n < ns; ++n) b.add_source("n" + std::to_string(n));
  for (std::size_t m = 0; m < nt; ++m) b.add_target("m" + std::to_string(m));
  for (NodeIndex n = 0; n < ns; ++n) {
    for (NodeIndex m = 0; m < nt; ++m) {
      if (coin(rng)) b.add_edge(n, m);
    }
  }
  return std::move(b).build();
}

}  // namespace stree::testing
