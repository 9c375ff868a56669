#include <cstdint>
#include <string>

#include "stree/errors.hpp"
#include "stree/mhibp.hpp"

namespace stree {

BicliqueSet brute_force_mhi(const BipartiteGraph& g) {
  const std::size_t ns = g.num_sources();
  const std::size_t nt = g.num_targets();
  if (ns > kBruteForceLimit || nt > kBruteForceLimit) {
    throw ContractError("brute_force_mhi refuses " + std::to_string(ns) + "x" +
                        std::to_string(nt) + " (limit " +
                        std::to_string(kBruteForceLimit) + " per side)");
  }
  using Mask = std::uint32_t;
  std::vector<Mask> h(ns, 0), in(nt, 0);
  for (const Edge& e : g.edges()) {
    h[e.source] |= Mask{1} << e.target;
    in[e.target] |= Mask{1} << e.source;
  }

  struct Pair { Mask s, t; };
  std::vector<Pair> half_isolated;
  const Mask all_sources = (Mask{1} << ns) - 1;
  for (Mask s = 1; s <= all_sources && ns > 0; ++s) {
    Mask common = (Mask{1} << nt) - 1;
    for (std::size_t n = 0; n < ns; ++n) {
      if (s >> n & 1) common &= h[n];
    }
    // Every non-empty t within the common neighborhood is a biclique.
    for (Mask t = common; t != 0; t = (t - 1) & common) {
      bool sources_closed = true;
      for (std::size_t n = 0; n < ns && sources_closed; ++n) {
        if ((s >> n & 1) && h[n] != t) sources_closed = false;
      }
      bool targets_closed = true;
      for (std::size_t m = 0; m < nt && targets_closed; ++m) {
        if ((t >> m & 1) && (in[m] & ~s) != 0) targets_closed = false;
      }
      if (sources_closed || targets_closed) half_isolated.push_back({s, t});
    }
  }

  std::vector<Biclique> maximal;
  for (const Pair& a : half_isolated) {
    bool dominated = false;
    for (const Pair& b : half_isolated) {
      if ((a.s != b.s || a.t != b.t) && (a.s & ~b.s) == 0 && (a.t & ~b.t) == 0) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    Biclique out;
    for (std::size_t n = 0; n < ns; ++n) {
      if (a.s >> n & 1) out.sources.push_back(static_cast<NodeIndex>(n));
    }
    for (std::size_t m = 0; m < nt; ++m) {
      if (a.t >> m & 1) out.targets.push_back(static_cast<NodeIndex>(m));
    }
    maximal.push_back(std::move(out));
  }
  return canonicalize(std::move(maximal));
}

}  // namespace stree
