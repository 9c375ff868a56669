#pragma once

#include <compare>
#include <iosfwd>
#include <vector>

#include "stree/basket.hpp"
#include "stree/graph.hpp"
#include "stree/tree.hpp"

namespace stree {

// [sources, targets] with both sides sorted ascending.
struct Biclique {
  std::vector<NodeIndex> sources;
  std::vector<NodeIndex> targets;

  // Both sides are subsets of the other's sides (equality included).
  bool contained_in(const Biclique& other) const;
  Biclique swapped() const { return {targets, sources}; }

  friend auto operator<=>(const Biclique&, const Biclique&) = default;
};

// Sorted, duplicate-free collection; the canonical form for comparison.
using BicliqueSet = std::vector<Biclique>;

BicliqueSet canonicalize(std::vector<Biclique> bicliques);

// DFS over the tree emitting [path sources, targets ending at x] for every
// leaf, branch and narrow node x whose residual target set is non-empty.
// Results are in the tree's own orientation.
BicliqueSet find_mhi_candidates(const STree& tree);

// Drops candidates contained in a biclique represented on the opposite tree
// (exact duplicates survive once). Candidates are given in the original
// graph's orientation; `target_tree` was built on the graph and
// `source_tree` on its transpose.
BicliqueSet merge(const BicliqueSet& from_target_tree,
                  const BicliqueSet& from_source_tree,
                  const STree& target_tree, const STree& source_tree);

// All maximal half-isolated bicliques of g, via S-trees on both sides.
BicliqueSet solve_mhibp(const BipartiteGraph& g, const BasketConfig& config = {});

// Exhaustive oracle. Refuses graphs with more than kBruteForceLimit nodes
// on either side.
inline constexpr std::size_t kBruteForceLimit = 14;
BicliqueSet brute_force_mhi(const BipartiteGraph& g);

bool is_biclique(const BipartiteGraph& g, const Biclique& b);
// Complete, and at least one side has no edge leaving the biclique.
bool is_half_isolated(const BipartiteGraph& g, const Biclique& b);

// One JSON object per line: {"sources":[labels],"targets":[labels]}.
void write_bicliques_jsonl(std::ostream& out, const BipartiteGraph& g,
                           const BicliqueSet& bicliques);

}  // namespace stree
