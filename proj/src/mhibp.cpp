#include "stree/mhibp.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace stree {
namespace {

bool is_subset(const std::vector<NodeIndex>& small, const std::vector<NodeIndex>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Biclique represented by a node x of `tree`, mapped back to the original
// orientation (the tree was built on the transposed graph).
Biclique represented_by(const STree& tree, TreeNodeRef x) {
  Biclique b;
  b.sources = tree.residual_targets(x);
  for (TreeNodeRef a : tree.path_of(x)) b.targets.push_back(tree.sn(a));
  std::sort(b.targets.begin(), b.targets.end());
  return b;
}

// Keeps each candidate unless a biclique on the path mapped by one of its
// members' baskets in `opposite` contains it. With `keep_equal`, a
// candidate equal to that biclique survives; the other side then drops its
// copy.
BicliqueSet prune_side(const BicliqueSet& candidates, const STree& opposite,
                       bool keep_equal) {
  BicliqueSet kept;
  std::unordered_map<TreeNodeRef, Biclique> cache;
  for (const Biclique& cand : candidates) {
    const NodeIndex anchor = cand.sources.front();
    bool contained = false;
    // Of the leaf/branch/narrow nodes on the path mapped by B(anchor), only
    // the one where that basket ends has anchor on its residual side, so it
    // is the only one that can contain the candidate.
    if (auto end = opposite.terminal_of(anchor)) {
      auto [it, fresh] = cache.try_emplace(*end);
      if (fresh) it->second = represented_by(opposite, *end);
      const Biclique& other = it->second;
      contained = cand.contained_in(other) && !(keep_equal && cand == other);
    }
    if (!contained) kept.push_back(cand);
  }
  return kept;
}

}  // namespace

bool Biclique::contained_in(const Biclique& other) const {
  return is_subset(sources, other.sources) && is_subset(targets, other.targets);
}

BicliqueSet canonicalize(std::vector<Biclique> bicliques) {
  for (Biclique& b : bicliques) {
    std::sort(b.sources.begin(), b.sources.end());
    std::sort(b.targets.begin(), b.targets.end());
  }
  std::sort(bicliques.begin(), bicliques.end());
  bicliques.erase(std::unique(bicliques.begin(), bicliques.end()), bicliques.end());
  return bicliques;
}

BicliqueSet find_mhi_candidates(const STree& tree) {
  std::vector<Biclique> found;
  if (tree.node_count() == 0) return found;

  NodeIndex target_space = 0;
  for (TreeNodeRef c : tree.children(STree::root())) {
    auto tn = tree.tn(c);
    if (!tn.empty()) target_space = std::max(target_space, tn.back() + 1);
  }
  std::vector<TreeNodeRef> stamp(target_space, STree::root());

  std::vector<NodeIndex> path;
  // (node, next child position); the root sits at the bottom of the stack.
  std::vector<std::pair<TreeNodeRef, std::size_t>> stack{{STree::root(), 0}};
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    auto kids = tree.children(x);
    if (next == 0 && x != STree::root()) {
      auto own = tree.tn(x);
      std::size_t covered = 0;
      for (TreeNodeRef c : kids) covered += tree.tn(c).size();
      // Children's tn are disjoint subsets of x's, so a size gap is exactly
      // the targets whose baskets stop at x.
      if (own.size() > covered) {
        for (TreeNodeRef c : kids) {
          for (NodeIndex m : tree.tn(c)) stamp[m] = x;
        }
        Biclique b;
        b.sources = path;
        std::sort(b.sources.begin(), b.sources.end());
        for (NodeIndex m : own) {
          if (kids.empty() || stamp[m] != x) b.targets.push_back(m);
        }
        found.push_back(std::move(b));
      }
    }
    if (next < kids.size()) {
      TreeNodeRef c = kids[next++];
      path.push_back(tree.sn(c));
      stack.emplace_back(c, 0);
    } else {
      stack.pop_back();
      if (!stack.empty()) path.pop_back();
    }
  }
  return canonicalize(std::move(found));
}

BicliqueSet merge(const BicliqueSet& from_target_tree,
                  const BicliqueSet& from_source_tree,
                  const STree& target_tree, const STree& source_tree) {
  BicliqueSet kept = prune_side(from_target_tree, source_tree, /*keep_equal=*/true);

  // Mirror image: the candidate's anchor is a target, the opposite tree is
  // the target tree, and everything is viewed transposed.
  BicliqueSet mirrored;
  mirrored.reserve(from_source_tree.size());
  for (const Biclique& b : from_source_tree) mirrored.push_back(b.swapped());
  for (const Biclique& b : prune_side(mirrored, target_tree, /*keep_equal=*/false)) {
    kept.push_back(b.swapped());
  }
  return canonicalize(std::move(kept));
}

BicliqueSet solve_mhibp(const BipartiteGraph& g, const BasketConfig& config) {
  if (g.empty()) return {};
  const BasketSet target_baskets = build_baskets(g, config);
  const STree target_tree = STree::build(target_baskets.baskets);

  const BipartiteGraph t = g.transposed();
  const BasketSet source_baskets = build_baskets(t, config);
  const STree source_tree = STree::build(source_baskets.baskets);

  BicliqueSet from_target = find_mhi_candidates(target_tree);
  BicliqueSet from_source;
  for (const Biclique& b : find_mhi_candidates(source_tree)) {
    from_source.push_back(b.swapped());
  }
  return merge(canonicalize(std::move(from_target)),
               canonicalize(std::move(from_source)), target_tree, source_tree);
}

bool is_biclique(const BipartiteGraph& g, const Biclique& b) {
  if (b.sources.empty() || b.targets.empty()) return false;
  for (NodeIndex n : b.sources) {
    for (NodeIndex m : b.targets) {
      if (!g.has_edge(n, m)) return false;
    }
  }
  return true;
}

bool is_half_isolated(const BipartiteGraph& g, const Biclique& b) {
  if (!is_biclique(g, b)) return false;
  // Complete, so isolation on a side means degree == other side's size.
  bool sources_closed = std::all_of(b.sources.begin(), b.sources.end(), [&](NodeIndex n) {
    return g.targets_of(n).size() == b.targets.size();
  });
  bool targets_closed = std::all_of(b.targets.begin(), b.targets.end(), [&](NodeIndex m) {
    return g.sources_of(m).size() == b.sources.size();
  });
  return sources_closed || targets_closed;
}

void write_bicliques_jsonl(std::ostream& out, const BipartiteGraph& g,
                           const BicliqueSet& bicliques) {
  for (const Biclique& b : bicliques) {
    nlohmann::json row;
    row["sources"] = nlohmann::json::array();
    row["targets"] = nlohmann::json::array();
    for (NodeIndex n : b.sources) row["sources"].push_back(g.source_label(n));
    for (NodeIndex m : b.targets) row["targets"].push_back(g.target_label(m));
    out << row.dump() << '\n';
  }
}

}  // namespace stree
