#include "stree/detector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "stree/errors.hpp"

namespace stree {

double default_thickness(const STree& tree) {
  if (tree.node_count() == 0) throw ContractError("default_thickness: empty tree");
  double total = 0.0;
  for (TreeNodeRef x = 1; x <= tree.node_count(); ++x) total += tree.sus(x);
  return total / static_cast<double>(tree.node_count());
}

std::uint32_t default_depth(std::span<const Basket> baskets, const STree& tree) {
  if (baskets.empty()) throw ContractError("default_depth: no baskets");
  const std::size_t mass = basket_mass(baskets);
  const std::size_t compacted = mass > tree.node_count() ? mass - tree.node_count() : 0;
  return std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(compacted / baskets.size()));
}

SuspiciousSet select_suspicious(const STree& tree, const BoundaryParams& params) {
  if (params.depth < 1) throw ContractError("boundary depth must be >= 1");
  if (!std::isfinite(params.thickness)) throw ContractError("boundary thickness must be finite");

  std::vector<char> marked(tree.node_count() + 1, 0);
  for (TreeNodeRef x = 1; x <= tree.node_count(); ++x) {
    if (tree.depth(x) != params.depth || tree.sus(x) < params.thickness) continue;
    // Paths are always marked whole, so the walk can stop at the first
    // marked ancestor.
    for (TreeNodeRef a = tree.parent(x); a != STree::root() && !marked[a];
         a = tree.parent(a)) {
      marked[a] = 1;
    }
    // Node ids are pre-order, so the subtree is the run of deeper nodes
    // that follows x.
    marked[x] = 1;
    for (TreeNodeRef y = x + 1; y <= tree.node_count() && tree.depth(y) > tree.depth(x); ++y) {
      marked[y] = 1;
    }
  }

  SuspiciousSet out;
  for (TreeNodeRef x = 1; x <= tree.node_count(); ++x) {
    if (marked[x]) out.nodes.push_back(x);
  }
  return out;
}

std::vector<double> s_scores(const STree& tree, const SuspiciousSet& selected,
                             std::size_t num_sources) {
  std::vector<double> s(num_sources, 0.0);
  for (TreeNodeRef x : selected.nodes) s.at(tree.sn(x)) += tree.sus(x);
  return s;
}

SuspiciousnessRanking rank_sources(std::span<const std::string> labels,
                                   std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw ContractError("rank_sources: labels and scores differ in length");
  }
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return labels[a] < labels[b];
  });
  SuspiciousnessRanking ranking;
  ranking.reserve(order.size());
  for (std::size_t i : order) ranking.push_back({labels[i], scores[i]});
  return ranking;
}

Detection detect(const BipartiteGraph& g, const DetectOptions& options) {
  Detection d;
  d.baskets = build_baskets(g, options.baskets);
  check_basket_mass(d.baskets.baskets, g);
  d.tree = STree::build(d.baskets.baskets);
  d.params.thickness = options.thickness ? *options.thickness : default_thickness(d.tree);
  d.params.depth = options.depth ? *options.depth : default_depth(d.baskets.baskets, d.tree);
  d.selected = select_suspicious(d.tree, d.params);
  d.scores = s_scores(d.tree, d.selected, g.num_sources());
  d.ranking = rank_sources(g.source_labels(), d.scores);
  return d;
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", score);
  return buf;
}

void write_ranking(std::ostream& out, const SuspiciousnessRanking& ranking) {
  for (const RankedSource& r : ranking) out << r.label << '\t' << format_score(r.score) << '\n';
}

}  // namespace stree
