#include "stree/tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "stree/errors.hpp"

namespace stree {

std::string_view to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Leaf: return "leaf";
    case NodeClass::Branch: return "branch";
    case NodeClass::Narrow: return "narrow";
    case NodeClass::PassThrough: return "pass-through";
  }
  return "?";
}

STree STree::build(std::span<const Basket> baskets) {
  STree t;
  t.add_node(0, root(), 0);  // root
  t.num_baskets_ = baskets.size();

  NodeIndex max_target = 0;
  for (const Basket& b : baskets) max_target = std::max(max_target, b.target);
  const std::size_t target_space = baskets.empty() ? 0 : std::size_t{max_target} + 1;
  t.terminal_.assign(target_space, kNoTerminal);
  t.basket_f_.assign(target_space, 0.0);
  for (const Basket& b : baskets) {
    t.basket_f_[b.target] = b.f;
    t.basket_mass_ += b.sources.size();
  }
  if (t.basket_mass_ >= std::numeric_limits<std::uint32_t>::max()) {
    throw ContractError("S-tree: more than 2^32 - 1 basket entries");
  }

  // Sorting the source lists lexicographically makes shared prefixes
  // adjacent, so the trie grows in pre-order with one stack and no lookups.
  std::vector<std::uint32_t> order;
  for (std::uint32_t i = 0; i < baskets.size(); ++i) {
    if (!baskets[i].sources.empty()) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return baskets[a].sources < baskets[b].sources;
  });

  std::vector<std::uint32_t> first;  // first slot of `order` under each node
  std::vector<std::uint32_t> count;  // baskets through each node
  first.reserve(t.basket_mass_ + 1);
  count.reserve(t.basket_mass_ + 1);
  t.sn_.reserve(t.basket_mass_ + 1);
  t.parent_.reserve(t.basket_mass_ + 1);
  t.depth_.reserve(t.basket_mass_ + 1);
  first.push_back(0);
  count.push_back(0);
  std::vector<TreeNodeRef> path;
  const std::vector<NodeIndex>* prev = nullptr;
  for (std::uint32_t slot = 0; slot < order.size(); ++slot) {
    const std::uint32_t input = order[slot];
    const auto& seq = baskets[input].sources;
    std::size_t shared = 0;
    if (prev != nullptr) {
      const std::size_t limit = std::min(prev->size(), seq.size());
      while (shared < limit && (*prev)[shared] == seq[shared]) ++shared;
    }
    path.resize(shared);
    for (TreeNodeRef x : path) ++count[x];
    for (std::size_t i = shared; i < seq.size(); ++i) {
      const TreeNodeRef parent = path.empty() ? root() : path.back();
      const TreeNodeRef x = t.add_node(seq[i], parent, static_cast<std::uint32_t>(i + 1));
      first.push_back(slot);
      count.push_back(1);
      path.push_back(x);
    }
    t.terminal_[baskets[input].target] = path.back();
    t.height_ = std::max(t.height_, static_cast<std::uint32_t>(seq.size()));
    prev = &seq;
  }

  // tn of a node is a contiguous run of `order`; store it sorted by target
  // and sum sus in that order.
  const std::size_t n_nodes = t.sn_.size();
  t.tn_offsets_.assign(n_nodes + 1, 0);
  for (std::size_t x = 1; x < n_nodes; ++x) t.tn_offsets_[x + 1] = t.tn_offsets_[x] + count[x];
  t.tn_.resize(t.tn_offsets_.back());
  t.sus_.reserve(n_nodes);
  t.sus_.push_back(0.0);  // root
  for (std::size_t x = 1; x < n_nodes; ++x) {
    auto* out = t.tn_.data() + t.tn_offsets_[x];
    for (std::uint32_t k = 0; k < count[x]; ++k) out[k] = baskets[order[first[x] + k]].target;
    if (count[x] > 1) std::sort(out, out + count[x]);
    double sus = 0.0;
    for (std::uint32_t k = 0; k < count[x]; ++k) sus += t.basket_f_[out[k]];
    t.sus_.push_back(sus);
  }

  // Children in insertion order, i.e. by the earliest input basket that
  // reaches them. Pre-order ids already group siblings under their parent.
  t.child_offsets_.assign(n_nodes + 1, 0);
  for (std::size_t x = 1; x < n_nodes; ++x) ++t.child_offsets_[t.parent_[x] + 1];
  for (std::size_t x = 0; x < n_nodes; ++x) t.child_offsets_[x + 1] += t.child_offsets_[x];
  t.child_refs_.resize(n_nodes - 1);
  std::vector<std::uint32_t>& cursor = first;  // no longer needed
  std::copy(t.child_offsets_.begin(), t.child_offsets_.end() - 1, cursor.begin());
  for (std::size_t x = 1; x < n_nodes; ++x) {
    t.child_refs_[cursor[t.parent_[x]]++] = static_cast<TreeNodeRef>(x);
  }
  // Siblings are created in ascending sn, which child() relies on.
  t.child_by_sn_ = t.child_refs_;
  std::vector<std::uint32_t> input_of(target_space, 0);
  for (std::uint32_t i = 0; i < baskets.size(); ++i) input_of[baskets[i].target] = i;
  std::vector<std::pair<std::uint32_t, TreeNodeRef>> keyed;
  for (std::size_t x = 0; x < n_nodes; ++x) {
    const std::uint32_t begin = t.child_offsets_[x], end = t.child_offsets_[x + 1];
    if (end - begin < 2) continue;
    keyed.clear();
    for (std::uint32_t i = begin; i < end; ++i) {
      const TreeNodeRef c = t.child_refs_[i];
      std::uint32_t earliest = std::numeric_limits<std::uint32_t>::max();
      for (NodeIndex m : t.tn(c)) earliest = std::min(earliest, input_of[m]);
      keyed.emplace_back(earliest, c);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::uint32_t i = begin; i < end; ++i) t.child_refs_[i] = keyed[i - begin].second;
  }
  return t;
}

TreeNodeRef STree::add_node(NodeIndex sn, TreeNodeRef parent, std::uint32_t depth) {
  sn_.push_back(sn);
  parent_.push_back(parent);
  depth_.push_back(depth);
  return static_cast<TreeNodeRef>(sn_.size() - 1);
}

std::span<const NodeIndex> STree::tn(TreeNodeRef x) const {
  if (x == root()) return {};
  return {tn_.data() + tn_offsets_[x], tn_offsets_[x + 1] - tn_offsets_[x]};
}

std::span<const TreeNodeRef> STree::children(TreeNodeRef x) const {
  return {child_refs_.data() + child_offsets_[x],
          child_offsets_[x + 1] - child_offsets_[x]};
}

std::optional<TreeNodeRef> STree::child(TreeNodeRef x, NodeIndex sn) const {
  auto begin = child_by_sn_.begin() + static_cast<std::ptrdiff_t>(child_offsets_[x]);
  auto end = child_by_sn_.begin() + static_cast<std::ptrdiff_t>(child_offsets_[x + 1]);
  auto it = std::lower_bound(begin, end, sn,
                             [&](TreeNodeRef c, NodeIndex v) { return sn_[c] < v; });
  if (it == end || sn_[*it] != sn) return std::nullopt;
  return *it;
}

NodeClass STree::classify(TreeNodeRef x) const {
  if (x == root() || x >= sn_.size()) {
    throw ContractError("classify: root or unknown node");
  }
  auto kids = children(x);
  if (kids.empty()) return NodeClass::Leaf;
  if (kids.size() > 1) return NodeClass::Branch;
  // The child's tn is nested in x's, so a size difference means strict.
  return tn(kids.front()).size() < tn(x).size() ? NodeClass::Narrow
                                                : NodeClass::PassThrough;
}

std::vector<TreeNodeRef> STree::path_of(TreeNodeRef x) const {
  std::vector<TreeNodeRef> path(depth_[x]);
  for (std::size_t i = path.size(); i > 0; --i) {
    path[i - 1] = x;
    x = parent_[x];
  }
  return path;
}

std::vector<NodeIndex> STree::residual_targets(TreeNodeRef x) const {
  std::vector<NodeIndex> covered;
  for (TreeNodeRef c : children(x)) {
    auto ctn = tn(c);
    covered.insert(covered.end(), ctn.begin(), ctn.end());
  }
  std::sort(covered.begin(), covered.end());
  auto own = tn(x);
  std::vector<NodeIndex> out;
  std::set_difference(own.begin(), own.end(), covered.begin(), covered.end(),
                      std::back_inserter(out));
  return out;
}

std::vector<TreeNodeRef> STree::subtree(TreeNodeRef x) const {
  std::vector<TreeNodeRef> out;
  std::vector<TreeNodeRef> stack{x};
  while (!stack.empty()) {
    TreeNodeRef y = stack.back();
    stack.pop_back();
    out.push_back(y);
    auto kids = children(y);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::optional<TreeNodeRef> STree::terminal_of(NodeIndex target) const {
  if (target >= terminal_.size() || terminal_[target] == kNoTerminal) {
    return std::nullopt;
  }
  return terminal_[target];
}

double STree::basket_f(NodeIndex target) const {
  return target < basket_f_.size() ? basket_f_[target] : 0.0;
}

void STree::dump(std::ostream& out,
                 const std::function<std::string(NodeIndex)>& label) const {
  if (sn_.empty()) return;
  char buf[64];
  for (TreeNodeRef x : subtree(root())) {
    if (x == root()) continue;
    std::snprintf(buf, sizeof buf, "%.6f", sus_[x]);
    out << depth_[x] << '\t' << label(sn_[x]) << '\t' << buf << '\t'
        << tn(x).size() << '\n';
  }
}

TreeAudit audit_tree(const STree& tree, std::span<const Basket> baskets) {
  TreeAudit a;
  a.node_count = tree.node_count();
  a.height = tree.height();
  for (const Basket& b : baskets) {
    a.basket_mass += b.sources.size();
    a.max_basket_length = std::max(a.max_basket_length, b.sources.size());
  }
  for (TreeNodeRef x = 1; x <= tree.node_count(); ++x) {
    auto own = tree.tn(x);
    a.tn_mass += own.size();

    double expected = 0.0;
    for (NodeIndex m : own) expected += tree.basket_f(m);
    const double scale = std::max({1.0, std::abs(expected), std::abs(tree.sus(x))});
    if (std::abs(expected - tree.sus(x)) > 1e-9 * scale) ++a.sus_mismatches;

    TreeNodeRef p = tree.parent(x);
    if (p == STree::root()) continue;
    auto up = tree.tn(p);
    bool nested = std::all_of(own.begin(), own.end(), [&](NodeIndex m) {
      return std::binary_search(up.begin(), up.end(), m);
    });
    const double sus_scale = std::max(1.0, std::abs(tree.sus(p)));
    if (!nested || tree.sus(p) < tree.sus(x) - 1e-9 * sus_scale) {
      ++a.anti_monotone_violations;
    }
  }
  return a;
}

}  // namespace stree
