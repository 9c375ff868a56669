#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stree/basket.hpp"
#include "stree/graph.hpp"

namespace stree {

// Index of a node inside one STree. The root is always 0.
// Node ids follow pre-order, so every subtree is a contiguous id range.
using TreeNodeRef = std::uint32_t;

enum class NodeClass { Leaf, Branch, Narrow, PassThrough };

std::string_view to_string(NodeClass c);

// Prefix tree over globally ordered baskets. Every non-root node x carries
//   sn  - the source it stands for,
//   sus - the summed f-score of the baskets that passed through x,
//   tn  - those baskets' targets (sorted ascending).
// Nodes are stored flat; tn and children live in CSR arrays built once
// after all baskets are inserted.
class STree {
 public:
  STree() = default;

  static STree build(std::span<const Basket> baskets);

  static constexpr TreeNodeRef root() { return 0; }

  // Number of non-root nodes.
  std::size_t node_count() const { return sn_.size() - 1; }
  std::size_t num_baskets() const { return num_baskets_; }
  // Sum of basket lengths the tree was built from.
  std::size_t basket_mass() const { return basket_mass_; }
  // Longest root-to-leaf path (root excluded).
  std::uint32_t height() const { return height_; }

  NodeIndex sn(TreeNodeRef x) const { return sn_[x]; }
  double sus(TreeNodeRef x) const { return sus_[x]; }
  TreeNodeRef parent(TreeNodeRef x) const { return parent_[x]; }
  // Root is depth 0; its children are depth 1.
  std::uint32_t depth(TreeNodeRef x) const { return depth_[x]; }
  std::span<const NodeIndex> tn(TreeNodeRef x) const;
  // Children in insertion order.
  std::span<const TreeNodeRef> children(TreeNodeRef x) const;

  std::optional<TreeNodeRef> child(TreeNodeRef x, NodeIndex sn) const;

  // Throws ContractError for the root.
  NodeClass classify(TreeNodeRef x) const;

  // Ancestor chain from the root's child down to x (root excluded).
  std::vector<TreeNodeRef> path_of(TreeNodeRef x) const;

  // x.tn minus the union of its children's tn.
  std::vector<NodeIndex> residual_targets(TreeNodeRef x) const;

  // x and everything below it, pre-order.
  std::vector<TreeNodeRef> subtree(TreeNodeRef x) const;

  // Node where the basket of `target` ended; nullopt for an empty or
  // unknown basket.
  std::optional<TreeNodeRef> terminal_of(NodeIndex target) const;

  // f of the basket built for `target` (0 if there was none).
  double basket_f(NodeIndex target) const;

  // Pre-order text rendering, one `depth<TAB>label<TAB>sus<TAB>|tn|` line
  // per non-root node, children in insertion order.
  void dump(std::ostream& out,
            const std::function<std::string(NodeIndex)>& label) const;

 private:
  TreeNodeRef add_node(NodeIndex sn, TreeNodeRef parent, std::uint32_t depth);

  // One entry per node, root at 0. Kept as separate arrays since most
  // passes read a single field.
  std::vector<NodeIndex> sn_;
  std::vector<double> sus_;
  std::vector<TreeNodeRef> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> tn_offsets_;
  std::vector<NodeIndex> tn_;
  std::vector<std::uint32_t> child_offsets_;
  std::vector<TreeNodeRef> child_refs_;   // insertion order
  std::vector<TreeNodeRef> child_by_sn_;  // same spans, ascending sn

  static constexpr TreeNodeRef kNoTerminal = 0;
  std::vector<TreeNodeRef> terminal_;  // indexed by basket target
  std::vector<double> basket_f_;       // indexed by basket target

  std::size_t num_baskets_ = 0;
  std::size_t basket_mass_ = 0;
  std::uint32_t height_ = 0;
};

// Structural self-check of a built tree.
struct TreeAudit {
  std::size_t anti_monotone_violations = 0;  // parent.sus < child.sus or tn not nested
  std::size_t sus_mismatches = 0;            // sus != sum of f over tn (rel 1e-9)
  std::size_t tn_mass = 0;                   // sum of |tn| over nodes
  std::size_t node_count = 0;
  std::size_t basket_mass = 0;
  std::size_t max_basket_length = 0;
  std::uint32_t height = 0;

  bool ok() const {
    return anti_monotone_violations == 0 && sus_mismatches == 0 &&
           tn_mass == basket_mass && node_count <= basket_mass &&
           height <= max_basket_length;
  }
};

// Checks parent/child pairs, which covers every ancestor by transitivity.
TreeAudit audit_tree(const STree& tree, std::span<const Basket> baskets);

}  // namespace stree
