#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace stree {

// Dense per-side index. Sources and targets are numbered independently,
// both starting at 0, in first-appearance order.
using NodeIndex = std::uint32_t;

enum class Side : std::uint8_t { Source, Target };

struct NodeId {
  NodeIndex index = 0;
  Side side = Side::Source;

  static constexpr NodeId source(NodeIndex i) { return {i, Side::Source}; }
  static constexpr NodeId target(NodeIndex i) { return {i, Side::Target}; }

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

struct Edge {
  NodeIndex source = 0;
  NodeIndex target = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphBuilder;

// Immutable bipartite graph with interned labels and a deduplicated edge
// set. Adjacency is stored CSR-style in both directions; every neighbor
// list is sorted ascending.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  // Interns labels in first-appearance order; duplicate pairs collapse.
  static BipartiteGraph from_pairs(
      std::span<const std::pair<std::string, std::string>> records);

  std::size_t num_sources() const { return source_labels_.size(); }
  std::size_t num_targets() const { return target_labels_.size(); }
  std::size_t num_edges() const { return by_source_.size(); }
  bool empty() const { return num_edges() == 0; }

  // I(m): sources adjacent to target m.
  std::span<const NodeIndex> sources_of(NodeIndex target) const;
  // H(n): targets adjacent to source n.
  std::span<const NodeIndex> targets_of(NodeIndex source) const;

  // Side-checked variants; throw LookupError for an unknown node or a
  // node of the wrong side.
  std::span<const NodeIndex> neighbors_of_target(NodeId m) const;
  std::span<const NodeIndex> neighbors_of_source(NodeId n) const;

  bool has_edge(NodeIndex source, NodeIndex target) const;

  const std::string& source_label(NodeIndex n) const { return source_labels_.at(n); }
  const std::string& target_label(NodeIndex m) const { return target_labels_.at(m); }
  const std::vector<std::string>& source_labels() const { return source_labels_; }
  const std::vector<std::string>& target_labels() const { return target_labels_; }

  std::optional<NodeIndex> find_source(std::string_view label) const;
  std::optional<NodeIndex> find_target(std::string_view label) const;

  // Edges ordered by (source, target).
  std::vector<Edge> edges() const;

  // Swaps the roles of sources and targets; labels travel with their nodes.
  BipartiteGraph transposed() const;

  friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b);

 private:
  friend class GraphBuilder;

  std::vector<std::string> source_labels_;
  std::vector<std::string> target_labels_;
  std::unordered_map<std::string, NodeIndex> source_index_;
  std::unordered_map<std::string, NodeIndex> target_index_;

  std::vector<std::size_t> source_offsets_;  // size num_sources + 1
  std::vector<NodeIndex> by_source_;         // targets, grouped by source
  std::vector<std::size_t> target_offsets_;  // size num_targets + 1
  std::vector<NodeIndex> by_target_;         // sources, grouped by target
};

// Accumulates nodes and edges, then freezes them into a BipartiteGraph.
class GraphBuilder {
 public:
  GraphBuilder() = default;
  // Seeds the builder with an existing graph's nodes (same indices) and edges.
  explicit GraphBuilder(const BipartiteGraph& base);

  NodeIndex add_source(std::string_view label);
  NodeIndex add_target(std::string_view label);
  // Returns false if the edge was already present.
  bool add_edge(NodeIndex source, NodeIndex target);
  bool add_edge(std::string_view source_label, std::string_view target_label);

  bool has_source(std::string_view label) const;
  bool has_target(std::string_view label) const;
  std::size_t num_sources() const { return source_labels_.size(); }
  std::size_t num_targets() const { return target_labels_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  BipartiteGraph build() &&;

 private:
  std::vector<std::string> source_labels_;
  std::vector<std::string> target_labels_;
  std::unordered_map<std::string, NodeIndex> source_index_;
  std::unordered_map<std::string, NodeIndex> target_index_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace stree
