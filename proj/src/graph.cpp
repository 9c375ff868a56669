#include "stree/graph.hpp"

#include <algorithm>

#include "stree/errors.hpp"

namespace stree {
namespace {

std::uint64_t edge_key(NodeIndex source, NodeIndex target) {
  return (static_cast<std::uint64_t>(source) << 32) | target;
}

// Counting-sort edges into CSR form keyed on `key`, storing `value`.
template <typename Key, typename Value>
void fill_csr(const std::vector<Edge>& edges, std::size_t num_keys, Key key,
              Value value, std::vector<std::size_t>& offsets,
              std::vector<NodeIndex>& out) {
  offsets.assign(num_keys + 1, 0);
  for (const Edge& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 0; i < num_keys; ++i) offsets[i + 1] += offsets[i];
  out.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) out[cursor[key(e)]++] = value(e);
  for (std::size_t i = 0; i < num_keys; ++i) {
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              out.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

std::span<const NodeIndex> slice(const std::vector<std::size_t>& offsets,
                                 const std::vector<NodeIndex>& data,
                                 NodeIndex i) {
  return {data.data() + offsets[i], offsets[i + 1] - offsets[i]};
}

}  // namespace

BipartiteGraph BipartiteGraph::from_pairs(
    std::span<const std::pair<std::string, std::string>> records) {
  GraphBuilder builder;
  std::size_t line = 0;
  for (const auto& [source, target] : records) {
    ++line;
    if (source.empty() || target.empty()) {
      throw IngestError(line, "empty node label");
    }
    builder.add_edge(source, target);
  }
  return std::move(builder).build();
}

std::span<const NodeIndex> BipartiteGraph::sources_of(NodeIndex target) const {
  return slice(target_offsets_, by_target_, target);
}

std::span<const NodeIndex> BipartiteGraph::targets_of(NodeIndex source) const {
  return slice(source_offsets_, by_source_, source);
}

std::span<const NodeIndex> BipartiteGraph::neighbors_of_target(NodeId m) const {
  if (m.side != Side::Target || m.index >= num_targets()) {
    throw LookupError("unknown target node " + std::to_string(m.index));
  }
  return sources_of(m.index);
}

std::span<const NodeIndex> BipartiteGraph::neighbors_of_source(NodeId n) const {
  if (n.side != Side::Source || n.index >= num_sources()) {
    throw LookupError("unknown source node " + std::to_string(n.index));
  }
  return targets_of(n.index);
}

bool BipartiteGraph::has_edge(NodeIndex source, NodeIndex target) const {
  if (source >= num_sources() || target >= num_targets()) return false;
  auto row = targets_of(source);
  return std::binary_search(row.begin(), row.end(), target);
}

std::optional<NodeIndex> BipartiteGraph::find_source(std::string_view label) const {
  auto it = source_index_.find(std::string(label));
  if (it == source_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeIndex> BipartiteGraph::find_target(std::string_view label) const {
  auto it = target_index_.find(std::string(label));
  if (it == target_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeIndex n = 0; n < num_sources(); ++n) {
    for (NodeIndex m : targets_of(n)) out.push_back({n, m});
  }
  return out;
}

BipartiteGraph BipartiteGraph::transposed() const {
  BipartiteGraph t;
  t.source_labels_ = target_labels_;
  t.target_labels_ = source_labels_;
  t.source_index_ = target_index_;
  t.target_index_ = source_index_;
  t.source_offsets_ = target_offsets_;
  t.by_source_ = by_target_;
  t.target_offsets_ = source_offsets_;
  t.by_target_ = by_source_;
  return t;
}

bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
  return a.source_labels_ == b.source_labels_ &&
         a.target_labels_ == b.target_labels_ &&
         a.source_offsets_ == b.source_offsets_ && a.by_source_ == b.by_source_;
}

GraphBuilder::GraphBuilder(const BipartiteGraph& base) {
  for (const auto& label : base.source_labels()) add_source(label);
  for (const auto& label : base.target_labels()) add_target(label);
  edges_.reserve(base.num_edges());
  for (const Edge& e : base.edges()) add_edge(e.source, e.target);
}

NodeIndex GraphBuilder::add_source(std::string_view label) {
  auto [it, inserted] = source_index_.try_emplace(
      std::string(label), static_cast<NodeIndex>(source_labels_.size()));
  if (inserted) source_labels_.emplace_back(label);
  return it->second;
}

NodeIndex GraphBuilder::add_target(std::string_view label) {
  auto [it, inserted] = target_index_.try_emplace(
      std::string(label), static_cast<NodeIndex>(target_labels_.size()));
  if (inserted) target_labels_.emplace_back(label);
  return it->second;
}

bool GraphBuilder::add_edge(NodeIndex source, NodeIndex target) {
  if (source >= source_labels_.size() || target >= target_labels_.size()) {
    throw LookupError("edge endpoint not interned");
  }
  if (!seen_.insert(edge_key(source, target)).second) return false;
  edges_.push_back({source, target});
  return true;
}

bool GraphBuilder::add_edge(std::string_view source_label,
                            std::string_view target_label) {
  NodeIndex n = add_source(source_label);
  NodeIndex m = add_target(target_label);
  return add_edge(n, m);
}

bool GraphBuilder::has_source(std::string_view label) const {
  return source_index_.contains(std::string(label));
}

bool GraphBuilder::has_target(std::string_view label) const {
  return target_index_.contains(std::string(label));
}

BipartiteGraph GraphBuilder::build() && {
  BipartiteGraph g;
  fill_csr(
      edges_, source_labels_.size(), [](const Edge& e) { return e.source; },
      [](const Edge& e) { return e.target; }, g.source_offsets_, g.by_source_);
  fill_csr(
      edges_, target_labels_.size(), [](const Edge& e) { return e.target; },
      [](const Edge& e) { return e.source; }, g.target_offsets_, g.by_target_);
  g.source_labels_ = std::move(source_labels_);
  g.target_labels_ = std::move(target_labels_);
  g.source_index_ = std::move(source_index_);
  g.target_index_ = std::move(target_index_);
  edges_.clear();
  seen_.clear();
  return g;
}

}  // namespace stree
