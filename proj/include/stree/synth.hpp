#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stree/forest.hpp"
#include "stree/graph.hpp"

namespace stree {

// Erdos-Renyi bipartite graph: each (source, target) pair is present with
// probability edge_prob. Nodes are labeled s0.. and t0.. and all of them
// are interned, isolated or not.
BipartiteGraph gen_background(std::size_t n_sources, std::size_t n_targets,
                              double edge_prob, std::uint64_t seed);

enum class CamKind { None, ACam, PCam };

CamKind parse_cam_kind(std::string_view text);

struct InjectionSpec {
  std::size_t n_fraud_sources = 200;
  std::size_t lambda = 10;  // fraud targets
  double rho = 1.0;         // synchrony, in (0, 1]
  std::size_t theta = 0;    // camouflage edges per fraud node
  CamKind cam_kind = CamKind::None;
  std::uint64_t seed = 0;
  // Draw |W| ~ Binomial(lambda, rho) (at least 1) instead of round(rho * lambda).
  bool binomial_w = false;
};

struct LabeledGraph {
  BipartiteGraph graph;
  std::vector<NodeIndex> fraud_sources;  // ascending
  std::vector<NodeIndex> fraud_targets;  // ascending

  bool is_fraud_source(NodeIndex n) const;
  bool is_fraud_target(NodeIndex m) const;
  // (label, 0|1) for every source, in source index order.
  std::vector<std::pair<std::string, int>> source_labels() const;
};

// Adds n_fraud_sources fresh sources (fraud_s*) and lambda fresh targets
// (fraud_t*); every fraud source links to a uniform subset of the fraud
// targets and nothing else. Camouflage from the spec is then applied.
LabeledGraph inject_group(const BipartiteGraph& g, const InjectionSpec& spec);

// ACam: each fraud source gains theta edges to distinct non-fraud targets.
// PCam: each fraud target gains theta edges from distinct non-fraud sources.
LabeledGraph add_camouflage(const LabeledGraph& lg, CamKind kind, std::size_t theta,
                            std::uint64_t seed);

// Registration-style 1+K data: one row per account. On a critical dimension
// a fraud account takes a value from a small shared pool (with probability
// fraud_share_prob), otherwise every account draws from a large pool. On a
// noise dimension everyone draws from the same small pool.
struct KDataGenSpec {
  std::size_t n_accounts = 2000;
  double fraud_fraction = 0.1;
  std::size_t critical_dims = 2;
  std::size_t noise_dims = 0;
  std::uint64_t seed = 0;
  std::size_t accounts_per_fraud_value = 10;
  double legit_pool_factor = 2.0;  // legit pool = factor * n_accounts values
  std::size_t noise_pool = 5;
  double fraud_share_prob = 0.9;
};

struct LabeledKDataset {
  KDataset data;
  std::vector<std::string> fraud_ids;
  std::vector<std::pair<std::string, int>> labels() const;
};

LabeledKDataset gen_kdataset(const KDataGenSpec& spec);

// Two fraud groups on a 2-dimension dataset: A shares values on dim_1, B on
// dim_2, and an `overlap` fraction of A's accounts belong to B as well.
struct OverlapGenSpec {
  std::size_t n_legit = 2000;
  std::size_t group_size = 100;  // |A| == |B|
  double overlap = 0.3;
  std::size_t accounts_per_fraud_value = 10;
  double legit_pool_factor = 100.0;  // legit values are effectively unique
  std::uint64_t seed = 0;
};

struct OverlapDataset {
  LabeledKDataset labeled;
  std::vector<std::string> group_a;
  std::vector<std::string> group_b;
  std::vector<std::string> shared;  // A intersect B
};

OverlapDataset gen_overlap_dataset(const OverlapGenSpec& spec);

}  // namespace stree
