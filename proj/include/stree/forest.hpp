#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stree/basket.hpp"
#include "stree/detector.hpp"
#include "stree/graph.hpp"
#include "stree/tree.hpp"

namespace stree {

struct Dimension {
  std::string name;
  Mode mode = Mode::ARBG;
};

struct KRow {
  std::string id;
  std::vector<std::string> values;  // one per dimension
};

// 1+K records: an entity id plus K attribute values per row.
struct KDataset {
  std::string id_field = "id";
  std::vector<Dimension> dims;
  std::vector<KRow> rows;

  std::size_t k() const { return dims.size(); }
  // Throws IngestError (line = row number + 1 for the header) on a row with
  // the wrong arity or an empty id/value, ContractError if K == 0.
  void validate() const;
};

// One S-tree per dimension over the id x A_k bipartite graph, weighted by
// w_k = ln(q_k), q_k = number of distinct values of A_k. Every graph
// interns ids in the same order, so source indices line up across trees.
struct SForest {
  std::vector<Dimension> dims;
  std::vector<std::string> ids;
  std::vector<BipartiteGraph> graphs;
  std::vector<BasketSet> baskets;
  std::vector<STree> trees;
  std::vector<double> weights;

  std::size_t k() const { return dims.size(); }
};

SForest build_forest(const KDataset& data, double c = 1.0);

struct BoundaryOverride {
  std::optional<double> thickness;
  std::optional<std::uint32_t> depth;
};

struct ForestScores {
  std::vector<BoundaryParams> params;        // per dimension
  std::vector<std::vector<double>> per_dim;  // s_k(n)
  std::vector<double> total;                 // S(n) = sum_k w_k s_k(n)
  SuspiciousnessRanking ranking;
};

// `overrides` is empty (per-tree defaults everywhere) or has one entry per
// dimension.
ForestScores forest_scores(const SForest& forest,
                           std::span<const BoundaryOverride> overrides = {});

// CSV with a header row; first column is the id, the rest are A_1..A_K.
// Double-quoted fields with "" escapes are accepted; records may not span
// lines. `modes` maps every attribute column name to its Mode.
KDataset read_kdataset_csv(std::istream& in, const std::map<std::string, Mode>& modes);
void write_kdataset_csv(std::ostream& out, const KDataset& data);

// Sidecar schema: a JSON object {"column": "aobg"|"arbg", ...}.
std::map<std::string, Mode> read_schema_json(std::istream& in);
void write_schema_json(std::ostream& out, const KDataset& data);

}  // namespace stree
