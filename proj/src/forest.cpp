#include "stree/forest.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "stree/errors.hpp"

namespace stree {
namespace {

std::vector<std::string> parse_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"' && field.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field += ch;
    }
  }
  if (quoted) throw IngestError(line_no, "unterminated quoted field");
  fields.push_back(std::move(field));
  return fields;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void KDataset::validate() const {
  if (dims.empty()) throw ContractError("1+K dataset needs K >= 1");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const KRow& row = rows[r];
    if (row.values.size() != dims.size()) {
      throw IngestError(r + 2, "expected " + std::to_string(dims.size()) +
                                   " attribute values, got " +
                                   std::to_string(row.values.size()));
    }
    if (row.id.empty()) throw IngestError(r + 2, "empty id");
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (row.values[k].empty()) {
        throw IngestError(r + 2, "missing value for '" + dims[k].name + "'");
      }
    }
  }
}

SForest build_forest(const KDataset& data, double c) {
  data.validate();
  if (data.rows.empty()) throw ContractError("1+K dataset has no rows");

  SForest forest;
  forest.dims = data.dims;
  std::set<std::string> seen;
  for (const KRow& row : data.rows) {
    if (seen.insert(row.id).second) forest.ids.push_back(row.id);
  }

  for (std::size_t k = 0; k < data.k(); ++k) {
    GraphBuilder builder;
    for (const std::string& id : forest.ids) builder.add_source(id);
    for (const KRow& row : data.rows) builder.add_edge(row.id, row.values[k]);
    BipartiteGraph g = std::move(builder).build();

    BasketConfig config;
    config.mode = data.dims[k].mode;
    config.c = c;
    BasketSet baskets = build_baskets(g, config);
    check_basket_mass(baskets.baskets, g);
    forest.trees.push_back(STree::build(baskets.baskets));
    forest.weights.push_back(std::log(static_cast<double>(g.num_targets())));
    forest.baskets.push_back(std::move(baskets));
    forest.graphs.push_back(std::move(g));
  }
  return forest;
}

ForestScores forest_scores(const SForest& forest,
                           std::span<const BoundaryOverride> overrides) {
  if (!overrides.empty() && overrides.size() != forest.k()) {
    throw ContractError("need one boundary override per dimension");
  }
  ForestScores out;
  out.total.assign(forest.ids.size(), 0.0);
  for (std::size_t k = 0; k < forest.k(); ++k) {
    const STree& tree = forest.trees[k];
    BoundaryParams params;
    const BoundaryOverride none;
    const BoundaryOverride& o = overrides.empty() ? none : overrides[k];
    params.thickness = o.thickness ? *o.thickness : default_thickness(tree);
    params.depth = o.depth ? *o.depth : default_depth(forest.baskets[k].baskets, tree);

    std::vector<double> s =
        s_scores(tree, select_suspicious(tree, params), forest.ids.size());
    for (std::size_t n = 0; n < s.size(); ++n) out.total[n] += forest.weights[k] * s[n];
    out.params.push_back(params);
    out.per_dim.push_back(std::move(s));
  }
  out.ranking = rank_sources(forest.ids, out.total);
  return out;
}

KDataset read_kdataset_csv(std::istream& in, const std::map<std::string, Mode>& modes) {
  KDataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = parse_csv_line(line, line_no);
    if (!have_header) {
      if (fields.size() < 2) throw IngestError(line_no, "header needs an id column and >= 1 attribute");
      data.id_field = fields[0];
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto it = modes.find(fields[i]);
        if (it == modes.end()) {
          throw IngestError(line_no, "no mode configured for column '" + fields[i] + "'");
        }
        data.dims.push_back({fields[i], it->second});
      }
      for (const auto& [name, mode] : modes) {
        bool present = false;
        for (const Dimension& d : data.dims) present |= d.name == name;
        if (!present) throw IngestError(line_no, "schema column '" + name + "' not in header");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != data.dims.size() + 1) {
      throw IngestError(line_no, "expected " + std::to_string(data.dims.size() + 1) +
                                     " fields, got " + std::to_string(fields.size()));
    }
    KRow row;
    row.id = std::move(fields[0]);
    row.values.assign(std::make_move_iterator(fields.begin() + 1),
                      std::make_move_iterator(fields.end()));
    if (row.id.empty()) throw IngestError(line_no, "empty id");
    for (std::size_t k = 0; k < row.values.size(); ++k) {
      if (row.values[k].empty()) {
        throw IngestError(line_no, "missing value for '" + data.dims[k].name + "'");
      }
    }
    data.rows.push_back(std::move(row));
  }
  if (!have_header) throw IngestError(0, "empty 1+K file");
  return data;
}

void write_kdataset_csv(std::ostream& out, const KDataset& data) {
  out << csv_escape(data.id_field);
  for (const Dimension& d : data.dims) out << ',' << csv_escape(d.name);
  out << '\n';
  for (const KRow& row : data.rows) {
    out << csv_escape(row.id);
    for (const std::string& v : row.values) out << ',' << csv_escape(v);
    out << '\n';
  }
}

std::map<std::string, Mode> read_schema_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(0, std::string("schema: ") + e.what());
  }
  if (!doc.is_object()) throw IngestError(0, "schema must be a JSON object");
  std::map<std::string, Mode> modes;
  for (const auto& [column, value] : doc.items()) {
    if (!value.is_string()) throw IngestError(0, "schema: mode for '" + column + "' must be a string");
    modes[column] = parse_mode(value.get<std::string>());
  }
  return modes;
}

void write_schema_json(std::ostream& out, const KDataset& data) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (const Dimension& d : data.dims) doc[d.name] = std::string(to_string(d.mode));
  out << doc.dump(2) << '\n';
}

}  // namespace stree
