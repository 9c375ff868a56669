#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stree/detector.hpp"
#include "stree/errors.hpp"
#include "stree/eval.hpp"
#include "stree/forest.hpp"
#include "stree/mhibp.hpp"
#include "stree/synth.hpp"

namespace py = pybind11;

namespace {

using Pairs = std::vector<std::pair<std::string, std::string>>;
using Ranking = std::vector<std::pair<std::string, double>>;

stree::BipartiteGraph graph_from(const Pairs& edges) {
  return stree::BipartiteGraph::from_pairs(edges);
}

Pairs edges_of(const stree::BipartiteGraph& g) {
  Pairs out;
  for (const stree::Edge& e : g.edges()) {
    out.emplace_back(g.source_label(e.source), g.target_label(e.target));
  }
  return out;
}

Ranking to_pairs(const stree::SuspiciousnessRanking& r) {
  Ranking out;
  for (const auto& row : r) out.emplace_back(row.label, row.score);
  return out;
}

stree::Ordering parse_ordering(const std::string& s) {
  if (s == "g") return stree::Ordering::GScore;
  if (s == "id") return stree::Ordering::NodeIndex;
  throw stree::ContractError("ordering must be 'g' or 'id'");
}

std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> named(
    const stree::BipartiteGraph& g, const stree::BicliqueSet& set) {
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> out;
  for (const auto& b : set) {
    auto& [s, t] = out.emplace_back();
    for (auto n : b.sources) s.push_back(g.source_label(n));
    for (auto m : b.targets) t.push_back(g.target_label(m));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "S-tree fraud detection and MHI biclique enumeration";

  py::register_exception<stree::Error>(m, "Error", PyExc_ValueError);

  m.def(
      "solve_mhibp",
      [](const Pairs& edges, const std::string& ordering) {
        const auto g = graph_from(edges);
        stree::BasketConfig config;
        config.ordering = parse_ordering(ordering);
        return named(g, stree::solve_mhibp(g, config));
      },
      py::arg("edges"), py::arg("ordering") = "g",
      "Maximal half-isolated bicliques as (sources, targets) label lists.");

  m.def(
      "brute_force_mhi",
      [](const Pairs& edges) {
        const auto g = graph_from(edges);
        return named(g, stree::brute_force_mhi(g));
      },
      py::arg("edges"));

  m.def(
      "detect",
      [](const Pairs& edges, const std::string& mode, double c, std::optional<double> thickness,
         std::optional<std::uint32_t> depth) {
        stree::DetectOptions options;
        options.baskets.mode = stree::parse_mode(mode);
        options.baskets.c = c;
        options.thickness = thickness;
        options.depth = depth;
        return to_pairs(stree::detect(graph_from(edges), options).ranking);
      },
      py::arg("edges"), py::arg("mode") = "arbg", py::arg("c") = 1.0,
      py::arg("thickness") = py::none(), py::arg("depth") = py::none(),
      "Source ranking as (label, score), most suspicious first.");

  m.def(
      "forest",
      [](const std::vector<std::pair<std::string, std::string>>& dims,
         const std::vector<std::pair<std::string, std::vector<std::string>>>& rows, double c) {
        stree::KDataset data;
        for (const auto& [name, mode] : dims) data.dims.push_back({name, stree::parse_mode(mode)});
        for (const auto& [id, values] : rows) data.rows.push_back({id, values});
        data.validate();
        return to_pairs(stree::forest_scores(stree::build_forest(data, c)).ranking);
      },
      py::arg("dims"), py::arg("rows"), py::arg("c") = 1.0,
      "dims: [(name, mode)], rows: [(id, [value per dim])].");

  m.def(
      "inject",
      [](std::size_t bg_sources, std::size_t bg_targets, double bg_prob,
         std::size_t fraud_sources, std::size_t lambda, double rho, std::size_t theta,
         const std::string& cam, std::uint64_t seed) {
        const auto bg = stree::gen_background(bg_sources, bg_targets, bg_prob, seed);
        stree::InjectionSpec spec;
        spec.n_fraud_sources = fraud_sources;
        spec.lambda = lambda;
        spec.rho = rho;
        spec.theta = theta;
        spec.cam_kind = stree::parse_cam_kind(cam);
        spec.seed = seed + 1;
        const auto lg = stree::inject_group(bg, spec);
        return std::make_pair(edges_of(lg.graph), lg.source_labels());
      },
      py::arg("bg_sources") = 2000, py::arg("bg_targets") = 500, py::arg("bg_prob") = 0.02,
      py::arg("fraud_sources") = 200, py::arg("lambda_") = 10, py::arg("rho") = 1.0,
      py::arg("theta") = 0, py::arg("cam") = "none", py::arg("seed") = 0,
      "Background plus injected group. Returns (edges, [(source, label)]).");

  m.def(
      "evaluate",
      [](const Ranking& ranking, const std::vector<std::pair<std::string, int>>& labels) {
        stree::SuspiciousnessRanking r;
        for (const auto& [label, score] : ranking) r.push_back({label, score});
        std::unordered_map<std::string, int> y(labels.begin(), labels.end());
        const auto lr = stree::join_labels(r, y);
        return std::make_pair(stree::auc(lr), stree::best_f1(lr));
      },
      py::arg("ranking"), py::arg("labels"), "Returns (auc, best_f1).");
}
