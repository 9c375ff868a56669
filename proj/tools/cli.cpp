#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "stree/bench.hpp"
#include "stree/detector.hpp"
#include "stree/errors.hpp"
#include "stree/eval.hpp"
#include "stree/forest.hpp"
#include "stree/io.hpp"
#include "stree/mhibp.hpp"
#include "stree/synth.hpp"

namespace stree::cli {
namespace {

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

// Stderr diagnostics gated by BM_LOG={error|info|debug}.
class Log {
 public:
  explicit Log(std::ostream& err) : err_(err) {
    const char* env = std::getenv("BM_LOG");
    std::string v = env ? env : "error";
    if (v == "info") level_ = LogLevel::Info;
    if (v == "debug") level_ = LogLevel::Debug;
  }
  void info(const std::string& msg) const { emit(LogLevel::Info, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::Debug, "debug", msg); }

 private:
  void emit(LogLevel at, const char* tag, const std::string& msg) const {
    if (static_cast<int>(at) <= static_cast<int>(level_)) err_ << tag << ": " << msg << '\n';
  }
  std::ostream& err_;
  LogLevel level_ = LogLevel::Error;
};

struct Flags {
  std::string edges;
  std::string kdata;
  std::string schema;
  std::string labels;
  std::string ranking;
  std::string out;
  std::string tree_dump;
  std::string mode = "arbg";
  std::string ordering = "g";
  double c = 1.0;
  std::optional<double> thickness;
  std::optional<std::uint32_t> depth;
  std::optional<std::uint64_t> seed;

  // inject
  std::string kind = "graph";
  std::size_t bg_sources = 2000;
  std::size_t bg_targets = 500;
  double bg_prob = 0.02;
  std::size_t fraud_sources = 200;
  std::size_t lambda = 10;
  double rho = 1.0;
  std::size_t theta = 0;
  std::string cam = "none";
  bool binomial = false;
  std::size_t accounts = 2000;
  double fraud_fraction = 0.1;
  std::size_t critical_dims = 2;
  std::size_t noise_dims = 0;

  // bench
  std::string fractions = "0.1..1.0";
  std::size_t reps = 3;
};

BasketConfig basket_config(const Flags& f) {
  BasketConfig config;
  config.mode = parse_mode(f.mode);
  config.c = f.c;
  if (f.ordering == "id") {
    config.ordering = Ordering::NodeIndex;
  } else if (f.ordering != "g") {
    throw ContractError("unknown ordering '" + f.ordering + "' (want g|id)");
  }
  return config;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

int cmd_solve(const Flags& f, const Log& log) {
  BipartiteGraph g = load_edge_list(f.edges);
  log.info("loaded " + std::to_string(g.num_edges()) + " edges");
  BicliqueSet result = solve_mhibp(g, basket_config(f));
  log.info("found " + std::to_string(result.size()) + " MHI bicliques");
  write_file_atomically(f.out, [&](std::ostream& os) { write_bicliques_jsonl(os, g, result); });
  return 0;
}

int cmd_detect(const Flags& f, const Log& log) {
  BipartiteGraph g = load_edge_list(f.edges);
  DetectOptions options;
  options.baskets = basket_config(f);
  options.thickness = f.thickness;
  options.depth = f.depth;
  Detection d = detect(g, options);
  log.info("tree nodes " + std::to_string(d.tree.node_count()) + ", thickness " +
           format_score(d.params.thickness) + ", depth " + std::to_string(d.params.depth) +
           ", selected " + std::to_string(d.selected.nodes.size()));
  write_file_atomically(f.out, [&](std::ostream& os) { write_ranking(os, d.ranking); });
  if (!f.tree_dump.empty()) {
    write_file_atomically(f.tree_dump, [&](std::ostream& os) {
      d.tree.dump(os, [&](NodeIndex n) { return g.source_label(n); });
    });
  }
  return 0;
}

int cmd_forest(const Flags& f, const Log& log) {
  const std::string schema_path = f.schema.empty() ? f.kdata + ".schema.json" : f.schema;
  auto schema_in = open_or_throw(schema_path);
  const auto modes = read_schema_json(schema_in);
  auto data_in = open_or_throw(f.kdata);
  KDataset data = read_kdataset_csv(data_in, modes);
  SForest forest = build_forest(data, f.c);
  std::vector<BoundaryOverride> overrides;
  if (f.thickness || f.depth) overrides.assign(forest.k(), BoundaryOverride{f.thickness, f.depth});
  ForestScores scores = forest_scores(forest, overrides);
  for (std::size_t k = 0; k < forest.k(); ++k) {
    log.info(forest.dims[k].name + ": w=" + format_score(forest.weights[k]) + " thickness=" +
             format_score(scores.params[k].thickness) +
             " depth=" + std::to_string(scores.params[k].depth));
  }
  write_file_atomically(f.out, [&](std::ostream& os) { write_ranking(os, scores.ranking); });
  return 0;
}

int cmd_inject(const Flags& f, const Log& log) {
  const std::uint64_t seed = *f.seed;
  if (f.kind == "kdata") {
    KDataGenSpec spec;
    spec.n_accounts = f.accounts;
    spec.fraud_fraction = f.fraud_fraction;
    spec.critical_dims = f.critical_dims;
    spec.noise_dims = f.noise_dims;
    spec.seed = seed;
    LabeledKDataset lk = gen_kdataset(spec);
    write_file_atomically(f.out, [&](std::ostream& os) { write_kdataset_csv(os, lk.data); });
    const std::string schema = f.schema.empty() ? f.out + ".schema.json" : f.schema;
    write_file_atomically(schema, [&](std::ostream& os) { write_schema_json(os, lk.data); });
    if (!f.labels.empty()) {
      write_file_atomically(f.labels, [&](std::ostream& os) { write_labels(os, lk.labels()); });
    }
    log.info("wrote " + std::to_string(lk.data.rows.size()) + " rows");
    return 0;
  }
  if (f.kind != "graph") throw ContractError("unknown --kind '" + f.kind + "' (want graph|kdata)");

  BipartiteGraph background = f.edges.empty()
                                  ? gen_background(f.bg_sources, f.bg_targets, f.bg_prob, seed)
                                  : load_edge_list(f.edges);
  InjectionSpec spec;
  spec.n_fraud_sources = f.fraud_sources;
  spec.lambda = f.lambda;
  spec.rho = f.rho;
  spec.theta = f.theta;
  spec.cam_kind = parse_cam_kind(f.cam);
  spec.seed = seed + 1;
  spec.binomial_w = f.binomial;
  LabeledGraph lg = inject_group(background, spec);
  log.info("graph now has " + std::to_string(lg.graph.num_edges()) + " edges");
  write_file_atomically(f.out, [&](std::ostream& os) { write_edge_list(os, lg.graph); });
  if (!f.labels.empty()) {
    write_file_atomically(f.labels, [&](std::ostream& os) { write_labels(os, lg.source_labels()); });
  }
  return 0;
}

int cmd_eval(const Flags& f, std::ostream& out) {
  auto ranking_in = open_or_throw(f.ranking);
  SuspiciousnessRanking ranking;
  for (auto& [label, score] : read_ranking(ranking_in)) ranking.push_back({label, score});
  LabeledRanking lr = join_labels(ranking, load_labels(f.labels));
  const std::string report = "auc\t" + format_score(auc(lr)) + "\nbest_f1\t" +
                             format_score(best_f1(lr)) + "\n";
  if (f.out.empty()) {
    out << report;
  } else {
    write_file_atomically(f.out, [&](std::ostream& os) { os << report; });
  }
  return 0;
}

int cmd_bench(const Flags& f, const Log& log) {
  BipartiteGraph g = load_edge_list(f.edges);
  DetectOptions options;
  options.baskets = basket_config(f);
  const auto fractions = parse_fractions(f.fractions);
  auto rows = measure_scaling(g, fractions, f.reps, options, *f.seed);
  for (const auto& r : rows) {
    log.debug(std::to_string(r.edge_count) + " edges: " + format_score(r.build_ms) + " ms");
  }
  write_file_atomically(f.out, [&](std::ostream& os) {
    os << "edge_count,build_ms\n";
    for (const auto& r : rows) os << r.edge_count << ',' << format_score(r.build_ms) << '\n';
  });
  return 0;
}

void add_mode_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--mode", f.mode, "aobg|arbg")->check(CLI::IsMember({"aobg", "arbg"}));
  sub->add_option("--c", f.c, "F-score smoothing constant")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"S-tree dense subgraph mining and fraud detection"};
  app.require_subcommand(1);
  Flags f;
  Log log(err);

  auto* solve = app.add_subcommand("solve-mhibp", "enumerate maximal half-isolated bicliques");
  solve->add_option("--edges", f.edges, "edge-list TSV")->required();
  solve->add_option("--out", f.out, "JSON-lines output")->required();
  solve->add_option("--ordering", f.ordering, "g|id")->check(CLI::IsMember({"g", "id"}));
  add_mode_flags(solve, f);

  auto* det = app.add_subcommand("detect", "rank sources by s-score on one S-tree");
  det->add_option("--edges", f.edges, "edge-list TSV")->required();
  det->add_option("--out", f.out, "ranking TSV")->required();
  det->add_option("--thickness", f.thickness, "boundary thickness override");
  det->add_option("--depth", f.depth, "boundary depth override")->check(CLI::PositiveNumber);
  det->add_option("--tree-dump", f.tree_dump, "write the S-tree pre-order dump here");
  add_mode_flags(det, f);

  auto* forest = app.add_subcommand("forest", "rank ids of a 1+K dataset with an S-forest");
  forest->add_option("--kdata", f.kdata, "1+K CSV")->required();
  forest->add_option("--schema", f.schema, "column -> mode JSON (default <kdata>.schema.json)");
  forest->add_option("--out", f.out, "ranking TSV")->required();
  forest->add_option("--c", f.c, "F-score smoothing constant")->check(CLI::PositiveNumber);
  forest->add_option("--thickness", f.thickness, "thickness override for every tree");
  forest->add_option("--depth", f.depth, "depth override for every tree")->check(CLI::PositiveNumber);

  auto* inject = app.add_subcommand("inject", "generate labeled synthetic data");
  inject->add_option("--seed", f.seed, "RNG seed")->required();
  inject->add_option("--out", f.out, "edge-list TSV or 1+K CSV")->required();
  inject->add_option("--labels", f.labels, "labels TSV output");
  inject->add_option("--kind", f.kind, "graph|kdata")->check(CLI::IsMember({"graph", "kdata"}));
  inject->add_option("--edges", f.edges, "background edge list (default: generated)");
  inject->add_option("--sources", f.bg_sources, "generated background sources");
  inject->add_option("--targets", f.bg_targets, "generated background targets");
  inject->add_option("--p", f.bg_prob, "generated background edge probability");
  inject->add_option("--fraud-sources", f.fraud_sources, "fraud group sources");
  inject->add_option("--lambda", f.lambda, "fraud group targets");
  inject->add_option("--rho", f.rho, "synchrony in (0, 1]");
  inject->add_option("--theta", f.theta, "camouflage edges per fraud node");
  inject->add_option("--cam", f.cam, "none|acam|pcam")->check(CLI::IsMember({"none", "acam", "pcam"}));
  inject->add_flag("--binomial", f.binomial, "draw |W| ~ Binomial(lambda, rho)");
  inject->add_option("--accounts", f.accounts, "kdata: number of accounts");
  inject->add_option("--fraud-fraction", f.fraud_fraction, "kdata: fraud share");
  inject->add_option("--critical-dims", f.critical_dims, "kdata: critical dimensions");
  inject->add_option("--noise-dims", f.noise_dims, "kdata: noise dimensions");
  inject->add_option("--schema", f.schema, "kdata: schema output (default <out>.schema.json)");

  auto* ev = app.add_subcommand("eval", "AUC and best-F1 of a ranking");
  ev->add_option("--ranking", f.ranking, "ranking TSV")->required();
  ev->add_option("--labels", f.labels, "labels TSV")->required();
  ev->add_option("--out", f.out, "write metrics here instead of stdout");

  auto* bench = app.add_subcommand("bench", "time detect() on growing edge subsets");
  bench->add_option("--edges", f.edges, "edge-list TSV")->required();
  bench->add_option("--out", f.out, "CSV output")->required();
  bench->add_option("--seed", f.seed, "subsampling seed")->required();
  bench->add_option("--fractions", f.fractions, "a..b (step a) or comma list");
  bench->add_option("--reps", f.reps, "repetitions per fraction (min is kept)")->check(CLI::PositiveNumber);
  add_mode_flags(bench, f);

  std::vector<std::string> argv_storage{"stree"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(f, log);
    if (det->parsed()) return cmd_detect(f, log);
    if (forest->parsed()) return cmd_forest(f, log);
    if (inject->parsed()) return cmd_inject(f, log);
    if (ev->parsed()) return cmd_eval(f, out);
    if (bench->parsed()) return cmd_bench(f, log);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace stree::cli
