// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "stree/bench.hpp"
#include "stree/detector.hpp"
#include "stree/eval.hpp"
#include "stree/forest.hpp"
#include "stree/mhibp.hpp"
#include "stree/synth.hpp"

namespace stree {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[1024];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// Every tree built here is audited; criteria 2 and 3 report the totals.
struct AuditLog {
  std::size_t trees = 0;
  std::size_t anti_monotone = 0;
  std::size_t sus_mismatch = 0;
  std::size_t node_bound = 0;   // node_count > |E|
  std::size_t depth_bound = 0;  // height > max |I(m)|
  std::size_t mass_mismatch = 0;

  void add(const STree& tree, std::span<const Basket> baskets) {
    const TreeAudit a = audit_tree(tree, baskets);
    ++trees;
    anti_monotone += a.anti_monotone_violations;
    sus_mismatch += a.sus_mismatches;
    node_bound += a.node_count > a.basket_mass;
    depth_bound += a.height > a.max_basket_length;
    mass_mismatch += a.tn_mass != a.basket_mass;
  }
};

AuditLog audits;

STree audited_tree(const BasketSet& set) {
  STree t = STree::build(set.baskets);
  audits.add(t, set.baskets);
  return t;
}

Detection audited_detect(const BipartiteGraph& g, const DetectOptions& options) {
  Detection d = detect(g, options);
  audits.add(d.tree, d.baskets.baskets);
  return d;
}

SForest audited_forest(const KDataset& data) {
  SForest f = build_forest(data);
  for (std::size_t k = 0; k < f.k(); ++k) audits.add(f.trees[k], f.baskets[k].baskets);
  return f;
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

BipartiteGraph random_graph(std::size_t ns, std::size_t nt, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  GraphBuilder b;
  for (std::size_t n = 0; n < ns; ++n) b.add_source("n" + std::to_string(n));
  for (std::size_t m = 0; m < nt; ++m) b.add_target("m" + std::to_string(m));
  for (NodeIndex n = 0; n < ns; ++n) {
    for (NodeIndex m = 0; m < nt; ++m) {
      if (coin(rng)) b.add_edge(n, m);
    }
  }
  return std::move(b).build();
}

struct SmallCase {
  BipartiteGraph g;
  BicliqueSet oracle;
};

std::vector<SmallCase> small_cases() {
  constexpr int kGraphs = 240;
  const double probs[] = {0.2, 0.4, 0.6};
  std::mt19937_64 sizes(20240601);
  std::uniform_int_distribution<std::size_t> side(1, 8);
  std::vector<SmallCase> cases;
  for (int i = 0; i < kGraphs; ++i) {
    const std::size_t ns = side(sizes), nt = side(sizes);
    auto g = random_graph(ns, nt, probs[i % 3], 1000 + static_cast<std::uint64_t>(i));
    auto oracle = brute_force_mhi(g);
    cases.push_back({std::move(g), std::move(oracle)});
  }
  return cases;
}

// Same pipeline as solve_mhibp, with both trees audited.
BicliqueSet solve_audited(const BipartiteGraph& g, Ordering ordering) {
  if (g.empty()) return {};
  const BasketConfig config{Mode::ARBG, 1.0, ordering};
  const STree t = audited_tree(build_baskets(g, config));
  const BipartiteGraph transposed = g.transposed();
  const STree t1 = audited_tree(build_baskets(transposed, config));
  BicliqueSet from_t1;
  for (const Biclique& b : find_mhi_candidates(t1)) from_t1.push_back(b.swapped());
  BicliqueSet result = merge(find_mhi_candidates(t), canonicalize(std::move(from_t1)), t, t1);
  if (result != solve_mhibp(g, config)) throw std::logic_error("solve_audited diverged");
  return result;
}

void criterion_1_and_11(const std::vector<SmallCase>& cases) {
  const auto start = Clock::now();
  int agree = 0;
  for (const SmallCase& c : cases) agree += solve_audited(c.g, Ordering::GScore) == c.oracle;
  const double secs = seconds_since(start);
  report(1, agree == static_cast<int>(cases.size()) && secs < 60.0,
         fmt("solve_mhibp == brute_force_mhi on %d/%zu random graphs (|N|,|M|<=8, p in {0.2,0.4,0.6}) "
             "in %.2f s (limit 60 s)",
             agree, cases.size(), secs));

  int same = 0;
  for (const SmallCase& c : cases) {
    same += solve_audited(c.g, Ordering::NodeIndex) == solve_audited(c.g, Ordering::GScore);
  }
  report(11, same == static_cast<int>(cases.size()),
         fmt("node-index ordering reproduces the g-ordering biclique set on %d/%zu graphs", same,
             cases.size()));
}

struct InjectionRun {
  LabeledGraph lg;
  Detection d;
};

LabeledGraph injected(std::uint64_t seed, std::size_t lambda, double rho, std::size_t theta,
                      CamKind cam) {
  const BipartiteGraph bg = gen_background(2000, 500, 0.02, seed);
  InjectionSpec spec;
  spec.n_fraud_sources = 200;
  spec.lambda = lambda;
  spec.rho = rho;
  spec.theta = theta;
  spec.cam_kind = cam;
  spec.seed = seed * 7919 + lambda;
  return inject_group(bg, spec);
}

double detection_f1(const LabeledGraph& lg, const Detection& d) {
  LabeledRanking lr;
  for (NodeIndex n = 0; n < lg.graph.num_sources(); ++n) {
    lr.scores.push_back(d.scores[n]);
    lr.labels.push_back(lg.is_fraud_source(n) ? 1 : 0);
  }
  return best_f1(lr);
}

constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};

void criterion_4() {
  bool pass = true;
  double slowest = 0;
  std::string detail;
  for (std::size_t lambda : {2u, 5u, 10u}) {
    double worst = 1.0;
    std::string per_seed;
    for (std::uint64_t seed : kSeeds) {
      const auto start = Clock::now();
      LabeledGraph lg = injected(seed, lambda, 1.0, 0, CamKind::None);
      Detection d = audited_detect(lg.graph, {{Mode::AOBG, 1.0}, {}, {}});
      const double f1 = detection_f1(lg, d);
      slowest = std::max(slowest, seconds_since(start));
      worst = std::min(worst, f1);
      per_seed += fmt("%s%.3f", per_seed.empty() ? "" : ",", f1);
      pass &= f1 >= 0.99;
    }
    detail += fmt("lambda=%zu best-F1 [%s] min %.3f; ", lambda, per_seed.c_str(), worst);
  }
  pass &= slowest < 30.0;
  report(4, pass,
         detail + fmt("need >= 0.99 on every seed, default boundary, aobg; slowest run %.2f s "
                      "(limit 30 s)",
                      slowest));
}

// Nodes on the root paths of the fraud targets' baskets, keyed for
// comparison by (depth, targets restricted to the fraud set).
struct FraudNode {
  std::uint32_t depth;
  std::vector<NodeIndex> fraud_tn;
  double fraud_sus;
  NodeIndex sn;
  std::size_t fraud_children;
};

std::vector<FraudNode> fraud_subtree(const STree& tree, const LabeledGraph& lg) {
  std::vector<char> on_path(tree.node_count() + 1, 0);
  for (NodeIndex m : lg.fraud_targets) {
    if (auto end = tree.terminal_of(m)) {
      for (TreeNodeRef x : tree.path_of(*end)) on_path[x] = 1;
    }
  }
  std::vector<FraudNode> out;
  for (TreeNodeRef x = 1; x <= tree.node_count(); ++x) {
    if (!on_path[x]) continue;
    FraudNode node{tree.depth(x), {}, 0.0, tree.sn(x), 0};
    for (NodeIndex m : tree.tn(x)) {
      if (lg.is_fraud_target(m)) {
        node.fraud_tn.push_back(m);
        node.fraud_sus += tree.basket_f(m);
      }
    }
    for (TreeNodeRef c : tree.children(x)) node.fraud_children += on_path[c];
    out.push_back(std::move(node));
  }
  std::sort(out.begin(), out.end(), [](const FraudNode& a, const FraudNode& b) {
    return std::tie(a.depth, a.fraud_tn) < std::tie(b.depth, b.fraud_tn);
  });
  return out;
}

// s-scores accumulated from the fraud subtree under a fixed boundary.
std::map<NodeIndex, double> fraud_subtree_scores(const std::vector<FraudNode>& nodes,
                                                 const BoundaryParams& params) {
  // The fraud subtree is a single path here (rho = 1), so selecting any node
  // at `depth` selects the whole path.
  bool selected = false;
  for (const FraudNode& n : nodes) {
    selected |= n.depth == params.depth && n.fraud_sus >= params.thickness;
  }
  std::map<NodeIndex, double> s;
  for (const FraudNode& n : nodes) {
    if (selected) s[n.sn] += n.fraud_sus;
  }
  return s;
}

void criterion_5() {
  bool pass = true;
  std::size_t basket_diffs = 0, structure_diffs = 0, checked_nodes = 0, path_count = 0;
  double max_score_diff = 0.0, max_full_tree_diff = 0.0;
  for (std::uint64_t seed : kSeeds) {
    const LabeledGraph plain = injected(seed, 20, 1.0, 0, CamKind::None);
    const LabeledGraph cam = injected(seed, 20, 1.0, 20, CamKind::ACam);
    const BasketConfig config{Mode::ARBG, 1.0};
    const BasketSet bp = build_baskets(plain.graph, config);
    const BasketSet bc = build_baskets(cam.graph, config);

    for (NodeIndex m : plain.fraud_targets) {
      const Basket& a = bp.baskets[m];
      const Basket& b = bc.baskets[m];
      std::vector<NodeIndex> sa = a.sources, sb = b.sources;
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      basket_diffs += a.f != b.f || sa != sb || a.sources.size() != b.sources.size();
      // Within one run the fraud baskets share one ordered list.
      basket_diffs += a.sources != bp.baskets[plain.fraud_targets.front()].sources;
      basket_diffs += b.sources != bc.baskets[cam.fraud_targets.front()].sources;
    }

    const STree tp = audited_tree(bp);
    const STree tc = audited_tree(bc);
    const auto fp = fraud_subtree(tp, plain);
    const auto fc = fraud_subtree(tc, cam);
    path_count += fp.size();
    if (fp.size() != fc.size()) {
      ++structure_diffs;
      continue;
    }
    std::vector<NodeIndex> sn_p, sn_c;
    for (std::size_t i = 0; i < fp.size(); ++i) {
      ++checked_nodes;
      structure_diffs += fp[i].depth != fc[i].depth || fp[i].fraud_tn != fc[i].fraud_tn ||
                         fp[i].fraud_sus != fc[i].fraud_sus ||
                         fp[i].fraud_children != fc[i].fraud_children;
      sn_p.push_back(fp[i].sn);
      sn_c.push_back(fc[i].sn);
    }
    std::sort(sn_p.begin(), sn_p.end());
    std::sort(sn_c.begin(), sn_c.end());
    structure_diffs += sn_p != plain.fraud_sources || sn_c != cam.fraud_sources;

    BoundaryParams params{default_thickness(tp), default_depth(bp.baskets, tp)};
    auto sp = fraud_subtree_scores(fp, params);
    auto sc = fraud_subtree_scores(fc, params);
    for (NodeIndex n : plain.fraud_sources) {
      const double a = sp.count(n) ? sp[n] : 0.0;
      const double b = sc.count(n) ? sc[n] : 0.0;
      max_score_diff = std::max(max_score_diff, std::abs(a - b) / std::max(1.0, std::abs(a)));
      pass &= a > 0.0;
    }

    // For the record: whole-tree scores do move, since camouflage edges put
    // fraud sources into legit baskets too.
    Detection dp = audited_detect(plain.graph, {config, {}, {}});
    Detection dc = audited_detect(cam.graph, {config, {}, {}});
    for (NodeIndex n : plain.fraud_sources) {
      max_full_tree_diff = std::max(max_full_tree_diff, std::abs(dp.scores[n] - dc.scores[n]));
    }
  }
  pass &= basket_diffs == 0 && structure_diffs == 0 && max_score_diff <= 1e-9;
  report(5, pass,
         fmt("rho=1, theta=lambda=20 A-Cam, arbg, 5 seeds: fraud-basket diffs %zu, fraud-subtree "
             "diffs %zu over %zu nodes, max rel fraud s-score diff %.3g (tol 1e-9) "
             "[whole-tree s-score shift %.3g, not part of the check]",
             basket_diffs, structure_diffs, checked_nodes, max_score_diff, max_full_tree_diff));
  (void)path_count;
}

void criterion_6() {
  double total = 0;
  std::string per_seed;
  for (std::uint64_t seed : kSeeds) {
    LabeledGraph lg = injected(seed, 20, 0.6, 20, CamKind::ACam);
    Detection d = audited_detect(lg.graph, {{Mode::AOBG, 1.0}, {}, {}});
    const double f1 = detection_f1(lg, d);
    total += f1;
    per_seed += fmt("%s%.3f", per_seed.empty() ? "" : ",", f1);
  }
  const double mean = total / std::size(kSeeds);
  report(6, mean >= 0.95,
         fmt("rho=0.6, theta=lambda=20 A-Cam, aobg: best-F1 [%s] mean %.3f (need >= 0.95)",
             per_seed.c_str(), mean));
}

void criterion_7() {
  const auto start = Clock::now();
  const BipartiteGraph g = gen_background(20000, 5000, 0.01, 77);
  const auto fractions = parse_fractions("0.1..1.0");
  const auto rows = measure_scaling(g, fractions, 15, {}, 78);
  std::vector<double> x, y;
  std::string times;
  for (const ScalingRow& r : rows) {
    x.push_back(static_cast<double>(r.edge_count));
    y.push_back(r.build_ms);
    times += fmt("%s%.1f", times.empty() ? "" : ",", r.build_ms);
  }
  const LinearFit fit = fit_line(x, y);
  const double ratio = rows.back().build_ms / rows.front().build_ms;
  // Audit the full-size tree as well.
  audited_tree(build_baskets(g));
  const double secs = seconds_since(start);
  report(7, fit.r_squared >= 0.98 && ratio <= 13.0 && secs < 300.0,
         fmt("%zu edges, fractions 0.1..1.0, min of 15 reps [%s ms]: R^2 %.4f (need >= 0.98), "
             "t(100%%)/t(10%%) = %.2f ms / %.2f ms = %.2f (need <= 13), total %.1f s (limit 300 s)",
             g.num_edges(), times.c_str(), fit.r_squared, rows.back().build_ms, rows.front().build_ms, ratio,
             secs));
}

KDataset with_constant_dimension(KDataset data) {
  data.dims.push_back({"constant", Mode::ARBG});
  for (KRow& row : data.rows) row.values.push_back("same");
  return data;
}

std::size_t constant_dim_diffs = 0;
std::size_t constant_dim_checks = 0;

void check_constant_dimension(const KDataset& data, const ForestScores& base) {
  const ForestScores extended = forest_scores(audited_forest(with_constant_dimension(data)));
  ++constant_dim_checks;
  for (std::size_t n = 0; n < base.total.size(); ++n) {
    // Bitwise comparison.
    constant_dim_diffs += std::memcmp(&base.total[n], &extended.total[n], sizeof(double)) != 0;
  }
}

void criterion_8() {
  int ok_seeds = 0;
  std::string detail;
  for (std::uint64_t seed : kSeeds) {
    OverlapGenSpec spec;
    spec.seed = seed;
    const OverlapDataset d = gen_overlap_dataset(spec);
    const SForest forest = audited_forest(d.labeled.data);
    const ForestScores s = forest_scores(forest);
    std::map<std::string, int> fraud;
    for (const auto& id : d.labeled.fraud_ids) fraud[id] = 1;
    double min_fraud = INFINITY, max_legit = -INFINITY;
    for (std::size_t n = 0; n < forest.ids.size(); ++n) {
      if (fraud.count(forest.ids[n])) {
        min_fraud = std::min(min_fraud, s.total[n]);
      } else {
        max_legit = std::max(max_legit, s.total[n]);
      }
    }
    ok_seeds += min_fraud > max_legit;
    detail += fmt("%smin(A u B) %.2f vs max legit %.2f", detail.empty() ? "" : "; ", min_fraud, max_legit);
    check_constant_dimension(d.labeled.data, s);
  }
  report(8, ok_seeds == 5,
         fmt("|A|=|B|=100 sharing 30%%, 2000 legit: A u B ranked above all legit on %d/5 seeds (%s)",
             ok_seeds, detail.c_str()));
}

void criterion_9() {
  bool pass = true;
  double worst_base = 1.0, worst_shift = 0.0;
  std::string detail;
  for (std::uint64_t seed : kSeeds) {
    double base_auc = 0;
    std::string row;
    for (std::size_t noise = 0; noise <= 3; ++noise) {
      KDataGenSpec spec;
      spec.critical_dims = 2;
      spec.noise_dims = noise;
      spec.seed = seed;
      const LabeledKDataset lk = gen_kdataset(spec);
      const ForestScores s = forest_scores(audited_forest(lk.data));
      std::unordered_map<std::string, int> labels;
      for (const auto& [id, y] : lk.labels()) labels[id] = y;
      const double a = auc(join_labels(s.ranking, labels));
      if (noise == 0) {
        base_auc = a;
        worst_base = std::min(worst_base, a);
        pass &= a >= 0.95;
        check_constant_dimension(lk.data, s);
      } else {
        worst_shift = std::max(worst_shift, std::abs(a - base_auc));
        pass &= std::abs(a - base_auc) < 0.05;
      }
      row += fmt("%s%.3f", row.empty() ? "" : "/", a);
    }
    detail += fmt("%s%s", detail.empty() ? "" : " ", row.c_str());
  }
  report(9, pass,
         fmt("AUC with 0/1/2/3 noise dims per seed: %s; min AUC(2 critical) %.3f (need >= 0.95), "
             "max |shift| %.3f (need < 0.05)",
             detail.c_str(), worst_base, worst_shift));
}

void criterion_10() {
  report(10, constant_dim_diffs == 0 && constant_dim_checks > 0,
         fmt("appending a q=1 dimension to %zu forests changed %zu S(n) values bitwise",
             constant_dim_checks, constant_dim_diffs));
}

void criteria_2_and_3() {
  report(2, audits.anti_monotone == 0 && audits.trees > 0,
         fmt("%zu trees audited, %zu ancestor sus/tn violations (rel tol 1e-9)", audits.trees,
             audits.anti_monotone));
  report(3,
         audits.node_bound == 0 && audits.depth_bound == 0 && audits.sus_mismatch == 0 &&
             audits.mass_mismatch == 0 && audits.trees > 0,
         fmt("%zu trees: node_count > |E| in %zu, height > max|I(m)| in %zu, sus != sum f (rel 1e-9) "
             "at %zu nodes, tn mass != |E| in %zu",
             audits.trees, audits.node_bound, audits.depth_bound, audits.sus_mismatch,
             audits.mass_mismatch));
}

}  // namespace
}  // namespace stree

int main() {
  using namespace stree;
  const auto cases = small_cases();
  criterion_1_and_11(cases);
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criteria_2_and_3();
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
