#include "stree/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

#include "stree/errors.hpp"

namespace stree {
namespace {

using Rng = std::mt19937_64;

// k distinct values from [0, n), in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw ContractError("cannot sample " + std::to_string(k) + " of " + std::to_string(n));
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k * 4 >= n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(all[i], all[pick(rng)]);
      out.push_back(all[i]);
    }
    return out;
  }
  // Floyd's algorithm.
  std::unordered_set<std::size_t> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    std::size_t t = pick(rng);
    if (!chosen.insert(t).second) {
      chosen.insert(j);
      t = j;
    }
    out.push_back(t);
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
}

std::vector<NodeIndex> complement(std::size_t n, const std::vector<NodeIndex>& excluded) {
  std::vector<char> skip(n, 0);
  for (NodeIndex x : excluded) skip[x] = 1;
  std::vector<NodeIndex> out;
  for (NodeIndex x = 0; x < n; ++x) {
    if (!skip[x]) out.push_back(x);
  }
  return out;
}

}  // namespace

BipartiteGraph gen_background(std::size_t n_sources, std::size_t n_targets,
                              double edge_prob, std::uint64_t seed) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw ContractError("edge probability must be in [0, 1]");
  }
  GraphBuilder builder;
  for (std::size_t n = 0; n < n_sources; ++n) builder.add_source("s" + std::to_string(n));
  for (std::size_t m = 0; m < n_targets; ++m) builder.add_target("t" + std::to_string(m));

  const std::uint64_t cells = static_cast<std::uint64_t>(n_sources) * n_targets;
  auto emit = [&](std::uint64_t cell) {
    builder.add_edge(static_cast<NodeIndex>(cell / n_targets),
                     static_cast<NodeIndex>(cell % n_targets));
  };
  if (edge_prob >= 1.0) {
    for (std::uint64_t cell = 0; cell < cells; ++cell) emit(cell);
  } else if (edge_prob > 0.0) {
    // Geometric gaps between successes of independent Bernoulli trials.
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-edge_prob);
    std::uint64_t cell = 0;
    while (true) {
      const double u = 1.0 - unit(rng);  // (0, 1]
      const double gap = std::floor(std::log(u) / log_q);
      if (gap >= static_cast<double>(cells - cell)) break;
      cell += static_cast<std::uint64_t>(gap);
      emit(cell);
      if (++cell >= cells) break;
    }
  }
  return std::move(builder).build();
}

CamKind parse_cam_kind(std::string_view text) {
  if (text == "none") return CamKind::None;
  if (text == "acam") return CamKind::ACam;
  if (text == "pcam") return CamKind::PCam;
  throw ContractError("unknown camouflage '" + std::string(text) + "' (want none|acam|pcam)");
}

bool LabeledGraph::is_fraud_source(NodeIndex n) const {
  return std::binary_search(fraud_sources.begin(), fraud_sources.end(), n);
}

bool LabeledGraph::is_fraud_target(NodeIndex m) const {
  return std::binary_search(fraud_targets.begin(), fraud_targets.end(), m);
}

std::vector<std::pair<std::string, int>> LabeledGraph::source_labels() const {
  std::vector<std::pair<std::string, int>> out;
  out.reserve(graph.num_sources());
  for (NodeIndex n = 0; n < graph.num_sources(); ++n) {
    out.emplace_back(graph.source_label(n), is_fraud_source(n) ? 1 : 0);
  }
  return out;
}

LabeledGraph inject_group(const BipartiteGraph& g, const InjectionSpec& spec) {
  if (!(spec.rho > 0.0 && spec.rho <= 1.0)) throw ContractError("rho must be in (0, 1]");
  if (spec.n_fraud_sources == 0 || spec.lambda == 0) {
    throw ContractError("injection needs at least one fraud source and target");
  }
  const auto width = static_cast<std::size_t>(std::llround(spec.rho * static_cast<double>(spec.lambda)));
  if (width == 0) throw ContractError("round(rho * lambda) is 0");

  GraphBuilder builder(g);
  LabeledGraph out;
  for (std::size_t i = 0; i < spec.n_fraud_sources; ++i) {
    std::string label = "fraud_s" + std::to_string(i);
    if (builder.has_source(label)) throw ContractError("label " + label + " already in graph");
    out.fraud_sources.push_back(builder.add_source(label));
  }
  for (std::size_t j = 0; j < spec.lambda; ++j) {
    std::string label = "fraud_t" + std::to_string(j);
    if (builder.has_target(label)) throw ContractError("label " + label + " already in graph");
    out.fraud_targets.push_back(builder.add_target(label));
  }

  Rng rng(spec.seed);
  std::binomial_distribution<std::size_t> binomial(spec.lambda, spec.rho);
  for (NodeIndex n : out.fraud_sources) {
    std::size_t k = spec.binomial_w ? std::max<std::size_t>(1, binomial(rng)) : width;
    for (std::size_t j : sample_without_replacement(spec.lambda, k, rng)) {
      builder.add_edge(n, out.fraud_targets[j]);
    }
  }
  out.graph = std::move(builder).build();

  if (spec.cam_kind != CamKind::None && spec.theta > 0) {
    return add_camouflage(out, spec.cam_kind, spec.theta, derive_seed(spec.seed, 1));
  }
  return out;
}

LabeledGraph add_camouflage(const LabeledGraph& lg, CamKind kind, std::size_t theta,
                            std::uint64_t seed) {
  if (kind == CamKind::None || theta == 0) return lg;
  const BipartiteGraph& g = lg.graph;
  GraphBuilder builder(g);
  Rng rng(seed);
  if (kind == CamKind::ACam) {
    const auto pool = complement(g.num_targets(), lg.fraud_targets);
    if (theta > pool.size()) throw ContractError("A-Cam: not enough non-fraud targets");
    for (NodeIndex n : lg.fraud_sources) {
      for (std::size_t i : sample_without_replacement(pool.size(), theta, rng)) {
        builder.add_edge(n, pool[i]);
      }
    }
  } else {
    const auto pool = complement(g.num_sources(), lg.fraud_sources);
    if (theta > pool.size()) throw ContractError("P-Cam: not enough non-fraud sources");
    for (NodeIndex m : lg.fraud_targets) {
      for (std::size_t i : sample_without_replacement(pool.size(), theta, rng)) {
        builder.add_edge(pool[i], m);
      }
    }
  }
  LabeledGraph out;
  out.graph = std::move(builder).build();
  out.fraud_sources = lg.fraud_sources;
  out.fraud_targets = lg.fraud_targets;
  return out;
}

std::vector<std::pair<std::string, int>> LabeledKDataset::labels() const {
  std::unordered_set<std::string> fraud(fraud_ids.begin(), fraud_ids.end());
  std::vector<std::pair<std::string, int>> out;
  std::unordered_set<std::string> seen;
  for (const KRow& row : data.rows) {
    if (seen.insert(row.id).second) out.emplace_back(row.id, fraud.contains(row.id) ? 1 : 0);
  }
  return out;
}

LabeledKDataset gen_kdataset(const KDataGenSpec& spec) {
  if (spec.critical_dims + spec.noise_dims == 0) throw ContractError("need at least one dimension");
  if (!(spec.fraud_fraction >= 0.0 && spec.fraud_fraction <= 1.0)) {
    throw ContractError("fraud_fraction must be in [0, 1]");
  }
  Rng rng(spec.seed);
  const std::size_t n_fraud = static_cast<std::size_t>(
      std::llround(spec.fraud_fraction * static_cast<double>(spec.n_accounts)));
  std::vector<char> is_fraud(spec.n_accounts, 0);
  for (std::size_t i : sample_without_replacement(spec.n_accounts, n_fraud, rng)) is_fraud[i] = 1;

  const std::size_t fraud_pool =
      std::max<std::size_t>(1, n_fraud / std::max<std::size_t>(1, spec.accounts_per_fraud_value));
  const std::size_t legit_pool = std::max<std::size_t>(
      1, static_cast<std::size_t>(spec.legit_pool_factor * static_cast<double>(spec.n_accounts)));
  std::uniform_int_distribution<std::size_t> pick_fraud(0, fraud_pool - 1);
  std::uniform_int_distribution<std::size_t> pick_legit(0, legit_pool - 1);
  std::uniform_int_distribution<std::size_t> pick_noise(0, std::max<std::size_t>(1, spec.noise_pool) - 1);
  std::bernoulli_distribution shares(spec.fraud_share_prob);

  LabeledKDataset out;
  out.data.id_field = "account";
  for (std::size_t k = 0; k < spec.critical_dims; ++k) {
    out.data.dims.push_back({"critical_" + std::to_string(k), Mode::ARBG});
  }
  for (std::size_t k = 0; k < spec.noise_dims; ++k) {
    out.data.dims.push_back({"noise_" + std::to_string(k), Mode::ARBG});
  }
  for (std::size_t i = 0; i < spec.n_accounts; ++i) {
    KRow row;
    row.id = "u" + std::to_string(i);
    for (std::size_t k = 0; k < spec.critical_dims; ++k) {
      if (is_fraud[i] && shares(rng)) {
        row.values.push_back("f" + std::to_string(k) + "_" + std::to_string(pick_fraud(rng)));
      } else {
        row.values.push_back("v" + std::to_string(k) + "_" + std::to_string(pick_legit(rng)));
      }
    }
    for (std::size_t k = 0; k < spec.noise_dims; ++k) {
      row.values.push_back("n" + std::to_string(k) + "_" + std::to_string(pick_noise(rng)));
    }
    if (is_fraud[i]) out.fraud_ids.push_back(row.id);
    out.data.rows.push_back(std::move(row));
  }
  return out;
}

OverlapDataset gen_overlap_dataset(const OverlapGenSpec& spec) {
  if (!(spec.overlap >= 0.0 && spec.overlap <= 1.0)) throw ContractError("overlap must be in [0, 1]");
  Rng rng(spec.seed);
  const auto shared = static_cast<std::size_t>(
      std::llround(spec.overlap * static_cast<double>(spec.group_size)));
  // Accounts: [A only][shared][B only][legit], shuffled into row order.
  const std::size_t a_only = spec.group_size - shared;
  const std::size_t b_only = spec.group_size - shared;
  const std::size_t total = a_only + shared + b_only + spec.n_legit;
  enum Role : std::uint8_t { kAOnly, kShared, kBOnly, kLegit };
  std::vector<Role> roles;
  roles.insert(roles.end(), a_only, kAOnly);
  roles.insert(roles.end(), shared, kShared);
  roles.insert(roles.end(), b_only, kBOnly);
  roles.insert(roles.end(), spec.n_legit, kLegit);
  std::shuffle(roles.begin(), roles.end(), rng);

  const std::size_t fraud_pool = std::max<std::size_t>(
      1, spec.group_size / std::max<std::size_t>(1, spec.accounts_per_fraud_value));
  const std::size_t legit_pool = std::max<std::size_t>(
      1, static_cast<std::size_t>(spec.legit_pool_factor * static_cast<double>(total)));
  std::uniform_int_distribution<std::size_t> pick_fraud(0, fraud_pool - 1);
  std::uniform_int_distribution<std::size_t> pick_legit(0, legit_pool - 1);

  OverlapDataset out;
  KDataset& data = out.labeled.data;
  data.id_field = "account";
  data.dims = {{"dim_1", Mode::ARBG}, {"dim_2", Mode::ARBG}};
  for (std::size_t i = 0; i < total; ++i) {
    const Role role = roles[i];
    const bool in_a = role == kAOnly || role == kShared;
    const bool in_b = role == kBOnly || role == kShared;
    KRow row;
    row.id = "u" + std::to_string(i);
    row.values.push_back(in_a ? "a_" + std::to_string(pick_fraud(rng))
                              : "x_" + std::to_string(pick_legit(rng)));
    row.values.push_back(in_b ? "b_" + std::to_string(pick_fraud(rng))
                              : "y_" + std::to_string(pick_legit(rng)));
    if (in_a) out.group_a.push_back(row.id);
    if (in_b) out.group_b.push_back(row.id);
    if (in_a && in_b) out.shared.push_back(row.id);
    if (in_a || in_b) out.labeled.fraud_ids.push_back(row.id);
    data.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace stree
