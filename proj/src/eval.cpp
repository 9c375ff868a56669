#include "stree/eval.hpp"

#include <algorithm>
#include <numeric>

#include "stree/errors.hpp"

namespace stree {
namespace {

void check_shape(const LabeledRanking& lr) {
  if (lr.scores.size() != lr.labels.size()) {
    throw ContractError("scores and labels differ in length");
  }
  for (int y : lr.labels) {
    if (y != 0 && y != 1) throw ContractError("labels must be 0 or 1");
  }
}

// Indices sorted by descending score.
std::vector<std::size_t> by_score_desc(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

}  // namespace

double auc(const LabeledRanking& lr) {
  check_shape(lr);
  const auto positives = static_cast<double>(std::count(lr.labels.begin(), lr.labels.end(), 1));
  const double negatives = static_cast<double>(lr.labels.size()) - positives;
  if (positives == 0 || negatives == 0) throw ContractError("AUC needs both classes");

  // Walk tie groups from the top; each positive beats every negative below
  // its group and half of the negatives inside it.
  const auto order = by_score_desc(lr.scores);
  double wins = 0.0;
  double negatives_above = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    double pos = 0, neg = 0;
    while (j < order.size() && lr.scores[order[j]] == lr.scores[order[i]]) {
      (lr.labels[order[j]] == 1 ? pos : neg) += 1;
      ++j;
    }
    wins += pos * (negatives - negatives_above - neg) + 0.5 * pos * neg;
    negatives_above += neg;
    i = j;
  }
  return wins / (positives * negatives);
}

double best_f1(const LabeledRanking& lr) {
  check_shape(lr);
  const auto positives = static_cast<double>(std::count(lr.labels.begin(), lr.labels.end(), 1));
  if (positives == 0) throw ContractError("best F1 needs at least one positive");

  const auto order = by_score_desc(lr.scores);
  double best = 0.0;
  double tp = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && lr.scores[order[j]] == lr.scores[order[i]]) {
      tp += lr.labels[order[j]];
      ++j;
    }
    // Threshold = this group's score: everything in [0, j) is predicted positive.
    if (tp > 0) {
      const double precision = tp / static_cast<double>(j);
      const double recall = tp / positives;
      best = std::max(best, 2.0 * precision * recall / (precision + recall));
    }
    i = j;
  }
  return best;
}

LabeledRanking join_labels(const SuspiciousnessRanking& ranking,
                           const std::unordered_map<std::string, int>& labels) {
  LabeledRanking lr;
  lr.scores.reserve(ranking.size());
  lr.labels.reserve(ranking.size());
  for (const RankedSource& r : ranking) {
    auto it = labels.find(r.label);
    lr.scores.push_back(r.score);
    lr.labels.push_back(it == labels.end() ? 0 : it->second);
  }
  return lr;
}

}  // namespace stree
