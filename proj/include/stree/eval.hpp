#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "stree/detector.hpp"

namespace stree {

// Parallel arrays of scores and 0/1 labels.
struct LabeledRanking {
  std::vector<double> scores;
  std::vector<int> labels;
};

// Probability that a random positive outscores a random negative; ties count
// one half. Throws ContractError unless both classes are present.
double auc(const LabeledRanking& lr);

// Best F1 over thresholds t drawn from the distinct scores, predicting
// positive when score >= t. Throws ContractError without positives.
double best_f1(const LabeledRanking& lr);

// Joins a ranking with labels by source label. Sources missing from
// `labels` count as negatives.
LabeledRanking join_labels(const SuspiciousnessRanking& ranking,
                           const std::unordered_map<std::string, int>& labels);

}  // namespace stree
