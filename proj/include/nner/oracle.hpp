#pragma once

#include <cstdint>
#include <vector>

#include "nner/core.hpp"
#include "nner/weights.hpp"

namespace nner {

// Exhaustive ground truth on small instances. Enumeration walks every subset
// of the candidate spans (with early pairwise pruning) and keeps the subsets
// that pass validate_analysis; labels are then expanded over each valid span
// set. Guard: n(n+1)/2 <= 24 candidate spans, i.e. n <= 6
// (std::length_error beyond).
std::vector<Analysis> enumerate_analyses(SearchSpace space, int n, int num_labels);

struct OracleResult {
  double log_z = 0.0;
  double map_score = 0.0;
  Analysis map_analysis;
  MarginalTable marginals;
  // Number of finite-score analyses; equals |Y| when all weights are finite.
  std::uint64_t count = 0;
};

// Literal evaluation of the inference definitions by direct summation and
// maximization over the enumerated search space.
OracleResult oracle_inference(SearchSpace space, const WeightTable& w);

}  // namespace nner
