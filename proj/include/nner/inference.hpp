#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "nner/core.hpp"
#include "nner/deduction.hpp"
#include "nner/weights.hpp"

namespace nner {

// Thrown by nll_loss when the gold analysis does not belong to the
// algorithm's search space. Callers must pre-filter gold explicitly (see
// max_recall); silent projection would corrupt the loss.
class GoldValidationError : public std::invalid_argument {
 public:
  GoldValidationError(std::string message, ValidityReport report)
      : std::invalid_argument(std::move(message)), report(std::move(report)) {}

  ValidityReport report;
};

// log Z(w): inside pass over the log semiring. Always >= max(0, MAP score)
// since the empty analysis is in every search space.
double log_partition(Algorithm alg, const WeightTable& w);

// Highest-scoring analysis and its score.
std::pair<double, Analysis> map_inference(Algorithm alg, const WeightTable& w);

// p(y_m = 1 | w) = exp(inside(m) + outside(m) - log Z) for every candidate
// mention; these are also the partial derivatives of log Z(w).
MarginalTable marginals(Algorithm alg, const WeightTable& w);

// |Y| for the algorithm's search space: counting-semiring inside pass.
// Throws std::overflow_error instead of wrapping.
std::uint64_t count_analyses(Algorithm alg, int n, int num_labels);

// Negative log-likelihood -w'y + log Z(w).
double nll_loss(Algorithm alg, const WeightTable& w, const Analysis& gold);

}  // namespace nner
