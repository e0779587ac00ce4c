#include "nner/inference.hpp"

#include <cmath>

namespace nner {

double log_partition(Algorithm alg, const WeightTable& w) {
  return inside<LogSemiring>(alg, w).goal();
}

std::pair<double, Analysis> map_inference(Algorithm alg, const WeightTable& w) {
  DecodeResult r = viterbi_decode(alg, w);
  return {r.score, std::move(r.analysis)};
}

MarginalTable marginals(Algorithm alg, const WeightTable& w) {
  const Chart<double> in = inside<LogSemiring>(alg, w);
  const Chart<double> out = outside<LogSemiring>(alg, w, in);
  const double log_z = in.goal();
  const int n = w.length();
  MarginalTable table(n, w.num_labels(), 0.0);
  for (int t = 0; t < w.num_labels(); ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        const double out_m = out.value(mention_item(t, i, j));
        table.at(t, i, j) = std::exp(w.get(t, i, j) + out_m - log_z);
      }
    }
  }
  return table;
}

std::uint64_t count_analyses(Algorithm alg, int n, int num_labels) {
  if (n < 0) throw std::invalid_argument("sentence length must be >= 0");
  if (num_labels < 0) throw std::invalid_argument("label count must be >= 0");
  const WeightTable shape(n, numbered_labels(num_labels));
  return inside<CountSemiring>(alg, shape).goal();
}

double nll_loss(Algorithm alg, const WeightTable& w, const Analysis& gold) {
  ValidityReport report = validate_analysis(gold, w.length(), search_space_of(alg));
  if (!report.valid) {
    std::string msg = "gold analysis is not valid in the ";
    msg += search_space_name(search_space_of(alg));
    msg += " search space:";
    for (const auto& [a, b] : report.overlap_violations)
      msg += " overlap " + mention_to_string(a, &w.labels()) + " / " +
             mention_to_string(b, &w.labels()) + ";";
    for (const Mention& m : report.child_violations)
      msg += " too many non-unary children in " + mention_to_string(m, &w.labels()) + ";";
    throw GoldValidationError(std::move(msg), std::move(report));
  }
  return -w.analysis_score(gold) + log_partition(alg, w);
}

}  // namespace nner
