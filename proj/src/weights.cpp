#include "nner/weights.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace nner {

namespace {

void check_weight(double value) {
  if (std::isnan(value)) throw std::domain_error("mention weight must not be NaN");
  if (value == std::numeric_limits<double>::infinity())
    throw std::domain_error("mention weight must not be +inf");
}

}  // namespace

WeightTable::WeightTable(int n, LabelSet labels, double fill) : labels_(std::move(labels)) {
  if (n < 0) throw std::invalid_argument("sentence length must be >= 0");
  check_weight(fill);
  table_ = LabelSpanTable<double>(n, labels_.size(), fill);
}

void WeightTable::set(int label, int i, int j, double value) {
  check_weight(value);
  if (label < 0 || label >= num_labels() || i < 0 || i >= j || j > length()) {
    throw std::out_of_range("weight entry out of range: " +
                            mention_to_string(Mention{label, i, j}, &labels_));
  }
  table_.at(label, i, j) = value;
}

double WeightTable::analysis_score(const Analysis& a) const {
  double score = 0.0;
  for (const Mention& m : a) {
    if (m.label < 0 || m.label >= num_labels() || m.left < 0 || m.left >= m.right ||
        m.right > length()) {
      throw std::out_of_range("mention outside weight table: " + mention_to_string(m, &labels_));
    }
    score += get(m.label, m.left, m.right);
  }
  return score;
}

WeightTable random_weights(int n, const LabelSet& labels, std::uint64_t seed, double lo,
                           double hi) {
  WeightTable w(n, labels);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (int t = 0; t < labels.size(); ++t) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) w.set(t, i, j, dist(rng));
    }
  }
  return w;
}

WeightTable indicator_weights(int n, const LabelSet& labels, const Analysis& gold, double pos,
                              double neg) {
  WeightTable w(n, labels, neg);
  for (const Mention& m : gold) w.set(m.label, m.left, m.right, pos);
  return w;
}

}  // namespace nner
