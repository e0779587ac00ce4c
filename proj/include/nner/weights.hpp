#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nner/core.hpp"

namespace nner {

// Flat triangular storage: one value per (label, i, j) with 0 <= i < j <= n.
// Span-major with the label innermost, so a loop over labels at a fixed span
// touches one contiguous run.
template <typename T>
class LabelSpanTable {
 public:
  LabelSpanTable() = default;

  LabelSpanTable(int n, int num_labels, const T& fill) : n_(n), num_labels_(num_labels) {
    assert(n >= 0 && num_labels >= 0);
    width_offset_.assign(static_cast<std::size_t>(n) + 2, 0);
    for (int w = 1; w <= n; ++w) {
      width_offset_[static_cast<std::size_t>(w)] = span_count_;
      span_count_ += static_cast<std::size_t>(n + 1 - w);
    }
    cells_.assign(span_count_ * static_cast<std::size_t>(num_labels), fill);
  }

  int length() const { return n_; }
  int num_labels() const { return num_labels_; }
  std::size_t span_count() const { return span_count_; }
  std::size_t size() const { return cells_.size(); }

  std::size_t index(int label, int i, int j) const {
    assert(label >= 0 && label < num_labels_ && i >= 0 && i < j && j <= n_);
    return (width_offset_[static_cast<std::size_t>(j - i)] + static_cast<std::size_t>(i)) *
               static_cast<std::size_t>(num_labels_) +
           static_cast<std::size_t>(label);
  }

  T& at(int label, int i, int j) { return cells_[index(label, i, j)]; }
  const T& at(int label, int i, int j) const { return cells_[index(label, i, j)]; }

  const std::vector<T>& cells() const { return cells_; }

  bool operator==(const LabelSpanTable&) const = default;

 private:
  int n_ = 0;
  int num_labels_ = 0;
  std::size_t span_count_ = 0;
  std::vector<std::size_t> width_offset_;
  std::vector<T> cells_;
};

// Per-mention probabilities p(y_m = 1 | w).
using MarginalTable = LabelSpanTable<double>;

// The weight vector w: one real (or -inf, meaning "mention forbidden") per
// candidate mention. NaN and +inf are rejected.
class WeightTable {
 public:
  WeightTable() = default;
  WeightTable(int n, LabelSet labels, double fill = 0.0);

  int length() const { return table_.length(); }
  int num_labels() const { return table_.num_labels(); }
  const LabelSet& labels() const { return labels_; }

  double get(int label, int i, int j) const { return table_.at(label, i, j); }
  void set(int label, int i, int j, double value);

  // Sum of member weights; throws std::out_of_range on a mention outside
  // the table.
  double analysis_score(const Analysis& a) const;

  const LabelSpanTable<double>& table() const { return table_; }

 private:
  LabelSet labels_;
  LabelSpanTable<double> table_;
};

// Uniform weights in [lo, hi], reproducible for a fixed seed.
WeightTable random_weights(int n, const LabelSet& labels, std::uint64_t seed, double lo = -1.0,
                           double hi = 1.0);

// +pos for mentions of gold, neg elsewhere. Used for oracle-recall decoding
// and for replaying the recognition-trace examples.
WeightTable indicator_weights(int n, const LabelSet& labels, const Analysis& gold,
                              double pos = 1.0, double neg = -1.0);

}  // namespace nner
