#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace nner {

// Dense triangular table over spans (i, j) with 0 <= i < j <= n, optionally
// including the diagonal i == j. Storage is width-major: all cells of one
// span width are contiguous, which matches the chart schedule and keeps the
// quadratic algorithm's inner loops streaming.
template <typename T>
class SpanTable {
 public:
  SpanTable() = default;

  SpanTable(int n, bool with_diagonal, const T& fill) : n_(n), min_width_(with_diagonal ? 0 : 1) {
    assert(n >= 0);
    offsets_.assign(static_cast<std::size_t>(n) + 2, 0);
    std::size_t size = 0;
    for (int w = min_width_; w <= n; ++w) {
      offsets_[static_cast<std::size_t>(w)] = size;
      size += static_cast<std::size_t>(n + 1 - w);
    }
    cells_.assign(size, fill);
  }

  int length() const { return n_; }
  bool allocated() const { return n_ >= 0; }
  std::size_t size() const { return cells_.size(); }

  std::size_t index(int i, int j) const {
    assert(allocated() && i >= 0 && j <= n_ && j - i >= min_width_);
    return offsets_[static_cast<std::size_t>(j - i)] + static_cast<std::size_t>(i);
  }

  T& at(int i, int j) { return cells_[index(i, j)]; }
  const T& at(int i, int j) const { return cells_[index(i, j)]; }

  T* data() { return cells_.data(); }
  const T* data() const { return cells_.data(); }
  const std::vector<T>& cells() const { return cells_; }

  bool operator==(const SpanTable&) const = default;

 private:
  int n_ = -1;
  int min_width_ = 1;
  std::vector<std::size_t> offsets_;
  std::vector<T> cells_;
};

}  // namespace nner
