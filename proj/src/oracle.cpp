#include "nner/oracle.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

#include "nner/semiring.hpp"

namespace nner {

namespace {

constexpr int kMaxCandidateSpans = 24;

struct SpanList {
  std::vector<std::pair<int, int>> spans;  // sorted by (left, right)
};

SpanList candidate_spans(int n) {
  if (n < 0) throw std::invalid_argument("sentence length must be >= 0");
  const int count = n * (n + 1) / 2;
  if (count > kMaxCandidateSpans) {
    throw std::length_error("oracle instance too large: " + std::to_string(count) +
                            " candidate spans exceed the guard of " +
                            std::to_string(kMaxCandidateSpans));
  }
  SpanList list;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) list.spans.emplace_back(i, j);
  }
  return list;
}

bool pair_ok(SearchSpace space, std::pair<int, int> a, std::pair<int, int> b) {
  if (spans_disjoint(a.first, a.second, b.first, b.second)) return true;
  if (space == SearchSpace::NonNested) return false;
  return is_inside(a.first, a.second, b.first, b.second) ||
         is_inside(b.first, b.second, a.first, a.second);
}

// All span subsets valid in the space, in deterministic order (subset
// enumeration order with the last span as the fastest-varying bit). Pruning
// only uses the pairwise clause; each emitted subset is confirmed with the
// full validate_analysis predicate.
std::vector<std::vector<int>> valid_span_sets(SearchSpace space, int n) {
  const SpanList list = candidate_spans(n);
  const int count = static_cast<int>(list.spans.size());
  std::vector<std::vector<int>> sets;
  std::vector<int> chosen;

  auto leaf_valid = [&]() {
    std::vector<Mention> mentions;
    mentions.reserve(chosen.size());
    for (int s : chosen)
      mentions.push_back(Mention{0, list.spans[static_cast<std::size_t>(s)].first,
                                 list.spans[static_cast<std::size_t>(s)].second});
    return validate_analysis(Analysis(std::move(mentions)), n, space).valid;
  };

  auto rec = [&](auto&& self, int idx) -> void {
    if (idx == count) {
      if (leaf_valid()) sets.push_back(chosen);
      return;
    }
    self(self, idx + 1);
    bool compatible = true;
    for (int s : chosen) {
      if (!pair_ok(space, list.spans[static_cast<std::size_t>(s)],
                   list.spans[static_cast<std::size_t>(idx)])) {
        compatible = false;
        break;
      }
    }
    if (compatible) {
      chosen.push_back(idx);
      self(self, idx + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return sets;
}

// Calls fn(analysis mentions as (label, span-id) pairs implicitly) for every
// label assignment of one span set; assignment order: labels ascending with
// the rightmost span varying fastest.
template <typename F>
void for_each_assignment(int set_size, int num_labels, F&& fn) {
  if (set_size == 0) {
    std::vector<int> empty;
    fn(empty);
    return;
  }
  if (num_labels == 0) return;
  std::vector<int> assignment(static_cast<std::size_t>(set_size), 0);
  for (;;) {
    fn(assignment);
    int pos = set_size - 1;
    while (pos >= 0 && assignment[static_cast<std::size_t>(pos)] == num_labels - 1) {
      assignment[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assignment[static_cast<std::size_t>(pos)];
  }
}

}  // namespace

std::vector<Analysis> enumerate_analyses(SearchSpace space, int n, int num_labels) {
  if (num_labels < 0) throw std::invalid_argument("label count must be >= 0");
  const SpanList list = candidate_spans(n);
  std::vector<Analysis> analyses;
  for (const std::vector<int>& set : valid_span_sets(space, n)) {
    for_each_assignment(static_cast<int>(set.size()), num_labels,
                        [&](const std::vector<int>& assignment) {
                          std::vector<Mention> mentions;
                          mentions.reserve(set.size());
                          for (std::size_t k = 0; k < set.size(); ++k) {
                            const auto [i, j] = list.spans[static_cast<std::size_t>(set[k])];
                            mentions.push_back(Mention{assignment[k], i, j});
                          }
                          analyses.push_back(Analysis(std::move(mentions)));
                        });
  }
  return analyses;
}

OracleResult oracle_inference(SearchSpace space, const WeightTable& w) {
  const int n = w.length();
  const int num_labels = w.num_labels();
  const SpanList list = candidate_spans(n);
  const std::vector<std::vector<int>> sets = valid_span_sets(space, n);

  OracleResult result;
  result.marginals = MarginalTable(n, num_labels, 0.0);
  result.log_z = kNegInf;
  result.map_score = kNegInf;

  // Pass 1: log Z, MAP, support count.
  std::vector<int> best_set;
  std::vector<int> best_assignment;
  for (const std::vector<int>& set : sets) {
    for_each_assignment(
        static_cast<int>(set.size()), num_labels, [&](const std::vector<int>& assignment) {
          double score = 0.0;
          for (std::size_t k = 0; k < set.size(); ++k) {
            const auto [i, j] = list.spans[static_cast<std::size_t>(set[k])];
            score += w.get(assignment[k], i, j);
          }
          result.log_z = log_add_exp(result.log_z, score);
          if (score > result.map_score) {
            result.map_score = score;
            best_set = set;
            best_assignment = assignment;
          }
          if (score != kNegInf) result.count = CountSemiring::plus(result.count, 1);
        });
  }

  std::vector<Mention> best_mentions;
  for (std::size_t k = 0; k < best_set.size(); ++k) {
    const auto [i, j] = list.spans[static_cast<std::size_t>(best_set[k])];
    best_mentions.push_back(Mention{best_assignment[k], i, j});
  }
  result.map_analysis = Analysis(std::move(best_mentions));

  // Pass 2: marginals as expected mention indicators.
  for (const std::vector<int>& set : sets) {
    for_each_assignment(
        static_cast<int>(set.size()), num_labels, [&](const std::vector<int>& assignment) {
          double score = 0.0;
          for (std::size_t k = 0; k < set.size(); ++k) {
            const auto [i, j] = list.spans[static_cast<std::size_t>(set[k])];
            score += w.get(assignment[k], i, j);
          }
          if (score == kNegInf) return;
          const double p = std::exp(score - result.log_z);
          for (std::size_t k = 0; k < set.size(); ++k) {
            const auto [i, j] = list.spans[static_cast<std::size_t>(set[k])];
            result.marginals.at(assignment[k], i, j) += p;
          }
        });
  }
  return result;
}

}  // namespace nner
