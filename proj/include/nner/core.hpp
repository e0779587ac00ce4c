#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nner {

// Chart item markers; mention type names must not collide with these.
inline constexpr std::string_view kItemMarkers[] = {"→", "↦", "↔", "↤"};

class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  bool empty() const { return names_.empty(); }
  const std::string& name(int label) const { return names_.at(static_cast<std::size_t>(label)); }
  std::optional<int> find(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const LabelSet&) const = default;

 private:
  std::vector<std::string> names_;
};

// "T0", "T1", ... convenience set for synthetic instances.
LabelSet numbered_labels(int count, std::string_view prefix = "T");

// A typed span in fencepost coordinates: (label, left, right) covers words
// left+1..right, 0 <= left < right <= n.
struct Mention {
  int label = 0;
  int left = 0;
  int right = 0;
};

constexpr bool operator==(const Mention& a, const Mention& b) {
  return a.label == b.label && a.left == b.left && a.right == b.right;
}
constexpr bool operator!=(const Mention& a, const Mention& b) { return !(a == b); }

// Canonical order: (left, right, label).
constexpr bool operator<(const Mention& a, const Mention& b) {
  if (a.left != b.left) return a.left < b.left;
  if (a.right != b.right) return a.right < b.right;
  return a.label < b.label;
}

std::string mention_to_string(const Mention& m, const LabelSet* labels = nullptr);

// Strict containment: a span is never inside itself.
constexpr bool is_inside(int inner_left, int inner_right, int outer_left, int outer_right) {
  return (outer_left < inner_left && inner_right <= outer_right) ||
         (outer_left <= inner_left && inner_right < outer_right);
}
constexpr bool is_inside(const Mention& inner, const Mention& outer) {
  return is_inside(inner.left, inner.right, outer.left, outer.right);
}

constexpr bool spans_disjoint(int left_a, int right_a, int left_b, int right_b) {
  return right_a <= left_b || right_b <= left_a;
}
constexpr bool spans_disjoint(const Mention& a, const Mention& b) {
  return spans_disjoint(a.left, a.right, b.left, b.right);
}

// A set of mentions, kept canonically sorted and deduplicated so that
// equality and serialized output are deterministic.
class Analysis {
 public:
  Analysis() = default;
  explicit Analysis(std::vector<Mention> mentions);

  const std::vector<Mention>& mentions() const { return mentions_; }
  std::size_t size() const { return mentions_.size(); }
  bool empty() const { return mentions_.empty(); }
  bool contains(const Mention& m) const;
  auto begin() const { return mentions_.begin(); }
  auto end() const { return mentions_.end(); }

  bool operator==(const Analysis&) const = default;

 private:
  std::vector<Mention> mentions_;
};

enum class SearchSpace { NonNested, Nested, RestrictedNested };

std::string_view search_space_name(SearchSpace space);
std::optional<SearchSpace> parse_search_space(std::string_view name);

struct ValidityReport {
  bool valid = true;
  // Pairs of mentions that neither nest nor stay disjoint (for NonNested:
  // any pair that is not disjoint).
  std::vector<std::pair<Mention, Mention>> overlap_violations;
  // RestrictedNested only: mentions with more than one child of length > 1.
  std::vector<Mention> child_violations;
};

// Throws std::out_of_range if a mention falls outside [0, n].
ValidityReport validate_analysis(const Analysis& a, int n, SearchSpace space);

// Children of m within a: mentions inside m that are not inside another
// mention that is itself inside m. Requires m in a (std::invalid_argument
// otherwise) and a valid under the Nested space.
std::vector<Mention> children_of(const Mention& m, const Analysis& a);

}  // namespace nner
