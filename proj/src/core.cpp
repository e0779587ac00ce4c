#include "nner/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace nner {

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t a = 0; a < names_.size(); ++a) {
    if (names_[a].empty()) throw std::invalid_argument("label names must be non-empty");
    for (std::string_view marker : kItemMarkers) {
      if (names_[a] == marker)
        throw std::invalid_argument("label name collides with item marker: " + names_[a]);
    }
    for (std::size_t b = a + 1; b < names_.size(); ++b) {
      if (names_[a] == names_[b]) throw std::invalid_argument("duplicate label name: " + names_[a]);
    }
  }
}

std::optional<int> LabelSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

LabelSet numbered_labels(int count, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return LabelSet(std::move(names));
}

std::string mention_to_string(const Mention& m, const LabelSet* labels) {
  std::string name = labels != nullptr && m.label >= 0 && m.label < labels->size()
                         ? labels->name(m.label)
                         : "t" + std::to_string(m.label);
  return "<" + name + ", " + std::to_string(m.left) + ", " + std::to_string(m.right) + ">";
}

Analysis::Analysis(std::vector<Mention> mentions) : mentions_(std::move(mentions)) {
  std::sort(mentions_.begin(), mentions_.end());
  mentions_.erase(std::unique(mentions_.begin(), mentions_.end()), mentions_.end());
}

bool Analysis::contains(const Mention& m) const {
  return std::binary_search(mentions_.begin(), mentions_.end(), m);
}

std::string_view search_space_name(SearchSpace space) {
  switch (space) {
    case SearchSpace::NonNested: return "non-nested";
    case SearchSpace::Nested: return "nested";
    case SearchSpace::RestrictedNested: return "restricted";
  }
  return "?";
}

std::optional<SearchSpace> parse_search_space(std::string_view name) {
  if (name == "non-nested") return SearchSpace::NonNested;
  if (name == "nested") return SearchSpace::Nested;
  if (name == "restricted") return SearchSpace::RestrictedNested;
  return std::nullopt;
}

ValidityReport validate_analysis(const Analysis& a, int n, SearchSpace space) {
  for (const Mention& m : a) {
    if (m.left < 0 || m.left >= m.right || m.right > n) {
      throw std::out_of_range("mention out of range for sentence length " + std::to_string(n) +
                              ": " + mention_to_string(m));
    }
  }

  ValidityReport report;
  const auto& ms = a.mentions();
  for (std::size_t x = 0; x < ms.size(); ++x) {
    for (std::size_t y = x + 1; y < ms.size(); ++y) {
      bool ok = spans_disjoint(ms[x], ms[y]);
      if (space != SearchSpace::NonNested)
        ok = ok || is_inside(ms[x], ms[y]) || is_inside(ms[y], ms[x]);
      if (!ok) report.overlap_violations.emplace_back(ms[x], ms[y]);
    }
  }

  if (space == SearchSpace::RestrictedNested && report.overlap_violations.empty()) {
    for (const Mention& m : ms) {
      int wide_children = 0;
      for (const Mention& c : children_of(m, a)) {
        if (c.right - c.left > 1) ++wide_children;
      }
      if (wide_children > 1) report.child_violations.push_back(m);
    }
  }

  report.valid = report.overlap_violations.empty() && report.child_violations.empty();
  return report;
}

std::vector<Mention> children_of(const Mention& m, const Analysis& a) {
  if (!a.contains(m)) throw std::invalid_argument("mention not in analysis: " + mention_to_string(m));
  std::vector<Mention> inside_m;
  for (const Mention& x : a) {
    if (is_inside(x, m)) inside_m.push_back(x);
  }
  std::vector<Mention> children;
  for (const Mention& x : inside_m) {
    bool buried = false;
    for (const Mention& y : inside_m) {
      if (y != x && is_inside(x, y)) {
        buried = true;
        break;
      }
    }
    if (!buried) children.push_back(x);
  }
  return children;
}

}  // namespace nner
