#pragma once

#include <string>
#include <vector>

#include "nner/core.hpp"
#include "nner/weights.hpp"

namespace nner::tests {

// The four example sentences with nested person/location/organization
// mentions used throughout the recognition-trace tests.
struct ExampleSentence {
  int n = 0;
  LabelSet labels;
  Analysis gold;
};

inline ExampleSentence example_sentence(int index) {
  switch (index) {
    case 1: {
      LabelSet labels({"PER"});
      return {8, labels, Analysis({{0, 0, 1}, {0, 5, 8}})};
    }
    case 2: {
      LabelSet labels({"PER"});
      return {8, labels, Analysis({{0, 0, 1}, {0, 2, 3}, {0, 5, 6}, {0, 2, 8}})};
    }
    case 3: {
      LabelSet labels({"PER", "GPE", "ORG"});
      return {8, labels, Analysis({{0, 0, 1}, {1, 5, 7}, {2, 4, 8}})};
    }
    case 4: {
      LabelSet labels({"PER", "GPE"});
      return {6, labels, Analysis({{0, 0, 1}, {1, 5, 6}, {1, 4, 6}, {0, 2, 6}})};
    }
    default: throw std::invalid_argument("example sentences are numbered 1..4");
  }
}

inline WeightTable example_indicator(const ExampleSentence& s) {
  return indicator_weights(s.n, s.labels, s.gold);
}

// Right-descending chain of depth nested mentions, each the only child of
// its parent and non-unary: mention k covers (2k, 2*depth) for k = 0 ..
// depth-1.
inline Analysis recursion_chain(int depth) {
  std::vector<Mention> mentions;
  for (int k = 0; k < depth; ++k) mentions.push_back(Mention{0, 2 * k, 2 * depth});
  return Analysis(std::move(mentions));
}

}  // namespace nner::tests
