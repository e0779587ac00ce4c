#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "nner/core.hpp"

namespace nner {

struct Entity {
  std::string type;
  int start = 0;
  int end = 0;
};

struct SentenceRecord {
  std::vector<std::string> tokens;
  std::vector<Entity> entities;
};

class CorpusParseError : public std::runtime_error {
 public:
  CorpusParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}

  std::size_t line;
};

// One JSON record per line: {"tokens": [...], "entities": [{"type", "start",
// "end"}, ...]} with end-exclusive fencepost indices over tokens. Blank lines
// are ignored. Malformed input raises CorpusParseError with the line number.
std::vector<SentenceRecord> read_corpus(std::istream& input);
std::vector<SentenceRecord> read_corpus_file(const std::string& path);

// Label vocabulary in order of first appearance across the corpus.
LabelSet collect_labels(const std::vector<SentenceRecord>& corpus);

struct CoverageReport {
  SearchSpace space = SearchSpace::Nested;
  std::uint64_t sentences = 0;
  std::uint64_t total_mentions = 0;
  std::uint64_t recoverable_mentions = 0;
  double max_recall = 1.0;  // recoverable / total; 1.0 for an empty corpus
  std::uint64_t sentences_with_same_span_duplicates = 0;
  std::uint64_t sentences_with_partial_overlap = 0;
};

// Maximum achievable recall of the search space: per sentence, the largest
// gold subset valid in the space, found by MAP decoding with +1/-1 indicator
// weights under the matching algorithm (a non-gold mention only ever lowers
// the score, so the decoder returns a maximum valid gold subset).
CoverageReport max_recall(const std::vector<SentenceRecord>& corpus, SearchSpace space);

}  // namespace nner
