#include "nner/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include <json.hpp>

#include "nner/deduction.hpp"
#include "nner/inference.hpp"
#include "nner/weights.hpp"

namespace nner {

namespace {

using nlohmann::json;

SentenceRecord parse_record(const json& doc, std::size_t line) {
  if (!doc.is_object()) throw CorpusParseError(line, "record must be a JSON object");
  if (!doc.contains("tokens") || !doc["tokens"].is_array())
    throw CorpusParseError(line, "missing \"tokens\" array");
  SentenceRecord record;
  for (const json& token : doc["tokens"]) {
    if (!token.is_string()) throw CorpusParseError(line, "tokens must be strings");
    record.tokens.push_back(token.get<std::string>());
  }
  const int n = static_cast<int>(record.tokens.size());
  if (doc.contains("entities")) {
    if (!doc["entities"].is_array()) throw CorpusParseError(line, "\"entities\" must be an array");
    for (const json& entity : doc["entities"]) {
      if (!entity.is_object() || !entity.contains("type") || !entity["type"].is_string() ||
          !entity.contains("start") || !entity["start"].is_number_integer() ||
          !entity.contains("end") || !entity["end"].is_number_integer()) {
        throw CorpusParseError(line, "entities need \"type\" (string), \"start\", \"end\" (int)");
      }
      Entity e{entity["type"].get<std::string>(), entity["start"].get<int>(),
               entity["end"].get<int>()};
      if (e.type.empty()) throw CorpusParseError(line, "entity type must be non-empty");
      if (e.start < 0 || e.start >= e.end || e.end > n) {
        throw CorpusParseError(line, "entity span (" + std::to_string(e.start) + ", " +
                                         std::to_string(e.end) + ") out of range for " +
                                         std::to_string(n) + " tokens");
      }
      record.entities.push_back(std::move(e));
    }
  }
  return record;
}

}  // namespace

std::vector<SentenceRecord> read_corpus(std::istream& input) {
  std::vector<SentenceRecord> corpus;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(input, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) throw CorpusParseError(line_number, "invalid JSON");
    corpus.push_back(parse_record(doc, line_number));
  }
  return corpus;
}

std::vector<SentenceRecord> read_corpus_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw std::runtime_error("cannot open corpus file: " + path);
  return read_corpus(input);
}

LabelSet collect_labels(const std::vector<SentenceRecord>& corpus) {
  std::vector<std::string> names;
  for (const SentenceRecord& record : corpus) {
    for (const Entity& e : record.entities) {
      if (std::find(names.begin(), names.end(), e.type) == names.end()) names.push_back(e.type);
    }
  }
  return LabelSet(std::move(names));
}

CoverageReport max_recall(const std::vector<SentenceRecord>& corpus, SearchSpace space) {
  const LabelSet labels = collect_labels(corpus);
  const Algorithm alg = algorithm_of(space);

  CoverageReport report;
  report.space = space;
  report.sentences = corpus.size();

  for (const SentenceRecord& record : corpus) {
    const int n = static_cast<int>(record.tokens.size());
    std::vector<Mention> gold_mentions;
    for (const Entity& e : record.entities)
      gold_mentions.push_back(Mention{labels.find(e.type).value(), e.start, e.end});
    const Analysis gold(std::move(gold_mentions));

    bool same_span = false;
    bool partial_overlap = false;
    const auto& ms = gold.mentions();
    for (std::size_t x = 0; x < ms.size(); ++x) {
      for (std::size_t y = x + 1; y < ms.size(); ++y) {
        if (ms[x].left == ms[y].left && ms[x].right == ms[y].right) same_span = true;
        if (!spans_disjoint(ms[x], ms[y]) && !is_inside(ms[x], ms[y]) &&
            !is_inside(ms[y], ms[x]) &&
            !(ms[x].left == ms[y].left && ms[x].right == ms[y].right)) {
          partial_overlap = true;
        }
      }
    }
    report.sentences_with_same_span_duplicates += same_span ? 1 : 0;
    report.sentences_with_partial_overlap += partial_overlap ? 1 : 0;

    report.total_mentions += gold.size();
    if (gold.empty()) continue;

    const WeightTable w = indicator_weights(n, labels, gold);
    const auto [score, decoded] = map_inference(alg, w);
    std::uint64_t recovered = 0;
    for (const Mention& m : decoded) {
      if (gold.contains(m)) ++recovered;
    }
    report.recoverable_mentions += recovered;
  }

  report.max_recall = report.total_mentions == 0
                          ? 1.0
                          : static_cast<double>(report.recoverable_mentions) /
                                static_cast<double>(report.total_mentions);
  return report;
}

}  // namespace nner
