#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nner/bench.hpp"
#include "nner/corpus.hpp"
#include "nner/deduction.hpp"
#include "nner/inference.hpp"
#include "nner/oracle.hpp"
#include "nner/weights.hpp"

namespace {

using nlohmann::json;

// Fixed 12-significant-digit formatting so repeated runs are byte-identical.
std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", v);
  return buffer;
}

std::string quote(const std::string& s) { return json(s).dump(); }

json load_json_file(const std::string& path) {
  std::ifstream input(path);
  if (!input) throw std::runtime_error("cannot open file: " + path);
  json doc = json::parse(input, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("invalid JSON in " + path);
  return doc;
}

// Weight file: {"n": int, "labels": [str], "default": number, "entries":
// [{"type", "start", "end", "weight"}]}. All keys optional; unlisted
// mentions take "default" (0 if absent). --length must agree with "n" when
// both are given.
nner::WeightTable load_weights(const std::string& path, std::optional<int> length_flag) {
  const json doc = load_json_file(path);
  if (!doc.is_object()) throw std::runtime_error("weight file must be a JSON object");

  std::optional<int> n;
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) throw std::runtime_error("\"n\" must be an integer");
    n = doc["n"].get<int>();
  }
  if (length_flag.has_value()) {
    if (n.has_value() && *n != *length_flag) {
      throw std::runtime_error("--length " + std::to_string(*length_flag) +
                               " conflicts with \"n\": " + std::to_string(*n) + " in " + path);
    }
    n = length_flag;
  }
  if (!n.has_value())
    throw std::runtime_error("sentence length missing: set \"n\" in the file or pass --length");

  std::vector<std::string> names;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw std::runtime_error("\"labels\" must be an array");
    for (const json& name : doc["labels"]) {
      if (!name.is_string()) throw std::runtime_error("labels must be strings");
      names.push_back(name.get<std::string>());
    }
  }
  nner::LabelSet labels(std::move(names));

  double fill = 0.0;
  if (doc.contains("default")) {
    if (!doc["default"].is_number()) throw std::runtime_error("\"default\" must be a number");
    fill = doc["default"].get<double>();
  }

  nner::WeightTable w(*n, labels, fill);
  if (doc.contains("entries")) {
    if (!doc["entries"].is_array()) throw std::runtime_error("\"entries\" must be an array");
    for (const json& entry : doc["entries"]) {
      if (!entry.is_object() || !entry.contains("type") || !entry["type"].is_string() ||
          !entry.contains("start") || !entry["start"].is_number_integer() ||
          !entry.contains("end") || !entry["end"].is_number_integer() ||
          !entry.contains("weight") || !entry["weight"].is_number()) {
        throw std::runtime_error(
            "entries need \"type\" (string), \"start\", \"end\" (int), \"weight\" (number)");
      }
      const std::string type = entry["type"].get<std::string>();
      const auto label = labels.find(type);
      if (!label.has_value()) throw std::runtime_error("entry type not in labels: " + type);
      w.set(*label, entry["start"].get<int>(), entry["end"].get<int>(),
            entry["weight"].get<double>());
    }
  }
  return w;
}

// Gold file: {"mentions": [{"type", "start", "end"}, ...]}.
nner::Analysis load_gold(const std::string& path, const nner::LabelSet& labels) {
  const json doc = load_json_file(path);
  if (!doc.is_object() || !doc.contains("mentions") || !doc["mentions"].is_array())
    throw std::runtime_error("gold file needs a \"mentions\" array");
  std::vector<nner::Mention> mentions;
  for (const json& m : doc["mentions"]) {
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string() || !m.contains("start") ||
        !m.contains("end") || !m["start"].is_number_integer() || !m["end"].is_number_integer()) {
      throw std::runtime_error("mentions need \"type\" (string), \"start\", \"end\" (int)");
    }
    const std::string type = m["type"].get<std::string>();
    const auto label = labels.find(type);
    if (!label.has_value()) throw std::runtime_error("gold mention type not in labels: " + type);
    mentions.push_back(nner::Mention{*label, m["start"].get<int>(), m["end"].get<int>()});
  }
  return nner::Analysis(std::move(mentions));
}

std::string mentions_json(const nner::Analysis& analysis, const nner::LabelSet& labels) {
  std::string out = "[";
  bool first = true;
  for (const nner::Mention& m : analysis) {
    if (!first) out += ", ";
    first = false;
    out += "{\"type\": " + quote(labels.name(m.label)) +
           ", \"start\": " + std::to_string(m.left) + ", \"end\": " + std::to_string(m.right) +
           "}";
  }
  return out + "]";
}

nner::Algorithm algorithm_from(const std::string& name) {
  return nner::parse_algorithm(name).value();
}

struct InferenceArgs {
  std::string weights_path;
  std::string algorithm = "cyk";
  std::optional<int> length;
};

void add_inference_options(CLI::App* cmd, InferenceArgs& args) {
  cmd->add_option("--weights", args.weights_path, "weight file (JSON)")->required();
  cmd->add_option("--algorithm", args.algorithm, "semi-markov | cyk | quadratic")
      ->required()
      ->check(CLI::IsMember({"semi-markov", "cyk", "quadratic"}));
  cmd->add_option("--length", args.length, "sentence length (when the file omits \"n\")");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact MAP/marginal inference for span-based nested named-entity recognition"};
  app.require_subcommand(1);

  InferenceArgs decode_args;
  auto* decode_cmd = app.add_subcommand("decode", "print the best analysis and its score");
  add_inference_options(decode_cmd, decode_args);

  InferenceArgs trace_args;
  auto* trace_cmd = app.add_subcommand("trace", "print the recognition trace of the best analysis");
  add_inference_options(trace_cmd, trace_args);

  InferenceArgs logz_args;
  auto* logz_cmd = app.add_subcommand("logz", "print the log-partition function");
  add_inference_options(logz_cmd, logz_args);

  InferenceArgs marginals_args;
  auto* marginals_cmd = app.add_subcommand("marginals", "print per-mention probabilities");
  add_inference_options(marginals_cmd, marginals_args);

  InferenceArgs loss_args;
  std::string gold_path;
  auto* loss_cmd = app.add_subcommand("loss", "print the negative log-likelihood of a gold analysis");
  add_inference_options(loss_cmd, loss_args);
  loss_cmd->add_option("--gold", gold_path, "gold analysis file (JSON)")->required();

  int count_length = 0;
  int count_labels = 1;
  std::string count_algorithm;
  auto* count_cmd = app.add_subcommand("count", "print the number of analyses in the search space");
  count_cmd->add_option("--length", count_length, "sentence length")->required();
  count_cmd->add_option("--labels", count_labels, "number of mention types");
  count_cmd->add_option("--algorithm", count_algorithm, "semi-markov | cyk | quadratic")
      ->required()
      ->check(CLI::IsMember({"semi-markov", "cyk", "quadratic"}));

  std::string coverage_corpus;
  std::string coverage_space;
  auto* coverage_cmd = app.add_subcommand("coverage", "maximum recall of a search space on a corpus");
  coverage_cmd->add_option("--corpus", coverage_corpus, "corpus file (one JSON record per line)")
      ->required();
  coverage_cmd->add_option("--space", coverage_space, "non-nested | nested | restricted")
      ->required()
      ->check(CLI::IsMember({"non-nested", "nested", "restricted"}));

  nner::BenchConfig bench_config;
  std::vector<std::string> bench_algorithms;
  auto* bench_cmd = app.add_subcommand("bench", "time MAP decoding per sentence length (CSV)");
  bench_cmd->add_option("--lengths", bench_config.lengths, "sentence lengths, ascending")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--reps", bench_config.repetitions, "repetitions per length (>= 3)");
  bench_cmd->add_option("--labels", bench_config.num_labels, "number of mention types");
  bench_cmd->add_option("--seed", bench_config.seed, "weight generator seed");
  bench_cmd->add_option("--algorithms", bench_algorithms, "subset of semi-markov,cyk,quadratic")
      ->delimiter(',');

  int enum_length = 0;
  int enum_labels = 1;
  std::string enum_space;
  auto* enum_cmd = app.add_subcommand("enumerate", "list every analysis of a search space (oracle)");
  enum_cmd->add_option("--length", enum_length, "sentence length")->required();
  enum_cmd->add_option("--labels", enum_labels, "number of mention types");
  enum_cmd->add_option("--space", enum_space, "non-nested | nested | restricted")
      ->required()
      ->check(CLI::IsMember({"non-nested", "nested", "restricted"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (decode_cmd->parsed()) {
      const nner::WeightTable w = load_weights(decode_args.weights_path, decode_args.length);
      const auto [score, analysis] = nner::map_inference(algorithm_from(decode_args.algorithm), w);
      std::cout << "{\"score\": " << fmt(score)
                << ", \"mentions\": " << mentions_json(analysis, w.labels()) << "}\n";
    } else if (trace_cmd->parsed()) {
      const nner::WeightTable w = load_weights(trace_args.weights_path, trace_args.length);
      const nner::DecodeResult result =
          nner::viterbi_decode(algorithm_from(trace_args.algorithm), w);
      std::cout << nner::format_trace(result.trace, &w.labels());
    } else if (logz_cmd->parsed()) {
      const nner::WeightTable w = load_weights(logz_args.weights_path, logz_args.length);
      std::cout << "{\"log_partition\": "
                << fmt(nner::log_partition(algorithm_from(logz_args.algorithm), w)) << "}\n";
    } else if (marginals_cmd->parsed()) {
      const nner::WeightTable w = load_weights(marginals_args.weights_path, marginals_args.length);
      const nner::Algorithm alg = algorithm_from(marginals_args.algorithm);
      const double log_z = nner::log_partition(alg, w);
      const nner::MarginalTable table = nner::marginals(alg, w);
      std::cout << "{\"log_partition\": " << fmt(log_z) << ", \"marginals\": [";
      bool first = true;
      for (int i = 0; i < w.length(); ++i) {
        for (int j = i + 1; j <= w.length(); ++j) {
          for (int t = 0; t < w.num_labels(); ++t) {
            if (!first) std::cout << ", ";
            first = false;
            std::cout << "{\"type\": " << quote(w.labels().name(t)) << ", \"start\": " << i
                      << ", \"end\": " << j << ", \"probability\": " << fmt(table.at(t, i, j))
                      << "}";
          }
        }
      }
      std::cout << "]}\n";
    } else if (loss_cmd->parsed()) {
      const nner::WeightTable w = load_weights(loss_args.weights_path, loss_args.length);
      const nner::Analysis gold = load_gold(gold_path, w.labels());
      const nner::Algorithm alg = algorithm_from(loss_args.algorithm);
      const double loss = nner::nll_loss(alg, w, gold);
      std::cout << "{\"loss\": " << fmt(loss) << ", \"gold_score\": "
                << fmt(w.analysis_score(gold))
                << ", \"log_partition\": " << fmt(nner::log_partition(alg, w)) << "}\n";
    } else if (count_cmd->parsed()) {
      std::cout << nner::count_analyses(algorithm_from(count_algorithm), count_length,
                                        count_labels)
                << "\n";
    } else if (coverage_cmd->parsed()) {
      const auto corpus = nner::read_corpus_file(coverage_corpus);
      const nner::SearchSpace space = nner::parse_search_space(coverage_space).value();
      const nner::CoverageReport report = nner::max_recall(corpus, space);
      std::cout << "{\"space\": " << quote(std::string(nner::search_space_name(space)))
                << ", \"sentences\": " << report.sentences
                << ", \"total_mentions\": " << report.total_mentions
                << ", \"recoverable_mentions\": " << report.recoverable_mentions
                << ", \"max_recall\": " << fmt(report.max_recall)
                << ", \"sentences_with_same_span_duplicates\": "
                << report.sentences_with_same_span_duplicates
                << ", \"sentences_with_partial_overlap\": "
                << report.sentences_with_partial_overlap << "}\n";
    } else if (bench_cmd->parsed()) {
      if (!bench_algorithms.empty()) {
        bench_config.algorithms.clear();
        for (const std::string& name : bench_algorithms) {
          const auto alg = nner::parse_algorithm(name);
          if (!alg.has_value()) throw std::runtime_error("unknown algorithm: " + name);
          bench_config.algorithms.push_back(*alg);
        }
      }
      const auto rows = nner::run_bench(bench_config);
      nner::write_bench_csv(std::cout, rows);
    } else if (enum_cmd->parsed()) {
      const nner::SearchSpace space = nner::parse_search_space(enum_space).value();
      const nner::LabelSet labels = nner::numbered_labels(enum_labels);
      for (const nner::Analysis& analysis :
           nner::enumerate_analyses(space, enum_length, enum_labels)) {
        std::cout << mentions_json(analysis, labels) << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
