#include "nner/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "nner/weights.hpp"

namespace nner {

namespace {

double time_decode(Algorithm alg, const WeightTable& w) {
  const auto start = std::chrono::steady_clock::now();
  const DecodeResult result = viterbi_decode(alg, w);
  const auto stop = std::chrono::steady_clock::now();
  // keep the result alive so the decode cannot be elided
  volatile double sink = result.score;
  (void)sink;
  return std::chrono::duration<double>(stop - start).count();
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  if (config.repetitions < 3) throw std::invalid_argument("bench needs >= 3 repetitions");
  if (!std::is_sorted(config.lengths.begin(), config.lengths.end()))
    throw std::invalid_argument("bench lengths must be sorted ascending");
  if (config.num_labels < 1) throw std::invalid_argument("bench needs >= 1 label");

  const LabelSet labels = numbered_labels(config.num_labels);
  std::vector<BenchRow> rows;
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    const Algorithm alg = config.algorithms[a];
    for (const int n : config.lengths) {
      if (n < 0) throw std::invalid_argument("bench lengths must be >= 0");
      const std::uint64_t seed = config.seed ^ (0x9e3779b97f4a7c15ULL * (a + 1)) ^
                                 (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(n + 1));
      const WeightTable w = random_weights(n, labels, seed);
      time_decode(alg, w);  // warm-up, discarded
      std::vector<double> samples;
      samples.reserve(static_cast<std::size_t>(config.repetitions));
      for (int rep = 0; rep < config.repetitions; ++rep) samples.push_back(time_decode(alg, w));
      rows.push_back(BenchRow{alg, n, median(std::move(samples))});
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "algorithm,n,seconds_per_sentence\n";
  char buffer[64];
  for (const BenchRow& row : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.9e", row.seconds_per_sentence);
    out << algorithm_name(row.algorithm) << ',' << row.n << ',' << buffer << '\n';
  }
}

double fit_loglog_slope(std::span<const BenchRow> rows, Algorithm alg) {
  std::vector<std::pair<double, double>> points;
  std::set<int> lengths;
  for (const BenchRow& row : rows) {
    if (row.algorithm != alg) continue;
    if (row.n <= 0 || row.seconds_per_sentence <= 0.0)
      throw std::invalid_argument("log-log fit needs positive lengths and times");
    points.emplace_back(std::log(static_cast<double>(row.n)), std::log(row.seconds_per_sentence));
    lengths.insert(row.n);
  }
  if (lengths.size() < 3)
    throw std::invalid_argument("log-log fit needs at least 3 distinct lengths");

  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= static_cast<double>(points.size());
  mean_y /= static_cast<double>(points.size());
  double num = 0.0;
  double den = 0.0;
  for (const auto& [x, y] : points) {
    num += (x - mean_x) * (y - mean_y);
    den += (x - mean_x) * (x - mean_x);
  }
  return num / den;
}

}  // namespace nner
