#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "nner/deduction.hpp"

namespace nner {

struct BenchConfig {
  std::vector<int> lengths;  // sorted ascending
  int repetitions = 5;       // >= 3
  int num_labels = 7;
  std::uint64_t seed = 20220923;
  std::vector<Algorithm> algorithms = {Algorithm::SemiMarkov, Algorithm::CykNested,
                                       Algorithm::QuadNested};
};

struct BenchRow {
  Algorithm algorithm = Algorithm::SemiMarkov;
  int n = 0;
  double seconds_per_sentence = 0.0;
};

// Median MAP-decoding time per sentence. Each (algorithm, n) gets fresh
// pseudo-random finite weights from the seed and a discarded warm-up run;
// timestamps wrap the decode call only. Strictly single-threaded.
std::vector<BenchRow> run_bench(const BenchConfig& config);

// `algorithm,n,seconds_per_sentence` rows, decimal point, no locale.
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

// OLS slope of log(seconds) against log(n) for one algorithm's rows.
// Requires >= 3 distinct lengths (std::invalid_argument otherwise).
double fit_loglog_slope(std::span<const BenchRow> rows, Algorithm alg);

}  // namespace nner
