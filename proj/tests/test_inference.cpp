#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "nner/inference.hpp"
#include "nner/oracle.hpp"

using namespace nner;

namespace {

constexpr auto kAllAlgorithms = {Algorithm::SemiMarkov, Algorithm::CykNested,
                                 Algorithm::QuadNested};

}  // namespace

TEST_CASE("log_partition on tiny uniform instances") {
  const WeightTable w1(1, numbered_labels(1));
  CHECK(log_partition(Algorithm::SemiMarkov, w1) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const WeightTable w2(2, numbered_labels(1));
  CHECK(log_partition(Algorithm::CykNested, w2) == doctest::Approx(std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("chart inference agrees with the oracle on random draws") {
  for (auto alg : kAllAlgorithms) {
    const SearchSpace space = search_space_of(alg);
    for (int n = 0; n <= 5; ++n) {
      for (int labels = 1; labels <= 2; ++labels) {
        for (std::uint64_t draw = 0; draw < 10; ++draw) {
          const std::uint64_t seed =
              1000 * static_cast<std::uint64_t>(alg) + 100 * static_cast<std::uint64_t>(n) +
              10 * static_cast<std::uint64_t>(labels) + draw;
          const WeightTable w = random_weights(n, numbered_labels(labels), seed);
          const OracleResult oracle = oracle_inference(space, w);

          CHECK(log_partition(alg, w) == doctest::Approx(oracle.log_z).epsilon(1e-9));
          const auto [score, analysis] = map_inference(alg, w);
          CHECK(score == doctest::Approx(oracle.map_score).epsilon(1e-9));
          CHECK(w.analysis_score(analysis) == doctest::Approx(oracle.map_score).epsilon(1e-9));

          const MarginalTable chart_marginals = marginals(alg, w);
          for (int t = 0; t < labels; ++t) {
            for (int i = 0; i < n; ++i) {
              for (int j = i + 1; j <= n; ++j) {
                CHECK(chart_marginals.at(t, i, j) ==
                      doctest::Approx(oracle.marginals.at(t, i, j)).epsilon(1e-8));
              }
            }
          }
        }
      }
    }
  }
}

TEST_CASE("map_inference picks the best-scoring structure per space") {
  const auto s1 = tests::example_sentence(1);
  const auto [score1, best1] = map_inference(Algorithm::SemiMarkov, tests::example_indicator(s1));
  CHECK(best1 == s1.gold);
  CHECK(score1 == doctest::Approx(2.0));

  const auto s3 = tests::example_sentence(3);
  const auto [score3, best3] = map_inference(Algorithm::QuadNested, tests::example_indicator(s3));
  CHECK(best3 == s3.gold);
  CHECK(score3 == doctest::Approx(3.0));

  // n=2 with weights 1 / 2 / 2.5: the non-nested space must drop (0,2)
  WeightTable w(2, numbered_labels(1));
  w.set(0, 0, 1, 1.0);
  w.set(0, 1, 2, 2.0);
  w.set(0, 0, 2, 2.5);
  const auto [semi_score, semi_best] = map_inference(Algorithm::SemiMarkov, w);
  CHECK(semi_score == doctest::Approx(3.0));
  CHECK(semi_best == Analysis({{0, 0, 1}, {0, 1, 2}}));
  const auto [cyk_score, cyk_best] = map_inference(Algorithm::CykNested, w);
  CHECK(cyk_score == doctest::Approx(5.5));
  CHECK(cyk_best == Analysis({{0, 0, 1}, {0, 1, 2}, {0, 0, 2}}));
}

TEST_CASE("marginals: closed forms, hard exclusions, expected counts") {
  const WeightTable w1(1, numbered_labels(1));
  for (auto alg : kAllAlgorithms)
    CHECK(marginals(alg, w1).at(0, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));

  WeightTable excl(2, numbered_labels(1));
  excl.set(0, 0, 2, kNegInf);
  for (auto alg : kAllAlgorithms) {
    const MarginalTable m = marginals(alg, excl);
    CHECK(m.at(0, 0, 2) == 0.0);
    CHECK(m.at(0, 0, 1) > 0.0);
  }

  // sum of marginals equals the oracle's expected mention count
  for (auto alg : kAllAlgorithms) {
    const WeightTable w = random_weights(5, numbered_labels(2), 77);
    const OracleResult oracle = oracle_inference(search_space_of(alg), w);
    const MarginalTable m = marginals(alg, w);
    double chart_sum = 0.0;
    double oracle_sum = 0.0;
    for (int t = 0; t < 2; ++t) {
      for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
          chart_sum += m.at(t, i, j);
          oracle_sum += oracle.marginals.at(t, i, j);
        }
      }
    }
    CHECK(chart_sum == doctest::Approx(oracle_sum).epsilon(1e-8));
  }
}

TEST_CASE("marginals are the partial derivatives of log Z") {
  const double step = 1e-5;
  for (auto alg : kAllAlgorithms) {
    const int n = 4;
    const int labels = 2;
    WeightTable w = random_weights(n, numbered_labels(labels), 4242);
    const MarginalTable m = marginals(alg, w);
    for (int t = 0; t < labels; ++t) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
          const double original = w.get(t, i, j);
          w.set(t, i, j, original + step);
          const double up = log_partition(alg, w);
          w.set(t, i, j, original - step);
          const double down = log_partition(alg, w);
          w.set(t, i, j, original);
          const double fd = (up - down) / (2 * step);
          CHECK(std::abs(fd - m.at(t, i, j)) <=
                1e-4 * std::max(std::abs(m.at(t, i, j)), std::abs(fd)) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("raising a weight never lowers that mention's marginal") {
  for (auto alg : kAllAlgorithms) {
    for (std::uint64_t seed : {5u, 6u}) {
      WeightTable w = random_weights(4, numbered_labels(2), seed);
      const MarginalTable before = marginals(alg, w);
      w.set(1, 1, 3, w.get(1, 1, 3) + 0.7);
      const MarginalTable after = marginals(alg, w);
      CHECK(after.at(1, 1, 3) >= before.at(1, 1, 3) - 1e-12);
    }
  }
}

TEST_CASE("count_analyses: closed values, empty sentence, overflow") {
  CHECK(count_analyses(Algorithm::SemiMarkov, 3, 1) == 13);
  CHECK(count_analyses(Algorithm::CykNested, 3, 1) == 48);
  for (auto alg : kAllAlgorithms) CHECK(count_analyses(alg, 0, 3) == 1);
  CHECK_THROWS_AS(count_analyses(Algorithm::SemiMarkov, 200, 7), std::overflow_error);
}

TEST_CASE("nll_loss evaluates -w'y + log Z and rejects out-of-space gold") {
  const WeightTable w1(1, numbered_labels(1));
  for (auto alg : kAllAlgorithms) {
    CHECK(nll_loss(alg, w1, Analysis{}) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(nll_loss(alg, w1, Analysis({{0, 0, 1}})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }

  const WeightTable w = random_weights(6, numbered_labels(1), 31);
  const Analysis nested_only({{0, 0, 4}, {0, 0, 2}, {0, 2, 4}});
  CHECK(nll_loss(Algorithm::CykNested, w, nested_only) ==
        doctest::Approx(-w.analysis_score(nested_only) + log_partition(Algorithm::CykNested, w))
            .epsilon(1e-12));
  CHECK_THROWS_AS(nll_loss(Algorithm::QuadNested, w, nested_only), GoldValidationError);
  try {
    nll_loss(Algorithm::QuadNested, w, nested_only);
  } catch (const GoldValidationError& e) {
    REQUIRE(e.report.child_violations.size() == 1);
    CHECK(e.report.child_violations[0] == Mention{0, 0, 4});
  }
}

TEST_CASE("search-space ordering of log Z and MAP scores") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const WeightTable w = random_weights(6, numbered_labels(2), 500 + seed);
    const double z_semi = log_partition(Algorithm::SemiMarkov, w);
    const double z_quad = log_partition(Algorithm::QuadNested, w);
    const double z_cyk = log_partition(Algorithm::CykNested, w);
    CHECK(z_semi <= z_quad + 1e-12);
    CHECK(z_quad <= z_cyk + 1e-12);
    const double m_semi = map_inference(Algorithm::SemiMarkov, w).first;
    const double m_quad = map_inference(Algorithm::QuadNested, w).first;
    const double m_cyk = map_inference(Algorithm::CykNested, w).first;
    CHECK(m_semi <= m_quad + 1e-12);
    CHECK(m_quad <= m_cyk + 1e-12);
  }
}
