#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nner/semiring.hpp"

using namespace nner;

TEST_CASE("log_sum_exp is stable and rejects bad input") {
  const std::vector<double> two_zero{0.0, 0.0};
  CHECK(log_sum_exp(two_zero) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  const std::vector<double> with_zero_element{kNegInf, 1.25};
  CHECK(log_sum_exp(with_zero_element) == 1.25);

  const std::vector<double> large{1000.0, 1000.0};
  CHECK(log_sum_exp(large) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-12));

  CHECK(log_sum_exp({}) == kNegInf);

  const std::vector<double> with_nan{0.0, std::nan("")};
  CHECK_THROWS_AS(log_sum_exp(with_nan), std::domain_error);
  const std::vector<double> with_inf{0.0, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(log_sum_exp(with_inf), std::domain_error);
}

TEST_CASE("log_add_exp handles the zero element without NaN") {
  CHECK(log_add_exp(kNegInf, kNegInf) == kNegInf);
  CHECK(log_add_exp(kNegInf, 3.0) == 3.0);
  CHECK(log_add_exp(3.0, kNegInf) == 3.0);
  CHECK(log_add_exp(0.0, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

namespace {

std::vector<double> sample_log_values(std::mt19937_64& rng, std::size_t count) {
  std::uniform_real_distribution<double> dist(-30.0, 30.0);
  std::bernoulli_distribution zero(0.1);
  std::vector<double> values;
  for (std::size_t i = 0; i < count; ++i) values.push_back(zero(rng) ? kNegInf : dist(rng));
  return values;
}

}  // namespace

TEST_CASE("log semiring axioms hold up to rounding") {
  std::mt19937_64 rng(7);
  using S = LogSemiring;
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = sample_log_values(rng, 3);
    const double a = v[0];
    const double b = v[1];
    const double c = v[2];
    CHECK(S::plus(a, b) == S::plus(b, a));
    CHECK(S::plus(S::plus(a, b), c) ==
          doctest::Approx(S::plus(a, S::plus(b, c))).epsilon(1e-9));
    CHECK(S::plus(a, S::zero()) == a);
    CHECK(S::times(a, S::one()) == a);
    CHECK(S::times(S::times(a, b), c) ==
          doctest::Approx(S::times(a, S::times(b, c))).epsilon(1e-9));
    CHECK(S::times(S::zero(), a) == S::zero());
    const double lhs = S::times(a, S::plus(b, c));
    const double rhs = S::plus(S::times(a, b), S::times(a, c));
    if (lhs == kNegInf) {
      CHECK(rhs == kNegInf);
    } else {
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("max semiring axioms hold") {
  std::mt19937_64 rng(8);
  using S = MaxSemiring;
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = sample_log_values(rng, 3);
    const double a = v[0];
    const double b = v[1];
    const double c = v[2];
    CHECK(S::plus(a, b) == S::plus(b, a));
    CHECK(S::plus(S::plus(a, b), c) == S::plus(a, S::plus(b, c)));
    CHECK(S::plus(a, S::zero()) == a);
    CHECK(S::times(a, S::one()) == a);
    CHECK(S::times(S::zero(), a) == S::zero());
    // (a + max(b,c)) == max(a+b, a+c) exactly: addition is monotone
    CHECK(S::times(a, S::plus(b, c)) == S::plus(S::times(a, b), S::times(a, c)));
  }
}

TEST_CASE("counting semiring is exact and raises on overflow") {
  using S = CountSemiring;
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::uint64_t> dist(0, 1u << 20);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = dist(rng);
    const std::uint64_t b = dist(rng);
    const std::uint64_t c = dist(rng);
    CHECK(S::plus(a, b) == a + b);
    CHECK(S::plus(S::plus(a, b), c) == S::plus(a, S::plus(b, c)));
    CHECK(S::times(S::times(a, b), c) == S::times(a, S::times(b, c)));
    CHECK(S::times(a, S::plus(b, c)) == S::plus(S::times(a, b), S::times(a, c)));
    CHECK(S::plus(a, S::zero()) == a);
    CHECK(S::times(a, S::one()) == a);
    CHECK(S::times(a, S::zero()) == 0);
  }
  CHECK(S::lift(-123.0) == 1);

  const std::uint64_t big = ~std::uint64_t{0};
  CHECK_THROWS_AS(S::plus(big, 1), std::overflow_error);
  CHECK_THROWS_AS(S::times(big, 2), std::overflow_error);
}
