#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>

namespace nner {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Chart computations are generic over a commutative semiring plus a lift
// function mapping a mention weight to a carrier value.
template <typename S>
concept Semiring = requires(typename S::Value v, double w) {
  { S::zero() } -> std::same_as<typename S::Value>;
  { S::one() } -> std::same_as<typename S::Value>;
  { S::plus(v, v) } -> std::same_as<typename S::Value>;
  { S::times(v, v) } -> std::same_as<typename S::Value>;
  { S::lift(w) } -> std::same_as<typename S::Value>;
};

inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = a > b ? a : b;
  const double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// Max-shifted log(sum(exp(v))). Empty input yields -inf; NaN and +inf inputs
// raise std::domain_error.
double log_sum_exp(std::span<const double> values);

// Log-space reals: goal value of an inside pass is log Z(w).
struct LogSemiring {
  using Value = double;
  static Value zero() { return kNegInf; }
  static Value one() { return 0.0; }
  static Value plus(Value a, Value b) { return log_add_exp(a, b); }
  static Value times(Value a, Value b) { return a + b; }
  static Value lift(double w) { return w; }
};

// Max-plus: goal value is the MAP score. Argmax tracking lives in the
// Viterbi pass, which breaks ties toward the smallest (rule, split, label).
struct MaxSemiring {
  using Value = double;
  static Value zero() { return kNegInf; }
  static Value one() { return 0.0; }
  static Value plus(Value a, Value b) { return a > b ? a : b; }
  static Value times(Value a, Value b) { return a + b; }
  static Value lift(double w) { return w; }
};

// Checked unsigned counting: goal value is the number of derivations, which
// equals |Y| because every analysis has exactly one derivation.
struct CountSemiring {
  using Value = std::uint64_t;
  static Value zero() { return 0; }
  static Value one() { return 1; }
  static Value plus(Value a, Value b) {
    Value r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("derivation count overflow");
    return r;
  }
  static Value times(Value a, Value b) {
    Value r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("derivation count overflow");
    return r;
  }
  static Value lift(double) { return 1; }
};

static_assert(Semiring<LogSemiring>);
static_assert(Semiring<MaxSemiring>);
static_assert(Semiring<CountSemiring>);

}  // namespace nner
