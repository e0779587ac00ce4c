#include "nner/semiring.hpp"

namespace nner {

double log_sum_exp(std::span<const double> values) {
  double hi = kNegInf;
  for (double v : values) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw std::domain_error("log_sum_exp: inputs must be finite or -inf");
    if (v > hi) hi = v;
  }
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

}  // namespace nner
