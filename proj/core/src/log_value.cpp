#include "cogrowth/log_value.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "cogrowth/errors.hpp"

namespace cogrowth {

BigCount parse_big_count(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char ch) { return std::isdigit(ch) != 0; })) {
    throw InvalidInput("not a non-negative decimal integer: '" + text + "'");
  }
  return BigCount(text, 10);
}

LogValue LogValue::from_real(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw InvalidInput("LogValue requires a finite non-negative real");
  }
  return x == 0.0 ? zero() : from_log(std::log(x));
}

LogValue LogValue::from_count(const BigCount& count) {
  if (sgn(count) < 0) {
    throw InvalidInput("LogValue requires a non-negative count");
  }
  if (sgn(count) == 0) {
    return zero();
  }
  // count = mantissa * 2^exponent with mantissa in [0.5, 1)
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, count.get_mpz_t());
  return from_log(std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0));
}

LogValue& LogValue::operator+=(const LogValue& other) {
  if (other.is_zero()) {
    return *this;
  }
  if (is_zero()) {
    log_ = other.log_;
    return *this;
  }
  const double hi = std::max(log_, other.log_);
  const double lo = std::min(log_, other.log_);
  log_ = hi + std::log1p(std::exp(lo - hi));
  return *this;
}

LogValue& LogValue::operator/=(const LogValue& other) {
  if (other.is_zero()) {
    throw InvalidInput("LogValue division by zero");
  }
  if (!is_zero()) {
    log_ -= other.log_;
  }
  return *this;
}

LogValue log_sum(std::span<const LogValue> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& term : terms) {
    hi = std::max(hi, term.log());
  }
  if (hi == -std::numeric_limits<double>::infinity()) {
    return LogValue::zero();
  }
  double acc = 0.0;
  for (const auto& term : terms) {
    if (!term.is_zero()) {
      acc += std::exp(term.log() - hi);
    }
  }
  return LogValue::from_log(hi + std::log(acc));
}

double relative_difference(const LogValue& a, const LogValue& b) {
  if (a.is_zero() && b.is_zero()) {
    return 0.0;
  }
  if (a.is_zero() || b.is_zero()) {
    return 1.0;
  }
  // |a-b|/max(a,b) = 1 - exp(-|log a - log b|)
  return -std::expm1(-std::abs(a.log() - b.log()));
}

}  // namespace cogrowth
