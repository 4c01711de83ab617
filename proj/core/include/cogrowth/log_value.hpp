#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>

#include "cogrowth/bigcount.hpp"

namespace cogrowth {

// Non-negative real stored as its natural logarithm. Zero is the log value
// -infinity; every other instance holds a finite log. Products and sums never
// overflow, which is what lets walk counts run to t in the thousands.
class LogValue {
 public:
  constexpr LogValue() = default;  // zero

  static constexpr LogValue zero() { return LogValue(); }
  static constexpr LogValue one() { return from_log(0.0); }
  static constexpr LogValue from_log(double log_value) {
    LogValue v;
    v.log_ = log_value;
    return v;
  }
  /// x must be finite and >= 0.
  static LogValue from_real(double x);
  static LogValue from_count(const BigCount& count);

  constexpr bool is_zero() const { return log_ == kNegInf; }
  constexpr double log() const { return log_; }
  /// exp(log); overflows to +inf for large values.
  double to_real() const { return is_zero() ? 0.0 : std::exp(log_); }

  LogValue& operator+=(const LogValue& other);
  LogValue& operator*=(const LogValue& other) {
    if (is_zero() || other.is_zero()) {
      log_ = kNegInf;
    } else {
      log_ += other.log_;
    }
    return *this;
  }
  /// Division by zero is rejected.
  LogValue& operator/=(const LogValue& other);

  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator*(LogValue a, const LogValue& b) { return a *= b; }
  friend LogValue operator/(LogValue a, const LogValue& b) { return a /= b; }

  friend constexpr bool operator==(const LogValue& a, const LogValue& b) {
    return a.log_ == b.log_;
  }
  friend constexpr std::partial_ordering operator<=>(const LogValue& a, const LogValue& b) {
    return a.log_ <=> b.log_;
  }

 private:
  static constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  double log_ = kNegInf;
};

/// log-sum-exp over a span; zero for an empty span.
LogValue log_sum(std::span<const LogValue> terms);

/// |a - b| / max(a, b), computed in log space; 0 when both are zero.
double relative_difference(const LogValue& a, const LogValue& b);

}  // namespace cogrowth
