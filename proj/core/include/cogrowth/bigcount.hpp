#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cogrowth {

/// Exact non-negative integer count (walks, words, sphere sizes).
using BigCount = mpz_class;

/// Exact rational in canonical (reduced, positive denominator) form.
using Rational = mpq_class;

inline BigCount big_pow(std::uint64_t base, std::uint64_t exponent) {
  BigCount out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exponent);
  return out;
}

inline std::string to_decimal(const BigCount& value) { return value.get_str(10); }

/// Parses a plain decimal integer; throws InvalidInput on anything else.
BigCount parse_big_count(const std::string& text);

/// Returns a reduced rational num/den; den must be non-zero.
inline Rational make_rational(const BigCount& num, const BigCount& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace cogrowth
