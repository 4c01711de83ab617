#pragma once

#include <optional>

#include "cogrowth/bigcount.hpp"

namespace cogrowth {

// Closed-form counts on graded trees and the cogrowth maps.
//
// Graded tree: every vertex has one parent one level down and (deg - 1)
// children one level up, the root included. A walk is "positive" when it sits
// at a strictly positive level at every time after 0, "non-negative" when it
// never drops below level 0.

/// C(n, k); zero when k < 0 or k > n.
BigCount binomial(long n, long k);

/// n! / (x! y! z!); throws InvalidInput unless x + y + z == n and all are >= 0.
BigCount multinomial3(long n, long x, long y, long z);

BigCount catalan(long n);

/// Positive walks of length t with y upward steps on the graded d-regular tree:
/// ((2y - t) / t) * C(t, y) * (d - 1)^y. Requires t >= 1 and ceil(t/2) <= y <= t.
BigCount positive_walks_regular(long t, long y, long d);

/// Non-negative walks of length t with y upward steps:
/// ((2y - t + 1) / (y + 1)) * C(t, y) * (d - 1)^y. Requires ceil(t/2) <= y <= t.
BigCount nonnegative_walks_regular(long t, long y, long d);

/// Double-step census on the graded (c,d)-biregular tree: walks made of x
/// downward, y horizontal and z upward double-steps that never return to
/// level 0. The proportion of positive ones is (z - x) / (x + y + z).
/// Requires z > x.
BigCount positive_walks_biregular(long x, long y, long z, long c, long d);

/// Every walk with the given double-step counts, positive or not:
/// multinomial3 * (c̄ + d̄)^y * (c̄ d̄)^z.
BigCount all_walks_biregular(long x, long y, long z, long c, long d);

/// Among non-negative ±1 sequences of length t with y up-steps, the exact
/// proportion that revisit level 0: 1 - ((y + 1) / t) * (r / (r + 1)) with
/// r = 2y - t. Requires r >= 1.
Rational q2_proportion(long t, long y);

// Cogrowth maps. Floating mode compares alpha^2 against the threshold square
// so that threshold inputs such as alpha = sqrt(d-1) land on both branches
// consistently.

/// 2 sqrt(d-1) for alpha <= sqrt(d-1), alpha + (d-1)/alpha above. d >= 3.
double g_regular(long d, double alpha);

/// sqrt(c̄) + sqrt(d̄) for alpha <= (c̄ d̄)^{1/4},
/// sqrt(alpha^2 + c̄ + d̄ + c̄ d̄ / alpha^2) above. 2 <= c <= d, d >= 3.
double g_biregular(long c, long d, double alpha);

/// Exact evaluation for rational alpha. Returns nullopt when the value is
/// irrational (e.g. the flat branch with d-1 not a perfect square).
std::optional<Rational> g_regular_exact(long d, const Rational& alpha);
std::optional<Rational> g_biregular_exact(long c, long d, const Rational& alpha);

/// True iff alpha lies on the flat (lower) branch of g_regular, decided exactly.
bool g_regular_is_flat(long d, const Rational& alpha);
bool g_biregular_is_flat(long c, long d, const Rational& alpha);

/// Exact square root of a non-negative rational when it is rational.
std::optional<Rational> exact_sqrt(const Rational& q);

}  // namespace cogrowth
