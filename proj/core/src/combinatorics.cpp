#include "cogrowth/combinatorics.hpp"

#include <cmath>
#include <string>

#include "cogrowth/errors.hpp"

namespace cogrowth {
namespace {

void require_regular_degree(long d) {
  if (d < 3) {
    throw InvalidInput("regular tree degree must be >= 3, got " + std::to_string(d));
  }
}

void require_biregular_degrees(long c, long d) {
  if (c < 2 || d < 3 || c > d) {
    throw InvalidInput("biregular degrees need 2 <= c <= d and d >= 3");
  }
}

void require_up_steps(long t, long y) {
  if (t < 0 || 2 * y < t || y > t) {
    throw InvalidInput("need t/2 <= y <= t (t=" + std::to_string(t) +
                       ", y=" + std::to_string(y) + ")");
  }
}

BigCount factorial(long n) {
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

// The closed forms are ratios; the lemmas promise an integer result.
BigCount integral_or_throw(const Rational& q, const char* what) {
  if (!is_integral(q)) {
    throw EngineError(std::string(what) + " produced a non-integral count " + q.get_str());
  }
  return q.get_num();
}

void require_alpha(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw InvalidInput("alpha must be finite and >= 0");
  }
}

}  // namespace

BigCount binomial(long n, long k) {
  if (n < 0) {
    throw InvalidInput("binomial needs n >= 0");
  }
  if (k < 0 || k > n) {
    return 0;
  }
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigCount multinomial3(long n, long x, long y, long z) {
  if (x < 0 || y < 0 || z < 0 || x + y + z != n) {
    throw InvalidInput("multinomial3 needs non-negative x, y, z with x + y + z = n");
  }
  return factorial(n) / (factorial(x) * factorial(y) * factorial(z));
}

BigCount catalan(long n) { return binomial(2 * n, n) / (n + 1); }

BigCount positive_walks_regular(long t, long y, long d) {
  require_regular_degree(d);
  if (t < 1) {
    throw InvalidInput("positive walks need t >= 1");
  }
  require_up_steps(t, y);
  const Rational share = make_rational(2 * y - t, t);
  const Rational count = share * Rational(binomial(t, y) * big_pow(d - 1, y));
  return integral_or_throw(count, "positive_walks_regular");
}

BigCount nonnegative_walks_regular(long t, long y, long d) {
  require_regular_degree(d);
  require_up_steps(t, y);
  const Rational share = make_rational(2 * y - t + 1, y + 1);
  const Rational count = share * Rational(binomial(t, y) * big_pow(d - 1, y));
  return integral_or_throw(count, "nonnegative_walks_regular");
}

BigCount all_walks_biregular(long x, long y, long z, long c, long d) {
  require_biregular_degrees(c, d);
  const long cb = c - 1;
  const long db = d - 1;
  return multinomial3(x + y + z, x, y, z) * big_pow(cb + db, y) * big_pow(cb * db, z);
}

BigCount positive_walks_biregular(long x, long y, long z, long c, long d) {
  if (x < 0 || y < 0 || z <= x) {
    throw InvalidInput("positive biregular walks need 0 <= x < z and y >= 0");
  }
  const Rational share = make_rational(z - x, x + y + z);
  const Rational count = share * Rational(all_walks_biregular(x, y, z, c, d));
  return integral_or_throw(count, "positive_walks_biregular");
}

Rational q2_proportion(long t, long y) {
  require_up_steps(t, y);
  const long r = 2 * y - t;
  if (r < 1) {
    throw InvalidInput("q2 needs r = 2y - t >= 1");
  }
  return Rational(1) - make_rational(y + 1, t) * make_rational(r, r + 1);
}

double g_regular(long d, double alpha) {
  require_regular_degree(d);
  require_alpha(alpha);
  const double dm1 = static_cast<double>(d - 1);
  if (alpha * alpha <= dm1) {
    return 2.0 * std::sqrt(dm1);
  }
  return alpha + dm1 / alpha;
}

double g_biregular(long c, long d, double alpha) {
  require_biregular_degrees(c, d);
  require_alpha(alpha);
  const double cb = static_cast<double>(c - 1);
  const double db = static_cast<double>(d - 1);
  const double a2 = alpha * alpha;
  // alpha <= (c̄ d̄)^{1/4}  <=>  alpha^4 <= c̄ d̄
  if (a2 * a2 <= cb * db) {
    return std::sqrt(cb) + std::sqrt(db);
  }
  return std::sqrt(a2 + cb + db + cb * db / a2);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) {
    return std::nullopt;
  }
  const BigCount& num = q.get_num();
  const BigCount& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  return make_rational(sqrt(num), sqrt(den));
}

bool g_regular_is_flat(long d, const Rational& alpha) {
  require_regular_degree(d);
  if (sgn(alpha) < 0) {
    throw InvalidInput("alpha must be >= 0");
  }
  return alpha * alpha <= Rational(d - 1);
}

bool g_biregular_is_flat(long c, long d, const Rational& alpha) {
  require_biregular_degrees(c, d);
  if (sgn(alpha) < 0) {
    throw InvalidInput("alpha must be >= 0");
  }
  const Rational a2 = alpha * alpha;
  return a2 * a2 <= Rational((c - 1) * (d - 1));
}

std::optional<Rational> g_regular_exact(long d, const Rational& alpha) {
  if (g_regular_is_flat(d, alpha)) {
    const auto root = exact_sqrt(Rational(d - 1));
    if (!root) {
      return std::nullopt;
    }
    return Rational(2 * *root);
  }
  return Rational(alpha + Rational(d - 1) / alpha);
}

std::optional<Rational> g_biregular_exact(long c, long d, const Rational& alpha) {
  const Rational cb(c - 1);
  const Rational db(d - 1);
  if (g_biregular_is_flat(c, d, alpha)) {
    const auto rc = exact_sqrt(cb);
    const auto rd = exact_sqrt(db);
    if (!rc || !rd) {
      return std::nullopt;
    }
    return Rational(*rc + *rd);
  }
  const Rational a2 = alpha * alpha;
  return exact_sqrt(a2 + cb + db + cb * db / a2);
}

}  // namespace cogrowth
