#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cogrowth/bigcount.hpp"
#include "cogrowth/finite_graph.hpp"
#include "cogrowth/free_group.hpp"
#include "cogrowth/log_value.hpp"
#include "cogrowth/tree_walks.hpp"

namespace cogrowth {

enum class Parity { even, odd, both };

const char* to_string(Parity parity);
Parity parse_parity(const std::string& text);

// Radial mass r -> a_r of a vertex subset or a non-negative weight function,
// for r = 0..r_max. Enumerative profiles hold exact integers; synthetic ones
// hold reals in log form so that alpha^r stays representable at r ~ 10^4.
class Profile {
 public:
  static Profile exact(std::vector<BigCount> values, std::string source, int d = 0);
  static Profile real(std::vector<LogValue> values, std::string source, int d = 0);

  bool is_exact() const { return std::holds_alternative<std::vector<BigCount>>(values_); }
  int r_max() const;
  std::size_t size() const { return static_cast<std::size_t>(r_max() + 1); }

  /// Throws InvalidInput on real profiles.
  const std::vector<BigCount>& exact_values() const;
  LogValue log_value(int r) const;
  std::vector<LogValue> log_values() const;
  bool is_zero_at(int r) const;

  /// Parity of the radii carrying mass; nullopt for the all-zero profile.
  std::optional<Parity> parity_support() const;
  bool has_mass(Parity cls) const;

  const std::string& source() const { return source_; }
  /// Degree of the tree the profile was built for (0 when unspecified).
  int degree() const { return d_; }

  /// Truncates or rejects; never extrapolates.
  Profile truncated(int r_max) const;

  /// Pointwise sum; both must share a representation (exact + exact) or the
  /// result is promoted to log form.
  friend Profile operator+(const Profile& a, const Profile& b);

  /// {"d", "parity", "values", "source"} plus "kind" and, for real profiles,
  /// "log_values" carrying the stored logs at 17 significant digits.
  std::string to_json() const;
  static Profile from_json(const std::string& text);
  static Profile load(const std::string& path);

 private:
  Profile(std::variant<std::vector<BigCount>, std::vector<LogValue>> values, std::string source,
          int d);

  std::variant<std::vector<BigCount>, std::vector<LogValue>> values_;
  std::string source_;
  int d_ = 0;
};

/// Decimal string for a non-negative real held in log form: plain integer
/// digits are never produced, always `m.mmmmmmmmmmmmmmmme±X` (17 significant).
std::string log_value_to_decimal(const LogValue& value);
/// Parses a decimal string (integer, fixed or scientific) into log form
/// without going through a double, so exponents beyond 308 work.
LogValue parse_decimal_log(const std::string& text);

// Builders ------------------------------------------------------------------

Profile profile_full_tree(const TreeSpec& tree, int r_max);
Profile profile_full_tree(int d, int r_max);

/// One vertex at distance r0: the indicator of r0.
Profile profile_single_vertex(int r0, int d, int r_max);

/// values[r] = round(alpha^r) on the requested parity class (alpha^r itself
/// once it exceeds 2^53), zero elsewhere. With subset_capped the values are
/// clamped to the sphere sizes of `tree` and alpha above the subset maximum
/// is rejected. An integer alpha gives an exact profile.
Profile profile_geometric(double alpha, Parity parity, const TreeSpec& tree, int r_max,
                          bool subset_capped);
Profile profile_geometric(double alpha, Parity parity, int d, int r_max, bool subset_capped);

/// Explicit opt-in extrapolation: keeps the stored values and continues
/// a_r = a_{r-2} alpha^2 out to r_max. The result is a real profile.
Profile extend_geometric(const Profile& profile, double alpha, int r_max);

enum class Enumeration {
  structured,  // generate candidates from half-words, test each with the predicate
  exhaustive,  // test every reduced word of each length
};

/// Squares x^2 of each length 0..r_max in the free group of the given rank;
/// the identity counts (a_0 = 1).
Profile profile_squares(int rank, int r_max, Enumeration strategy = Enumeration::structured,
                        std::uint64_t budget = kEnumerationBudget);

/// Proper powers (power index >= 2) by length. Weighted: sum of
/// divisor_count(q_w) - 1 over every nontrivial reduced word, which vanishes
/// exactly on non-powers. The identity contributes 0 in both variants.
Profile profile_proper_powers(int rank, int r_max, bool weighted,
                              Enumeration strategy = Enumeration::structured,
                              std::uint64_t budget = kEnumerationBudget);

/// Non-backtracking walks u -> v of length r in a connected d-regular graph:
/// the fiber above v, seen from a lift of u in the covering tree.
Profile profile_graph_fiber(const Graph& graph, int u, int v, int r_max);

}  // namespace cogrowth
