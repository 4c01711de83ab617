#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "cogrowth/bigcount.hpp"
#include "cogrowth/log_value.hpp"

namespace cogrowth {

/// Largest t_max accepted by exact-mode tables unless the caller overrides it.
inline constexpr int kDefaultExactCeiling = 2000;

/// Enumeration ceiling for the brute-force walk census.
inline constexpr int kBruteForceMaxLength = 14;

enum class NumericMode { exact, log };

const char* to_string(NumericMode mode);

struct RegularTree {
  int d = 3;

  explicit RegularTree(int degree);
  friend bool operator==(const RegularTree&, const RegularTree&) = default;
};

enum class RootDegree { c, d };

// (c,d)-biregular tree: neighbours of a degree-c vertex have degree d and vice
// versa. The root's degree is a free choice; levels alternate from there.
struct BiregularTree {
  int c = 2;
  int d = 3;
  RootDegree root = RootDegree::c;

  BiregularTree(int small_degree, int large_degree, RootDegree root_degree = RootDegree::c);
  friend bool operator==(const BiregularTree&, const BiregularTree&) = default;
};

using TreeSpec = std::variant<RegularTree, BiregularTree>;

std::string describe(const TreeSpec& tree);

/// Degree of every vertex at distance `level` from the root.
int degree_at(const TreeSpec& tree, int level);

/// Ways to step from a vertex at distance k to distance k + 1:
/// degree of the root when k = 0, otherwise degree - 1.
int branching(const TreeSpec& tree, int level);

BigCount sphere_size(const TreeSpec& tree, int r);
BigCount sphere_size_regular(int d, int r);
BigCount sphere_size_biregular(const BiregularTree& tree, int r);
LogValue log_sphere_size(const TreeSpec& tree, int r);

/// Product of vertex degrees met along any walk of length t (every walk from
/// the root sits at a level of parity s at time s). Equals d^t when regular.
BigCount total_walks(const TreeSpec& tree, int t);

// Streams the census one row at a time without keeping history. row()[r / 2]
// holds w_t(o, r) for the current t; only r ≡ t (mod 2) is stored.
template <class Value>
class WalkRowStepper {
 public:
  explicit WalkRowStepper(TreeSpec tree);

  int t() const { return t_; }
  const std::vector<Value>& row() const { return row_; }
  void advance();

 private:
  TreeSpec tree_;
  int t_ = 0;
  std::vector<Value> row_;
  std::vector<Value> next_;
  std::vector<Value> branch_;  // branching(level) for levels 0, 1, 2
};

extern template class WalkRowStepper<BigCount>;
extern template class WalkRowStepper<LogValue>;

// Triangular census w_t(o, r): walks of length t from the root ending at
// distance r. Only entries with 0 <= r <= t and r ≡ t (mod 2) are stored;
// all other entries read as zero.
class WalkTable {
 public:
  WalkTable(TreeSpec tree, NumericMode mode, int t_max);

  const TreeSpec& tree() const { return tree_; }
  NumericMode mode() const { return mode_; }
  int t_max() const { return t_max_; }

  /// Exact entry; exact-mode tables only.
  const BigCount& exact(int t, int r) const;
  /// Entry in log form (converted on the fly in exact mode).
  LogValue log_at(int t, int r) const;

  /// Writes `t,r,count` (exact) or `t,r,log_count` (log) rows.
  void write_csv(std::ostream& out) const;

 private:
  friend WalkTable build_walk_table(const TreeSpec&, int, NumericMode, int);
  static std::size_t slot(int r) { return static_cast<std::size_t>(r / 2); }
  static bool stored(int t, int r) { return r >= 0 && r <= t && (t - r) % 2 == 0; }

  TreeSpec tree_;
  NumericMode mode_;
  int t_max_;
  std::vector<std::vector<BigCount>> exact_rows_;
  std::vector<std::vector<LogValue>> log_rows_;
};

WalkTable build_walk_table(const TreeSpec& tree, int t_max, NumericMode mode,
                           int exact_ceiling = kDefaultExactCeiling);
WalkTable walk_table_regular(int d, int t_max, NumericMode mode,
                             int exact_ceiling = kDefaultExactCeiling);
WalkTable walk_table_biregular(const BiregularTree& tree, int t_max, NumericMode mode,
                               int exact_ceiling = kDefaultExactCeiling);

// m_t(r): walks of length t from the root to one fixed vertex at distance r.
// Every vertex of a sphere is hit equally often, so m_t(r) = w_t(o,r) / |sphere r|
// and that division is exact.
class PointWalkTable {
 public:
  explicit PointWalkTable(const WalkTable& walks);

  const TreeSpec& tree() const { return tree_; }
  NumericMode mode() const { return mode_; }
  int t_max() const { return t_max_; }

  const BigCount& exact(int t, int r) const;
  LogValue log_at(int t, int r) const;

  void write_csv(std::ostream& out) const;

 private:
  TreeSpec tree_;
  NumericMode mode_;
  int t_max_;
  std::vector<std::vector<BigCount>> exact_rows_;
  std::vector<std::vector<LogValue>> log_rows_;
};

PointWalkTable point_walk_counts(const WalkTable& walks, const TreeSpec& tree);

/// Exhaustive DFS over every length-t walk on an explicitly built truncated
/// tree; returns counts keyed by terminal distance. Test oracle, t <= 14.
std::map<int, BigCount> brute_force_walk_census(const TreeSpec& tree, int t);

/// Non-backtracking walks of length t from the root: the sphere of radius t.
BigCount nb_census(const TreeSpec& tree, int t);

}  // namespace cogrowth
