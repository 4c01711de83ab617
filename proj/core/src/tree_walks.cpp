#include "cogrowth/tree_walks.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <type_traits>

#include "cogrowth/errors.hpp"

namespace cogrowth {

const char* to_string(NumericMode mode) { return mode == NumericMode::exact ? "exact" : "log"; }

RegularTree::RegularTree(int degree) : d(degree) {
  if (degree < 3) {
    throw InvalidInput("regular tree degree must be >= 3, got " + std::to_string(degree));
  }
}

BiregularTree::BiregularTree(int small_degree, int large_degree, RootDegree root_degree)
    : c(small_degree), d(large_degree), root(root_degree) {
  if (c < 2 || d < 3 || c > d) {
    throw InvalidInput("biregular tree needs 2 <= c <= d and d >= 3");
  }
}

std::string describe(const TreeSpec& tree) {
  if (const auto* reg = std::get_if<RegularTree>(&tree)) {
    return "T_" + std::to_string(reg->d);
  }
  const auto& bi = std::get<BiregularTree>(tree);
  return "T_{" + std::to_string(bi.c) + "," + std::to_string(bi.d) + "} root=" +
         (bi.root == RootDegree::c ? "c" : "d");
}

int degree_at(const TreeSpec& tree, int level) {
  if (const auto* reg = std::get_if<RegularTree>(&tree)) {
    return reg->d;
  }
  const auto& bi = std::get<BiregularTree>(tree);
  const bool root_parity = (level % 2) == 0;
  const int root_deg = bi.root == RootDegree::c ? bi.c : bi.d;
  const int other_deg = bi.root == RootDegree::c ? bi.d : bi.c;
  return root_parity ? root_deg : other_deg;
}

int branching(const TreeSpec& tree, int level) {
  const int deg = degree_at(tree, level);
  return level == 0 ? deg : deg - 1;
}

BigCount sphere_size(const TreeSpec& tree, int r) {
  if (r < 0) {
    throw InvalidInput("sphere radius must be >= 0");
  }
  BigCount out = 1;
  for (int k = 0; k < r; ++k) {
    out *= branching(tree, k);
  }
  return out;
}

BigCount sphere_size_regular(int d, int r) { return sphere_size(RegularTree(d), r); }

BigCount sphere_size_biregular(const BiregularTree& tree, int r) { return sphere_size(tree, r); }

LogValue log_sphere_size(const TreeSpec& tree, int r) {
  if (r < 0) {
    throw InvalidInput("sphere radius must be >= 0");
  }
  double acc = 0.0;
  for (int k = 0; k < r; ++k) {
    acc += std::log(static_cast<double>(branching(tree, k)));
  }
  return LogValue::from_log(acc);
}

BigCount total_walks(const TreeSpec& tree, int t) {
  BigCount out = 1;
  for (int s = 0; s < t; ++s) {
    out *= degree_at(tree, s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// WalkTable

WalkTable::WalkTable(TreeSpec tree, NumericMode mode, int t_max)
    : tree_(std::move(tree)), mode_(mode), t_max_(t_max) {}

const BigCount& WalkTable::exact(int t, int r) const {
  static const BigCount kZero = 0;
  if (mode_ != NumericMode::exact) {
    throw InvalidInput("exact entries requested from a log-mode walk table");
  }
  if (t < 0 || t > t_max_) {
    throw InvalidInput("t outside walk table range");
  }
  return stored(t, r) ? exact_rows_[t][slot(r)] : kZero;
}

LogValue WalkTable::log_at(int t, int r) const {
  if (t < 0 || t > t_max_) {
    throw InvalidInput("t outside walk table range");
  }
  if (!stored(t, r)) {
    return LogValue::zero();
  }
  return mode_ == NumericMode::exact ? LogValue::from_count(exact_rows_[t][slot(r)])
                                     : log_rows_[t][slot(r)];
}

namespace {

void write_log_value(std::ostream& out, const LogValue& value) {
  if (value.is_zero()) {
    out << "-inf";
  } else {
    out << std::setprecision(17) << value.log();
  }
}

}  // namespace

void WalkTable::write_csv(std::ostream& out) const {
  out << (mode_ == NumericMode::exact ? "t,r,count\n" : "t,r,log_count\n");
  for (int t = 0; t <= t_max_; ++t) {
    for (int r = t % 2; r <= t; r += 2) {
      out << t << ',' << r << ',';
      if (mode_ == NumericMode::exact) {
        out << to_decimal(exact_rows_[t][slot(r)]);
      } else {
        write_log_value(out, log_rows_[t][slot(r)]);
      }
      out << '\n';
    }
  }
}

template <class Value>
WalkRowStepper<Value>::WalkRowStepper(TreeSpec tree) : tree_(std::move(tree)) {
  for (int level = 0; level <= 2; ++level) {
    if constexpr (std::is_same_v<Value, LogValue>) {
      branch_.push_back(LogValue::from_real(branching(tree_, level)));
    } else {
      branch_.emplace_back(branching(tree_, level));
    }
  }
  if constexpr (std::is_same_v<Value, LogValue>) {
    row_.push_back(LogValue::one());
  } else {
    row_.emplace_back(1);
  }
}

// w_{t+1}(r) = branching(r-1) * w_t(r-1) + w_t(r+1)
template <class Value>
void WalkRowStepper<Value>::advance() {
  const int t = t_;
  next_.assign(static_cast<std::size_t>((t + 1) / 2) + 1, Value());
  for (int r = (t + 1) % 2; r <= t + 1; r += 2) {
    Value& cell = next_[static_cast<std::size_t>(r / 2)];
    if (r >= 1) {
      const int level = r - 1;
      const Value& branch = branch_[level == 0 ? 0 : (level % 2 == 1 ? 1 : 2)];
      if constexpr (std::is_same_v<Value, LogValue>) {
        cell = branch * row_[static_cast<std::size_t>(level / 2)];
      } else {
        mpz_mul(cell.get_mpz_t(), branch.get_mpz_t(),
                row_[static_cast<std::size_t>(level / 2)].get_mpz_t());
      }
    }
    if (r + 1 <= t) {
      cell += row_[static_cast<std::size_t>((r + 1) / 2)];
    }
  }
  std::swap(row_, next_);
  ++t_;
}

template class WalkRowStepper<BigCount>;
template class WalkRowStepper<LogValue>;

WalkTable build_walk_table(const TreeSpec& tree, int t_max, NumericMode mode, int exact_ceiling) {
  if (t_max < 0) {
    throw InvalidInput("t_max must be >= 0");
  }
  if (mode == NumericMode::exact && t_max > exact_ceiling) {
    throw InvalidInput("exact mode limited to t_max <= " + std::to_string(exact_ceiling) +
                       " (use log mode)");
  }
  WalkTable table(tree, mode, t_max);
  auto fill = [&](auto& rows, auto stepper) {
    rows.reserve(static_cast<std::size_t>(t_max) + 1);
    rows.push_back(stepper.row());
    for (int t = 1; t <= t_max; ++t) {
      stepper.advance();
      rows.push_back(stepper.row());
    }
  };
  if (mode == NumericMode::exact) {
    fill(table.exact_rows_, WalkRowStepper<BigCount>(tree));
  } else {
    fill(table.log_rows_, WalkRowStepper<LogValue>(tree));
  }
  return table;
}

WalkTable walk_table_regular(int d, int t_max, NumericMode mode, int exact_ceiling) {
  return build_walk_table(RegularTree(d), t_max, mode, exact_ceiling);
}

WalkTable walk_table_biregular(const BiregularTree& tree, int t_max, NumericMode mode,
                               int exact_ceiling) {
  return build_walk_table(tree, t_max, mode, exact_ceiling);
}

// ---------------------------------------------------------------------------
// PointWalkTable

PointWalkTable::PointWalkTable(const WalkTable& walks)
    : tree_(walks.tree()), mode_(walks.mode()), t_max_(walks.t_max()) {
  const auto rows = static_cast<std::size_t>(t_max_) + 1;
  if (mode_ == NumericMode::exact) {
    std::vector<BigCount> spheres;
    spheres.reserve(rows);
    for (int r = 0; r <= t_max_; ++r) {
      spheres.push_back(sphere_size(tree_, r));
    }
    exact_rows_.resize(rows);
    for (int t = 0; t <= t_max_; ++t) {
      auto& row = exact_rows_[t];
      row.reserve(static_cast<std::size_t>(t / 2) + 1);
      for (int r = t % 2; r <= t; r += 2) {
        const BigCount& w = walks.exact(t, r);
        if (!mpz_divisible_p(w.get_mpz_t(), spheres[r].get_mpz_t())) {
          throw EngineError("w_" + std::to_string(t) + "(o," + std::to_string(r) +
                            ") not divisible by the sphere size");
        }
        BigCount m;
        mpz_divexact(m.get_mpz_t(), w.get_mpz_t(), spheres[r].get_mpz_t());
        row.push_back(std::move(m));
      }
    }
  } else {
    std::vector<LogValue> spheres;
    spheres.reserve(rows);
    for (int r = 0; r <= t_max_; ++r) {
      spheres.push_back(log_sphere_size(tree_, r));
    }
    log_rows_.resize(rows);
    for (int t = 0; t <= t_max_; ++t) {
      auto& row = log_rows_[t];
      row.reserve(static_cast<std::size_t>(t / 2) + 1);
      for (int r = t % 2; r <= t; r += 2) {
        row.push_back(walks.log_at(t, r) / spheres[r]);
      }
    }
  }
}

const BigCount& PointWalkTable::exact(int t, int r) const {
  static const BigCount kZero = 0;
  if (mode_ != NumericMode::exact) {
    throw InvalidInput("exact entries requested from a log-mode point-walk table");
  }
  if (t < 0 || t > t_max_) {
    throw InvalidInput("t outside point-walk table range");
  }
  if (r < 0 || r > t || (t - r) % 2 != 0) {
    return kZero;
  }
  return exact_rows_[t][static_cast<std::size_t>(r / 2)];
}

LogValue PointWalkTable::log_at(int t, int r) const {
  if (t < 0 || t > t_max_) {
    throw InvalidInput("t outside point-walk table range");
  }
  if (r < 0 || r > t || (t - r) % 2 != 0) {
    return LogValue::zero();
  }
  const auto idx = static_cast<std::size_t>(r / 2);
  return mode_ == NumericMode::exact ? LogValue::from_count(exact_rows_[t][idx])
                                     : log_rows_[t][idx];
}

void PointWalkTable::write_csv(std::ostream& out) const {
  out << (mode_ == NumericMode::exact ? "t,r,count\n" : "t,r,log_count\n");
  for (int t = 0; t <= t_max_; ++t) {
    for (int r = t % 2; r <= t; r += 2) {
      out << t << ',' << r << ',';
      if (mode_ == NumericMode::exact) {
        out << to_decimal(exact_rows_[t][static_cast<std::size_t>(r / 2)]);
      } else {
        write_log_value(out, log_rows_[t][static_cast<std::size_t>(r / 2)]);
      }
      out << '\n';
    }
  }
}

PointWalkTable point_walk_counts(const WalkTable& walks, const TreeSpec& tree) {
  if (!(walks.tree() == tree)) {
    throw InvalidInput("walk table was built for " + describe(walks.tree()) + ", not " +
                       describe(tree));
  }
  return PointWalkTable(walks);
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

// Tree truncated at a fixed depth. Children of a vertex are contiguous and
// vertices are numbered in BFS order.
struct TruncatedTree {
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> first_child;
  std::vector<std::int32_t> child_count;
  std::vector<std::int16_t> depth;
};

TruncatedTree build_truncated_tree(const TreeSpec& tree, int max_depth) {
  TruncatedTree out;
  out.parent.push_back(-1);
  out.depth.push_back(0);
  std::size_t head = 0;
  while (head < out.parent.size()) {
    const int level = out.depth[head];
    out.first_child.push_back(static_cast<std::int32_t>(out.parent.size()));
    const int kids = level < max_depth ? branching(tree, level) : 0;
    out.child_count.push_back(kids);
    for (int k = 0; k < kids; ++k) {
      out.parent.push_back(static_cast<std::int32_t>(head));
      out.depth.push_back(static_cast<std::int16_t>(level + 1));
    }
    ++head;
  }
  return out;
}

}  // namespace

std::map<int, BigCount> brute_force_walk_census(const TreeSpec& tree, int t) {
  if (t < 0 || t > kBruteForceMaxLength) {
    throw InvalidInput("brute-force census supports 0 <= t <= " +
                       std::to_string(kBruteForceMaxLength));
  }
  const TruncatedTree truncated = build_truncated_tree(tree, t);
  std::vector<std::uint64_t> by_distance(static_cast<std::size_t>(t) + 1, 0);

  struct Frame {
    std::int32_t vertex;
    int steps;
  };
  std::vector<Frame> stack{{0, 0}};
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    if (frame.steps == t) {
      ++by_distance[static_cast<std::size_t>(truncated.depth[frame.vertex])];
      continue;
    }
    const std::int32_t parent = truncated.parent[frame.vertex];
    if (parent >= 0) {
      stack.push_back({parent, frame.steps + 1});
    }
    const std::int32_t first = truncated.first_child[frame.vertex];
    for (std::int32_t k = 0; k < truncated.child_count[frame.vertex]; ++k) {
      stack.push_back({first + k, frame.steps + 1});
    }
  }

  std::map<int, BigCount> census;
  for (int r = 0; r <= t; ++r) {
    if (by_distance[r] != 0) {
      census[r] = BigCount(static_cast<unsigned long>(by_distance[r]));
    }
  }
  return census;
}

BigCount nb_census(const TreeSpec& tree, int t) {
  if (t < 0) {
    throw InvalidInput("t must be >= 0");
  }
  return sphere_size(tree, t);
}

}  // namespace cogrowth
