#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cogrowth/bigcount.hpp"
#include "cogrowth/log_value.hpp"
#include "cogrowth/profile.hpp"
#include "cogrowth/tree_walks.hpp"

namespace cogrowth {

// b_t = sum_r m_t(r) a_r: the number of length-t walks from the root that end
// in the subset (or the f-weighted count for a weight function).
struct BSequence {
  NumericMode mode = NumericMode::exact;
  std::vector<BigCount> exact;  // filled in exact mode only
  std::vector<LogValue> log;    // always filled

  int t_max() const { return static_cast<int>(log.size()) - 1; }
};

/// Exact mode needs an exact profile and t_max within the exact ceiling.
/// Rejects profiles shorter than t_max: b_t reads a_r for every r <= t.
BSequence b_sequence(const Profile& profile, const TreeSpec& tree, int t_max, NumericMode mode,
                     int exact_ceiling = kDefaultExactCeiling);
BSequence b_sequence_regular(const Profile& profile, const RegularTree& tree, int t_max,
                             NumericMode mode);
BSequence b_sequence_biregular(const Profile& profile, const BiregularTree& tree, int t_max,
                               NumericMode mode);

enum class EstimatorMethod {
  root,   // max of a_t^{1/t} over the window: a limsup surrogate
  ratio,  // median of (a_t / a_{t-2})^{1/2} over the window
};

const char* to_string(EstimatorMethod method);

inline constexpr double kDefaultWindowFraction = 0.5;

// Growth-rate estimate from finite data. A parity class with no mass anywhere
// in the sequence is absent (nullopt) rather than zero.
struct GrowthEstimate {
  std::optional<double> overall;
  std::optional<double> even;
  std::optional<double> odd;
  int t_lo = 0;
  int t_hi = 0;
  EstimatorMethod method = EstimatorMethod::root;

  std::optional<double> for_class(std::optional<Parity> cls) const;
};

/// Window is [max(1, ceil(fraction * t_hi)), t_hi]. Throws InvalidInput on an
/// all-zero sequence.
GrowthEstimate estimate_growth(std::span<const LogValue> sequence, double window_fraction,
                               EstimatorMethod method);
GrowthEstimate alpha_estimate(const Profile& profile, double window_fraction,
                              EstimatorMethod method);
GrowthEstimate beta_estimate(std::span<const LogValue> b, double window_fraction,
                             EstimatorMethod method);

/// g_d or g_{c,d}, whichever tree this is.
double cogrowth_map(const TreeSpec& tree, double alpha);

struct ParityValues {
  std::optional<double> overall;
  std::optional<double> even;
  std::optional<double> odd;
};

struct MethodResult {
  EstimatorMethod method = EstimatorMethod::root;
  GrowthEstimate alpha;
  GrowthEstimate beta;
  ParityValues predicted_beta;  // g(alpha) for each class present in alpha
  ParityValues relative_gap;    // |beta - g(alpha)| / g(alpha) where both exist
  double max_relative_gap = 0.0;
};

enum class ModeChoice { automatic, exact, log };

struct VerifyOptions {
  ModeChoice mode = ModeChoice::automatic;
  double window_fraction = kDefaultWindowFraction;
  /// Method whose gap is reported as the headline max_relative_gap.
  EstimatorMethod primary = EstimatorMethod::ratio;
  int exact_ceiling = kDefaultExactCeiling;
  /// In automatic mode with an exact profile run in log mode, the first
  /// cross_check_window values are recomputed exactly and compared.
  int cross_check_window = 50;
};

struct VerifyReport {
  std::string tree;
  std::string profile_source;
  int t_max = 0;
  NumericMode mode = NumericMode::exact;
  EstimatorMethod primary = EstimatorMethod::ratio;
  MethodResult root;
  MethodResult ratio;
  double max_relative_gap = 0.0;  // of the primary method
  std::vector<std::pair<int, double>> b_trace;  // (t, log b_t); -inf for b_t = 0
  std::optional<double> cross_check_max_rel_err;
  bool experimental = false;
  std::string note;

  const MethodResult& primary_result() const {
    return primary == EstimatorMethod::root ? root : ratio;
  }
};

VerifyReport verify(const Profile& profile, const TreeSpec& tree, int t_max,
                    const VerifyOptions& options = {});

/// Same pipeline for a weight function on a biregular tree, where the
/// formula is only conjectured. The report is flagged experimental.
VerifyReport conjecture_probe_biregular(const Profile& profile, const BiregularTree& tree,
                                        int t_max, const VerifyOptions& options = {});

std::string report_to_json(const VerifyReport& report);
std::string report_to_table(const VerifyReport& report);
/// `t,log_b` rows, 17 significant digits.
void write_b_trace_csv(const VerifyReport& report, std::ostream& out);

}  // namespace cogrowth
