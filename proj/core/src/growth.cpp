#include "cogrowth/growth.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "cogrowth/combinatorics.hpp"
#include "cogrowth/errors.hpp"

namespace cogrowth {

using json = nlohmann::json;

const char* to_string(EstimatorMethod method) {
  return method == EstimatorMethod::root ? "root" : "ratio";
}

// ---------------------------------------------------------------------------
// b_t

namespace {

void require_profile_depth(const Profile& profile, int t_max) {
  if (t_max < 0) {
    throw InvalidInput("t_max must be >= 0");
  }
  if (profile.r_max() < t_max) {
    throw InvalidInput("profile '" + profile.source() + "' stops at r = " +
                       std::to_string(profile.r_max()) + " but b_t up to t = " +
                       std::to_string(t_max) + " needs every a_r with r <= t");
  }
}

}  // namespace

BSequence b_sequence(const Profile& profile, const TreeSpec& tree, int t_max, NumericMode mode,
                     int exact_ceiling) {
  require_profile_depth(profile, t_max);
  BSequence out;
  out.mode = mode;
  out.log.reserve(static_cast<std::size_t>(t_max) + 1);

  if (mode == NumericMode::exact) {
    if (!profile.is_exact()) {
      throw InvalidInput("exact b_t needs an exact profile; '" + profile.source() +
                         "' holds reals (use log mode)");
    }
    if (t_max > exact_ceiling) {
      throw InvalidInput("exact mode limited to t_max <= " + std::to_string(exact_ceiling));
    }
    const auto& a = profile.exact_values();
    std::vector<BigCount> spheres;
    for (int r = 0; r <= t_max; ++r) {
      spheres.push_back(sphere_size(tree, r));
    }
    WalkRowStepper<BigCount> walks(tree);
    BigCount point;
    for (int t = 0; t <= t_max; ++t) {
      if (t > 0) {
        walks.advance();
      }
      BigCount b = 0;
      for (int r = t % 2; r <= t; r += 2) {
        const auto ar = static_cast<std::size_t>(r);
        if (sgn(a[ar]) == 0) {
          continue;
        }
        const BigCount& w = walks.row()[static_cast<std::size_t>(r / 2)];
        if (!mpz_divisible_p(w.get_mpz_t(), spheres[ar].get_mpz_t())) {
          throw EngineError("w_t(o,r) not divisible by the sphere size");
        }
        mpz_divexact(point.get_mpz_t(), w.get_mpz_t(), spheres[ar].get_mpz_t());
        mpz_addmul(b.get_mpz_t(), point.get_mpz_t(), a[ar].get_mpz_t());
      }
      out.log.push_back(LogValue::from_count(b));
      out.exact.push_back(std::move(b));
    }
    return out;
  }

  const auto a = profile.log_values();
  std::vector<LogValue> spheres;
  for (int r = 0; r <= t_max; ++r) {
    spheres.push_back(log_sphere_size(tree, r));
  }
  // log a_r - log |sphere r|, so each term is one addition in log space
  std::vector<LogValue> density(static_cast<std::size_t>(t_max) + 1);
  for (int r = 0; r <= t_max; ++r) {
    const auto ar = static_cast<std::size_t>(r);
    density[ar] = a[ar] / spheres[ar];
  }
  WalkRowStepper<LogValue> walks(tree);
  std::vector<LogValue> terms;
  for (int t = 0; t <= t_max; ++t) {
    if (t > 0) {
      walks.advance();
    }
    terms.clear();
    for (int r = t % 2; r <= t; r += 2) {
      terms.push_back(walks.row()[static_cast<std::size_t>(r / 2)] *
                      density[static_cast<std::size_t>(r)]);
    }
    out.log.push_back(log_sum(terms));
  }
  return out;
}

BSequence b_sequence_regular(const Profile& profile, const RegularTree& tree, int t_max,
                             NumericMode mode) {
  return b_sequence(profile, tree, t_max, mode);
}

BSequence b_sequence_biregular(const Profile& profile, const BiregularTree& tree, int t_max,
                               NumericMode mode) {
  return b_sequence(profile, tree, t_max, mode);
}

// ---------------------------------------------------------------------------
// Estimators

std::optional<double> GrowthEstimate::for_class(std::optional<Parity> cls) const {
  if (!cls || *cls == Parity::both) {
    return overall;
  }
  return *cls == Parity::even ? even : odd;
}

namespace {

double root_estimate(std::span<const LogValue> seq, int parity, int t_lo, int t_hi) {
  double best = 0.0;
  for (int t = std::max(t_lo, 1); t <= t_hi; ++t) {
    const auto& v = seq[static_cast<std::size_t>(t)];
    if (t % 2 == parity && !v.is_zero()) {
      best = std::max(best, std::exp(v.log() / t));
    }
  }
  return best;
}

double ratio_estimate(std::span<const LogValue> seq, int parity, int t_lo, int t_hi) {
  std::vector<double> half_log_ratios;
  for (int t = std::max(t_lo, 2); t <= t_hi; ++t) {
    if (t % 2 != parity) {
      continue;
    }
    const auto& hi = seq[static_cast<std::size_t>(t)];
    const auto& lo = seq[static_cast<std::size_t>(t - 2)];
    if (!hi.is_zero() && !lo.is_zero()) {
      half_log_ratios.push_back(0.5 * (hi.log() - lo.log()));
    }
  }
  if (half_log_ratios.empty()) {
    // too sparse for ratios (or empty window); the root surrogate still applies
    return root_estimate(seq, parity, t_lo, t_hi);
  }
  std::sort(half_log_ratios.begin(), half_log_ratios.end());
  const std::size_t n = half_log_ratios.size();
  const double median = n % 2 == 1 ? half_log_ratios[n / 2]
                                   : 0.5 * (half_log_ratios[n / 2 - 1] + half_log_ratios[n / 2]);
  return std::exp(median);
}

}  // namespace

GrowthEstimate estimate_growth(std::span<const LogValue> sequence, double window_fraction,
                               EstimatorMethod method) {
  if (sequence.empty()) {
    throw InvalidInput("growth estimate needs a non-empty sequence");
  }
  if (!(window_fraction >= 0.0 && window_fraction <= 1.0)) {
    throw InvalidInput("window fraction must lie in [0, 1]");
  }
  GrowthEstimate est;
  est.method = method;
  est.t_hi = static_cast<int>(sequence.size()) - 1;
  est.t_lo = std::max(1, static_cast<int>(std::ceil(window_fraction * est.t_hi)));

  bool any_mass = false;
  for (int parity = 0; parity <= 1; ++parity) {
    bool mass = false;
    for (std::size_t t = static_cast<std::size_t>(parity); t < sequence.size(); t += 2) {
      mass = mass || !sequence[t].is_zero();
    }
    any_mass = any_mass || mass;
    if (!mass) {
      continue;
    }
    const double value = method == EstimatorMethod::root
                             ? root_estimate(sequence, parity, est.t_lo, est.t_hi)
                             : ratio_estimate(sequence, parity, est.t_lo, est.t_hi);
    (parity == 0 ? est.even : est.odd) = value;
  }
  if (!any_mass) {
    throw InvalidInput("growth estimate of an all-zero sequence");
  }
  est.overall = std::max(est.even.value_or(0.0), est.odd.value_or(0.0));
  return est;
}

GrowthEstimate alpha_estimate(const Profile& profile, double window_fraction,
                              EstimatorMethod method) {
  const auto values = profile.log_values();
  return estimate_growth(values, window_fraction, method);
}

GrowthEstimate beta_estimate(std::span<const LogValue> b, double window_fraction,
                             EstimatorMethod method) {
  return estimate_growth(b, window_fraction, method);
}

double cogrowth_map(const TreeSpec& tree, double alpha) {
  if (const auto* reg = std::get_if<RegularTree>(&tree)) {
    return g_regular(reg->d, alpha);
  }
  const auto& bi = std::get<BiregularTree>(tree);
  return g_biregular(bi.c, bi.d, alpha);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

MethodResult assemble(const TreeSpec& tree, const GrowthEstimate& alpha,
                      const GrowthEstimate& beta) {
  MethodResult out;
  out.method = alpha.method;
  out.alpha = alpha;
  out.beta = beta;
  auto fill = [&](const std::optional<double>& a, const std::optional<double>& b,
                  std::optional<double>& predicted, std::optional<double>& gap) {
    if (!a) {
      return;
    }
    predicted = cogrowth_map(tree, *a);
    if (b) {
      gap = std::abs(*b - *predicted) / *predicted;
      out.max_relative_gap = std::max(out.max_relative_gap, *gap);
    }
  };
  fill(alpha.even, beta.even, out.predicted_beta.even, out.relative_gap.even);
  fill(alpha.odd, beta.odd, out.predicted_beta.odd, out.relative_gap.odd);
  fill(alpha.overall, beta.overall, out.predicted_beta.overall, out.relative_gap.overall);
  return out;
}

}  // namespace

VerifyReport verify(const Profile& profile, const TreeSpec& tree, int t_max,
                    const VerifyOptions& options) {
  require_profile_depth(profile, t_max);
  const Profile used = profile.truncated(t_max);

  NumericMode mode = NumericMode::log;
  switch (options.mode) {
    case ModeChoice::exact:
      mode = NumericMode::exact;
      break;
    case ModeChoice::log:
      mode = NumericMode::log;
      break;
    case ModeChoice::automatic:
      mode = used.is_exact() && t_max <= options.exact_ceiling ? NumericMode::exact
                                                               : NumericMode::log;
      break;
  }

  const BSequence b = b_sequence(used, tree, t_max, mode, options.exact_ceiling);

  VerifyReport report;
  report.tree = describe(tree);
  report.profile_source = profile.source();
  report.t_max = t_max;
  report.mode = mode;
  report.primary = options.primary;

  if (options.mode == ModeChoice::automatic && mode == NumericMode::log && used.is_exact() &&
      options.cross_check_window > 0) {
    const int overlap = std::min(options.cross_check_window, t_max);
    const BSequence exact =
        b_sequence(used.truncated(overlap), tree, overlap, NumericMode::exact, overlap);
    double worst = 0.0;
    for (int t = 0; t <= overlap; ++t) {
      worst = std::max(worst, relative_difference(exact.log[static_cast<std::size_t>(t)],
                                                  b.log[static_cast<std::size_t>(t)]));
    }
    report.cross_check_max_rel_err = worst;
  }

  for (EstimatorMethod method : {EstimatorMethod::root, EstimatorMethod::ratio}) {
    const auto alpha = alpha_estimate(used, options.window_fraction, method);
    const auto beta = beta_estimate(b.log, options.window_fraction, method);
    (method == EstimatorMethod::root ? report.root : report.ratio) = assemble(tree, alpha, beta);
  }
  report.max_relative_gap = report.primary_result().max_relative_gap;

  report.b_trace.reserve(b.log.size());
  for (std::size_t t = 0; t < b.log.size(); ++t) {
    report.b_trace.emplace_back(static_cast<int>(t), b.log[t].log());
  }
  return report;
}

VerifyReport conjecture_probe_biregular(const Profile& profile, const BiregularTree& tree,
                                        int t_max, const VerifyOptions& options) {
  VerifyReport report = verify(profile, tree, t_max, options);
  report.experimental = true;
  report.note = "experimental: conjecture, not a theorem";
  return report;
}

// ---------------------------------------------------------------------------
// Output

namespace {

json optional_number(const std::optional<double>& value) {
  return value ? json(*value) : json(nullptr);
}

json method_block(const MethodResult& result) {
  json block;
  block["method"] = to_string(result.method);
  block["window"] = {result.alpha.t_lo, result.alpha.t_hi};
  block["max_relative_gap"] = result.max_relative_gap;
  const std::pair<const char*, int> classes[] = {{"even", 0}, {"odd", 1}, {"overall", 2}};
  json parity;
  for (const auto& [name, which] : classes) {
    auto pick = [which](const auto& holder) {
      return which == 0 ? holder.even : (which == 1 ? holder.odd : holder.overall);
    };
    parity[name] = {{"alpha", optional_number(pick(result.alpha))},
                    {"predicted_beta", optional_number(pick(result.predicted_beta))},
                    {"beta", optional_number(pick(result.beta))},
                    {"gap", optional_number(pick(result.relative_gap))}};
  }
  block["parity"] = std::move(parity);
  return block;
}

std::string format_optional(const std::optional<double>& value) {
  if (!value) {
    return "absent";
  }
  std::ostringstream out;
  out << std::setprecision(10) << *value;
  return out.str();
}

}  // namespace

std::string report_to_json(const VerifyReport& report) {
  const MethodResult& primary = report.primary_result();
  json doc;
  doc["tree"] = report.tree;
  doc["profile"] = report.profile_source;
  doc["t_max"] = report.t_max;
  doc["mode"] = to_string(report.mode);
  doc["primary_method"] = to_string(report.primary);
  doc["alpha"] = optional_number(primary.alpha.overall);
  doc["predicted_beta"] = optional_number(primary.predicted_beta.overall);
  doc["beta"] = optional_number(primary.beta.overall);
  doc["gap"] = report.max_relative_gap;
  doc["parity"] = method_block(primary)["parity"];
  doc["methods"] = {{"root", method_block(report.root)}, {"ratio", method_block(report.ratio)}};
  doc["cross_check_max_rel_err"] = optional_number(report.cross_check_max_rel_err);
  doc["experimental"] = report.experimental;
  if (!report.note.empty()) {
    doc["note"] = report.note;
  }
  return doc.dump(2);
}

std::string report_to_table(const VerifyReport& report) {
  std::ostringstream out;
  out << "tree       " << report.tree << '\n'
      << "profile    " << report.profile_source << '\n'
      << "t_max      " << report.t_max << " (" << to_string(report.mode) << " mode)\n";
  if (report.experimental) {
    out << "NOTE       " << report.note << '\n';
  }
  for (const MethodResult* result : {&report.root, &report.ratio}) {
    out << '\n'
        << "[" << to_string(result->method) << " estimator, window " << result->alpha.t_lo << ".."
        << result->alpha.t_hi << (result->method == report.primary ? ", primary" : "") << "]\n";
    out << std::left << std::setw(9) << "class" << std::setw(18) << "alpha" << std::setw(18)
        << "g(alpha)" << std::setw(18) << "beta" << "gap\n";
    const std::pair<const char*, int> classes[] = {{"even", 0}, {"odd", 1}, {"overall", 2}};
    for (const auto& [name, which] : classes) {
      auto pick = [which](const auto& holder) {
        return which == 0 ? holder.even : (which == 1 ? holder.odd : holder.overall);
      };
      out << std::setw(9) << name << std::setw(18) << format_optional(pick(result->alpha))
          << std::setw(18) << format_optional(pick(result->predicted_beta)) << std::setw(18)
          << format_optional(pick(result->beta)) << format_optional(pick(result->relative_gap))
          << '\n';
    }
  }
  out << "\nmax relative gap (" << to_string(report.primary) << "): " << std::setprecision(6)
      << report.max_relative_gap << '\n';
  if (report.cross_check_max_rel_err) {
    out << "log/exact cross-check max rel err: " << *report.cross_check_max_rel_err << '\n';
  }
  return out.str();
}

void write_b_trace_csv(const VerifyReport& report, std::ostream& out) {
  out << "t,log_b\n";
  for (const auto& [t, log_b] : report.b_trace) {
    out << t << ',';
    if (std::isinf(log_b)) {
      out << "-inf";
    } else {
      out << std::setprecision(17) << log_b;
    }
    out << '\n';
  }
}

}  // namespace cogrowth
