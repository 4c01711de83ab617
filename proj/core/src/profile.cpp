#include "cogrowth/profile.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "cogrowth/errors.hpp"

namespace cogrowth {

using json = nlohmann::json;

const char* to_string(Parity parity) {
  switch (parity) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::both:
      return "both";
  }
  return "both";
}

Parity parse_parity(const std::string& text) {
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  if (text == "both") return Parity::both;
  throw InvalidInput("parity must be even, odd or both, got '" + text + "'");
}

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(std::variant<std::vector<BigCount>, std::vector<LogValue>> values,
                 std::string source, int d)
    : values_(std::move(values)), source_(std::move(source)), d_(d) {
  if (std::visit([](const auto& v) { return v.empty(); }, values_)) {
    throw InvalidInput("profile needs at least the r = 0 entry");
  }
}

Profile Profile::exact(std::vector<BigCount> values, std::string source, int d) {
  for (const auto& v : values) {
    if (sgn(v) < 0) {
      throw InvalidInput("profile values must be non-negative");
    }
  }
  return Profile(std::move(values), std::move(source), d);
}

Profile Profile::real(std::vector<LogValue> values, std::string source, int d) {
  for (const auto& v : values) {
    if (std::isnan(v.log()) || v.log() == std::numeric_limits<double>::infinity()) {
      throw InvalidInput("profile values must be finite");
    }
  }
  return Profile(std::move(values), std::move(source), d);
}

int Profile::r_max() const {
  return std::visit([](const auto& v) { return static_cast<int>(v.size()) - 1; }, values_);
}

const std::vector<BigCount>& Profile::exact_values() const {
  if (!is_exact()) {
    throw InvalidInput("profile '" + source_ + "' holds real values, not exact counts");
  }
  return std::get<std::vector<BigCount>>(values_);
}

LogValue Profile::log_value(int r) const {
  if (r < 0 || r > r_max()) {
    throw InvalidInput("profile radius " + std::to_string(r) + " outside 0.." +
                       std::to_string(r_max()));
  }
  if (is_exact()) {
    return LogValue::from_count(std::get<std::vector<BigCount>>(values_)[static_cast<std::size_t>(r)]);
  }
  return std::get<std::vector<LogValue>>(values_)[static_cast<std::size_t>(r)];
}

std::vector<LogValue> Profile::log_values() const {
  std::vector<LogValue> out;
  out.reserve(size());
  for (int r = 0; r <= r_max(); ++r) {
    out.push_back(log_value(r));
  }
  return out;
}

bool Profile::is_zero_at(int r) const {
  if (is_exact()) {
    return sgn(std::get<std::vector<BigCount>>(values_)[static_cast<std::size_t>(r)]) == 0;
  }
  return std::get<std::vector<LogValue>>(values_)[static_cast<std::size_t>(r)].is_zero();
}

bool Profile::has_mass(Parity cls) const {
  for (int r = 0; r <= r_max(); ++r) {
    const bool matches = cls == Parity::both || (r % 2 == 0) == (cls == Parity::even);
    if (matches && !is_zero_at(r)) {
      return true;
    }
  }
  return false;
}

std::optional<Parity> Profile::parity_support() const {
  const bool even = has_mass(Parity::even);
  const bool odd = has_mass(Parity::odd);
  if (even && odd) return Parity::both;
  if (even) return Parity::even;
  if (odd) return Parity::odd;
  return std::nullopt;
}

Profile Profile::truncated(int r_max_new) const {
  if (r_max_new < 0 || r_max_new > r_max()) {
    throw InvalidInput("cannot truncate a profile of length " + std::to_string(r_max()) +
                       " to " + std::to_string(r_max_new));
  }
  return std::visit(
      [&](const auto& v) {
        using Vec = std::decay_t<decltype(v)>;
        Vec head(v.begin(), v.begin() + r_max_new + 1);
        return Profile(std::move(head), source_, d_);
      },
      values_);
}

Profile operator+(const Profile& a, const Profile& b) {
  if (a.r_max() != b.r_max()) {
    throw InvalidInput("profile sum needs equal lengths");
  }
  const std::string source = "(" + a.source() + ") + (" + b.source() + ")";
  const int d = a.degree() == b.degree() ? a.degree() : 0;
  if (a.is_exact() && b.is_exact()) {
    std::vector<BigCount> sum(a.size());
    for (std::size_t r = 0; r < sum.size(); ++r) {
      sum[r] = a.exact_values()[r] + b.exact_values()[r];
    }
    return Profile::exact(std::move(sum), source, d);
  }
  std::vector<LogValue> sum(a.size());
  for (int r = 0; r <= a.r_max(); ++r) {
    sum[static_cast<std::size_t>(r)] = a.log_value(r) + b.log_value(r);
  }
  return Profile::real(std::move(sum), source, d);
}

// ---------------------------------------------------------------------------
// Decimal strings

std::string log_value_to_decimal(const LogValue& value) {
  if (value.is_zero()) {
    return "0";
  }
  const double log10v = value.log() / std::log(10.0);
  long long exponent = static_cast<long long>(std::floor(log10v));
  const double mantissa = std::pow(10.0, log10v - static_cast<double>(exponent));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", mantissa);
  // the mantissa may round up to 10.0 or sit just below 1.0
  std::string text(buf);
  const auto epos = text.find('e');
  exponent += std::stoll(text.substr(epos + 1));
  text.erase(epos);
  std::snprintf(buf, sizeof buf, "e%+lld", exponent);
  return text + buf;
}

LogValue parse_decimal_log(const std::string& text) {
  if (text.empty()) {
    throw InvalidInput("empty decimal string");
  }
  if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    return LogValue::from_count(BigCount(text, 10));
  }
  const auto epos = text.find_first_of("eE");
  const std::string mantissa_text = text.substr(0, epos);
  long long exponent = 0;
  try {
    std::size_t used = 0;
    const double mantissa = std::stod(mantissa_text, &used);
    if (used != mantissa_text.size() || !std::isfinite(mantissa) || mantissa < 0.0) {
      throw InvalidInput("bad decimal mantissa in '" + text + "'");
    }
    if (epos != std::string::npos) {
      const std::string exp_text = text.substr(epos + 1);
      exponent = std::stoll(exp_text, &used);
      if (used != exp_text.size()) {
        throw InvalidInput("bad decimal exponent in '" + text + "'");
      }
    }
    if (mantissa == 0.0) {
      return LogValue::zero();
    }
    return LogValue::from_log(std::log(mantissa) + static_cast<double>(exponent) * std::log(10.0));
  } catch (const std::logic_error& err) {
    if (dynamic_cast<const InvalidInput*>(&err) != nullptr) {
      throw;
    }
    throw InvalidInput("not a decimal number: '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// JSON

std::string Profile::to_json() const {
  json doc;
  doc["d"] = d_;
  doc["parity"] = to_string(parity_support().value_or(Parity::both));
  doc["source"] = source_;
  json values = json::array();
  if (is_exact()) {
    doc["kind"] = "exact";
    for (const auto& v : exact_values()) {
      values.push_back(to_decimal(v));
    }
    doc["values"] = std::move(values);
  } else {
    doc["kind"] = "real";
    json logs = json::array();
    for (const auto& v : std::get<std::vector<LogValue>>(values_)) {
      values.push_back(log_value_to_decimal(v));
      logs.push_back(v.is_zero() ? json(nullptr) : json(v.log()));
    }
    doc["values"] = std::move(values);
    doc["log_values"] = std::move(logs);
  }
  return doc.dump(2);
}

Profile Profile::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InvalidInput(std::string("profile JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_array()) {
    throw InvalidInput("profile JSON needs a \"values\" array");
  }
  const int d = doc.value("d", 0);
  const std::string source = doc.value("source", std::string("file"));
  std::vector<std::string> strings;
  for (const auto& entry : doc["values"]) {
    if (!entry.is_string()) {
      throw InvalidInput("profile values must be decimal strings");
    }
    strings.push_back(entry.get<std::string>());
  }
  const bool all_integers = std::all_of(strings.begin(), strings.end(), [](const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
  });
  std::string kind = doc.value("kind", std::string(all_integers ? "exact" : "real"));

  Profile profile = [&]() {
    if (kind == "exact") {
      std::vector<BigCount> values;
      values.reserve(strings.size());
      for (const auto& s : strings) {
        values.push_back(parse_big_count(s));
      }
      return Profile::exact(std::move(values), source, d);
    }
    if (kind != "real") {
      throw InvalidInput("profile kind must be exact or real");
    }
    std::vector<LogValue> values;
    values.reserve(strings.size());
    for (const auto& s : strings) {
      values.push_back(parse_decimal_log(s));
    }
    if (doc.contains("log_values")) {
      const auto& logs = doc["log_values"];
      if (!logs.is_array() || logs.size() != values.size()) {
        throw InvalidInput("log_values must match values in length");
      }
      for (std::size_t i = 0; i < values.size(); ++i) {
        const LogValue stored =
            logs[i].is_null() ? LogValue::zero() : LogValue::from_log(logs[i].get<double>());
        if (relative_difference(stored, values[i]) > 1e-12) {
          throw InvalidInput("log_values[" + std::to_string(i) + "] disagrees with values");
        }
        values[i] = stored;
      }
    }
    return Profile::real(std::move(values), source, d);
  }();

  if (doc.contains("parity")) {
    const Parity declared = parse_parity(doc["parity"].get<std::string>());
    const auto actual = profile.parity_support();
    if (actual && *actual != declared) {
      throw InvalidInput(std::string("profile declares parity ") + to_string(declared) +
                         " but its mass sits on " + to_string(*actual));
    }
  }
  return profile;
}

Profile Profile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot open profile '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

// ---------------------------------------------------------------------------
// Builders

namespace {

int regular_degree_or_zero(const TreeSpec& tree) {
  if (const auto* reg = std::get_if<RegularTree>(&tree)) {
    return reg->d;
  }
  return std::get<BiregularTree>(tree).d;
}

// Largest growth rate a subset can have: lim |sphere r|^{1/r}.
double subset_growth_limit(const TreeSpec& tree) {
  return std::sqrt(static_cast<double>(branching(tree, 1)) * branching(tree, 2));
}

std::string encode(const std::vector<Letter>& letters) {
  return std::string(letters.begin(), letters.end());
}

bool reduced(const std::vector<Letter>& letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == -letters[i - 1]) {
      return false;
    }
  }
  return true;
}

std::vector<Letter> inverse_of(const std::vector<Letter>& letters) {
  std::vector<Letter> out(letters.rbegin(), letters.rend());
  for (auto& l : out) {
    l = static_cast<Letter>(-l);
  }
  return out;
}

void require_rank(int rank, int r_max) {
  if (rank < 1 || rank > 127) {
    throw InvalidInput("rank must be in 1..127");
  }
  if (r_max < 0) {
    throw InvalidInput("r_max must be >= 0");
  }
}

class BudgetMeter {
 public:
  explicit BudgetMeter(std::uint64_t budget) : budget_(budget) {}
  std::uint64_t remaining() const { return budget_ - used_; }
  void charge(int rank, int length) {
    const std::uint64_t cost = reduced_word_count(rank, length);
    if (cost > remaining()) {
      throw BudgetExceeded("enumeration budget of " + std::to_string(budget_) +
                           " reduced words exceeded at length " + std::to_string(length));
    }
    used_ += cost;
  }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

// All words u p^q u^-1 of length t that are reduced as written, with
// |u| + |p| = half-word length. Every proper power (q >= 2) and every square
// arises this way from its own prefix u p.
template <class Accept>
std::unordered_set<std::string> structured_powers(int rank, int t, BudgetMeter& meter,
                                                  Accept accept_q) {
  std::unordered_set<std::string> found;
  for (int half = 1; 2 * half <= t; ++half) {
    meter.charge(rank, half);
    for_each_reduced_word(
        rank, half,
        [&](const FreeGroupWord& h) {
          const auto& letters = h.letters();
          for (int k = 0; k < half; ++k) {
            const int s = half - k;
            if ((t - 2 * k) % s != 0) {
              continue;
            }
            const int q = (t - 2 * k) / s;
            if (q < 2 || !accept_q(q)) {
              continue;
            }
            std::vector<Letter> u(letters.begin(), letters.begin() + k);
            std::vector<Letter> p(letters.begin() + k, letters.end());
            std::vector<Letter> w = u;
            for (int i = 0; i < q; ++i) {
              w.insert(w.end(), p.begin(), p.end());
            }
            const auto u_inv = inverse_of(u);
            w.insert(w.end(), u_inv.begin(), u_inv.end());
            if (reduced(w)) {
              found.insert(encode(w));
            }
          }
        },
        UINT64_MAX);
  }
  return found;
}

FreeGroupWord decode(const std::string& key) {
  return FreeGroupWord(std::vector<Letter>(key.begin(), key.end()));
}

}  // namespace

Profile profile_full_tree(const TreeSpec& tree, int r_max) {
  if (r_max < 0) {
    throw InvalidInput("r_max must be >= 0");
  }
  std::vector<BigCount> values;
  values.reserve(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) {
    values.push_back(sphere_size(tree, r));
  }
  return Profile::exact(std::move(values), "full-tree " + describe(tree),
                        regular_degree_or_zero(tree));
}

Profile profile_full_tree(int d, int r_max) { return profile_full_tree(RegularTree(d), r_max); }

Profile profile_single_vertex(int r0, int d, int r_max) {
  if (r0 < 0 || r0 > r_max) {
    throw InvalidInput("single vertex needs 0 <= r0 <= r_max");
  }
  RegularTree tree(d);
  std::vector<BigCount> values(static_cast<std::size_t>(r_max) + 1, 0);
  values[static_cast<std::size_t>(r0)] = 1;
  return Profile::exact(std::move(values), "single-vertex r0=" + std::to_string(r0), tree.d);
}

Profile profile_geometric(double alpha, Parity parity, const TreeSpec& tree, int r_max,
                          bool subset_capped) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw InvalidInput("geometric profile needs a finite alpha > 0");
  }
  if (r_max < 0) {
    throw InvalidInput("r_max must be >= 0");
  }
  if (subset_capped && alpha > subset_growth_limit(tree) * (1.0 + 1e-12)) {
    throw InvalidInput("alpha above the subset growth limit of " + describe(tree) +
                       "; drop the subset cap to build a weight function");
  }
  std::ostringstream source;
  source << "geometric alpha=" << std::setprecision(17) << alpha << " parity=" << to_string(parity)
         << (subset_capped ? " subset" : " function") << " on " << describe(tree);

  // Integer alpha keeps the profile exact.
  if (alpha == std::floor(alpha) && alpha < 2147483648.0) {
    const auto base = static_cast<unsigned long>(alpha);
    std::vector<BigCount> values(static_cast<std::size_t>(r_max) + 1);
    BigCount power = 1;
    for (int r = 0; r <= r_max; ++r) {
      const bool on_class = parity == Parity::both || (r % 2 == 0) == (parity == Parity::even);
      if (on_class) {
        auto& value = values[static_cast<std::size_t>(r)];
        value = power;
        if (subset_capped) {
          value = std::min<BigCount>(value, sphere_size(tree, r));
        }
      }
      power *= base;
    }
    return Profile::exact(std::move(values), source.str(), regular_degree_or_zero(tree));
  }

  const double log_alpha = std::log(alpha);
  std::vector<LogValue> values(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) {
    const bool on_class = parity == Parity::both || (r % 2 == 0) == (parity == Parity::even);
    if (!on_class) {
      continue;
    }
    LogValue value = LogValue::from_log(r * log_alpha);
    if (subset_capped) {
      value = std::min(value, log_sphere_size(tree, r));
    }
    values[static_cast<std::size_t>(r)] = value;
  }
  return Profile::real(std::move(values), source.str(), regular_degree_or_zero(tree));
}

Profile profile_geometric(double alpha, Parity parity, int d, int r_max, bool subset_capped) {
  return profile_geometric(alpha, parity, RegularTree(d), r_max, subset_capped);
}

Profile extend_geometric(const Profile& profile, double alpha, int r_max) {
  if (!std::isfinite(alpha) || alpha <= 0.0) {
    throw InvalidInput("geometric extension needs a finite alpha > 0");
  }
  if (profile.r_max() < 1) {
    throw InvalidInput("geometric extension needs the last two radii of the profile");
  }
  if (r_max <= profile.r_max()) {
    return profile.truncated(r_max);
  }
  std::vector<LogValue> values = profile.log_values();
  const LogValue step = LogValue::from_log(2.0 * std::log(alpha));
  for (int r = profile.r_max() + 1; r <= r_max; ++r) {
    values.push_back(values[static_cast<std::size_t>(r - 2)] * step);
  }
  std::ostringstream source;
  source << profile.source() << " extended past r=" << profile.r_max()
         << " by alpha=" << std::setprecision(17) << alpha;
  return Profile::real(std::move(values), source.str(), profile.degree());
}

Profile profile_squares(int rank, int r_max, Enumeration strategy, std::uint64_t budget) {
  require_rank(rank, r_max);
  BudgetMeter meter(budget);
  std::vector<BigCount> values(static_cast<std::size_t>(r_max) + 1, 0);
  values[0] = 1;  // 1 = 1^2
  for (int t = 1; t <= r_max; ++t) {
    std::uint64_t count = 0;
    if (strategy == Enumeration::exhaustive) {
      meter.charge(rank, t);
      for_each_reduced_word(
          rank, t, [&count](const FreeGroupWord& w) { count += is_square(w) ? 1 : 0; },
          UINT64_MAX);
    } else if (t % 2 == 0) {
      const auto found = structured_powers(rank, t, meter, [](int q) { return q == 2; });
      for (const auto& key : found) {
        if (!is_square(decode(key))) {
          throw EngineError("structured square generator produced a non-square");
        }
      }
      count = found.size();
    }
    values[static_cast<std::size_t>(t)] = BigCount(static_cast<unsigned long>(count));
  }
  return Profile::exact(std::move(values), "squares rank=" + std::to_string(rank), 2 * rank);
}

Profile profile_proper_powers(int rank, int r_max, bool weighted, Enumeration strategy,
                              std::uint64_t budget) {
  require_rank(rank, r_max);
  BudgetMeter meter(budget);
  std::vector<BigCount> values(static_cast<std::size_t>(r_max) + 1, 0);
  auto weight = [weighted](int q) -> unsigned long {
    if (q < 2) {
      return 0;
    }
    return weighted ? static_cast<unsigned long>(divisor_count(q) - 1) : 1UL;
  };
  for (int t = 1; t <= r_max; ++t) {
    BigCount total = 0;
    if (strategy == Enumeration::exhaustive) {
      meter.charge(rank, t);
      for_each_reduced_word(
          rank, t, [&](const FreeGroupWord& w) { total += weight(proper_power_index(w)); },
          UINT64_MAX);
    } else {
      const auto found = structured_powers(rank, t, meter, [](int) { return true; });
      for (const auto& key : found) {
        const int q = proper_power_index(decode(key));
        if (q < 2) {
          throw EngineError("structured power generator produced a non-power");
        }
        total += weight(q);
      }
    }
    values[static_cast<std::size_t>(t)] = total;
  }
  return Profile::exact(std::move(values),
                        std::string(weighted ? "proper-powers-weighted" : "proper-powers") +
                            " rank=" + std::to_string(rank),
                        2 * rank);
}

Profile profile_graph_fiber(const Graph& graph, int u, int v, int r_max) {
  const auto d = graph.regular_degree();
  if (!d || *d < 3) {
    throw InvalidInput("graph fiber profile needs a d-regular graph with d >= 3");
  }
  if (!graph.is_connected()) {
    throw InvalidInput("graph fiber profile needs a connected graph");
  }
  auto counts = nb_walk_counts(graph, u, v, r_max);
  return Profile::exact(std::move(counts),
                        "graph-fiber " + graph.name() + " u=" + std::to_string(u) +
                            " v=" + std::to_string(v),
                        *d);
}

}  // namespace cogrowth
