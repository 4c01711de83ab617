#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cogrowth/errors.hpp"
#include "cogrowth/finite_graph.hpp"
#include "cogrowth/growth.hpp"
#include "cogrowth/profile.hpp"
#include "cogrowth/tree_walks.hpp"

namespace cogrowth::cli {

namespace {

using json = nlohmann::json;

struct TreeArgs {
  std::optional<int> d;
  std::optional<int> c;
  std::optional<int> dd;
  std::string root = "c";
};

struct SourceArgs {
  bool full_tree = false;
  std::optional<double> geometric;
  std::string parity = "both";
  bool subset = false;
  std::optional<int> single_vertex;
  bool squares = false;
  bool proper_powers = false;
  bool weighted = false;
  bool exhaustive = false;
  int rank = 2;
  std::vector<int> fiber;
  std::string graph_file;
  std::string profile_file;
  std::optional<double> extend_geometric;
};

struct RunConfig {
  std::string command;
  TreeArgs tree;
  SourceArgs source;
  std::optional<int> t_max;
  std::optional<int> r_max;
  std::string mode = "auto";
  std::string format;
  std::string out_path;
  bool points = false;
  // verify
  bool assert_gap = false;
  double tolerance = 1e-3;
  std::string method = "ratio";
  double window = kDefaultWindowFraction;
  std::string trace_out;
  // graph
  std::string check = "all";
  double graph_tolerance = 1e-6;
  std::optional<int> u;
  std::optional<int> v;
};

int exact_ceiling() {
  const char* env = std::getenv("COGROWTH_EXACT_CEILING");
  if (env == nullptr || *env == '\0') {
    return kDefaultExactCeiling;
  }
  try {
    std::size_t used = 0;
    const int value = std::stoi(env, &used);
    if (used != std::string(env).size() || value < 0) {
      throw InvalidInput("");
    }
    return value;
  } catch (const std::exception&) {
    throw InvalidInput(std::string("COGROWTH_EXACT_CEILING must be a non-negative integer, got '") +
                       env + "'");
  }
}

bool is_biregular(const TreeArgs& args) { return args.c.has_value() || args.dd.has_value(); }

TreeSpec make_tree(const TreeArgs& args) {
  if (is_biregular(args)) {
    if (args.d) {
      throw InvalidInput("--d names a regular tree; use --c and --dd for a biregular one");
    }
    if (!args.c || !args.dd) {
      throw InvalidInput("a biregular tree needs both --c and --dd");
    }
    if (args.root != "c" && args.root != "d") {
      throw InvalidInput("--root must be c or d");
    }
    return BiregularTree(*args.c, *args.dd, args.root == "c" ? RootDegree::c : RootDegree::d);
  }
  if (!args.d) {
    throw InvalidInput("missing tree: give --d, or --c and --dd");
  }
  return RegularTree(*args.d);
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* name : allowed) {
    if (format == name) {
      return;
    }
  }
  std::string list;
  for (const char* name : allowed) {
    list += list.empty() ? name : std::string("|") + name;
  }
  throw InvalidInput("--format must be one of " + list);
}

NumericMode resolve_mode(const std::string& mode, int t_max, int ceiling) {
  if (mode == "exact") {
    if (t_max > ceiling) {
      throw InvalidInput("exact mode is capped at t_max = " + std::to_string(ceiling) +
                         " (COGROWTH_EXACT_CEILING overrides)");
    }
    return NumericMode::exact;
  }
  if (mode == "log") {
    return NumericMode::log;
  }
  if (mode == "auto") {
    return t_max <= ceiling ? NumericMode::exact : NumericMode::log;
  }
  throw InvalidInput("--mode must be auto, exact or log");
}

// Exactly one profile source must be named.
int count_sources(const SourceArgs& s) {
  return static_cast<int>(s.full_tree) + static_cast<int>(s.geometric.has_value()) +
         static_cast<int>(s.single_vertex.has_value()) + static_cast<int>(s.squares) +
         static_cast<int>(s.proper_powers) + static_cast<int>(!s.fiber.empty()) +
         static_cast<int>(!s.profile_file.empty());
}

struct BuiltProfile {
  Profile profile;
  bool weight_function = false;  // geometric profile outside the subset regime
};

Profile indicator(int r0, const TreeSpec& tree, int r_max) {
  if (r0 < 0 || r0 > r_max) {
    throw InvalidInput("--single-vertex radius must lie in [0, r_max]");
  }
  std::vector<BigCount> values(static_cast<std::size_t>(r_max) + 1);
  values[static_cast<std::size_t>(r0)] = 1;
  const int d = std::holds_alternative<RegularTree>(tree) ? std::get<RegularTree>(tree).d : 0;
  return Profile::exact(std::move(values), "single-vertex r0=" + std::to_string(r0), d);
}

// Trees are only needed by the sources that depend on one.
BuiltProfile build_profile(const RunConfig& cfg, int r_max) {
  const SourceArgs& s = cfg.source;
  const int sources = count_sources(s);
  if (sources == 0) {
    throw InvalidInput(
        "no profile source: give one of --full-tree, --geometric, --single-vertex, --squares, "
        "--proper-powers, --fiber or --profile-file");
  }
  if (sources > 1) {
    throw InvalidInput("give exactly one profile source");
  }
  if (s.weighted && !s.proper_powers) {
    throw InvalidInput("--weighted only applies to --proper-powers");
  }
  if (s.subset && !s.geometric) {
    throw InvalidInput("--subset only applies to --geometric");
  }
  const Enumeration strategy = s.exhaustive ? Enumeration::exhaustive : Enumeration::structured;

  if (s.full_tree) {
    return {profile_full_tree(make_tree(cfg.tree), r_max)};
  }
  if (s.geometric) {
    return {profile_geometric(*s.geometric, parse_parity(s.parity), make_tree(cfg.tree), r_max,
                              s.subset),
            !s.subset};
  }
  if (s.single_vertex) {
    return {indicator(*s.single_vertex, make_tree(cfg.tree), r_max)};
  }
  if (s.squares) {
    return {profile_squares(s.rank, r_max, strategy)};
  }
  if (s.proper_powers) {
    return {profile_proper_powers(s.rank, r_max, s.weighted, strategy)};
  }
  if (!s.fiber.empty()) {
    if (s.graph_file.empty()) {
      throw InvalidInput("--fiber needs --file with the graph");
    }
    const Graph graph = Graph::load_edge_list(s.graph_file);
    return {profile_graph_fiber(graph, s.fiber[0], s.fiber[1], r_max)};
  }
  return {Profile::load(s.profile_file)};
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  // Written in one go once the command has succeeded.
  std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw std::runtime_error("cannot open " + cfg.out_path + " for writing");
  }
  file << text;
  if (!file) {
    throw std::runtime_error("write to " + cfg.out_path + " failed");
  }
}

std::string log_number(const LogValue& v) {
  if (v.is_zero()) {
    return "-inf";
  }
  std::ostringstream out;
  out << std::setprecision(17) << v.log();
  return out.str();
}

// ---------------------------------------------------------------------------

int cmd_walks(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  require_format(format, {"csv", "json", "table"});
  if (!cfg.t_max) {
    throw InvalidInput("walks needs --t-max");
  }
  const TreeSpec tree = make_tree(cfg.tree);
  const int ceiling = exact_ceiling();
  const NumericMode mode = resolve_mode(cfg.mode, *cfg.t_max, ceiling);
  const WalkTable walks = build_walk_table(tree, *cfg.t_max, mode, ceiling);
  const PointWalkTable points(walks);

  std::ostringstream text;
  if (format == "csv") {
    if (cfg.points) {
      points.write_csv(text);
    } else {
      walks.write_csv(text);
    }
  } else if (format == "json") {
    json rows = json::array();
    for (int t = 0; t <= walks.t_max(); ++t) {
      for (int r = t % 2; r <= t; r += 2) {
        json row = {{"t", t}, {"r", r}};
        if (mode == NumericMode::exact) {
          row["walks"] = to_decimal(walks.exact(t, r));
          row["point_walks"] = to_decimal(points.exact(t, r));
        } else {
          row["log_walks"] = walks.log_at(t, r).log();
          row["log_point_walks"] = points.log_at(t, r).log();
        }
        rows.push_back(std::move(row));
      }
    }
    json doc = {{"tree", describe(tree)},
                {"mode", to_string(mode)},
                {"t_max", walks.t_max()},
                {"rows", std::move(rows)}};
    text << doc.dump(2) << '\n';
  } else {
    text << "tree " << describe(tree) << ", " << to_string(mode) << " mode\n";
    text << std::left << std::setw(6) << "t" << std::setw(6) << "r" << std::setw(28)
         << (mode == NumericMode::exact ? "w_t(o,r)" : "log w_t(o,r)")
         << (mode == NumericMode::exact ? "m_t(r)" : "log m_t(r)") << '\n';
    for (int t = 0; t <= walks.t_max(); ++t) {
      for (int r = t % 2; r <= t; r += 2) {
        text << std::setw(6) << t << std::setw(6) << r;
        if (mode == NumericMode::exact) {
          text << std::setw(28) << to_decimal(walks.exact(t, r)) << to_decimal(points.exact(t, r));
        } else {
          text << std::setw(28) << log_number(walks.log_at(t, r))
               << log_number(points.log_at(t, r));
        }
        text << '\n';
      }
    }
  }
  emit(cfg, text.str(), out);
  return kExitOk;
}

int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  require_format(cfg.format.empty() ? "json" : cfg.format, {"json"});
  if (cfg.source.extend_geometric) {
    throw InvalidInput("--extend-geometric belongs to verify; profiles are stored as computed");
  }
  int r_max = 0;
  if (cfg.source.profile_file.empty()) {
    if (!cfg.r_max) {
      throw InvalidInput("profile needs --r-max");
    }
    r_max = *cfg.r_max;
  }
  BuiltProfile built = build_profile(cfg, r_max);
  Profile profile = std::move(built.profile);
  if (!cfg.source.profile_file.empty() && cfg.r_max) {
    profile = profile.truncated(*cfg.r_max);
  }
  emit(cfg, profile.to_json() + "\n", out);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  require_format(format, {"json", "table", "csv"});
  if (!cfg.t_max) {
    throw InvalidInput("verify needs --t-max");
  }
  if (!(cfg.tolerance >= 0.0)) {
    throw InvalidInput("--tolerance must be >= 0");
  }
  const int t_max = *cfg.t_max;
  const TreeSpec tree = make_tree(cfg.tree);

  const int r_max = cfg.r_max.value_or(t_max);
  BuiltProfile built = build_profile(cfg, r_max);
  Profile profile = std::move(built.profile);
  if (const auto* reg = std::get_if<RegularTree>(&tree);
      reg != nullptr && profile.degree() != 0 && profile.degree() != reg->d) {
    throw InvalidInput("profile '" + profile.source() + "' was built for d = " +
                       std::to_string(profile.degree()) + " but the tree is " + describe(tree));
  }
  if (cfg.source.extend_geometric) {
    profile = extend_geometric(profile, *cfg.source.extend_geometric, t_max);
  }

  VerifyOptions options;
  options.exact_ceiling = exact_ceiling();
  options.window_fraction = cfg.window;
  if (cfg.mode == "auto") {
    options.mode = ModeChoice::automatic;
  } else if (cfg.mode == "exact") {
    options.mode = ModeChoice::exact;
  } else if (cfg.mode == "log") {
    options.mode = ModeChoice::log;
  } else {
    throw InvalidInput("--mode must be auto, exact or log");
  }
  if (cfg.method == "ratio") {
    options.primary = EstimatorMethod::ratio;
  } else if (cfg.method == "root") {
    options.primary = EstimatorMethod::root;
  } else {
    throw InvalidInput("--method must be root or ratio");
  }

  const auto* bi = std::get_if<BiregularTree>(&tree);
  const VerifyReport report = bi != nullptr && built.weight_function
                                  ? conjecture_probe_biregular(profile, *bi, t_max, options)
                                  : verify(profile, tree, t_max, options);

  std::ostringstream text;
  if (format == "json") {
    text << report_to_json(report) << '\n';
  } else if (format == "csv") {
    write_b_trace_csv(report, text);
  } else {
    text << report_to_table(report);
  }
  if (!cfg.trace_out.empty()) {
    std::ostringstream trace;
    write_b_trace_csv(report, trace);
    RunConfig trace_cfg = cfg;
    trace_cfg.out_path = cfg.trace_out;
    emit(trace_cfg, trace.str(), out);
  }
  emit(cfg, text.str(), out);

  if (cfg.assert_gap && !(report.max_relative_gap <= cfg.tolerance)) {
    err << "assertion failed: relative gap " << report.max_relative_gap << " exceeds tolerance "
        << cfg.tolerance << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_graph(const RunConfig& cfg, std::ostream& out) {
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  require_format(format, {"json", "table"});
  if (cfg.source.graph_file.empty()) {
    throw InvalidInput("graph needs --file");
  }
  if (cfg.check != "classical" && cfg.check != "covering" && cfg.check != "all") {
    throw InvalidInput("--check must be classical, covering or all");
  }
  const Graph graph = Graph::load_edge_list(cfg.source.graph_file);
  const auto d = graph.regular_degree();
  if (!d) {
    throw InvalidInput(graph.name() + " is not regular");
  }
  if (*d < 3) {
    throw InvalidInput(graph.name() + " has degree " + std::to_string(*d) + "; need d >= 3");
  }
  if (!graph.is_connected()) {
    throw InvalidInput(graph.name() + " is not connected");
  }

  json doc = {{"graph", graph.name()}, {"n", graph.vertex_count()}, {"d", *d}};
  bool passed = true;
  std::ostringstream table;
  table << "graph " << graph.name() << " (n = " << graph.vertex_count() << ", d = " << *d << ")\n";

  if (cfg.check == "classical" || cfg.check == "all") {
    const double tol = cfg.graph_tolerance;
    const ClassicalCheck check = classical_formula_check(graph, tol);
    doc["classical"] = {{"rho", check.rho},
                        {"cogrowth", check.cogrowth},
                        {"predicted_rho", check.predicted_rho},
                        {"deviation", check.deviation},
                        {"tolerance", tol},
                        {"passed", check.passed}};
    passed = passed && check.passed;
    table << std::setprecision(12) << "classical  rho = " << check.rho
          << "  cogr = " << check.cogrowth << "  g_d(cogr) = " << check.predicted_rho
          << "  deviation = " << std::setprecision(3) << check.deviation
          << (check.passed ? "  pass" : "  FAIL") << '\n';
  }
  if (cfg.check == "covering" || cfg.check == "all") {
    const int t_max = cfg.t_max.value_or(30);
    const int n = graph.vertex_count();
    for (const auto& endpoint : {cfg.u, cfg.v}) {
      if (endpoint && (*endpoint < 0 || *endpoint >= n)) {
        throw InvalidInput("vertex out of range");
      }
    }
    json failures = json::array();
    int pairs = 0;
    for (int u = 0; u < n; ++u) {
      if (cfg.u && u != *cfg.u) {
        continue;
      }
      for (int v = 0; v < n; ++v) {
        if (cfg.v && v != *cfg.v) {
          continue;
        }
        const CoveringCheck check = covering_identity_check(graph, u, v, t_max);
        ++pairs;
        if (!check.passed) {
          failures.push_back({{"u", u}, {"v", v}, {"t", check.first_mismatch}});
        }
      }
    }
    const bool ok = failures.empty();
    passed = passed && ok;
    table << "covering   t <= " << t_max << " over " << pairs << " vertex pairs"
          << (ok ? "  pass (exact)" : "  FAIL") << '\n';
    doc["covering"] = {
        {"t_max", t_max}, {"pairs", pairs}, {"passed", ok}, {"failures", std::move(failures)}};
  }
  doc["passed"] = passed;
  emit(cfg, format == "json" ? doc.dump(2) + "\n" : table.str(), out);
  return passed ? kExitOk : kExitFailure;
}

void add_tree_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--d", cfg.tree.d, "degree of the regular tree T_d");
  cmd->add_option("--c", cfg.tree.c, "smaller degree of the biregular tree T_{c,d}");
  cmd->add_option("--dd", cfg.tree.dd, "larger degree of the biregular tree T_{c,d}");
  cmd->add_option("--root", cfg.tree.root, "degree class of the biregular root (c or d)");
}

void add_source_options(CLI::App* cmd, RunConfig& cfg) {
  SourceArgs& s = cfg.source;
  cmd->add_flag("--full-tree", s.full_tree, "every vertex");
  cmd->add_option("--geometric", s.geometric, "a_r = alpha^r on the chosen parity class");
  cmd->add_option("--parity", s.parity, "even, odd or both (geometric profiles)");
  cmd->add_flag("--subset", s.subset, "clamp a geometric profile to sphere sizes");
  cmd->add_option("--single-vertex", s.single_vertex, "one vertex at this distance");
  cmd->add_flag("--squares", s.squares, "squares in the free group");
  cmd->add_flag("--proper-powers", s.proper_powers, "proper powers in the free group");
  cmd->add_flag("--weighted", s.weighted, "divisor-count weight for proper powers");
  cmd->add_flag("--exhaustive", s.exhaustive, "test every reduced word instead of generating");
  cmd->add_option("--rank", s.rank, "free group rank");
  cmd->add_option("--fiber", s.fiber, "non-backtracking walks U -> V in the graph of --file")
      ->expected(2);
  cmd->add_option("--file", s.graph_file, "edge-list file");
  cmd->add_option("--profile-file", s.profile_file, "profile JSON");
  cmd->add_option("--r-max", cfg.r_max, "largest radius");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Growth of walks ending in subsets of regular and biregular trees", "cogrowth"};
  app.require_subcommand(1);

  auto* walks = app.add_subcommand("walks", "walk census w_t(o,r) and point counts m_t(r)");
  add_tree_options(walks, cfg);
  walks->add_option("--t-max", cfg.t_max)->required();
  walks->add_option("--mode", cfg.mode, "auto, exact or log");
  walks->add_option("--format", cfg.format, "csv (default), json or table");
  walks->add_flag("--points", cfg.points, "CSV of m_t(r) instead of w_t(o,r)");
  walks->add_option("--out", cfg.out_path);

  auto* profile = app.add_subcommand("profile", "build a radial profile and write it as JSON");
  add_tree_options(profile, cfg);
  add_source_options(profile, cfg);
  profile->add_option("--format", cfg.format, "json");
  profile->add_option("--out", cfg.out_path);
  profile->add_option("--extend-geometric", cfg.source.extend_geometric);

  auto* verify_cmd = app.add_subcommand("verify", "compare growth of b_t with g(alpha)");
  add_tree_options(verify_cmd, cfg);
  add_source_options(verify_cmd, cfg);
  verify_cmd->add_option("--t-max", cfg.t_max)->required();
  verify_cmd->add_option("--mode", cfg.mode, "auto, exact or log");
  verify_cmd->add_option("--method", cfg.method, "estimator behind the headline gap");
  verify_cmd->add_option("--window", cfg.window, "fraction of t_max where the window starts");
  verify_cmd->add_option("--extend-geometric", cfg.source.extend_geometric,
                         "continue the profile as a_r = a_{r-2} alpha^2 out to t_max");
  verify_cmd->add_flag("--assert", cfg.assert_gap, "exit 1 unless gap <= --tolerance");
  verify_cmd->add_option("--tolerance", cfg.tolerance);
  verify_cmd->add_option("--format", cfg.format, "table, json or csv (b trace)");
  verify_cmd->add_option("--trace-out", cfg.trace_out, "also write the t,log_b trace here");
  verify_cmd->add_option("--out", cfg.out_path);

  auto* graph = app.add_subcommand("graph", "finite-graph checks");
  graph->add_option("--file", cfg.source.graph_file, "edge-list file")->required();
  graph->add_option("--check", cfg.check, "classical, covering or all");
  graph->add_option("--t-max", cfg.t_max, "covering identity length (default 30)");
  graph->add_option("--u", cfg.u);
  graph->add_option("--v", cfg.v);
  graph->add_option("--tolerance", cfg.graph_tolerance, "classical check tolerance");
  graph->add_option("--format", cfg.format, "json or table");
  graph->add_option("--out", cfg.out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (walks->parsed()) {
      return cmd_walks(cfg, out);
    }
    if (profile->parsed()) {
      return cmd_profile(cfg, out);
    }
    if (verify_cmd->parsed()) {
      return cmd_verify(cfg, out, err);
    }
    return cmd_graph(cfg, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace cogrowth::cli
