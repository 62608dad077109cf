// ffrand: generate forests, run First-Fit under random orders, and tabulate
// the analytic bounds. Machine-readable results go to --out (or stdout);
// summaries go to stderr.
//
// Exit codes: 0 ok, 2 usage or I/O, 3 resource cap, 4 verification failure.

#include <chrono>
#include <cmath>
#include <iostream>
#include <new>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ffrand/bounds.hpp"
#include "ffrand/enumeration.hpp"
#include "ffrand/error.hpp"
#include "ffrand/experiments.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/forest.hpp"
#include "ffrand/io.hpp"
#include "ffrand/lb_tree.hpp"
#include "ffrand/ordering.hpp"
#include "ffrand/version.hpp"

namespace {

using ffrand::io::json;

enum ExitCode { kOk = 0, kUsage = 2, kCap = 3, kVerification = 4 };

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out;
  std::string format = "json";
  std::uint64_t vertex_cap = ffrand::kDefaultVertexCap;
};

struct GenFlags {
  std::string family;
  std::size_t n = 0;
  unsigned k = 1;
  double gamma = 0.5;
  std::optional<std::uint64_t> r;
  bool calibrated = false;
  std::string parts;
  std::string edges;
};

struct ColorFlags {
  std::string forest;
  std::string order;
  std::string order_file;
  std::string positions;
  std::string positions_file;
};

struct EstimateFlags {
  std::string forest;
  std::uint64_t trials = 10'000;
  std::string model = "shuffle";
  std::string check = "auto";
  std::string histogram;
};

struct ExactFlags {
  std::string forest;
  std::size_t cap = ffrand::kDefaultEnumerationCap;
};

struct RootColorFlags {
  unsigned k = 3;
  double gamma = 0.5;
  std::optional<std::uint64_t> r;
  bool calibrated = false;
  std::uint64_t trials = 10'000;
  bool top_only = false;
  std::string check = "auto";
};

struct WorstCaseFlags {
  std::string forest;
  std::size_t cap = ffrand::kDefaultEnumerationCap;
  std::uint64_t budget = 0;
};

struct BoundsFlags {
  std::vector<std::uint64_t> n;
  std::string grid;
};

// What a subcommand produced, before it is written.
struct Output {
  std::string text;
  std::vector<std::string> inputs;
};

std::uint64_t resolve_seed(const CommonFlags& common) {
  if (common.seed) return *common.seed;
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) | device();
  std::cerr << "seed: " << seed << " (pass --seed " << seed << " to reproduce)\n";
  return seed;
}

ffrand::CheckMode parse_check(const std::string& text) {
  if (text == "always") return ffrand::CheckMode::always;
  if (text == "never") return ffrand::CheckMode::never;
  return ffrand::CheckMode::automatic;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

ffrand::LowerBoundParams params_from(unsigned k, double gamma, std::optional<std::uint64_t> r,
                                     bool calibrated) {
  if (calibrated) {
    auto p = ffrand::calibrated_params(k);
    if (r) {
      p.r = *r;
      p.r_overridden = true;
    }
    return p;
  }
  return ffrand::derive_params(k, gamma, r);
}

ffrand::FamilySpec parse_family_part(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) throw ffrand::InvalidInput("union part must be family:n");
  const std::string name = token.substr(0, colon);
  const std::size_t n = std::stoul(token.substr(colon + 1));
  if (name == "path") return ffrand::FamilySpec::path(n);
  if (name == "star") return ffrand::FamilySpec::star(n);
  if (name == "prufer") return ffrand::FamilySpec::prufer(n);
  throw ffrand::InvalidInput("unknown union part family '" + name + "'");
}

Output run_gen(const GenFlags& flags, CommonFlags& common) {
  ffrand::Forest forest;
  std::optional<ffrand::RootedLBTree> tree;
  if (flags.family == "lowerbound") {
    const auto params = params_from(flags.k, flags.gamma, flags.r, flags.calibrated);
    std::cerr << "T^r_k with k=" << params.k << ", r=" << params.r << ": "
              << ffrand::lb_tree_size(params.k, params.r) << " vertices\n";
    tree = ffrand::build_lb_tree(params.k, params.r, common.vertex_cap);
  } else {
    ffrand::FamilySpec spec;
    std::uint64_t seed = 0;
    if (flags.family == "path") {
      spec = ffrand::FamilySpec::path(flags.n);
    } else if (flags.family == "star") {
      spec = ffrand::FamilySpec::star(flags.n);
    } else if (flags.family == "prufer") {
      spec = ffrand::FamilySpec::prufer(flags.n);
      seed = resolve_seed(common);
      common.seed = seed;
    } else if (flags.family == "forest-union") {
      std::vector<ffrand::FamilySpec> parts;
      std::stringstream list(flags.parts);
      for (std::string token; std::getline(list, token, ',');) {
        parts.push_back(parse_family_part(token));
      }
      spec = ffrand::FamilySpec::forest_union(std::move(parts));
      seed = resolve_seed(common);
      common.seed = seed;
    } else if (flags.family == "explicit") {
      std::vector<ffrand::Edge> edges;
      for (const auto& pair : json::parse(flags.edges.empty() ? "[]" : flags.edges)) {
        edges.push_back({pair.at(0).get<ffrand::Vertex>(), pair.at(1).get<ffrand::Vertex>()});
      }
      spec = ffrand::FamilySpec::explicit_edges(flags.n, std::move(edges));
    } else {
      throw ffrand::InvalidInput("unknown family '" + flags.family + "'");
    }
    if (flags.n > common.vertex_cap) throw ffrand::CapExceeded("n exceeds the vertex cap");
    forest = ffrand::generate(spec, seed);
  }

  const ffrand::Forest& result = tree ? tree->forest : forest;
  if (common.format == "edgelist") return {ffrand::io::forest_to_edge_list(result), {}};
  return {dump(tree ? ffrand::io::lb_tree_to_json(*tree) : ffrand::io::forest_to_json(result)),
          {}};
}

Output run_color(const ColorFlags& flags, CommonFlags& common) {
  const auto forest = ffrand::io::read_forest_file(flags.forest);
  Output output{{}, {flags.forest}};

  ffrand::Permutation order;
  if (!flags.order.empty() || !flags.order_file.empty()) {
    const std::string text = flags.order.empty() ? ffrand::io::read_text_file(flags.order_file)
                                                 : flags.order;
    if (!flags.order_file.empty()) output.inputs.push_back(flags.order_file);
    order = ffrand::io::permutation_from_json(json::parse(text));
  } else if (!flags.positions.empty() || !flags.positions_file.empty()) {
    const std::string text = flags.positions.empty()
                                 ? ffrand::io::read_text_file(flags.positions_file)
                                 : flags.positions;
    if (!flags.positions_file.empty()) output.inputs.push_back(flags.positions_file);
    order = ffrand::order_from_positions(ffrand::io::positions_from_json(json::parse(text)));
  } else {
    const std::uint64_t seed = resolve_seed(common);
    common.seed = seed;
    order = ffrand::uniform_permutation(forest.size(), seed);
  }
  if (order.size() != forest.size()) {
    throw ffrand::InvalidInput("order has " + std::to_string(order.size()) +
                               " vertices, forest has " + std::to_string(forest.size()));
  }

  const auto coloring = ffrand::first_fit_color(forest, order);
  const ffrand::ArrivalOrder arrival(order);
  if (auto violation = ffrand::verify_coloring(forest, arrival, coloring)) {
    throw ffrand::VerificationFailure(violation->describe());
  }

  json doc;
  doc["order"] = ffrand::io::to_json(order);
  doc["coloring"] = ffrand::io::to_json(coloring);
  doc["directed_witness"] = nullptr;
  doc["bidirected_witness"] = nullptr;
  if (forest.size() > 0) {
    const auto v = ffrand::first_max_color_vertex(coloring);
    const auto directed = ffrand::directed_path_witness(forest, arrival, coloring, v);
    if (auto problem = ffrand::check_directed_witness(forest, arrival, coloring, v, directed)) {
      throw ffrand::VerificationFailure(*problem);
    }
    json witness = ffrand::io::to_json(directed);
    witness["vertex"] = v;
    doc["directed_witness"] = std::move(witness);
  }
  if (coloring.max_color >= 2) {
    const auto bidirected = ffrand::bidirected_path_witness(forest, arrival, coloring);
    if (auto problem = ffrand::check_bidirected_witness(forest, arrival, bidirected,
                                                        2 * coloring.max_color - 2)) {
      throw ffrand::VerificationFailure(*problem);
    }
    doc["bidirected_witness"] = ffrand::io::to_json(bidirected);
  }
  doc["verified"] = true;
  std::cerr << "First-Fit used " << coloring.max_color << " colors; chi = "
            << ffrand::chromatic_number(forest) << "\n";
  output.text = dump(doc);
  return output;
}

Output run_estimate(const EstimateFlags& flags, CommonFlags& common) {
  const auto forest = ffrand::io::read_forest_file(flags.forest);
  const std::uint64_t seed = resolve_seed(common);
  common.seed = seed;
  ffrand::ExperimentOptions options;
  options.threads = common.threads;
  options.model =
      flags.model == "positions" ? ffrand::OrderModel::positions : ffrand::OrderModel::shuffle;
  options.check = parse_check(flags.check);
  const auto result = ffrand::estimate_expected_colors(forest, flags.trials, seed, options);

  std::cerr << "n=" << forest.size() << " trials=" << result.trials << " mean=" << result.mean
            << " stderr=" << result.std_error << " ratio=" << result.mean /
            std::max(1, ffrand::chromatic_number(forest)) << " checked=" << result.checked_trials
            << " (" << result.wall_time << " s)\n";
  for (std::size_t c = 1; c < result.color_histogram.size(); ++c) {
    std::cerr << "  P(colors = " << c << ") = "
              << static_cast<double>(result.color_histogram[c]) / result.trials << "\n";
  }
  if (!flags.histogram.empty()) {
    ffrand::io::write_text_file(flags.histogram, ffrand::io::histogram_csv(result.color_histogram));
  }
  Output output{{}, {flags.forest}};
  output.text = common.format == "csv" ? ffrand::io::experiment_csv(result)
                                       : dump(ffrand::io::to_json(result));
  return output;
}

Output run_exact(const ExactFlags& flags, CommonFlags& common) {
  const auto forest = ffrand::io::read_forest_file(flags.forest);
  const auto counts = ffrand::max_color_counts(forest, flags.cap, common.threads);
  const auto expected = ffrand::exact_expected_colors(forest, flags.cap, common.threads);
  Output output{{}, {flags.forest}};
  if (common.format == "json") {
    json doc;
    doc["expected"] = expected.str();
    doc["value"] = static_cast<double>(expected);
    json dist = json::object();
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] != 0) dist[std::to_string(c)] = counts[c];
    }
    doc["orders_by_colors"] = std::move(dist);
    output.text = dump(doc);
  } else {
    output.text = expected.str() + "\n";
  }
  std::cerr << "E[chi_FF] = " << expected.str() << " = " << static_cast<double>(expected) << "\n";
  return output;
}

Output run_rootcolor(const RootColorFlags& flags, CommonFlags& common) {
  const auto params = params_from(flags.k, flags.gamma, flags.r, flags.calibrated);
  const std::uint64_t seed = resolve_seed(common);
  common.seed = seed;
  ffrand::RootColorOptions options;
  options.threads = common.threads;
  options.all_levels = !flags.top_only;
  options.vertex_cap = common.vertex_cap;
  options.check = parse_check(flags.check);
  const auto report = ffrand::root_color_experiment(params, flags.trials, seed, options);

  for (const auto& level : report.levels) {
    std::cerr << "level " << level.level << " (" << level.vertices << " vertices): P(B) = "
              << level.p_below << " vs epsilon " << level.epsilon << "\n";
  }
  std::cerr << "P(chi_FF = " << params.k << ") = " << report.p_full << "  [Wilson 95% "
            << report.p_full_ci.lo << ", " << report.p_full_ci.hi << "]  (" << report.wall_time
            << " s)\n";

  if (common.format == "csv") {
    std::string csv = "level,vertices,trials,p_below,p_below_stderr,wilson_lo,wilson_hi,epsilon\n";
    for (const auto& l : report.levels) {
      csv += std::to_string(l.level) + "," + std::to_string(l.vertices) + "," +
             std::to_string(l.trials) + "," + ffrand::io::format_double(l.p_below) + "," +
             ffrand::io::format_double(l.p_below_std_error) + "," +
             ffrand::io::format_double(l.p_below_ci.lo) + "," +
             ffrand::io::format_double(l.p_below_ci.hi) + "," +
             ffrand::io::format_double(l.epsilon) + "\n";
    }
    return {csv, {}};
  }
  return {dump(ffrand::io::to_json(report)), {}};
}

Output run_worstcase(const WorstCaseFlags& flags, CommonFlags&) {
  const auto forest = ffrand::io::read_forest_file(flags.forest);
  const auto result = ffrand::worst_case_colors(forest, {flags.cap, flags.budget});
  json doc;
  doc["max_colors"] = result.max_colors;
  doc["order"] = ffrand::io::to_json(result.order);
  doc["chromatic_number"] = ffrand::chromatic_number(forest);
  doc["lower_bound_only"] = result.lower_bound_only;
  doc["nodes"] = result.nodes;
  std::cerr << "worst case: " << result.max_colors << " colors"
            << (result.lower_bound_only ? " (lower bound, budget exhausted)" : "") << "\n";
  return {dump(doc), {flags.forest}};
}

std::uint64_t parse_count(const std::string& text) {
  const double value = std::stod(text);
  if (!(value >= 0.0) || value > 1.8e19) throw ffrand::InvalidInput("bad n value '" + text + "'");
  return static_cast<std::uint64_t>(std::llround(value));
}

// lo:hi:log[:points-per-decade] or lo:hi:lin:step
std::vector<std::uint64_t> parse_grid(const std::string& grid) {
  std::vector<std::string> parts;
  std::stringstream in(grid);
  for (std::string token; std::getline(in, token, ':');) parts.push_back(token);
  if (parts.size() < 3) throw ffrand::InvalidInput("grid must look like 1e4:1e12:log");
  const std::uint64_t lo = parse_count(parts[0]);
  const std::uint64_t hi = parse_count(parts[1]);
  std::vector<std::uint64_t> out;
  if (parts[2] == "log") {
    const double per_decade = parts.size() > 3 ? std::stod(parts[3]) : 1.0;
    if (lo == 0 || per_decade <= 0) throw ffrand::InvalidInput("log grid needs lo >= 1");
    const double steps = std::round(std::log10(static_cast<double>(hi) / lo) * per_decade);
    for (double s = 0; s <= steps; ++s) {
      out.push_back(static_cast<std::uint64_t>(
          std::llround(static_cast<double>(lo) * std::pow(10.0, s / per_decade))));
    }
  } else if (parts[2] == "lin") {
    const std::uint64_t step = parts.size() > 3 ? parse_count(parts[3]) : 1;
    if (step == 0) throw ffrand::InvalidInput("lin grid step must be positive");
    for (std::uint64_t v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    throw ffrand::InvalidInput("grid spacing must be log or lin");
  }
  return out;
}

Output run_bounds(const BoundsFlags& flags, CommonFlags&) {
  std::vector<std::uint64_t> grid = flags.n;
  if (!flags.grid.empty()) {
    const auto more = parse_grid(flags.grid);
    grid.insert(grid.end(), more.begin(), more.end());
  }
  if (grid.empty()) throw ffrand::InvalidInput("bounds needs --n or --n-grid");
  std::string csv = std::string(ffrand::io::kBoundsCsvHeader) + "\n";
  for (std::uint64_t n : grid) csv += ffrand::io::bound_csv_row(ffrand::bound_report(n)) + "\n";
  return {csv, {}};
}

json manifest_for(const CLI::App& sub, const CommonFlags& common, const Output& output,
                  const std::vector<std::string>& argv, double seconds) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    const auto results = opt->results();
    params[opt->get_name()] =
        results.size() == 1 ? json(results.front()) : json(results);
  }
  json doc;
  doc["subcommand"] = sub.get_name();
  doc["parameters"] = std::move(params);
  doc["seed"] = common.seed ? json(*common.seed) : json(nullptr);
  doc["threads"] = common.threads;
  doc["version"] = ffrand::kVersion;
  doc["inputs"] = output.inputs;
  doc["outputs"] = json::array({common.out});
  doc["command_line"] = argv;
  doc["wall_time"] = seconds;
  return doc;
}

void add_common(CLI::App* sub, CommonFlags& common, bool seeded) {
  if (seeded) sub->add_option("--seed", common.seed, "Base seed for all randomness");
  sub->add_option("--threads", common.threads, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--out", common.out, "Output path (default stdout); writes <out>.manifest.json");
  sub->add_option("--vertex-cap", common.vertex_cap, "Largest forest to construct");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-Fit coloring of forests under random presentation orders"};
  app.set_version_flag("--version", ffrand::kVersion);
  app.require_subcommand(1);

  CommonFlags common;
  GenFlags gen;
  ColorFlags color;
  EstimateFlags estimate;
  ExactFlags exact;
  RootColorFlags rootcolor;
  WorstCaseFlags worstcase;
  BoundsFlags bounds;

  auto* gen_cmd = app.add_subcommand("gen", "Generate a forest file");
  add_common(gen_cmd, common, true);
  gen_cmd->add_option("--family", gen.family, "path | star | prufer | forest-union | explicit | lowerbound")
      ->required()
      ->check(CLI::IsMember({"path", "star", "prufer", "forest-union", "explicit", "lowerbound"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count");
  gen_cmd->add_option("--k", gen.k, "Lower-bound tree level");
  gen_cmd->add_option("--gamma", gen.gamma, "Failure budget in (0, 1); r = ceil(10/gamma^2 k ln k)");
  gen_cmd->add_option("--r", gen.r, "Override the branching parameter r");
  gen_cmd->add_flag("--calibrated", gen.calibrated, "Use gamma = 1/ln k");
  gen_cmd->add_option("--parts", gen.parts, "forest-union parts, e.g. path:3,star:4,prufer:5");
  gen_cmd->add_option("--edges", gen.edges, "explicit edges as JSON, e.g. [[0,1],[1,2]]");
  gen_cmd->add_option("--format", common.format, "json | edgelist")
      ->check(CLI::IsMember({"json", "edgelist"}));

  auto* color_cmd = app.add_subcommand("color", "Color one order and extract witnesses");
  add_common(color_cmd, common, true);
  color_cmd->add_option("--forest", color.forest, "Forest file")->required();
  color_cmd->add_option("--order", color.order, "Explicit order as a JSON array");
  color_cmd->add_option("--order-file", color.order_file, "File holding a JSON order");
  color_cmd->add_option("--positions", color.positions, "Positions in [0,1) as a JSON array");
  color_cmd->add_option("--positions-file", color.positions_file, "File holding JSON positions");

  auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo estimate of E[chi_FF]");
  add_common(estimate_cmd, common, true);
  estimate_cmd->add_option("--forest", estimate.forest, "Forest file")->required();
  estimate_cmd->add_option("--trials", estimate.trials, "Number of random orders")
      ->check(CLI::PositiveNumber);
  estimate_cmd->add_option("--model", estimate.model, "shuffle | positions")
      ->check(CLI::IsMember({"shuffle", "positions"}));
  estimate_cmd->add_option("--check", estimate.check, "auto | always | never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  estimate_cmd->add_option("--histogram", estimate.histogram, "Write color,count CSV here");
  estimate_cmd->add_option("--format", common.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* exact_cmd = app.add_subcommand("exact", "Exact E[chi_FF] over all n! orders");
  add_common(exact_cmd, common, false);
  exact_cmd->add_option("--forest", exact.forest, "Forest file")->required();
  exact_cmd->add_option("--cap", exact.cap, "Largest n to enumerate");
  exact_cmd->add_option("--format", common.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  common.format = "json";

  auto* root_cmd = app.add_subcommand("rootcolor", "Root-color experiment on T^r_k");
  add_common(root_cmd, common, true);
  root_cmd->add_option("--k", rootcolor.k, "Tree level k")->check(CLI::Range(1u, 255u));
  root_cmd->add_option("--gamma", rootcolor.gamma, "Failure budget in (0, 1)");
  root_cmd->add_option("--r", rootcolor.r, "Override the branching parameter r");
  root_cmd->add_flag("--calibrated", rootcolor.calibrated, "Use gamma = 1/ln k");
  root_cmd->add_option("--trials", rootcolor.trials, "Trials per level")
      ->check(CLI::PositiveNumber);
  root_cmd->add_flag("--top-only", rootcolor.top_only, "Skip levels below k");
  root_cmd->add_option("--check", rootcolor.check, "auto | always | never")
      ->check(CLI::IsMember({"auto", "always", "never"}));
  root_cmd->add_option("--format", common.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto* worst_cmd = app.add_subcommand("worstcase", "Largest chi_FF over all orders");
  add_common(worst_cmd, common, false);
  worst_cmd->add_option("--forest", worstcase.forest, "Forest file")->required();
  worst_cmd->add_option("--cap", worstcase.cap, "Largest n searched exhaustively");
  worst_cmd->add_option("--budget", worstcase.budget, "Search-node budget above the cap");

  auto* bounds_cmd = app.add_subcommand("bounds", "Tabulate the analytic bounds as CSV");
  add_common(bounds_cmd, common, false);
  bounds_cmd->add_option("--n", bounds.n, "Evaluate at these n");
  bounds_cmd->add_option("--n-grid", bounds.grid, "lo:hi:log[:per-decade] or lo:hi:lin:step");
  bounds_cmd->add_option("--format", common.format, "csv")->check(CLI::IsMember({"csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (exact_cmd->parsed() && exact_cmd->get_option("--format")->count() == 0) {
    common.format = "text";
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  try {
    Output output;
    if (sub == gen_cmd) output = run_gen(gen, common);
    if (sub == color_cmd) output = run_color(color, common);
    if (sub == estimate_cmd) output = run_estimate(estimate, common);
    if (sub == exact_cmd) output = run_exact(exact, common);
    if (sub == root_cmd) output = run_rootcolor(rootcolor, common);
    if (sub == worst_cmd) output = run_worstcase(worstcase, common);
    if (sub == bounds_cmd) output = run_bounds(bounds, common);

    if (common.out.empty()) {
      std::cout << output.text;
    } else {
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      ffrand::io::write_text_file(common.out, output.text);
      const std::vector<std::string> args(argv, argv + argc);
      ffrand::io::write_text_file(common.out + ".manifest.json",
                                  dump(manifest_for(*sub, common, output, args, seconds)));
    }
  } catch (const ffrand::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kCap;
  } catch (const ffrand::VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
