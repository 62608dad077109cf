#include "ffrand/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "ffrand/error.hpp"

namespace ffrand::io {
namespace {

template <class Fn>
auto guarded(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string(what) + ": " + e.what());
  }
}

json histogram_to_json(std::span<const std::uint64_t> histogram) {
  json out = json::object();
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    if (histogram[c] != 0) out[std::to_string(c)] = histogram[c];
  }
  return out;
}

std::vector<std::uint64_t> histogram_from_json(const json& doc) {
  std::vector<std::uint64_t> out;
  for (const auto& [key, value] : doc.items()) {
    const std::size_t c = std::stoul(key);
    if (out.size() <= c) out.resize(c + 1, 0);
    out[c] = value.get<std::uint64_t>();
  }
  return out;
}

json interval_to_json(Interval i) { return json::array({i.lo, i.hi}); }

json as_array(const json& doc, const char* key) {
  if (doc.is_array()) return doc;
  if (doc.is_object() && doc.contains(key)) return doc.at(key);
  throw InvalidInput(std::string("expected a JSON array or an object with \"") + key + "\"");
}

}  // namespace

json forest_to_json(const Forest& forest) {
  json edges = json::array();
  for (Edge e : forest.edges()) edges.push_back({e.u, e.v});
  json doc;
  doc["n"] = forest.size();
  doc["edges"] = std::move(edges);
  doc["root"] = forest.root() ? json(*forest.root()) : json(nullptr);
  return doc;
}

json lb_tree_to_json(const RootedLBTree& tree) {
  json doc = forest_to_json(tree.forest);
  json levels = json::array();
  for (auto level : tree.levels) levels.push_back(level);
  doc["levels"] = std::move(levels);
  return doc;
}

Forest forest_from_json(const json& doc) {
  return guarded("forest JSON", [&] {
    const auto n = doc.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& pair : doc.at("edges")) {
      if (!pair.is_array() || pair.size() != 2) throw InvalidInput("edge must be a [u, v] pair");
      edges.push_back({pair[0].get<Vertex>(), pair[1].get<Vertex>()});
    }
    std::optional<Vertex> root;
    if (doc.contains("root") && !doc.at("root").is_null()) root = doc.at("root").get<Vertex>();
    return build_forest(n, edges, root);
  });
}

std::string forest_to_edge_list(const Forest& forest) {
  std::ostringstream out;
  out << forest.size() << '\n';
  for (Edge e : forest.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

Forest forest_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t n = 0;
  if (!(in >> n)) throw InvalidInput("edge list must start with the vertex count");
  std::vector<Edge> edges;
  long long u = 0;
  long long v = 0;
  while (in >> u) {
    if (!(in >> v)) throw InvalidInput("edge list has a dangling endpoint");
    if (u < 0 || v < 0) throw InvalidInput("negative vertex index in edge list");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!in.eof()) throw InvalidInput("edge list contains a non-integer token");
  return build_forest(n, edges);
}

Forest parse_forest(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    return forest_from_json(guarded("forest JSON", [&] { return json::parse(text); }));
  }
  return forest_from_edge_list(text);
}

Forest read_forest_file(const std::filesystem::path& path) {
  return parse_forest(read_text_file(path));
}

Permutation permutation_from_json(const json& doc) {
  return guarded("order JSON",
                 [&] { return Permutation(as_array(doc, "order").get<std::vector<Vertex>>()); });
}

PositionAssignment positions_from_json(const json& doc) {
  return guarded("positions JSON", [&] {
    return PositionAssignment(as_array(doc, "positions").get<std::vector<double>>());
  });
}

json to_json(const Permutation& order) {
  return json(std::vector<Vertex>(order.begin(), order.end()));
}

json to_json(const Coloring& coloring) {
  json doc;
  doc["colors"] = coloring.colors;
  doc["max_color"] = coloring.max_color;
  return doc;
}

Coloring coloring_from_json(const json& doc) {
  return guarded("coloring JSON", [&] {
    Coloring c;
    c.colors = doc.at("colors").get<std::vector<Color>>();
    c.max_color = doc.at("max_color").get<Color>();
    return c;
  });
}

json to_json(const DirectedPathWitness& witness) {
  json doc;
  doc["path"] = witness.path;
  return doc;
}

json to_json(const BidirectedPathWitness& witness) {
  json doc;
  doc["path"] = witness.path;
  doc["peak"] = witness.peak;
  return doc;
}

BidirectedPathWitness bidirected_witness_from_json(const json& doc) {
  return guarded("witness JSON", [&] {
    return BidirectedPathWitness{doc.at("path").get<std::vector<Vertex>>(),
                                 doc.at("peak").get<std::size_t>()};
  });
}

json to_json(const ExperimentResult& result) {
  json doc;
  doc["trials"] = result.trials;
  doc["base_seed"] = result.base_seed;
  doc["mean"] = result.mean;
  doc["std_error"] = result.std_error;
  doc["ci95"] = interval_to_json(result.ci95);
  doc["color_histogram"] = histogram_to_json(result.color_histogram);
  doc["checked_trials"] = result.checked_trials;
  return doc;
}

ExperimentResult experiment_result_from_json(const json& doc) {
  return guarded("experiment JSON", [&] {
    ExperimentResult r;
    r.trials = doc.at("trials").get<std::uint64_t>();
    r.base_seed = doc.at("base_seed").get<std::uint64_t>();
    r.mean = doc.at("mean").get<double>();
    r.std_error = doc.at("std_error").get<double>();
    r.ci95 = {doc.at("ci95").at(0).get<double>(), doc.at("ci95").at(1).get<double>()};
    r.color_histogram = histogram_from_json(doc.at("color_histogram"));
    r.checked_trials = doc.at("checked_trials").get<std::uint64_t>();
    return r;
  });
}

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, end);
}

std::string experiment_csv(const ExperimentResult& result) {
  return "trials,mean,stderr,ci_lo,ci_hi\n" + std::to_string(result.trials) + "," +
         format_double(result.mean) + "," + format_double(result.std_error) + "," +
         format_double(result.ci95.lo) + "," + format_double(result.ci95.hi) + "\n";
}

std::string histogram_csv(std::span<const std::uint64_t> histogram) {
  std::string out = "color,count\n";
  for (std::size_t c = 0; c < histogram.size(); ++c) {
    if (histogram[c] != 0) out += std::to_string(c) + "," + std::to_string(histogram[c]) + "\n";
  }
  return out;
}

json to_json(const LowerBoundParams& params) {
  json doc;
  doc["k"] = params.k;
  doc["gamma"] = params.gamma;
  doc["c"] = params.c;
  doc["r"] = params.r;
  doc["r_overridden"] = params.r_overridden;
  doc["epsilons"] = params.epsilons;
  return doc;
}

json to_json(const RootColorReport& report) {
  json levels = json::array();
  for (const LevelStats& s : report.levels) {
    json level;
    level["level"] = s.level;
    level["vertices"] = s.vertices;
    level["trials"] = s.trials;
    level["root_color_histogram"] = histogram_to_json(s.root_histogram);
    level["root_color_probability"] = s.root_color_distribution();
    level["below_level"] = s.below_level;
    level["p_below"] = s.p_below;
    level["p_below_std_error"] = s.p_below_std_error;
    level["p_below_wilson95"] = interval_to_json(s.p_below_ci);
    level["epsilon"] = s.epsilon;
    level["ceiling_violations"] = s.ceiling_violations;
    levels.push_back(std::move(level));
  }
  json doc;
  doc["params"] = to_json(report.params);
  doc["base_seed"] = report.base_seed;
  doc["trials"] = report.trials;
  doc["levels"] = std::move(levels);
  doc["max_color_histogram"] = histogram_to_json(report.max_color_histogram);
  doc["full_count"] = report.full_count;
  doc["p_full"] = report.p_full;
  doc["p_full_wilson95"] = interval_to_json(report.p_full_ci);
  doc["checked_trials"] = report.checked_trials;
  return doc;
}

std::string bound_csv_row(const BoundReport& r) {
  auto field = [](const auto& value) -> std::string {
    if (!value) return "";
    if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, double>) {
      return format_double(*value);
    } else {
      return std::to_string(*value);
    }
  };
  return std::to_string(r.n) + "," + field(r.alpha) + "," + field(r.k_star) + "," +
         field(r.upper_rff) + "," + field(r.tail) + "," + field(r.lower_g);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace ffrand::io
