#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "ffrand/bounds.hpp"
#include "ffrand/experiments.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/forest.hpp"
#include "ffrand/lb_tree.hpp"
#include "ffrand/ordering.hpp"

namespace ffrand::io {

// Insertion-ordered so emitted keys follow the documented layouts.
using json = nlohmann::ordered_json;

// {"n": N, "edges": [[u, v], ...], "root": R | null}, edges sorted with u < v.
json forest_to_json(const Forest& forest);
// The forest JSON plus "levels": [...].
json lb_tree_to_json(const RootedLBTree& tree);
Forest forest_from_json(const json& doc);

// First line n, then one "u v" pair per line.
std::string forest_to_edge_list(const Forest& forest);
Forest forest_from_edge_list(std::string_view text);

// Detects JSON (first non-blank character '{') or the edge-list format.
Forest parse_forest(std::string_view text);
Forest read_forest_file(const std::filesystem::path& path);

Permutation permutation_from_json(const json& doc);
PositionAssignment positions_from_json(const json& doc);
json to_json(const Permutation& order);

// {"colors": [...], "max_color": m}
json to_json(const Coloring& coloring);
Coloring coloring_from_json(const json& doc);

// {"path": [...]} and {"path": [...], "peak": t}; peak is an index into path.
json to_json(const DirectedPathWitness& witness);
json to_json(const BidirectedPathWitness& witness);
BidirectedPathWitness bidirected_witness_from_json(const json& doc);

json to_json(const ExperimentResult& result);
ExperimentResult experiment_result_from_json(const json& doc);
// "trials,mean,stderr,ci_lo,ci_hi" header plus one row.
std::string experiment_csv(const ExperimentResult& result);
// "color,count" rows, colors with zero count omitted.
std::string histogram_csv(std::span<const std::uint64_t> histogram);

json to_json(const LowerBoundParams& params);
json to_json(const RootColorReport& report);

inline constexpr std::string_view kBoundsCsvHeader = "n,alpha,k_star,upper_rff,tail,lower_g";
// One CSV row; undefined entries are empty fields.
std::string bound_csv_row(const BoundReport& report);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace ffrand::io
