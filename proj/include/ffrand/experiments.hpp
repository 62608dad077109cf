#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ffrand/forest.hpp"
#include "ffrand/lb_tree.hpp"
#include "ffrand/stats.hpp"

namespace ffrand {

// Monte Carlo experiments. Every trial t draws its order from
// derive_trial_seed({base_seed, t}) and results are merged as integer
// histograms, so output depends only on (inputs, base_seed) and never on the
// thread count or schedule. Each parallel entry point has a *_serial twin that
// runs the same trials in a plain loop; tests hold them equal.

enum class OrderModel {
  shuffle,    // Fisher-Yates permutation
  positions,  // i.i.d. U[0,1) positions, sorted
};

enum class CheckMode {
  automatic,  // every trial below kFullCheckBelow vertices, 1 in kSampledCheckStride above
  always,
  never,
};

inline constexpr std::size_t kFullCheckBelow = 100'000;
inline constexpr std::uint64_t kSampledCheckStride = 100;

bool trial_is_checked(CheckMode mode, std::size_t vertices, std::uint64_t trial);

struct ExperimentOptions {
  int threads = 0;  // 0 keeps the OpenMP default
  OrderModel model = OrderModel::shuffle;
  CheckMode check = CheckMode::automatic;
};

/// Sample of chi_FF over random orders of one forest.
struct ExperimentResult {
  std::uint64_t trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<std::uint64_t> color_histogram;  // [c] = trials using exactly c colors
  double mean = 0.0;
  double std_error = 0.0;
  Interval ci95;
  std::uint64_t checked_trials = 0;  // trials whose coloring and witnesses were verified
  double wall_time = 0.0;            // seconds; not part of the reproducible output

  // Fraction of trials using at least `colors` colors.
  double tail_fraction(std::size_t colors) const;
};

// Throws InvalidInput for trials == 0 and VerificationFailure if a checked
// trial fails verification.
ExperimentResult estimate_expected_colors(const Forest& forest, std::uint64_t trials,
                                          std::uint64_t base_seed,
                                          const ExperimentOptions& options = {});
ExperimentResult estimate_expected_colors_serial(const Forest& forest, std::uint64_t trials,
                                                 std::uint64_t base_seed,
                                                 const ExperimentOptions& options = {});

/// Root colors of T^r_i for each level i, plus the global color count of
/// T^r_k. Orders come from the position model. B_i is the event that the root
/// of a standalone T^r_i gets a color below i.
struct LevelStats {
  unsigned level = 0;
  std::uint64_t vertices = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> root_histogram;  // [c] = trials with root color c
  std::uint64_t below_level = 0;              // occurrences of B_i
  double p_below = 0.0;
  double p_below_std_error = 0.0;
  Interval p_below_ci;
  double epsilon = 0.0;
  std::uint64_t ceiling_violations = 0;  // root color > level; must stay 0

  std::vector<double> root_color_distribution() const;
};

struct RootColorReport {
  LowerBoundParams params;
  std::uint64_t base_seed = 0;
  std::uint64_t trials = 0;
  std::vector<LevelStats> levels;  // ascending; back() is level k
  std::vector<std::uint64_t> max_color_histogram;  // T^r_k
  std::uint64_t full_count = 0;                    // trials with chi_FF(T^r_k) = k
  double p_full = 0.0;
  Interval p_full_ci;
  std::uint64_t checked_trials = 0;
  double wall_time = 0.0;

  const LevelStats& top() const { return levels.back(); }
};

struct RootColorOptions {
  int threads = 0;
  bool all_levels = true;  // false: only level k
  std::uint64_t vertex_cap = kDefaultVertexCap;
  CheckMode check = CheckMode::automatic;
};

RootColorReport root_color_experiment(const LowerBoundParams& params, std::uint64_t trials,
                                      std::uint64_t base_seed,
                                      const RootColorOptions& options = {});
RootColorReport root_color_experiment_serial(const LowerBoundParams& params,
                                             std::uint64_t trials, std::uint64_t base_seed,
                                             const RootColorOptions& options = {});

// Number of trials (out of `trials`) in which the path 0-1-...-(m-1) is
// bidirected under a uniform random order.
std::uint64_t sample_bidirected_paths(std::uint64_t m, std::uint64_t trials,
                                      std::uint64_t base_seed, int threads = 0);
std::uint64_t sample_bidirected_paths_serial(std::uint64_t m, std::uint64_t trials,
                                             std::uint64_t base_seed);

}  // namespace ffrand
