#include "ffrand/experiments.hpp"

#include <omp.h>

#include <atomic>
#include <chrono>
#include <exception>
#include <string>

#include "ffrand/error.hpp"
#include "ffrand/first_fit.hpp"
#include "ffrand/ordering.hpp"

namespace ffrand {
namespace {

void bump(std::vector<std::uint64_t>& histogram, std::size_t index) {
  if (histogram.size() <= index) histogram.resize(index + 1, 0);
  ++histogram[index];
}

void add_into(std::vector<std::uint64_t>& into, const std::vector<std::uint64_t>& from) {
  if (into.size() < from.size()) into.resize(from.size(), 0);
  for (std::size_t i = 0; i < from.size(); ++i) into[i] += from[i];
}

// Integer counts only, so merging in any order gives the same totals.
struct Tally {
  std::vector<std::uint64_t> primary;
  std::vector<std::uint64_t> secondary;
  std::uint64_t checked = 0;
  std::uint64_t flagged = 0;

  void merge(const Tally& other) {
    add_into(primary, other.primary);
    add_into(secondary, other.secondary);
    checked += other.checked;
    flagged += other.flagged;
  }
};

template <class MakeWorker>
Tally run_trials_serial(std::uint64_t trials, MakeWorker&& make_worker) {
  Tally total;
  auto worker = make_worker();
  for (std::uint64_t t = 0; t < trials; ++t) worker.run(t, total);
  return total;
}

template <class MakeWorker>
Tally run_trials_parallel(std::uint64_t trials, int threads, MakeWorker&& make_worker) {
  Tally total;
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  const int team = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<std::int64_t>(trials);

#pragma omp parallel num_threads(team)
  {
    Tally local;
    auto worker = make_worker();
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t t = 0; t < count; ++t) {
      if (failed.load(std::memory_order_relaxed)) continue;
      try {
        worker.run(static_cast<std::uint64_t>(t), local);
      } catch (...) {
#pragma omp critical(ffrand_trial_failure)
        if (!failure) failure = std::current_exception();
        failed = true;
      }
    }
#pragma omp critical(ffrand_trial_merge)
    total.merge(local);
  }
  if (failure) std::rethrow_exception(failure);
  return total;
}

// Coloring, Observation-1 witness at a max-color vertex and, for two or more
// colors, the bidirected witness, all checked independently of the engine.
void check_trial(const Forest& forest, const ArrivalOrder& order, const Coloring& coloring,
                 std::uint64_t trial) {
  auto fail = [&](const std::string& what) {
    throw VerificationFailure("trial " + std::to_string(trial) + ": " + what);
  };
  if (auto violation = verify_coloring(forest, order, coloring)) fail(violation->describe());
  if (forest.size() == 0) return;
  const Vertex v = first_max_color_vertex(coloring);
  const auto directed = directed_path_witness(forest, order, coloring, v);
  if (auto problem = check_directed_witness(forest, order, coloring, v, directed)) fail(*problem);
  if (coloring.max_color >= 2) {
    const auto bidirected = bidirected_path_witness(forest, order, coloring);
    if (auto problem =
            check_bidirected_witness(forest, order, bidirected, 2 * coloring.max_color - 2)) {
      fail(*problem);
    }
  }
}

class ColorCountWorker {
 public:
  ColorCountWorker(const Forest& forest, std::uint64_t base_seed, const ExperimentOptions& options)
      : forest_(forest), base_seed_(base_seed), options_(options) {}

  void run(std::uint64_t trial, Tally& tally) {
    const std::uint64_t seed = derive_trial_seed({base_seed_, trial});
    const bool checked = trial_is_checked(options_.check, forest_.size(), trial);
    if (options_.model == OrderModel::shuffle) {
      order_ = uniform_permutation(forest_.size(), seed);
      first_fit_color(forest_, order_, scratch_, coloring_);
      if (checked) check_trial(forest_, ArrivalOrder(order_), coloring_, trial);
    } else {
      resample_positions(positions_, forest_.size(), seed);
      first_fit_color(forest_, positions_, scratch_, coloring_);
      if (checked) check_trial(forest_, ArrivalOrder(positions_), coloring_, trial);
    }
    bump(tally.primary, coloring_.max_color);
    if (checked) ++tally.checked;
  }

 private:
  const Forest& forest_;
  std::uint64_t base_seed_;
  ExperimentOptions options_;
  ColoringScratch scratch_;
  Coloring coloring_;
  Permutation order_;
  PositionAssignment positions_;
};

ExperimentResult summarize(const Tally& tally, std::uint64_t trials, std::uint64_t base_seed,
                           double seconds) {
  ExperimentResult result;
  result.trials = trials;
  result.base_seed = base_seed;
  result.color_histogram = tally.primary;
  const auto moments = histogram_moments(result.color_histogram);
  result.mean = moments.mean;
  result.std_error = moments.std_error;
  result.ci95 = {result.mean - kZ95 * result.std_error, result.mean + kZ95 * result.std_error};
  result.checked_trials = tally.checked;
  result.wall_time = seconds;
  return result;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <bool Parallel>
ExperimentResult estimate_impl(const Forest& forest, std::uint64_t trials, std::uint64_t base_seed,
                               const ExperimentOptions& options) {
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  auto make = [&] { return ColorCountWorker(forest, base_seed, options); };
  Tally tally;
  if constexpr (Parallel) {
    tally = run_trials_parallel(trials, options.threads, make);
  } else {
    tally = run_trials_serial(trials, make);
  }
  return summarize(tally, trials, base_seed, seconds_since(start));
}

class RootColorWorker {
 public:
  RootColorWorker(const RootedLBTree& tree, std::uint64_t level_seed, bool top, CheckMode check)
      : tree_(tree), level_seed_(level_seed), top_(top), check_(check) {}

  void run(std::uint64_t trial, Tally& tally) {
    const Forest& forest = tree_.forest;
    resample_positions(positions_, forest.size(), derive_trial_seed({level_seed_, trial}));
    first_fit_color(forest, positions_, scratch_, coloring_);
    const Color root_color = coloring_.colors[tree_.root];
    bump(tally.primary, root_color);
    if (root_color > tree_.level) ++tally.flagged;
    if (top_) bump(tally.secondary, coloring_.max_color);
    if (trial_is_checked(check_, forest.size(), trial)) {
      check_trial(forest, ArrivalOrder(positions_), coloring_, trial);
      ++tally.checked;
    }
  }

 private:
  const RootedLBTree& tree_;
  std::uint64_t level_seed_;
  bool top_;
  CheckMode check_;
  ColoringScratch scratch_;
  Coloring coloring_;
  PositionAssignment positions_;
};

template <bool Parallel>
RootColorReport root_color_impl(const LowerBoundParams& params, std::uint64_t trials,
                                std::uint64_t base_seed, const RootColorOptions& options) {
  if (trials == 0) throw InvalidInput("trials must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  // Fail on the cap before any work is done.
  if (lb_tree_size(params.k, params.r) > options.vertex_cap) {
    (void)build_lb_tree(params.k, params.r, options.vertex_cap);
  }

  RootColorReport report;
  report.params = params;
  report.base_seed = base_seed;
  report.trials = trials;

  const unsigned first = options.all_levels ? 1 : params.k;
  for (unsigned level = first; level <= params.k; ++level) {
    const RootedLBTree tree = build_lb_tree(level, params.r, options.vertex_cap);
    const bool top = level == params.k;
    const std::uint64_t level_seed = derive_trial_seed({base_seed, level});
    auto make = [&] { return RootColorWorker(tree, level_seed, top, options.check); };
    Tally tally;
    if constexpr (Parallel) {
      tally = run_trials_parallel(trials, options.threads, make);
    } else {
      tally = run_trials_serial(trials, make);
    }

    LevelStats stats;
    stats.level = level;
    stats.vertices = tree.forest.size();
    stats.trials = trials;
    stats.root_histogram = tally.primary;
    for (std::size_t c = 0; c < stats.root_histogram.size() && c < level; ++c) {
      stats.below_level += stats.root_histogram[c];
    }
    stats.p_below = static_cast<double>(stats.below_level) / static_cast<double>(trials);
    stats.p_below_std_error = binomial_std_error(stats.below_level, trials);
    stats.p_below_ci = wilson_interval(stats.below_level, trials);
    stats.epsilon = params.epsilon(level);
    stats.ceiling_violations = tally.flagged;
    report.levels.push_back(std::move(stats));
    report.checked_trials += tally.checked;

    if (top) {
      report.max_color_histogram = tally.secondary;
      report.full_count =
          params.k < report.max_color_histogram.size() ? report.max_color_histogram[params.k] : 0;
      report.p_full = static_cast<double>(report.full_count) / static_cast<double>(trials);
      report.p_full_ci = wilson_interval(report.full_count, trials);
    }
  }
  report.wall_time = seconds_since(start);
  return report;
}

bool path_is_bidirected(std::span<const Vertex> order) {
  // order[t] is the path vertex revealed in round t; reduce to arrival ranks.
  const std::size_t m = order.size();
  std::vector<std::size_t> rank(m);
  for (std::size_t t = 0; t < m; ++t) rank[order[t]] = t;
  std::size_t j = 0;
  while (j + 1 < m && rank[j] < rank[j + 1]) ++j;
  while (j + 1 < m && rank[j] > rank[j + 1]) ++j;
  return j + 1 >= m;
}

class BidirectedPathWorker {
 public:
  BidirectedPathWorker(std::uint64_t m, std::uint64_t base_seed) : m_(m), base_seed_(base_seed) {}

  void run(std::uint64_t trial, Tally& tally) {
    const auto order = uniform_permutation(m_, derive_trial_seed({base_seed_, trial}));
    if (path_is_bidirected(order.vertices())) ++tally.flagged;
  }

 private:
  std::uint64_t m_;
  std::uint64_t base_seed_;
};

}  // namespace

bool trial_is_checked(CheckMode mode, std::size_t vertices, std::uint64_t trial) {
  switch (mode) {
    case CheckMode::always:
      return true;
    case CheckMode::never:
      return false;
    case CheckMode::automatic:
      return vertices < kFullCheckBelow || trial % kSampledCheckStride == 0;
  }
  return true;
}

double ExperimentResult::tail_fraction(std::size_t colors) const {
  if (trials == 0) return 0.0;
  std::uint64_t hits = 0;
  for (std::size_t c = colors; c < color_histogram.size(); ++c) hits += color_histogram[c];
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::vector<double> LevelStats::root_color_distribution() const {
  std::vector<double> out(root_histogram.size(), 0.0);
  if (trials == 0) return out;
  for (std::size_t c = 0; c < root_histogram.size(); ++c) {
    out[c] = static_cast<double>(root_histogram[c]) / static_cast<double>(trials);
  }
  return out;
}

ExperimentResult estimate_expected_colors(const Forest& forest, std::uint64_t trials,
                                          std::uint64_t base_seed,
                                          const ExperimentOptions& options) {
  return estimate_impl<true>(forest, trials, base_seed, options);
}

ExperimentResult estimate_expected_colors_serial(const Forest& forest, std::uint64_t trials,
                                                 std::uint64_t base_seed,
                                                 const ExperimentOptions& options) {
  return estimate_impl<false>(forest, trials, base_seed, options);
}

RootColorReport root_color_experiment(const LowerBoundParams& params, std::uint64_t trials,
                                      std::uint64_t base_seed, const RootColorOptions& options) {
  return root_color_impl<true>(params, trials, base_seed, options);
}

RootColorReport root_color_experiment_serial(const LowerBoundParams& params,
                                             std::uint64_t trials, std::uint64_t base_seed,
                                             const RootColorOptions& options) {
  return root_color_impl<false>(params, trials, base_seed, options);
}

std::uint64_t sample_bidirected_paths(std::uint64_t m, std::uint64_t trials,
                                      std::uint64_t base_seed, int threads) {
  if (m == 0) throw InvalidInput("path needs at least one vertex");
  return run_trials_parallel(trials, threads,
                             [&] { return BidirectedPathWorker(m, base_seed); })
      .flagged;
}

std::uint64_t sample_bidirected_paths_serial(std::uint64_t m, std::uint64_t trials,
                                             std::uint64_t base_seed) {
  if (m == 0) throw InvalidInput("path needs at least one vertex");
  return run_trials_serial(trials, [&] { return BidirectedPathWorker(m, base_seed); }).flagged;
}

}  // namespace ffrand
