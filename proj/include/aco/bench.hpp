#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aco/model.hpp"

namespace aco {

// Found by nlohmann::json through argument-dependent lookup.
void to_json(nlohmann::json& j, const AcoParams& p);
void from_json(const nlohmann::json& j, AcoParams& p);

}  // namespace aco

namespace aco::bench {

struct SyntheticSpec {
  std::size_t cities = 100;
  std::uint64_t seed = 1;
};

/// One experiment: an instance, the colony parameters and how long to run.
/// params.ants == 0 means m = n, params.elite == 0 means k = max(1, m/10)
/// and gamma_schedule.period == 0 means one cosine cycle over max_iters.
struct ExperimentConfig {
  std::string instance_path;
  std::optional<SyntheticSpec> synthetic;
  std::optional<double> best_known;  // overrides the bundled registry
  bool lenient = false;
  AcoParams params;
  std::uint32_t repetitions = 1;
  /// When set, runs stop on this wall-clock budget; max_iters stays a cap.
  std::optional<double> time_limit_seconds;
  std::string output_path;
  std::string summary_path;
  bool record_probability_shift = false;
  bool record_timing = true;
  int threads = 0;
};

ExperimentConfig default_config();

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

/// Loads (or generates) the instance and applies the best-known override.
TspInstance load_instance(const ExperimentConfig& config);

/// Fills the zero-valued "derive from n" fields of config.params.
AcoParams resolve_params(const ExperimentConfig& config, std::size_t n);

struct IterationRecord {
  std::uint32_t run_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t iteration = 0;
  double wall_clock_ms = 0.0;  // since the start of the run
  double best_cost_so_far = 0.0;
  double iteration_best_cost = 0.0;
  std::optional<double> solution_error_percent;
  std::optional<double> gamma;  // AdaIR only
  std::optional<double> p_max;
  std::optional<double> p_hat_max_prime;
};

struct RunSummary {
  std::uint32_t run_id = 0;
  std::uint64_t seed = 0;
  std::uint64_t iterations = 0;
  double best_cost = 0.0;
  std::optional<double> solution_error_percent;
  std::uint64_t convergence_iteration = 0;
  double total_ms = 0.0;
  double mean_iteration_ms = 0.0;  // first iteration excluded when possible
  bool hit_time_limit = false;
  std::vector<City> best_tour;
};

struct ExperimentResult {
  std::string instance_name;
  std::size_t n = 0;
  std::optional<double> best_known;
  std::string best_known_source;  // "override", "registry" or "none"
  AcoParams params;
  std::vector<IterationRecord> records;
  std::vector<RunSummary> summaries;
};

/// Relative tolerance defining the convergence iteration.
inline constexpr double kConvergenceTolerance = 1e-3;

/// First iteration whose best-so-far cost is within `tolerance` (relative) of
/// the final best-so-far cost.
std::uint64_t convergence_iteration(std::span<const double> best_so_far,
                                    double tolerance = kConvergenceTolerance);

double solution_error_percent(double cost, double best_known);

using RecordSink = std::function<void(const IterationRecord&)>;

/// Runs config.repetitions independent runs with seeds seed, seed + 1, ...
ExperimentResult run_experiment(const ExperimentConfig& config, const TspInstance& inst,
                                const RecordSink& sink = {});

void write_records_csv(std::ostream& out, const ExperimentResult& result, bool include_timing);
nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result);

// ---------------------------------------------------------------------------
// Runtime scaling over colony size.

enum class ScalingMode { Batched, Sequential };

struct ScalingOptions {
  std::uint32_t repetitions = 3;
  std::uint64_t iterations = 3;  // timed iterations per repetition, after one warmup
  double budget_seconds = 120.0;  // per cell; exceeded cells are skipped and marked
  SelectionKind selection = SelectionKind::RouletteWheel;
  std::uint64_t seed = 0;
};

struct ScalingRow {
  std::string instance;
  std::size_t n = 0;
  std::size_t ants = 0;
  std::size_t elite = 0;
  ScalingMode mode = ScalingMode::Batched;
  SelectionKind selection = SelectionKind::RouletteWheel;
  int threads = 1;
  std::uint32_t repetitions = 0;
  std::uint64_t iterations = 0;
  std::optional<double> mean_ms;
  std::optional<double> std_ms;
  std::optional<double> speedup;  // sequential / batched, on batched rows
  std::string status;             // "ok" or "exceeded budget"
};

std::vector<ScalingRow> run_scaling_study(std::span<const TspInstance> instances,
                                          std::span<const std::size_t> population_sizes,
                                          std::span<const ScalingMode> modes,
                                          const ScalingOptions& options);

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows);

// ---------------------------------------------------------------------------
// How AdaIR moves the probability of picking the most likely city.

struct ShiftStudyOptions {
  std::uint64_t iterations = 100;
  std::uint64_t trials = 10000;  // Monte-Carlo trials per sample
  std::size_t samples_per_iteration = 1;
};

struct ShiftSample {
  std::uint64_t iteration = 0;
  std::size_t ant = 0;
  double gamma = 1.0;
  City start_city = 0;
  City max_city = 0;
  double p_max = 0.0;            // roulette-wheel probability of max_city
  double p_hat_max_prime = 0.0;  // AdaIR frequency of max_city
  double p_hat_max_ir = 0.0;     // IR frequency of max_city on the same streams
};

/// Samples the first construction step of each iteration: the masked row of
/// the ant's start city, its largest entry, and Monte-Carlo estimates of how
/// often AdaIR (and IR) pick that entry.
std::vector<ShiftSample> run_probability_shift_study(const TspInstance& inst, AcoParams params,
                                                     const ShiftStudyOptions& options);

/// One Monte-Carlo estimate as used by the study, exposed for reuse.
ShiftSample sample_probability_shift(std::span<const double> masked, double gamma,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::uint64_t iteration, std::size_t ant);

void write_shift_csv(std::ostream& out, std::span<const ShiftSample> samples);

// ---------------------------------------------------------------------------
// RW / IR / AdaIR ablation.

struct AblationEntry {
  SelectionKind selection = SelectionKind::RouletteWheel;
  ExperimentResult result;
  double median_convergence_iteration = 0.0;
  double median_best_cost = 0.0;
  std::optional<double> median_solution_error_percent;
};

std::vector<AblationEntry> run_ablation(const ExperimentConfig& base, const TspInstance& inst,
                                        std::span<const SelectionKind> selections,
                                        const RecordSink& sink = {});

nlohmann::json ablation_json(const ExperimentConfig& base, std::span<const AblationEntry> entries);

// ---------------------------------------------------------------------------

/// RFC 4180 field quoting.
std::string csv_field(std::string_view value);
/// Shortest round-trip decimal form.
std::string format_number(double value);

}  // namespace aco::bench
