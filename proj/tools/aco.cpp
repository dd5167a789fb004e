// Command-line front end: solve, convergence (RW/IR/AdaIR ablation),
// scaling and shift-study.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aco/bench.hpp"
#include "aco/parallel.hpp"

namespace {

using aco::SelectionKind;
using aco::bench::ExperimentConfig;

// Cap on iterations when only a wall-clock budget is given.
constexpr std::uint64_t kUnboundedIterations = std::numeric_limits<std::uint32_t>::max();
// Cosine period used when iterations are unbounded.
constexpr std::uint64_t kTimeLimitedPeriod = 1000;

struct ColonyFlags {
  std::optional<std::size_t> ants;
  std::optional<std::size_t> elite;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> rho;
  std::optional<std::string> selection;
  std::optional<double> gamma_max;
  std::optional<double> gamma_min;
  std::optional<std::uint64_t> period;
  std::optional<std::uint64_t> iters;
  std::optional<std::uint64_t> seed;
};

struct InstanceFlags {
  std::string instance;
  std::optional<std::size_t> synthetic;
  std::uint64_t synthetic_seed = 1;
  std::optional<double> best_known;
  bool lenient = false;
};

struct RunFlags {
  ColonyFlags colony;
  InstanceFlags instance;
  std::string config_path;
  std::optional<double> time_limit;
  std::optional<std::uint32_t> reps;
  std::string out;
  std::string summary;
  bool no_timing = false;
  bool record_shift = false;
  int threads = 0;
};

void add_colony_flags(CLI::App& app, ColonyFlags& f) {
  app.add_option("--ants", f.ants, "Colony size m (default: n)")->check(CLI::PositiveNumber);
  app.add_option("--elite", f.elite, "Elite tours k (default: max(1, m/10))")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", f.alpha, "Pheromone exponent");
  app.add_option("--beta", f.beta, "Heuristic exponent");
  app.add_option("--rho", f.rho, "Evaporation rate in [0, 1)");
  app.add_option("--selection", f.selection, "Selection mechanism")
      ->check(CLI::IsMember({"rw", "ir", "adair"}));
  app.add_option("--gamma-max", f.gamma_max, "AdaIR gamma at the start of each cycle");
  app.add_option("--gamma-min", f.gamma_min, "AdaIR gamma at the end of each cycle");
  app.add_option("--period", f.period, "AdaIR cosine period in iterations (default: iters)");
  app.add_option("--iters", f.iters, "Iterations per run")->check(CLI::PositiveNumber);
  app.add_option("--seed", f.seed, "Base seed; run r uses seed + r");
}

void add_instance_flags(CLI::App& app, InstanceFlags& f, bool positional) {
  if (positional) {
    app.add_option("instance", f.instance, "TSPLIB .tsp file");
  } else {
    app.add_option("--instance", f.instance, "TSPLIB .tsp file");
  }
  app.add_option("--synthetic", f.synthetic, "Use a random Euclidean instance with this many cities")
      ->check(CLI::Range(3, 1 << 20));
  app.add_option("--synthetic-seed", f.synthetic_seed, "Seed of the synthetic instance");
  app.add_option("--best-known", f.best_known, "Override the bundled best-known tour length");
  app.add_flag("--lenient", f.lenient, "Accept near-duplicate cities by clamping distances");
}

void add_run_flags(CLI::App& app, RunFlags& f) {
  add_instance_flags(app, f.instance, true);
  add_colony_flags(app, f.colony);
  app.add_option("--config", f.config_path, "JSON experiment config; flags override it")
      ->check(CLI::ExistingFile);
  app.add_option("--time-limit", f.time_limit, "Wall-clock budget per run in seconds")
      ->check(CLI::PositiveNumber);
  app.add_option("--reps", f.reps, "Independent runs")->check(CLI::PositiveNumber);
  app.add_option("--out", f.out, "Per-iteration CSV (default: stdout)");
  app.add_option("--summary", f.summary, "JSON summary file (default: stdout when --out is set)");
  app.add_flag("--no-timing", f.no_timing, "Leave wall_clock_ms empty for byte-stable output");
  app.add_flag("--record-shift", f.record_shift, "Add p_max and p_hat_max_prime columns");
  app.add_option("--threads", f.threads, "Worker threads (default: all cores)")
      ->check(CLI::NonNegativeNumber);
}

void apply_colony_flags(const ColonyFlags& f, aco::AcoParams& p) {
  if (f.ants) p.ants = *f.ants;
  if (f.elite) p.elite = *f.elite;
  if (f.alpha) p.alpha = *f.alpha;
  if (f.beta) p.beta = *f.beta;
  if (f.rho) p.rho = *f.rho;
  if (f.selection) p.selection = *aco::selection_kind_from_string(*f.selection);
  if (f.gamma_max) p.gamma_schedule.gamma_max = *f.gamma_max;
  if (f.gamma_min) p.gamma_schedule.gamma_min = *f.gamma_min;
  if (f.period) p.gamma_schedule.period = *f.period;
  if (f.iters) p.max_iters = *f.iters;
  if (f.seed) p.seed = *f.seed;
}

void apply_instance_flags(const InstanceFlags& f, ExperimentConfig& c) {
  if (!f.instance.empty()) {
    c.instance_path = f.instance;
    c.synthetic.reset();
  }
  if (f.synthetic) c.synthetic = aco::bench::SyntheticSpec{*f.synthetic, f.synthetic_seed};
  if (f.best_known) c.best_known = f.best_known;
  if (f.lenient) c.lenient = true;
}

ExperimentConfig build_config(const RunFlags& f) {
  ExperimentConfig c = aco::bench::default_config();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    aco::bench::from_json(nlohmann::json::parse(in), c);
  }
  apply_instance_flags(f.instance, c);
  apply_colony_flags(f.colony, c.params);
  if (f.time_limit) {
    c.time_limit_seconds = f.time_limit;
    if (!f.colony.iters) c.params.max_iters = kUnboundedIterations;
  }
  if (c.time_limit_seconds && c.params.max_iters == kUnboundedIterations &&
      c.params.gamma_schedule.period == 0) {
    c.params.gamma_schedule.period = kTimeLimitedPeriod;
  }
  if (f.reps) c.repetitions = *f.reps;
  if (!f.out.empty()) c.output_path = f.out;
  if (!f.summary.empty()) c.summary_path = f.summary;
  if (f.no_timing) c.record_timing = false;
  if (f.record_shift) c.record_probability_shift = true;
  if (f.threads > 0) c.threads = f.threads;
  if (c.instance_path.empty() && !c.synthetic) {
    throw CLI::ValidationError("instance", "give a .tsp file, --synthetic N or a config naming one");
  }
  return c;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open `" + path + "` for writing");
  return out;
}

void emit_summary(const ExperimentConfig& c, const nlohmann::json& summary) {
  if (!c.summary_path.empty()) {
    auto out = open_output(c.summary_path);
    out << summary.dump(2) << '\n';
  } else if (!c.output_path.empty()) {
    std::cout << summary.dump(2) << '\n';
  }
}

int run_solve(const RunFlags& flags) {
  const ExperimentConfig c = build_config(flags);
  const aco::TspInstance inst = aco::bench::load_instance(c);
  const auto result = aco::bench::run_experiment(c, inst);
  if (c.output_path.empty()) {
    aco::bench::write_records_csv(std::cout, result, c.record_timing);
  } else {
    auto out = open_output(c.output_path);
    aco::bench::write_records_csv(out, result, c.record_timing);
  }
  emit_summary(c, aco::bench::summary_json(c, result));
  return 0;
}

int run_convergence(const RunFlags& flags, const std::vector<std::string>& selections) {
  const ExperimentConfig c = build_config(flags);
  const aco::TspInstance inst = aco::bench::load_instance(c);
  std::vector<SelectionKind> kinds;
  for (const auto& s : selections) kinds.push_back(*aco::selection_kind_from_string(s));
  const auto entries = aco::bench::run_ablation(c, inst, kinds);

  std::ofstream file;
  if (!c.output_path.empty()) file = open_output(c.output_path);
  std::ostream& out = c.output_path.empty() ? std::cout : file;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    std::ostringstream block;
    aco::bench::write_records_csv(block, entries[i].result, c.record_timing);
    std::string text = block.str();
    // One shared header for the concatenated table.
    if (i > 0) text.erase(0, text.find("\r\n") + 2);
    out << text;
  }
  emit_summary(c, aco::bench::ablation_json(c, entries));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensorized ant colony optimization for the symmetric TSP"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "Run the colony on one instance, one CSV row per iteration");
  add_run_flags(*solve, solve_flags);

  RunFlags conv_flags;
  std::vector<std::string> conv_selections{"rw", "ir", "adair"};
  auto* convergence =
      app.add_subcommand("convergence", "Compare selection mechanisms on one instance");
  add_run_flags(*convergence, conv_flags);
  convergence->add_option("--compare", conv_selections, "Mechanisms to compare")
      ->check(CLI::IsMember({"rw", "ir", "adair"}))
      ->delimiter(',');

  InstanceFlags scale_instance;
  std::vector<std::string> scale_files;
  std::vector<std::size_t> scale_synthetic;
  std::vector<std::size_t> scale_ants{1, 10, 100, 1000};
  std::vector<std::string> scale_modes{"batched", "sequential"};
  aco::bench::ScalingOptions scale_opts;
  std::string scale_selection = "rw";
  std::string scale_out;
  int scale_threads = 0;
  auto* scaling = app.add_subcommand("scaling", "Mean time per iteration over colony sizes");
  scaling->add_option("instances", scale_files, "TSPLIB .tsp files");
  scaling->add_option("--synthetic", scale_synthetic, "Random Euclidean instances of these sizes")
      ->delimiter(',');
  scaling->add_option("--synthetic-seed", scale_instance.synthetic_seed, "Seed of synthetic instances");
  scaling->add_option("--ants", scale_ants, "Colony sizes")->delimiter(',');
  scaling->add_option("--modes", scale_modes, "batched and/or sequential")
      ->check(CLI::IsMember({"batched", "sequential"}))
      ->delimiter(',');
  scaling->add_option("--reps", scale_opts.repetitions, "Repetitions per cell");
  scaling->add_option("--iters", scale_opts.iterations, "Timed iterations per repetition");
  scaling->add_option("--budget", scale_opts.budget_seconds, "Seconds per cell before skipping");
  scaling->add_option("--selection", scale_selection)->check(CLI::IsMember({"rw", "ir", "adair"}));
  scaling->add_option("--seed", scale_opts.seed);
  scaling->add_option("--threads", scale_threads)->check(CLI::NonNegativeNumber);
  scaling->add_option("--out", scale_out, "CSV file (default: stdout)");

  InstanceFlags shift_instance;
  ColonyFlags shift_colony;
  aco::bench::ShiftStudyOptions shift_opts;
  std::string shift_out;
  auto* shift = app.add_subcommand("shift-study", "How AdaIR moves the odds of the likeliest city");
  add_instance_flags(*shift, shift_instance, true);
  add_colony_flags(*shift, shift_colony);
  shift->add_option("--iterations", shift_opts.iterations, "Iterations to sample");
  shift->add_option("--trials", shift_opts.trials, "Monte-Carlo trials per sample");
  shift->add_option("--samples", shift_opts.samples_per_iteration, "Ants sampled per iteration");
  shift->add_option("--out", shift_out, "CSV file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(solve_flags);
    if (*convergence) return run_convergence(conv_flags, conv_selections);

    if (*scaling) {
      if (scale_threads > 0) aco::set_thread_count(scale_threads);
      scale_opts.selection = *aco::selection_kind_from_string(scale_selection);
      std::vector<aco::TspInstance> instances;
      for (const auto& path : scale_files) {
        ExperimentConfig c;
        c.instance_path = path;
        instances.push_back(aco::bench::load_instance(c));
      }
      for (const std::size_t n : scale_synthetic) {
        instances.push_back(aco::random_euclidean_instance(n, scale_instance.synthetic_seed));
      }
      if (instances.empty()) throw std::invalid_argument("scaling needs instances or --synthetic");
      std::vector<aco::bench::ScalingMode> modes;
      for (const auto& m : scale_modes) {
        modes.push_back(m == "batched" ? aco::bench::ScalingMode::Batched
                                       : aco::bench::ScalingMode::Sequential);
      }
      const auto rows = aco::bench::run_scaling_study(instances, scale_ants, modes, scale_opts);
      if (scale_out.empty()) {
        aco::bench::write_scaling_csv(std::cout, rows);
      } else {
        auto out = open_output(scale_out);
        aco::bench::write_scaling_csv(out, rows);
      }
      return 0;
    }

    if (*shift) {
      ExperimentConfig c;
      apply_instance_flags(shift_instance, c);
      if (c.instance_path.empty() && !c.synthetic) {
        throw std::invalid_argument("give a .tsp file or --synthetic N");
      }
      const aco::TspInstance inst = aco::bench::load_instance(c);
      c.params = aco::AcoParams::defaults_for(inst.n);
      c.params.selection = SelectionKind::AdaptiveIndependentRoulette;
      apply_colony_flags(shift_colony, c.params);
      if (!shift_colony.period) c.params.gamma_schedule.period = shift_opts.iterations;
      const auto samples = aco::bench::run_probability_shift_study(inst, c.params, shift_opts);
      if (shift_out.empty()) {
        aco::bench::write_shift_csv(std::cout, samples);
      } else {
        auto out = open_output(shift_out);
        aco::bench::write_shift_csv(out, samples);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
