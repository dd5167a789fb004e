#include "aco/bench.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "aco/colony.hpp"
#include "aco/oracle.hpp"
#include "aco/parallel.hpp"
#include "aco/rng.hpp"
#include "aco/selection.hpp"
#include "aco/solver.hpp"
#include "aco/tsplib.hpp"

namespace aco::bench {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string format_fixed(double value, int digits) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
  return std::string(buf.data(), ptr);
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string_view to_string(ScalingMode mode) {
  return mode == ScalingMode::Batched ? "batched" : "sequential";
}


// Streams for the shift study's Monte-Carlo trials, kept apart from the
// construction streams of the same seed.
constexpr std::uint64_t kShiftStreamSalt = 0x5348494654ull;

}  // namespace

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.params.ants = 0;
  c.params.elite = 0;
  c.params.gamma_schedule.period = 0;
  return c;
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{
      {"instance", c.instance_path},
      {"lenient", c.lenient},
      {"params", c.params},
      {"repetitions", c.repetitions},
      {"record_probability_shift", c.record_probability_shift},
      {"record_timing", c.record_timing},
      {"threads", c.threads},
      {"output", c.output_path},
      {"summary", c.summary_path},
  };
  j["synthetic"] = c.synthetic ? nlohmann::json{{"cities", c.synthetic->cities},
                                                {"seed", c.synthetic->seed}}
                               : nlohmann::json(nullptr);
  j["best_known"] = c.best_known ? nlohmann::json(*c.best_known) : nlohmann::json(nullptr);
  j["time_limit_seconds"] =
      c.time_limit_seconds ? nlohmann::json(*c.time_limit_seconds) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c.instance_path = j.value("instance", c.instance_path);
  if (j.contains("synthetic") && !j.at("synthetic").is_null()) {
    SyntheticSpec s;
    s.cities = j.at("synthetic").value("cities", s.cities);
    s.seed = j.at("synthetic").value("seed", s.seed);
    c.synthetic = s;
  }
  if (j.contains("best_known") && !j.at("best_known").is_null()) {
    c.best_known = j.at("best_known").get<double>();
  }
  c.lenient = j.value("lenient", c.lenient);
  if (j.contains("params")) from_json(j.at("params"), c.params);
  c.repetitions = j.value("repetitions", c.repetitions);
  if (j.contains("time_limit_seconds") && !j.at("time_limit_seconds").is_null()) {
    c.time_limit_seconds = j.at("time_limit_seconds").get<double>();
  }
  c.output_path = j.value("output", c.output_path);
  c.summary_path = j.value("summary", c.summary_path);
  c.record_probability_shift = j.value("record_probability_shift", c.record_probability_shift);
  c.record_timing = j.value("record_timing", c.record_timing);
  c.threads = j.value("threads", c.threads);
}

TspInstance load_instance(const ExperimentConfig& config) {
  TspInstance inst;
  if (config.synthetic) {
    inst = random_euclidean_instance(config.synthetic->cities, config.synthetic->seed);
  } else {
    if (config.instance_path.empty()) {
      throw std::invalid_argument("no instance file or synthetic instance given");
    }
    inst = build_instance(tsplib::load_instance(config.instance_path), {config.lenient});
  }
  if (config.best_known) inst.best_known = config.best_known;
  return inst;
}

AcoParams resolve_params(const ExperimentConfig& config, std::size_t n) {
  AcoParams p = config.params;
  if (p.ants == 0) p.ants = n;
  if (p.elite == 0) p.elite = std::max<std::size_t>(1, p.ants / 10);
  if (p.gamma_schedule.period == 0) p.gamma_schedule.period = p.max_iters;
  p.validate();
  return p;
}

std::uint64_t convergence_iteration(std::span<const double> best_so_far, double tolerance) {
  if (best_so_far.empty()) return 0;
  const double threshold = best_so_far.back() * (1.0 + tolerance);
  for (std::size_t i = 0; i < best_so_far.size(); ++i) {
    if (best_so_far[i] <= threshold) return i;
  }
  return best_so_far.size() - 1;
}

double solution_error_percent(double cost, double best_known) {
  return 100.0 * (cost - best_known) / best_known;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const TspInstance& inst,
                                const RecordSink& sink) {
  if (config.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (config.threads > 0) set_thread_count(config.threads);

  ExperimentResult result;
  result.instance_name = inst.name;
  result.n = inst.n;
  result.best_known = inst.best_known;
  result.best_known_source = config.best_known ? "override" : inst.best_known ? "registry" : "none";
  result.params = resolve_params(config, inst.n);

  for (std::uint32_t run = 0; run < config.repetitions; ++run) {
    AcoParams params = result.params;
    params.seed = result.params.seed + run;
    AntColony colony(inst, params);

    RunSummary summary;
    summary.run_id = run;
    summary.seed = params.seed;
    std::vector<double> best_series;
    best_series.reserve(std::min<std::uint64_t>(params.max_iters, 1 << 16));
    double first_iteration_ms = 0.0;

    const auto start = Clock::now();
    for (std::uint64_t it = 0; it < params.max_iters; ++it) {
      IterationRecord rec;
      rec.run_id = run;
      rec.seed = params.seed;
      rec.iteration = it;

      if (config.record_probability_shift) {
        const auto starts = init_starts(1, inst.n, params.seed, it);
        ConstructionState first_step(starts, inst.n);
        const auto masked = first_step.masked_distribution(colony.probabilities(), 0);
        const auto sample = sample_probability_shift(
            masked, colony.selector().gamma(it).value, 10000, params.seed, it, 0);
        rec.p_max = sample.p_max;
        rec.p_hat_max_prime = sample.p_hat_max_prime;
      }

      const auto& outcome = colony.step();
      rec.wall_clock_ms = ms_since(start);
      if (it == 0) first_iteration_ms = rec.wall_clock_ms;
      rec.iteration_best_cost = outcome.iteration_best_cost;
      rec.best_cost_so_far = colony.best_cost();
      if (inst.best_known) {
        rec.solution_error_percent = solution_error_percent(rec.best_cost_so_far, *inst.best_known);
      }
      if (params.selection == SelectionKind::AdaptiveIndependentRoulette) {
        rec.gamma = outcome.gamma.value;
      }
      best_series.push_back(rec.best_cost_so_far);
      if (sink) sink(rec);
      result.records.push_back(rec);

      if (config.time_limit_seconds && rec.wall_clock_ms >= *config.time_limit_seconds * 1000.0) {
        summary.hit_time_limit = it + 1 < params.max_iters;
        break;
      }
    }

    summary.iterations = best_series.size();
    summary.total_ms = ms_since(start);
    summary.mean_iteration_ms =
        summary.iterations > 1
            ? (result.records.back().wall_clock_ms - first_iteration_ms) /
                  static_cast<double>(summary.iterations - 1)
            : first_iteration_ms;
    summary.best_cost = colony.best_cost();
    summary.best_tour = colony.best_tour();
    summary.convergence_iteration = convergence_iteration(best_series);
    if (inst.best_known) {
      summary.solution_error_percent = solution_error_percent(summary.best_cost, *inst.best_known);
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

void write_records_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
  const bool shift = std::any_of(result.records.begin(), result.records.end(),
                                 [](const IterationRecord& r) { return r.p_max.has_value(); });
  out << "instance,selection,run_id,seed,iteration,wall_clock_ms,best_cost_so_far,"
         "iteration_best_cost,solution_error_percent,gamma,rho";
  if (shift) out << ",p_max,p_hat_max_prime";
  out << "\r\n";
  const std::string instance = csv_field(result.instance_name);
  const std::string selection(to_string(result.params.selection));
  const std::string rho = format_number(result.params.rho);
  for (const auto& r : result.records) {
    out << instance << ',' << selection << ',' << r.run_id << ',' << r.seed << ',' << r.iteration
        << ',' << (include_timing ? format_fixed(r.wall_clock_ms, 3) : std::string{}) << ','
        << format_number(r.best_cost_so_far) << ',' << format_number(r.iteration_best_cost) << ','
        << optional_number(r.solution_error_percent) << ',' << optional_number(r.gamma) << ','
        << rho;
    if (shift) out << ',' << optional_number(r.p_max) << ',' << optional_number(r.p_hat_max_prime);
    out << "\r\n";
  }
}

nlohmann::json summary_json(const ExperimentConfig& config, const ExperimentResult& result) {
  nlohmann::json runs = nlohmann::json::array();
  std::vector<double> convergence;
  std::vector<double> best;
  std::vector<double> errors;
  for (const auto& s : result.summaries) {
    nlohmann::json run{
        {"run_id", s.run_id},
        {"seed", s.seed},
        {"iterations", s.iterations},
        {"best_cost", s.best_cost},
        {"convergence_iteration", s.convergence_iteration},
        {"total_ms", s.total_ms},
        {"mean_iteration_ms", s.mean_iteration_ms},
        {"hit_time_limit", s.hit_time_limit},
        {"best_tour", s.best_tour},
    };
    run["solution_error_percent"] =
        s.solution_error_percent ? nlohmann::json(*s.solution_error_percent) : nlohmann::json();
    runs.push_back(std::move(run));
    convergence.push_back(static_cast<double>(s.convergence_iteration));
    best.push_back(s.best_cost);
    if (s.solution_error_percent) errors.push_back(*s.solution_error_percent);
  }

  nlohmann::json out;
  out["config"] = config;
  out["resolved_params"] = result.params;
  out["instance"] = {
      {"name", result.instance_name},
      {"n", result.n},
      {"best_known", result.best_known ? nlohmann::json(*result.best_known) : nlohmann::json()},
      {"best_known_source", result.best_known_source},
  };
  out["convergence_definition"] =
      "first iteration whose best-so-far cost is within 0.1% of the run's final best";
  out["runs"] = std::move(runs);
  out["aggregate"] = {
      {"median_convergence_iteration", median(convergence)},
      {"median_best_cost", median(best)},
      {"min_best_cost", best.empty() ? 0.0 : *std::min_element(best.begin(), best.end())},
  };
  out["aggregate"]["median_solution_error_percent"] =
      errors.empty() ? nlohmann::json() : nlohmann::json(median(errors));
  return out;
}

std::vector<ScalingRow> run_scaling_study(std::span<const TspInstance> instances,
                                          std::span<const std::size_t> population_sizes,
                                          std::span<const ScalingMode> modes,
                                          const ScalingOptions& options) {
  std::vector<ScalingRow> rows;
  for (const auto& inst : instances) {
    for (const std::size_t m : population_sizes) {
      AcoParams params = AcoParams::defaults_for(inst.n);
      params.ants = m;
      params.elite = std::max<std::size_t>(1, m / 10);
      params.selection = options.selection;
      params.gamma_schedule.period = 1000;

      std::optional<double> sequential_mean;
      std::vector<std::size_t> batched_rows;
      for (const ScalingMode mode : modes) {
        ScalingRow row;
        row.instance = inst.name;
        row.n = inst.n;
        row.ants = m;
        row.elite = params.elite;
        row.mode = mode;
        row.selection = options.selection;
        row.threads = mode == ScalingMode::Batched ? thread_count() : 1;
        row.repetitions = options.repetitions;
        row.iterations = options.iterations;
        row.status = "ok";

        std::vector<double> rep_means;
        for (std::uint32_t rep = 0; rep < options.repetitions && row.status == "ok"; ++rep) {
          params.seed = options.seed + rep;
          std::vector<double> times;
          if (mode == ScalingMode::Batched) {
            AntColony colony(inst, params);
            auto t0 = Clock::now();
            colony.step();  // warmup
            const double warmup_ms = ms_since(t0);
            if (rep == 0 && warmup_ms * static_cast<double>(options.repetitions * options.iterations) >
                                options.budget_seconds * 1000.0) {
              row.status = "exceeded budget";
              break;
            }
            for (std::uint64_t i = 0; i < options.iterations; ++i) {
              t0 = Clock::now();
              colony.step();
              times.push_back(ms_since(t0));
            }
          } else {
            auto tau = PheromoneState::uniform(inst.n, params.initial_pheromone);
            auto t0 = Clock::now();
            tau = oracle::sequential_aco_step(tau, inst, params).pheromone;  // warmup
            const double warmup_ms = ms_since(t0);
            if (rep == 0 && warmup_ms * static_cast<double>(options.repetitions * options.iterations) >
                                options.budget_seconds * 1000.0) {
              row.status = "exceeded budget";
              break;
            }
            for (std::uint64_t i = 0; i < options.iterations; ++i) {
              t0 = Clock::now();
              tau = oracle::sequential_aco_step(tau, inst, params).pheromone;
              times.push_back(ms_since(t0));
            }
          }
          double sum = 0.0;
          for (const double t : times) sum += t;
          rep_means.push_back(sum / static_cast<double>(times.size()));
        }

        if (row.status == "ok" && !rep_means.empty()) {
          double mean = 0.0;
          for (const double v : rep_means) mean += v;
          mean /= static_cast<double>(rep_means.size());
          double var = 0.0;
          for (const double v : rep_means) var += (v - mean) * (v - mean);
          row.mean_ms = mean;
          row.std_ms = rep_means.size() > 1
                           ? std::sqrt(var / static_cast<double>(rep_means.size() - 1))
                           : 0.0;
          if (mode == ScalingMode::Sequential) sequential_mean = mean;
        }
        if (mode == ScalingMode::Batched) batched_rows.push_back(rows.size());
        rows.push_back(std::move(row));
      }
      if (sequential_mean) {
        for (const std::size_t idx : batched_rows) {
          if (rows[idx].mean_ms) rows[idx].speedup = *sequential_mean / *rows[idx].mean_ms;
        }
      }
    }
  }
  return rows;
}

void write_scaling_csv(std::ostream& out, std::span<const ScalingRow> rows) {
  out << "instance,n,ants,elite,mode,selection,threads,repetitions,iterations,mean_ms,std_ms,"
         "speedup,status\r\n";
  for (const auto& r : rows) {
    out << csv_field(r.instance) << ',' << r.n << ',' << r.ants << ',' << r.elite << ','
        << to_string(r.mode) << ',' << to_string(r.selection) << ',' << r.threads << ','
        << r.repetitions << ',' << r.iterations << ','
        << (r.mean_ms ? format_fixed(*r.mean_ms, 3) : std::string{}) << ','
        << (r.std_ms ? format_fixed(*r.std_ms, 3) : std::string{}) << ','
        << (r.speedup ? format_fixed(*r.speedup, 3) : std::string{}) << ',' << csv_field(r.status)
        << "\r\n";
  }
}

ShiftSample sample_probability_shift(std::span<const double> masked, double gamma,
                                     std::uint64_t trials, std::uint64_t seed,
                                     std::uint64_t iteration, std::size_t ant) {
  ShiftSample s;
  s.iteration = iteration;
  s.ant = ant;
  s.gamma = gamma;
  for (std::size_t j = 0; j < masked.size(); ++j) {
    if (masked[j] > s.p_max) {
      s.p_max = masked[j];
      s.max_city = static_cast<City>(j);
    }
  }
  std::uint64_t adair_hits = 0;
  std::uint64_t ir_hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const StreamKey key{seed ^ kShiftStreamSalt, iteration, static_cast<std::uint32_t>(ant),
                        static_cast<std::uint32_t>(t)};
    RandomStream adair_stream(key);
    RandomStream ir_stream(key);
    adair_hits += select_adair(masked, GammaValue{gamma}, adair_stream) == s.max_city;
    ir_hits += select_ir(masked, ir_stream) == s.max_city;
  }
  s.p_hat_max_prime = static_cast<double>(adair_hits) / static_cast<double>(trials);
  s.p_hat_max_ir = static_cast<double>(ir_hits) / static_cast<double>(trials);
  return s;
}

std::vector<ShiftSample> run_probability_shift_study(const TspInstance& inst, AcoParams params,
                                                     const ShiftStudyOptions& options) {
  if (params.selection != SelectionKind::AdaptiveIndependentRoulette) {
    throw std::invalid_argument("the probability shift study needs AdaIR selection");
  }
  params.validate();
  AntColony colony(inst, params);
  const std::size_t samples = std::min(options.samples_per_iteration, params.ants);
  std::vector<ShiftSample> out;
  for (std::uint64_t it = 0; it < options.iterations; ++it) {
    const auto starts = init_starts(samples, inst.n, params.seed, it);
    const ConstructionState first_step(starts, inst.n);
    const double gamma = colony.selector().gamma(it).value;
    for (std::size_t a = 0; a < samples; ++a) {
      const auto masked = first_step.masked_distribution(colony.probabilities(), a);
      auto sample = sample_probability_shift(masked, gamma, options.trials, params.seed, it, a);
      sample.start_city = starts[a];
      out.push_back(sample);
    }
    colony.step();
  }
  return out;
}

void write_shift_csv(std::ostream& out, std::span<const ShiftSample> samples) {
  out << "iteration,ant,gamma,start_city,max_city,p_max,p_hat_max_prime,p_hat_max_ir\r\n";
  for (const auto& s : samples) {
    out << s.iteration << ',' << s.ant << ',' << format_number(s.gamma) << ',' << s.start_city
        << ',' << s.max_city << ',' << format_number(s.p_max) << ','
        << format_number(s.p_hat_max_prime) << ',' << format_number(s.p_hat_max_ir) << "\r\n";
  }
}

std::vector<AblationEntry> run_ablation(const ExperimentConfig& base, const TspInstance& inst,
                                        std::span<const SelectionKind> selections,
                                        const RecordSink& sink) {
  std::vector<AblationEntry> entries;
  for (const SelectionKind kind : selections) {
    ExperimentConfig config = base;
    config.params.selection = kind;
    AblationEntry entry;
    entry.selection = kind;
    entry.result = run_experiment(config, inst, sink);
    std::vector<double> convergence;
    std::vector<double> best;
    std::vector<double> errors;
    for (const auto& s : entry.result.summaries) {
      convergence.push_back(static_cast<double>(s.convergence_iteration));
      best.push_back(s.best_cost);
      if (s.solution_error_percent) errors.push_back(*s.solution_error_percent);
    }
    entry.median_convergence_iteration = median(convergence);
    entry.median_best_cost = median(best);
    if (!errors.empty()) entry.median_solution_error_percent = median(errors);
    entries.push_back(std::move(entry));
  }
  return entries;
}

nlohmann::json ablation_json(const ExperimentConfig& base, std::span<const AblationEntry> entries) {
  nlohmann::json out;
  out["config"] = base;
  out["convergence_definition"] =
      "first iteration whose best-so-far cost is within 0.1% of the run's final best";
  nlohmann::json list = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json item = summary_json(base, e.result);
    item.erase("config");
    item["selection"] = std::string(to_string(e.selection));
    item["median_convergence_iteration"] = e.median_convergence_iteration;
    item["median_best_cost"] = e.median_best_cost;
    item["median_solution_error_percent"] = e.median_solution_error_percent
                                                ? nlohmann::json(*e.median_solution_error_percent)
                                                : nlohmann::json();
    list.push_back(std::move(item));
  }
  out["selections"] = std::move(list);
  return out;
}

}  // namespace aco::bench

namespace aco {
namespace {

SelectionKind parse_selection_name(const std::string& s) {
  const auto kind = selection_kind_from_string(s);
  if (!kind) throw std::invalid_argument("unknown selection mechanism `" + s + "`");
  return *kind;
}

}  // namespace

void to_json(nlohmann::json& j, const AcoParams& p) {
  j = nlohmann::json{
      {"alpha", p.alpha},
      {"beta", p.beta},
      {"rho", p.rho},
      {"ants", p.ants},
      {"elite", p.elite},
      {"initial_pheromone", p.initial_pheromone},
      {"selection", std::string(to_string(p.selection))},
      {"gamma_schedule",
       {{"gamma_max", p.gamma_schedule.gamma_max},
        {"gamma_min", p.gamma_schedule.gamma_min},
        {"period", p.gamma_schedule.period}}},
      {"max_iters", p.max_iters},
      {"seed", p.seed},
  };
}

void from_json(const nlohmann::json& j, AcoParams& p) {
  p.alpha = j.value("alpha", p.alpha);
  p.beta = j.value("beta", p.beta);
  p.rho = j.value("rho", p.rho);
  p.ants = j.value("ants", p.ants);
  p.elite = j.value("elite", p.elite);
  p.initial_pheromone = j.value("initial_pheromone", p.initial_pheromone);
  if (j.contains("selection")) p.selection = parse_selection_name(j.at("selection").get<std::string>());
  if (j.contains("gamma_schedule")) {
    const auto& g = j.at("gamma_schedule");
    p.gamma_schedule.gamma_max = g.value("gamma_max", p.gamma_schedule.gamma_max);
    p.gamma_schedule.gamma_min = g.value("gamma_min", p.gamma_schedule.gamma_min);
    p.gamma_schedule.period = g.value("period", p.gamma_schedule.period);
  }
  p.max_iters = j.value("max_iters", p.max_iters);
  p.seed = j.value("seed", p.seed);
}

}  // namespace aco
