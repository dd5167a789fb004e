#include "aco/selection.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace aco {
namespace {

[[noreturn]] void throw_all_zero() {
  throw SelectionError("AllZeroWeights: no entry has positive weight");
}

}  // namespace

std::size_t select_rw(std::span<const double> weights, RandomStream& stream) {
  double total = 0.0;
  for (const double w : weights) total += w;
  if (!(total > 0.0)) throw_all_zero();

  const double target = stream.next_uniform() * total;
  double acc = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) continue;
    acc += weights[i];
    last = i;
    if (target < acc) return i;
  }
  return last;  // target rounded onto the final boundary
}

std::size_t select_ir(std::span<const double> p, RandomStream& stream) {
  double best = 0.0;
  std::size_t best_index = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double score = stream.next_uniform() * p[i];
    if (score > best) {
      best = score;
      best_index = i;
    }
  }
  if (best_index == p.size()) throw_all_zero();
  return best_index;
}

std::size_t select_adair(std::span<const double> p, GammaValue gamma, RandomStream& stream) {
  double best = 0.0;
  std::size_t best_index = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = stream.next_uniform();
    const double score = (gamma.value == 1.0 ? r : std::pow(r, gamma.value)) * p[i];
    if (score > best) {
      best = score;
      best_index = i;
    }
  }
  if (best_index == p.size()) throw_all_zero();
  return best_index;
}

std::size_t select_adair_log(std::span<const double> p, GammaValue gamma, RandomStream& stream) {
  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_index = p.size();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double r = stream.next_uniform();
    if (!(p[i] > 0.0)) continue;
    const double score = gamma.value * std::log(r) + std::log(p[i]);
    if (score > best) {
      best = score;
      best_index = i;
    }
  }
  if (best_index == p.size()) throw_all_zero();
  return best_index;
}

GammaValue gamma_at(std::uint64_t iteration, const GammaSchedule& schedule) {
  const double phase = static_cast<double>(iteration % schedule.period) /
                       static_cast<double>(schedule.period);
  const double half_range = 0.5 * (schedule.gamma_max - schedule.gamma_min);
  return {schedule.gamma_min + half_range * (1.0 + std::cos(std::numbers::pi * phase))};
}

double transformed_deviate_pdf(double y, double gamma) noexcept {
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  return std::pow(y, (1.0 - gamma) / gamma) / gamma;
}

double transformed_deviate_cdf(double y, double gamma) noexcept {
  if (y <= 0.0) return 0.0;
  if (y >= 1.0) return 1.0;
  return std::pow(y, 1.0 / gamma);
}

SelectionMechanism SelectionMechanism::from_params(const AcoParams& params) {
  switch (params.selection) {
    case SelectionKind::RouletteWheel: return roulette_wheel();
    case SelectionKind::IndependentRoulette: return independent_roulette();
    case SelectionKind::AdaptiveIndependentRoulette: return adaptive(params.gamma_schedule);
  }
  return roulette_wheel();
}

GammaValue SelectionMechanism::gamma(std::uint64_t iteration) const {
  if (kind != SelectionKind::AdaptiveIndependentRoulette || !schedule) return {1.0};
  return gamma_at(iteration, *schedule);
}

std::size_t SelectionMechanism::select(std::span<const double> p, std::uint64_t iteration,
                                       RandomStream& stream) const {
  switch (kind) {
    case SelectionKind::RouletteWheel: return select_rw(p, stream);
    case SelectionKind::IndependentRoulette: return select_ir(p, stream);
    case SelectionKind::AdaptiveIndependentRoulette:
      return select_adair(p, gamma(iteration), stream);
  }
  return select_rw(p, stream);
}

}  // namespace aco
