#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

#include "aco/model.hpp"
#include "aco/rng.hpp"

namespace aco {

class SelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The AdaIR exponent applied to the uniform deviates.
struct GammaValue {
  double value = 1.0;
  bool operator==(const GammaValue&) const = default;
};

/// Inverse-CDF sampling over the running prefix sum of `weights`.
/// Consumes one draw. Throws SelectionError when no weight is positive.
std::size_t select_rw(std::span<const double> weights, RandomStream& stream);

/// argmax_i r_i * p_i with one fresh deviate per entry (draw i belongs to
/// entry i). Ties go to the lowest index.
std::size_t select_ir(std::span<const double> p, RandomStream& stream);

/// argmax_i r_i^gamma * p_i. With gamma == 1 this is select_ir exactly.
std::size_t select_adair(std::span<const double> p, GammaValue gamma, RandomStream& stream);

/// Same selection evaluated as argmax_i gamma * log r_i + log p_i.
std::size_t select_adair_log(std::span<const double> p, GammaValue gamma, RandomStream& stream);

/// Cosine annealing from gamma_max down to gamma_min, restarting every
/// `period` iterations.
GammaValue gamma_at(std::uint64_t iteration, const GammaSchedule& schedule);

/// Density of Y = X^gamma for X ~ U(0, 1); zero outside (0, 1).
double transformed_deviate_pdf(double y, double gamma) noexcept;
/// P(Y <= y) = y^(1/gamma) on [0, 1].
double transformed_deviate_cdf(double y, double gamma) noexcept;

struct SelectionMechanism {
  SelectionKind kind = SelectionKind::RouletteWheel;
  std::optional<GammaSchedule> schedule;  // AdaIR only

  static SelectionMechanism roulette_wheel() { return {SelectionKind::RouletteWheel, {}}; }
  static SelectionMechanism independent_roulette() {
    return {SelectionKind::IndependentRoulette, {}};
  }
  static SelectionMechanism adaptive(const GammaSchedule& s) {
    return {SelectionKind::AdaptiveIndependentRoulette, s};
  }
  static SelectionMechanism from_params(const AcoParams& params);

  /// 1 for RW and IR.
  GammaValue gamma(std::uint64_t iteration) const;

  std::size_t select(std::span<const double> p, std::uint64_t iteration,
                     RandomStream& stream) const;
};

}  // namespace aco
