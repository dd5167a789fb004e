#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aco/matrix.hpp"
#include "aco/tsplib.hpp"

namespace aco {

using City = std::uint32_t;

enum class ModelErrorKind { DegenerateInstance, InvalidPermutation, InvalidParams, InvalidInstance };

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorKind kind, const std::string& detail)
      : std::runtime_error(detail), kind_(kind) {}
  ModelErrorKind kind() const noexcept { return kind_; }

 private:
  ModelErrorKind kind_;
};

struct TspInstance {
  std::string name;
  std::size_t n = 0;
  Matrix dist;
  Matrix eta;  // 1 / dist off the diagonal, 0 on it
  std::optional<double> best_known;
  std::vector<tsplib::Point> coords;  // empty for instances built from a matrix
};

struct BuildOptions {
  /// Clamp zero distances to kMinDistance before taking the reciprocal
  /// instead of rejecting the instance.
  bool lenient = false;
};

inline constexpr double kMinDistance = 1e-10;

TspInstance build_instance(const tsplib::RawTspFile& raw, BuildOptions options = {});

TspInstance instance_from_points(std::string name, std::span<const tsplib::Point> points,
                                 tsplib::EdgeWeightType type, BuildOptions options = {});

/// Wraps a symmetric, zero-diagonal distance matrix directly.
TspInstance instance_from_distances(std::string name, Matrix dist, BuildOptions options = {});

/// Uniform random integer coordinates in [0, extent]^2 without duplicates,
/// EUC_2D metric.
TspInstance random_euclidean_instance(std::size_t n, std::uint64_t seed, double extent = 1000.0);

bool is_permutation(std::span<const City> tour, std::size_t n) noexcept;

/// Closed tour length: consecutive edges in order, then the closing edge.
double tour_cost(std::span<const City> tour, const TspInstance& inst);

enum class SelectionKind { RouletteWheel, IndependentRoulette, AdaptiveIndependentRoulette };

std::string_view to_string(SelectionKind kind) noexcept;
std::optional<SelectionKind> selection_kind_from_string(std::string_view s) noexcept;

struct GammaSchedule {
  double gamma_max = 1.5;
  double gamma_min = 1.0;
  std::uint64_t period = 1000;  // iterations per cosine cycle

  void validate() const;
  bool operator==(const GammaSchedule&) const = default;
};

struct AcoParams {
  double alpha = 1.0;
  double beta = 2.0;
  double rho = 0.1;
  std::size_t ants = 0;   // m
  std::size_t elite = 0;  // k
  double initial_pheromone = 1.0;
  SelectionKind selection = SelectionKind::RouletteWheel;
  GammaSchedule gamma_schedule;
  std::uint64_t max_iters = 1000;
  std::uint64_t seed = 0;

  /// m = n, k = max(1, n / 10), gamma period = max_iters.
  static AcoParams defaults_for(std::size_t n, std::uint64_t max_iters = 1000);

  void validate() const;
  bool operator==(const AcoParams&) const = default;
};

struct PheromoneState {
  Matrix tau;
  std::uint64_t iteration = 0;

  /// `level` everywhere off the diagonal, 0 on it.
  static PheromoneState uniform(std::size_t n, double level);
};

struct ProbabilityMatrix {
  Matrix p;
};

/// m tours of n cities, stored flat (ant-major).
class TourBatch {
 public:
  TourBatch() = default;
  TourBatch(std::size_t ants, std::size_t n) : n_(n), tours_(ants * n), costs_(ants, 0.0) {}

  std::size_t ants() const noexcept { return costs_.size(); }
  std::size_t cities() const noexcept { return n_; }

  std::span<City> tour(std::size_t ant) noexcept { return {tours_.data() + ant * n_, n_}; }
  std::span<const City> tour(std::size_t ant) const noexcept {
    return {tours_.data() + ant * n_, n_};
  }

  double cost(std::size_t ant) const noexcept { return costs_[ant]; }
  void set_cost(std::size_t ant, double c) noexcept { costs_[ant] = c; }
  std::span<const double> costs() const noexcept { return costs_; }

  bool operator==(const TourBatch&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<City> tours_;
  std::vector<double> costs_;
};

}  // namespace aco
