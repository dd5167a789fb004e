#pragma once

// Reference implementations for tests, the acceptance suite and the
// sequential side of the scaling study. Everything here is single-threaded
// plain loops and shares no kernels with the batched pipeline.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aco/model.hpp"

namespace aco::oracle {

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kBruteForceMaxCities = 11;

struct BruteForceResult {
  std::vector<City> best_tour;
  double best_cost = 0.0;
  std::uint64_t tours_enumerated = 0;
};

/// Exhaustive search over (n-1)!/2 tours: city 0 fixed first, one direction
/// only. Ties resolve to the lexicographically smallest tour.
BruteForceResult brute_force_tsp(const TspInstance& inst);

/// Closed tour length summed independently of model::tour_cost.
double reference_tour_cost(std::span<const City> tour, const Matrix& dist);

/// Transition matrix by a scalar double loop straight from the definition.
Matrix reference_probability_matrix(const Matrix& tau, const Matrix& eta, double alpha,
                                    double beta);

struct ReferenceElite {
  std::vector<City> tour;
  double cost = 0.0;
};

/// For each elite in order, for each tour edge, add 1 / cost to both
/// orientations.
Matrix sequential_increments(std::span<const ReferenceElite> elites, std::size_t n);

Matrix sequential_evaporate_deposit(const Matrix& tau, const Matrix& delta, double rho,
                                    double tau_min = 1e-12);

struct SequentialStepResult {
  TourBatch batch;
  PheromoneState pheromone;
};

/// One full iteration with nested loops: every ant walks alone, recomputing
/// tau^alpha * eta^beta for its current row at every step, then the best k
/// tours deposit through the edge loop. Consumes the same substreams as the
/// batched pipeline.
SequentialStepResult sequential_aco_step(const PheromoneState& tau, const TspInstance& inst,
                                         const AcoParams& params);

/// Selection frequencies over `trials` independent draws; trial t uses the
/// stream (seed, t, 0, 0).
std::vector<double> empirical_selection_distribution(SelectionKind mechanism,
                                                     std::span<const double> p,
                                                     std::optional<double> gamma,
                                                     std::uint64_t trials, std::uint64_t seed);

std::vector<std::uint64_t> empirical_selection_counts(SelectionKind mechanism,
                                                      std::span<const double> p,
                                                      std::optional<double> gamma,
                                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace aco::oracle
