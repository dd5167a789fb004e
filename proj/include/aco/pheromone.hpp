#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "aco/model.hpp"

namespace aco {

/// Numerical floor for pheromone entries; keeps every row of the
/// transition matrix strictly positive.
inline constexpr double kTauMin = 1e-12;

/// One of the k best tours of an iteration. `tour` views into the batch.
struct EliteTour {
  std::span<const City> tour;
  double cost = 0.0;
  std::size_t ant = 0;
};

/// The k lowest-cost tours, ascending by cost, ties broken by ant index.
std::vector<EliteTour> select_elite(const TourBatch& batch, std::size_t k);

/// Row t pairs tour[t] with its cyclic predecessor tour[t - 1].
struct EdgeIndexMatrix {
  std::vector<std::pair<City, City>> rows;
};

EdgeIndexMatrix edge_index_matrix(std::span<const City> tour);

/// Dense symmetric deposit of 1 / cost on every edge of `tour`.
Matrix increment_matrix(std::span<const City> tour, double cost, std::size_t n);

/// Sum of the elites' increment matrices. Index matrices are built in
/// parallel; the scatter runs in elite rank order, so every entry is
/// accumulated in the same order for any thread count.
Matrix accumulate_increments(std::span<const EliteTour> elites, std::size_t n);

/// tau' = (1 - rho) * tau + delta off the diagonal, floored at kTauMin.
PheromoneState apply_update(const PheromoneState& tau, const Matrix& delta, double rho);

}  // namespace aco
