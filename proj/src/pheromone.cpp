#include "aco/pheromone.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

namespace aco {

std::vector<EliteTour> select_elite(const TourBatch& batch, std::size_t k) {
  const std::size_t m = batch.ants();
  k = std::min(k, m);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto by_cost = [&](std::size_t a, std::size_t b) {
    return batch.cost(a) < batch.cost(b) || (batch.cost(a) == batch.cost(b) && a < b);
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    by_cost);

  std::vector<EliteTour> elites;
  elites.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    elites.push_back({batch.tour(order[r]), batch.cost(order[r]), order[r]});
  }
  return elites;
}

EdgeIndexMatrix edge_index_matrix(std::span<const City> tour) {
  const std::size_t n = tour.size();
  if (n < 3 || !is_permutation(tour, n)) {
    throw ModelError(ModelErrorKind::InvalidPermutation,
                     "edge index matrix needs a permutation of at least 3 cities");
  }
  EdgeIndexMatrix index;
  index.rows.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    index.rows.emplace_back(tour[t], tour[(t + n - 1) % n]);
  }
  return index;
}

Matrix increment_matrix(std::span<const City> tour, double cost, std::size_t n) {
  Matrix a(n, 0.0);
  const double deposit = 1.0 / cost;
  for (const auto& [i, j] : edge_index_matrix(tour).rows) {
    a(i, j) = deposit;
    a(j, i) = deposit;
  }
  return a;
}

Matrix accumulate_increments(std::span<const EliteTour> elites, std::size_t n) {
  const std::size_t k = elites.size();
  std::vector<EdgeIndexMatrix> indices(k);
  std::vector<double> deposits(k);
  std::atomic<bool> invalid{false};

#pragma omp parallel for schedule(static)
  for (long l = 0; l < static_cast<long>(k); ++l) {
    const auto& e = elites[static_cast<std::size_t>(l)];
    if (e.tour.size() != n || !is_permutation(e.tour, n)) {
      invalid.store(true);
      continue;
    }
    indices[static_cast<std::size_t>(l)] = edge_index_matrix(e.tour);
    deposits[static_cast<std::size_t>(l)] = 1.0 / e.cost;
  }
  if (invalid.load()) {
    throw ModelError(ModelErrorKind::InvalidPermutation, "elite tour is not a permutation of 0..n-1");
  }

  Matrix delta(n, 0.0);
  for (std::size_t l = 0; l < k; ++l) {
    const double w = deposits[l];
    for (const auto& [i, j] : indices[l].rows) {
      delta(i, j) += w;
      delta(j, i) += w;
    }
  }
  return delta;
}

PheromoneState apply_update(const PheromoneState& tau, const Matrix& delta, double rho) {
  const std::size_t n = tau.tau.size();
  PheromoneState next{Matrix(n, 0.0), tau.iteration + 1};
  const double keep = 1.0 - rho;

#pragma omp parallel for schedule(static)
  for (long li = 0; li < static_cast<long>(n); ++li) {
    const auto i = static_cast<std::size_t>(li);
    const auto old_row = tau.tau.row(i);
    const auto add = delta.row(i);
    auto out = next.tau.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      out[j] = std::max(keep * old_row[j] + add[j], kTauMin);
    }
  }
  return next;
}

}  // namespace aco
