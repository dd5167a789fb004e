#include "aco/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "aco/rng.hpp"
#include "aco/selection.hpp"

namespace aco::oracle {

double reference_tour_cost(std::span<const City> tour, const Matrix& dist) {
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < tour.size(); ++t) total += dist(tour[t], tour[t + 1]);
  total += dist(tour[tour.size() - 1], tour[0]);
  return total;
}

BruteForceResult brute_force_tsp(const TspInstance& inst) {
  const std::size_t n = inst.n;
  if (n > kBruteForceMaxCities) {
    throw InstanceTooLarge("brute force is capped at " + std::to_string(kBruteForceMaxCities) +
                           " cities, got " + std::to_string(n));
  }
  std::vector<City> rest(n - 1);
  std::iota(rest.begin(), rest.end(), City{1});

  BruteForceResult result;
  result.best_cost = std::numeric_limits<double>::infinity();
  std::vector<City> tour(n);
  tour[0] = 0;
  do {
    // Each cycle appears once per direction; keep the one with the smaller
    // second city, which is also the lexicographically smaller one.
    if (rest.front() > rest.back()) continue;
    std::copy(rest.begin(), rest.end(), tour.begin() + 1);
    ++result.tours_enumerated;
    const double cost = reference_tour_cost(tour, inst.dist);
    if (cost < result.best_cost) {
      result.best_cost = cost;
      result.best_tour = tour;
    }
  } while (std::next_permutation(rest.begin(), rest.end()));
  return result;
}

Matrix reference_probability_matrix(const Matrix& tau, const Matrix& eta, double alpha,
                                    double beta) {
  const std::size_t n = tau.size();
  Matrix p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double denominator = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) denominator += std::pow(tau(i, j), alpha) * std::pow(eta(i, j), beta);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) p(i, j) = std::pow(tau(i, j), alpha) * std::pow(eta(i, j), beta) / denominator;
    }
  }
  return p;
}

Matrix sequential_increments(std::span<const ReferenceElite> elites, std::size_t n) {
  Matrix delta(n, 0.0);
  for (const auto& elite : elites) {
    const double deposit = 1.0 / elite.cost;
    for (std::size_t t = 0; t < elite.tour.size(); ++t) {
      const City from = elite.tour[t];
      const City to = elite.tour[(t + 1) % elite.tour.size()];
      delta(from, to) += deposit;
      delta(to, from) += deposit;
    }
  }
  return delta;
}

Matrix sequential_evaporate_deposit(const Matrix& tau, const Matrix& delta, double rho,
                                    double tau_min) {
  const std::size_t n = tau.size();
  Matrix out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double v = (1.0 - rho) * tau(i, j) + delta(i, j);
      out(i, j) = v < tau_min ? tau_min : v;
    }
  }
  return out;
}

SequentialStepResult sequential_aco_step(const PheromoneState& tau, const TspInstance& inst,
                                         const AcoParams& params) {
  const std::size_t n = inst.n;
  const std::size_t m = params.ants;
  const std::uint64_t iteration = tau.iteration;
  const double gamma = params.selection == SelectionKind::AdaptiveIndependentRoulette
                           ? gamma_at(iteration, params.gamma_schedule).value
                           : 1.0;

  SequentialStepResult result{TourBatch(m, n), {}};
  std::vector<double> weights(n);
  std::vector<double> candidates(n);
  std::vector<bool> visited(n);

  for (std::size_t ant = 0; ant < m; ++ant) {
    const auto ant_id = static_cast<std::uint32_t>(ant);
    auto tour = result.batch.tour(ant);
    std::fill(visited.begin(), visited.end(), false);

    RandomStream start_stream({params.seed, iteration, ant_id, kStartStep});
    City current = start_stream.below(static_cast<std::uint32_t>(n));
    tour[0] = current;
    visited[current] = true;

    for (std::size_t step = 1; step < n; ++step) {
      double row_total = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        weights[j] = 0.0;
        if (j == current) continue;
        weights[j] = std::pow(tau.tau(current, j), params.alpha) *
                     std::pow(inst.eta(current, j), params.beta);
        row_total += weights[j];
      }
      for (std::size_t j = 0; j < n; ++j) {
        candidates[j] = visited[j] ? 0.0 : weights[j] / row_total;
      }

      RandomStream stream({params.seed, iteration, ant_id, static_cast<std::uint32_t>(step)});
      std::size_t next = 0;
      switch (params.selection) {
        case SelectionKind::RouletteWheel: next = select_rw(candidates, stream); break;
        case SelectionKind::IndependentRoulette: next = select_ir(candidates, stream); break;
        case SelectionKind::AdaptiveIndependentRoulette:
          next = select_adair(candidates, GammaValue{gamma}, stream);
          break;
      }
      current = static_cast<City>(next);
      tour[step] = current;
      visited[current] = true;
    }
    result.batch.set_cost(ant, reference_tour_cost(tour, inst.dist));
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.batch.cost(a) < result.batch.cost(b);
  });
  std::vector<ReferenceElite> elites;
  for (std::size_t r = 0; r < std::min(params.elite, m); ++r) {
    const auto t = result.batch.tour(order[r]);
    elites.push_back({std::vector<City>(t.begin(), t.end()), result.batch.cost(order[r])});
  }

  const Matrix delta = sequential_increments(elites, n);
  result.pheromone.tau = sequential_evaporate_deposit(tau.tau, delta, params.rho);
  result.pheromone.iteration = iteration + 1;
  return result;
}

std::vector<std::uint64_t> empirical_selection_counts(SelectionKind mechanism,
                                                      std::span<const double> p,
                                                      std::optional<double> gamma,
                                                      std::uint64_t trials, std::uint64_t seed) {
  std::vector<std::uint64_t> counts(p.size(), 0);
  const GammaValue g{gamma.value_or(1.0)};
  for (std::uint64_t t = 0; t < trials; ++t) {
    RandomStream stream({seed, t, 0, 0});
    std::size_t pick = 0;
    switch (mechanism) {
      case SelectionKind::RouletteWheel: pick = select_rw(p, stream); break;
      case SelectionKind::IndependentRoulette: pick = select_ir(p, stream); break;
      case SelectionKind::AdaptiveIndependentRoulette: pick = select_adair(p, g, stream); break;
    }
    ++counts[pick];
  }
  return counts;
}

std::vector<double> empirical_selection_distribution(SelectionKind mechanism,
                                                     std::span<const double> p,
                                                     std::optional<double> gamma,
                                                     std::uint64_t trials, std::uint64_t seed) {
  const auto counts = empirical_selection_counts(mechanism, p, gamma, trials, seed);
  std::vector<double> freq(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    freq[i] = static_cast<double>(counts[i]) / static_cast<double>(trials);
  }
  return freq;
}

}  // namespace aco::oracle
