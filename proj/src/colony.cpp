#include "aco/colony.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "aco/rng.hpp"

namespace aco {

ProbabilityMatrix compute_probability_matrix(const PheromoneState& tau, const TspInstance& inst,
                                             const AcoParams& params) {
  const std::size_t n = inst.n;
  ProbabilityMatrix out{Matrix(n, 0.0)};
  std::atomic<long> bad_row{-1};

#pragma omp parallel for schedule(static)
  for (long li = 0; li < static_cast<long>(n); ++li) {
    const auto i = static_cast<std::size_t>(li);
    auto row = out.p.row(i);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      row[j] = std::pow(tau.tau(i, j), params.alpha) * std::pow(inst.eta(i, j), params.beta);
      total += row[j];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
      bad_row.store(li);
      continue;
    }
    for (std::size_t j = 0; j < n; ++j) row[j] /= total;
  }

  if (bad_row.load() >= 0) {
    throw NumericalUnderflow("NumericalUnderflow: row " + std::to_string(bad_row.load()) +
                             " of tau^alpha * eta^beta sums to zero or a non-finite value");
  }
  return out;
}

std::vector<City> init_starts(std::size_t ants, std::size_t n, std::uint64_t seed,
                              std::uint64_t iteration) {
  std::vector<City> starts(ants);
  for (std::size_t a = 0; a < ants; ++a) {
    RandomStream stream({seed, iteration, static_cast<std::uint32_t>(a), kStartStep});
    starts[a] = stream.below(static_cast<std::uint32_t>(n));
  }
  return starts;
}

ConstructionState::ConstructionState(std::span<const City> starts, std::size_t n)
    : n_(n),
      current_(starts.begin(), starts.end()),
      visited_(starts.size() * n, 0),
      remaining_(starts.size() * n),
      remaining_count_(starts.size(), n - 1) {
  for (std::size_t a = 0; a < starts.size(); ++a) {
    visited_[a * n + starts[a]] = 1;
    City* rem = remaining_.data() + a * n;
    std::size_t k = 0;
    for (City c = 0; c < n; ++c) {
      if (c != starts[a]) rem[k++] = c;
    }
  }
}

void ConstructionState::move(std::size_t ant, std::size_t remaining_index) {
  City* rem = remaining_.data() + ant * n_;
  std::size_t& count = remaining_count_[ant];
  const City next = rem[remaining_index];
  std::copy(rem + remaining_index + 1, rem + count, rem + remaining_index);
  --count;
  visited_[ant * n_ + next] = 1;
  current_[ant] = next;
}

std::vector<double> ConstructionState::masked_distribution(const ProbabilityMatrix& p,
                                                           std::size_t ant) const {
  const auto row = p.p.row(current_[ant]);
  std::vector<double> out(n_, 0.0);
  double total = 0.0;
  for (const City c : remaining(ant)) {
    out[c] = row[c];
    total += row[c];
  }
  if (total > 0.0) {
    for (double& v : out) v /= total;
  }
  return out;
}

bool ConstructionState::consistent() const {
  for (std::size_t a = 0; a < ants(); ++a) {
    std::size_t count = 0;
    for (std::size_t c = 0; c < n_; ++c) count += visited_[a * n_ + c];
    if (count != step_ + 1) return false;
    if (!visited(a, current_[a])) return false;
    if (remaining_count_[a] != n_ - count) return false;
    const auto rem = remaining(a);
    for (std::size_t i = 0; i < rem.size(); ++i) {
      if (visited(a, rem[i])) return false;
      if (i > 0 && rem[i - 1] >= rem[i]) return false;
    }
  }
  return true;
}

SquareMatrix<City> candidate_order(const Matrix& weights) {
  const std::size_t n = weights.size();
  SquareMatrix<City> order(n, 0);
#pragma omp parallel for schedule(static)
  for (long li = 0; li < static_cast<long>(n); ++li) {
    const auto i = static_cast<City>(li);
    const auto row = weights.row(i);
    auto out = order.row(i);
    std::size_t k = 0;
    for (City c = 0; c < n; ++c) {
      if (c != i) out[k++] = c;
    }
    // The diagonal slot sorts last and carries weight 0.
    out[n - 1] = i;
    std::sort(out.begin(), out.end() - 1, [&](City a, City b) {
      return row[a] > row[b] || (row[a] == row[b] && a < b);
    });
  }
  return order;
}

Matrix adair_selection_matrix(const ProbabilityMatrix& p, GammaValue gamma) {
  Matrix q = p.p;
  if (gamma.value == 1.0) return q;
  const double exponent = 1.0 / gamma.value;
  auto values = q.values();
#pragma omp parallel for schedule(static)
  for (long i = 0; i < static_cast<long>(values.size()); ++i) {
    values[static_cast<std::size_t>(i)] = std::pow(values[static_cast<std::size_t>(i)], exponent);
  }
  return q;
}

namespace {

// Index into `remaining` picked by inverse-CDF over the prefix sum of
// row[remaining[i]], or remaining.size() when every weight is zero.
std::size_t roulette_step(std::span<const double> row, std::span<const City> remaining,
                          std::uint64_t key) {
  double total = 0.0;
  for (const City c : remaining) total += row[c];
  if (!(total > 0.0)) return remaining.size();
  const double target = to_open_unit(draw_bits(key, 0)) * total;
  double acc = 0.0;
  std::size_t last = remaining.size();
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    const double w = row[remaining[i]];
    if (!(w > 0.0)) continue;
    acc += w;
    last = i;
    if (target < acc) return i;
  }
  return last;
}

// argmax over unvisited cities c of r_c * weight(k, c), where c = order[k]
// and r_c is draw c of the step's stream; the lowest city wins ties.
// Weights are nonincreasing along `order`. Since r_c < 1, no city with
// weight <= best can win, so the scan stops there and draws only for the few
// heaviest candidates. Ties do not depend on scan order.
template <class Weight>
City independent_step(std::span<const City> order, Weight&& weight, const ConstructionState& state,
                      std::size_t ant, std::uint64_t key) {
  double best = 0.0;
  City best_city = static_cast<City>(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const City c = order[k];
    const double w = weight(k, c);
    if (!(w > best)) break;
    if (state.visited(ant, c)) continue;
    const double score = to_open_unit(draw_bits(key, c)) * w;
    if (score > best || (score == best && score > 0.0 && c < best_city)) {
      best = score;
      best_city = c;
    }
  }
  return best_city;
}

// sorted(i, k) = p(i, order(i, k))^exponent, so scans read contiguously.
Matrix sorted_weights(const ProbabilityMatrix& p, const SquareMatrix<City>& order, double exponent) {
  const std::size_t n = p.p.size();
  Matrix sorted(n, 0.0);
#pragma omp parallel for schedule(static)
  for (long li = 0; li < static_cast<long>(n); ++li) {
    const auto i = static_cast<std::size_t>(li);
    const auto row = p.p.row(i);
    const auto ord = order.row(i);
    auto out = sorted.row(i);
    if (exponent == 1.0) {
      for (std::size_t k = 0; k < n; ++k) out[k] = row[ord[k]];
    } else {
      for (std::size_t k = 0; k < n; ++k) out[k] = std::pow(row[ord[k]], exponent);
    }
  }
  return sorted;
}

}  // namespace

TourBatch construct_tours(const ProbabilityMatrix& p, const TspInstance& inst,
                          const AcoParams& params, const SelectionMechanism& selector,
                          std::uint64_t iteration, const StepObserver& observer) {
  const std::size_t n = inst.n;
  const std::size_t m = params.ants;
  const auto starts = init_starts(m, n, params.seed, iteration);
  ConstructionState state(starts, n);

  TourBatch batch(m, n);
  for (std::size_t a = 0; a < m; ++a) batch.tour(a)[0] = starts[a];

  const bool roulette = selector.kind == SelectionKind::RouletteWheel;
  double exponent = 1.0;
  if (selector.kind == SelectionKind::AdaptiveIndependentRoulette) {
    exponent = 1.0 / selector.gamma(iteration).value;
  }

  // x -> x^(1/gamma) is increasing, so the order of p also sorts p^(1/gamma).
  SquareMatrix<City> order;
  if (!roulette) order = candidate_order(p.p);
  Matrix sorted;
  if (!roulette) sorted = sorted_weights(p, order, exponent);

  if (observer) observer(state);
  std::atomic<bool> stuck{false};

#pragma omp parallel
  {
    for (std::size_t step = 1; step < n; ++step) {
#pragma omp for schedule(static)
      for (long la = 0; la < static_cast<long>(m); ++la) {
        const auto a = static_cast<std::size_t>(la);
        const auto remaining = state.remaining(a);
        const auto row = p.p.row(state.current(a));
        const std::uint64_t key = derive_key(
            {params.seed, iteration, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(step)});
        std::size_t pick = 0;
        if (roulette) {
          pick = roulette_step(row, remaining, key);
        } else {
          const auto w = sorted.row(state.current(a));
          const City next = independent_step(
              order.row(state.current(a)), [&](std::size_t k, City) { return w[k]; }, state, a, key);
          pick = static_cast<std::size_t>(
              std::lower_bound(remaining.begin(), remaining.end(), next) - remaining.begin());
        }
        if (pick >= remaining.size()) {
          stuck.store(true, std::memory_order_relaxed);
          continue;
        }
        batch.tour(a)[step] = remaining[pick];
        state.move(a, pick);
      }
#pragma omp single
      {
        state.finish_round();
        if (observer && !stuck.load()) observer(state);
      }
    }
  }

  if (stuck.load()) {
    throw SelectionError("AllZeroWeights: every unvisited city has zero selection probability");
  }
  for (std::size_t a = 0; a < m; ++a) batch.set_cost(a, tour_cost(batch.tour(a), inst));
  return batch;
}

}  // namespace aco
