#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "aco/model.hpp"
#include "aco/selection.hpp"

namespace aco {

class NumericalUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-normalized tau^alpha * eta^beta with a zero diagonal. Each row is
/// summed left to right, so the result is reproducible bit for bit.
ProbabilityMatrix compute_probability_matrix(const PheromoneState& tau, const TspInstance& inst,
                                             const AcoParams& params);

/// Start city of each ant for the given iteration.
std::vector<City> init_starts(std::size_t ants, std::size_t n, std::uint64_t seed,
                              std::uint64_t iteration);

/// Lockstep construction state: after round `step`, every ant has visited
/// step + 1 cities.
class ConstructionState {
 public:
  ConstructionState(std::span<const City> starts, std::size_t n);

  std::size_t ants() const noexcept { return current_.size(); }
  std::size_t cities() const noexcept { return n_; }
  std::size_t step() const noexcept { return step_; }

  City current(std::size_t ant) const noexcept { return current_[ant]; }
  bool visited(std::size_t ant, City c) const noexcept { return visited_[ant * n_ + c] != 0; }
  /// Unvisited cities of `ant`, ascending.
  std::span<const City> remaining(std::size_t ant) const noexcept {
    return {remaining_.data() + ant * n_, remaining_count_[ant]};
  }

  /// Copies p's row for the ant's current city with visited entries zeroed
  /// and the rest renormalized to sum to 1.
  std::vector<double> masked_distribution(const ProbabilityMatrix& p, std::size_t ant) const;

  /// Verifies the visited-count and current-city invariants.
  bool consistent() const;

  /// Moves `ant` to remaining(ant)[remaining_index]. Each ant moves exactly
  /// once per round; different ants may move concurrently.
  void move(std::size_t ant, std::size_t remaining_index);
  void finish_round() noexcept { ++step_; }

 private:
  std::size_t n_;
  std::size_t step_ = 0;
  std::vector<City> current_;
  std::vector<std::uint8_t> visited_;
  std::vector<City> remaining_;
  std::vector<std::size_t> remaining_count_;
};

using StepObserver = std::function<void(const ConstructionState&)>;

/// Builds params.ants tours in n - 1 lockstep rounds. Each ant's choices are
/// driven by its own (seed, iteration, ant, step) substream, so the batch is
/// identical for any thread count. `observer`, when set, sees the state
/// after initialization and after every round.
TourBatch construct_tours(const ProbabilityMatrix& p, const TspInstance& inst,
                          const AcoParams& params, const SelectionMechanism& selector,
                          std::uint64_t iteration, const StepObserver& observer = {});

/// Row i lists the cities j != i by descending weights(i, j), lowest index
/// first among equals, followed by i itself.
SquareMatrix<City> candidate_order(const Matrix& weights);

/// Rows of p raised to 1/gamma. argmax(r^gamma * p) == argmax(r * p^(1/gamma))
/// because x -> x^(1/gamma) is increasing, so AdaIR reduces to IR over this
/// matrix and pays the exponent once per entry instead of once per draw.
Matrix adair_selection_matrix(const ProbabilityMatrix& p, GammaValue gamma);

}  // namespace aco
