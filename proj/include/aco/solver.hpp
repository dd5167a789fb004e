#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "aco/colony.hpp"
#include "aco/model.hpp"
#include "aco/pheromone.hpp"
#include "aco/selection.hpp"

namespace aco {

struct StepOutcome {
  TourBatch batch;
  double iteration_best_cost = 0.0;
  std::size_t iteration_best_ant = 0;
  GammaValue gamma;
};

/// Runs the full iteration: construct -> select elites -> accumulate
/// increments -> evaporate and deposit -> recompute the transition matrix.
class AntColony {
 public:
  /// `inst` must outlive the colony.
  AntColony(const TspInstance& inst, AcoParams params);

  const StepOutcome& step();

  std::uint64_t iteration() const noexcept { return pheromone_.iteration; }
  const PheromoneState& pheromone() const noexcept { return pheromone_; }
  const ProbabilityMatrix& probabilities() const noexcept { return probabilities_; }
  const AcoParams& params() const noexcept { return params_; }
  const SelectionMechanism& selector() const noexcept { return selector_; }
  const TspInstance& instance() const noexcept { return *inst_; }

  double best_cost() const noexcept { return best_cost_; }
  const std::vector<City>& best_tour() const noexcept { return best_tour_; }

 private:
  const TspInstance* inst_;
  AcoParams params_;
  SelectionMechanism selector_;
  PheromoneState pheromone_;
  ProbabilityMatrix probabilities_;
  StepOutcome last_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<City> best_tour_;
};

}  // namespace aco
