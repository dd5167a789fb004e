#include "aco/solver.hpp"

#include <utility>

namespace aco {

AntColony::AntColony(const TspInstance& inst, AcoParams params)
    : inst_(&inst),
      params_(std::move(params)),
      selector_(SelectionMechanism::from_params(params_)),
      pheromone_(PheromoneState::uniform(inst.n, params_.initial_pheromone)) {
  params_.validate();
  probabilities_ = compute_probability_matrix(pheromone_, inst, params_);
}

const StepOutcome& AntColony::step() {
  const std::uint64_t it = pheromone_.iteration;
  last_.gamma = selector_.gamma(it);
  last_.batch = construct_tours(probabilities_, *inst_, params_, selector_, it);

  const auto elites = select_elite(last_.batch, params_.elite);
  last_.iteration_best_cost = elites.front().cost;
  last_.iteration_best_ant = elites.front().ant;
  if (last_.iteration_best_cost < best_cost_) {
    best_cost_ = last_.iteration_best_cost;
    best_tour_.assign(elites.front().tour.begin(), elites.front().tour.end());
  }

  const Matrix delta = accumulate_increments(elites, inst_->n);
  pheromone_ = apply_update(pheromone_, delta, params_.rho);
  probabilities_ = compute_probability_matrix(pheromone_, *inst_, params_);
  return last_;
}

}  // namespace aco
