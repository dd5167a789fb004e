#include "aco/colony.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "aco/oracle.hpp"
#include "aco/parallel.hpp"
#include "aco/rng.hpp"

namespace aco {
namespace {

PheromoneState random_pheromone(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 5.0);
  PheromoneState s = PheromoneState::uniform(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) s.tau(i, j) = s.tau(j, i) = u(rng);
  }
  return s;
}

TEST(ProbabilityMatrix, RowsAreDistributionsMatchingReference) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> exponent(0.5, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    const TspInstance inst = random_euclidean_instance(5 + trial * 3, trial);
    const PheromoneState tau = random_pheromone(inst.n, rng);
    AcoParams params = AcoParams::defaults_for(inst.n);
    params.alpha = exponent(rng);
    params.beta = exponent(rng);
    const ProbabilityMatrix p = compute_probability_matrix(tau, inst, params);
    const Matrix ref = oracle::reference_probability_matrix(tau.tau, inst.eta, params.alpha,
                                                            params.beta);
    for (std::size_t i = 0; i < inst.n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < inst.n; ++j) {
        sum += p.p(i, j);
        EXPECT_NEAR(p.p(i, j), ref(i, j), 1e-12 * std::abs(ref(i, j)));
      }
      EXPECT_EQ(p.p(i, i), 0.0);
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
  }
}

TEST(ProbabilityMatrix, ZeroBetaIgnoresDistances) {
  const TspInstance inst = random_euclidean_instance(6, 2);
  AcoParams params = AcoParams::defaults_for(6);
  params.beta = 0.0;
  const ProbabilityMatrix p =
      compute_probability_matrix(PheromoneState::uniform(6, 1.0), inst, params);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_DOUBLE_EQ(p.p(i, j), i == j ? 0.0 : 0.2);
  }
}

TEST(ProbabilityMatrix, UnderflowIsReported) {
  const TspInstance inst = random_euclidean_instance(5, 3);
  AcoParams params = AcoParams::defaults_for(5);
  params.alpha = 400.0;
  EXPECT_THROW(compute_probability_matrix(PheromoneState::uniform(5, 1e-3), inst, params),
               NumericalUnderflow);
}

TEST(ConstructionState, InvariantsHoldAfterEveryRound) {
  const TspInstance inst = random_euclidean_instance(12, 4);
  for (const auto kind : {SelectionKind::RouletteWheel, SelectionKind::IndependentRoulette,
                          SelectionKind::AdaptiveIndependentRoulette}) {
    AcoParams params = AcoParams::defaults_for(inst.n);
    params.selection = kind;
    const auto p = compute_probability_matrix(PheromoneState::uniform(inst.n, 1.0), inst, params);
    std::size_t rounds = 0;
    const auto batch = construct_tours(p, inst, params, SelectionMechanism::from_params(params), 0,
                                       [&](const ConstructionState& s) {
                                         EXPECT_EQ(s.step(), rounds);
                                         EXPECT_TRUE(s.consistent());
                                         for (std::size_t a = 0; a < s.ants(); ++a) {
                                           EXPECT_EQ(s.remaining(a).size(), inst.n - 1 - rounds);
                                         }
                                         ++rounds;
                                       });
    EXPECT_EQ(rounds, inst.n);
    for (std::size_t a = 0; a < batch.ants(); ++a) {
      EXPECT_TRUE(is_permutation(batch.tour(a), inst.n));
      EXPECT_EQ(batch.cost(a), oracle::reference_tour_cost(batch.tour(a), inst.dist));
    }
  }
}

TEST(ConstructionState, MaskedDistributionRenormalizes) {
  const TspInstance inst = random_euclidean_instance(6, 5);
  const AcoParams params = AcoParams::defaults_for(6);
  const auto p = compute_probability_matrix(PheromoneState::uniform(6, 1.0), inst, params);
  const std::vector<City> starts{2};
  ConstructionState s(starts, 6);
  s.move(0, 0);  // remaining of city 2 is {0, 1, 3, 4, 5}; move to 0
  const auto masked = s.masked_distribution(p, 0);
  EXPECT_EQ(masked[0], 0.0);
  EXPECT_EQ(masked[2], 0.0);
  double sum = 0.0;
  for (const double v : masked) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(masked[1] / masked[3], p.p(0, 1) / p.p(0, 3), 1e-12);
}

TEST(ConstructionState, StartsComeFromTheStartSlot) {
  const auto starts = init_starts(30, 17, 9, 4);
  for (std::size_t a = 0; a < starts.size(); ++a) {
    RandomStream s({9, 4, static_cast<std::uint32_t>(a), kStartStep});
    EXPECT_EQ(starts[a], s.below(17));
  }
}

TEST(Construction, SameToursForAnyThreadCount) {
  const TspInstance inst = random_euclidean_instance(40, 6);
  for (const auto kind : {SelectionKind::RouletteWheel, SelectionKind::IndependentRoulette,
                          SelectionKind::AdaptiveIndependentRoulette}) {
    AcoParams params = AcoParams::defaults_for(inst.n);
    params.selection = kind;
    const auto p = compute_probability_matrix(PheromoneState::uniform(inst.n, 1.0), inst, params);
    const auto sel = SelectionMechanism::from_params(params);
    set_thread_count(1);
    const TourBatch one = construct_tours(p, inst, params, sel, 3);
    set_thread_count(4);
    const TourBatch four = construct_tours(p, inst, params, sel, 3);
    set_thread_count(0);
    EXPECT_EQ(one, four);
  }
}

TEST(Construction, IndependentStepEqualsFullArgmax) {
  // The pruned candidate scan must match select_ir over the masked row.
  std::mt19937_64 rng(7);
  const TspInstance inst = random_euclidean_instance(25, 7);
  AcoParams params = AcoParams::defaults_for(inst.n);
  params.selection = SelectionKind::IndependentRoulette;
  const PheromoneState tau = random_pheromone(inst.n, rng);
  const auto p = compute_probability_matrix(tau, inst, params);
  const auto sel = SelectionMechanism::from_params(params);
  const TourBatch batch = construct_tours(p, inst, params, sel, 0);
  for (std::size_t a = 0; a < batch.ants(); ++a) {
    const auto tour = batch.tour(a);
    std::vector<double> row(inst.n);
    std::vector<bool> visited(inst.n, false);
    visited[tour[0]] = true;
    for (std::size_t step = 1; step < inst.n; ++step) {
      for (std::size_t j = 0; j < inst.n; ++j) row[j] = visited[j] ? 0.0 : p.p(tour[step - 1], j);
      RandomStream stream({params.seed, 0, static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(step)});
      ASSERT_EQ(select_ir(row, stream), tour[step]) << "ant " << a << " step " << step;
      visited[tour[step]] = true;
    }
  }
}

TEST(Construction, CandidateOrderIsDescending) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> level(0, 3);
  Matrix w(9, 0.0);
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) w(i, j) = i == j ? 0.0 : level(rng);
  }
  const auto order = candidate_order(w);
  for (std::size_t i = 0; i < 9; ++i) {
    const auto row = order.row(i);
    EXPECT_EQ(row[8], i);
    for (std::size_t k = 1; k + 1 < 9; ++k) {
      const bool ordered =
          w(i, row[k - 1]) > w(i, row[k]) || (w(i, row[k - 1]) == w(i, row[k]) && row[k - 1] < row[k]);
      EXPECT_TRUE(ordered);
    }
  }
}

TEST(Construction, AdaptiveMatrixIsRootOfProbabilities) {
  const TspInstance inst = random_euclidean_instance(7, 9);
  const AcoParams params = AcoParams::defaults_for(7);
  const auto p = compute_probability_matrix(PheromoneState::uniform(7, 1.0), inst, params);
  const Matrix q = adair_selection_matrix(p, GammaValue{1.5});
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(q(i, j), std::pow(p.p(i, j), 1.0 / 1.5));
  }
  EXPECT_EQ(adair_selection_matrix(p, GammaValue{1.0}), p.p);
}

TEST(Construction, AdaptiveMatchesIndependentRouletteOverRootMatrix) {
  const std::size_t n = 100;
  const TspInstance inst = random_euclidean_instance(n, 21);
  AcoParams params = AcoParams::defaults_for(n, 4);
  PheromoneState tau = PheromoneState::uniform(n, 1.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.05, 3.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) tau.tau(i, j) = tau.tau(j, i) = u(rng);
  }
  const auto p = compute_probability_matrix(tau, inst, params);
  const GammaSchedule schedule{4.0, 1.0, 4};
  for (std::uint64_t it = 0; it < 4; ++it) {
    const GammaValue gamma = gamma_at(it, schedule);
    const ProbabilityMatrix root{adair_selection_matrix(p, gamma)};
    EXPECT_EQ(construct_tours(p, inst, params, SelectionMechanism::adaptive(schedule), it),
              construct_tours(root, inst, params, SelectionMechanism::independent_roulette(), it))
        << "gamma " << gamma.value;
  }
}

}  // namespace
}  // namespace aco
