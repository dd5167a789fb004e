#include "aco/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "aco/oracle.hpp"
#include "aco/tsplib.hpp"
#include "support.hpp"

namespace aco {
namespace {

ModelErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const ModelError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a ModelError";
  return ModelErrorKind::InvalidInstance;
}

TEST(Instance, DistanceAndHeuristicMatrices) {
  const std::vector<tsplib::Point> pts{{0, 0}, {3, 0}, {3, 4}};
  const TspInstance inst = instance_from_points("tri", pts, tsplib::EdgeWeightType::Euc2d);
  EXPECT_EQ(inst.n, 3u);
  EXPECT_EQ(inst.dist(0, 1), 3.0);
  EXPECT_EQ(inst.dist(1, 2), 4.0);
  EXPECT_EQ(inst.dist(0, 2), 5.0);
  EXPECT_EQ(inst.eta(0, 2), 0.2);
  EXPECT_EQ(inst.eta(1, 1), 0.0);
  EXPECT_FALSE(inst.best_known.has_value());
}

TEST(Instance, TriangleTourCostIsTwelveInAnyOrder) {
  const std::vector<tsplib::Point> pts{{0, 0}, {3, 0}, {3, 4}};
  const TspInstance inst = instance_from_points("tri", pts, tsplib::EdgeWeightType::Euc2d);
  std::vector<City> tour{0, 1, 2};
  do {
    EXPECT_EQ(tour_cost(tour, inst), 12.0);
  } while (std::next_permutation(tour.begin(), tour.end()));
}

TEST(Instance, DuplicateCoordinatesAreDegenerate) {
  const std::vector<tsplib::Point> pts{{0, 0}, {1, 0}, {0, 0}};
  EXPECT_EQ(kind_of([&] { instance_from_points("d", pts, tsplib::EdgeWeightType::Euc2d); }),
            ModelErrorKind::DegenerateInstance);
  const TspInstance lenient =
      instance_from_points("d", pts, tsplib::EdgeWeightType::Euc2d, {.lenient = true});
  EXPECT_EQ(lenient.eta(0, 2), 1.0 / kMinDistance);
}

TEST(Instance, TooFewCities) {
  const std::vector<tsplib::Point> pts{{0, 0}, {1, 0}};
  EXPECT_EQ(kind_of([&] { instance_from_points("two", pts, tsplib::EdgeWeightType::Euc2d); }),
            ModelErrorKind::InvalidInstance);
}

TEST(Instance, FromDistancesValidatesSymmetry) {
  Matrix d(3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) d(i, i) = 0.0;
  EXPECT_NO_THROW(instance_from_distances("ok", d));
  d(0, 1) = 2.0;
  EXPECT_EQ(kind_of([&] { instance_from_distances("asym", d); }), ModelErrorKind::InvalidInstance);
}

TEST(Instance, BundledInstanceGetsRegistryOptimum) {
  const TspInstance inst =
      build_instance(tsplib::load_instance(testing::data_path("tsplib/berlin52.tsp")));
  EXPECT_EQ(inst.n, 52u);
  EXPECT_EQ(inst.best_known, 7542.0);
}

TEST(Instance, RandomEuclideanIsDeterministicAndValid) {
  const TspInstance a = random_euclidean_instance(40, 3);
  const TspInstance b = random_euclidean_instance(40, 3);
  EXPECT_EQ(a.dist, b.dist);
  EXPECT_NE(a.dist, random_euclidean_instance(40, 4).dist);
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) {
      EXPECT_EQ(a.dist(i, j), a.dist(j, i));
      if (i != j) {
        EXPECT_GT(a.dist(i, j), 0.0);
      }
    }
  }
}

TEST(Tour, PermutationCheck) {
  const std::vector<City> ok{2, 0, 1};
  const std::vector<City> repeat{0, 0, 1};
  const std::vector<City> out_of_range{0, 1, 3};
  EXPECT_TRUE(is_permutation(ok, 3));
  EXPECT_FALSE(is_permutation(repeat, 3));
  EXPECT_FALSE(is_permutation(out_of_range, 3));
  EXPECT_FALSE(is_permutation(ok, 4));
}

TEST(Tour, CostRejectsInvalidTour) {
  const TspInstance inst = random_euclidean_instance(5, 1);
  const std::vector<City> bad{0, 1, 1, 2, 3};
  EXPECT_EQ(kind_of([&] { tour_cost(bad, inst); }), ModelErrorKind::InvalidPermutation);
}

TEST(Tour, CostIsInvariantUnderRotationAndReversal) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const TspInstance inst = random_euclidean_instance(3 + trial % 30, trial);
    std::vector<City> tour(inst.n);
    std::iota(tour.begin(), tour.end(), City{0});
    std::shuffle(tour.begin(), tour.end(), rng);
    const double cost = tour_cost(tour, inst);
    EXPECT_EQ(cost, oracle::reference_tour_cost(tour, inst.dist));
    std::rotate(tour.begin(), tour.begin() + 1, tour.end());
    EXPECT_EQ(tour_cost(tour, inst), cost);
    std::reverse(tour.begin(), tour.end());
    EXPECT_EQ(tour_cost(tour, inst), cost);
  }
}

TEST(Params, DefaultsFollowColonySize) {
  const AcoParams p = AcoParams::defaults_for(442);
  EXPECT_EQ(p.ants, 442u);
  EXPECT_EQ(p.elite, 44u);
  EXPECT_EQ(p.rho, 0.1);
  EXPECT_EQ(p.gamma_schedule.period, 1000u);
  EXPECT_EQ(AcoParams::defaults_for(5).elite, 1u);
  EXPECT_NO_THROW(p.validate());
}

TEST(Params, ValidationRejectsOutOfRange) {
  const AcoParams base = AcoParams::defaults_for(20);
  auto with = [&](auto mutate) {
    AcoParams p = base;
    mutate(p);
    return kind_of([&] { p.validate(); });
  };
  EXPECT_EQ(with([](AcoParams& p) { p.alpha = 0; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) { p.beta = -1; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) { p.rho = 1.0; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) { p.elite = 0; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) { p.elite = p.ants + 1; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) { p.initial_pheromone = 0; }), ModelErrorKind::InvalidParams);
  EXPECT_EQ(with([](AcoParams& p) {
              p.selection = SelectionKind::AdaptiveIndependentRoulette;
              p.gamma_schedule.gamma_min = 2.0;
            }),
            ModelErrorKind::InvalidParams);
}

TEST(Params, SelectionNames) {
  for (const auto kind : {SelectionKind::RouletteWheel, SelectionKind::IndependentRoulette,
                          SelectionKind::AdaptiveIndependentRoulette}) {
    EXPECT_EQ(selection_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_FALSE(selection_kind_from_string("greedy").has_value());
}

TEST(Pheromone, UniformHasZeroDiagonal) {
  const PheromoneState s = PheromoneState::uniform(4, 0.5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(s.tau(i, j), i == j ? 0.0 : 0.5);
  }
  EXPECT_EQ(s.iteration, 0u);
}

}  // namespace
}  // namespace aco
