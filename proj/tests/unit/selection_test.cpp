#include "aco/selection.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "aco/oracle.hpp"
#include "aco/rng.hpp"

namespace aco {
namespace {

// P(index 0) for p = [p1, p2], p1 >= p2, under argmax r_i^gamma * p_i:
// r1 > r2 * c with c = (p2 / p1)^(1 / gamma) <= 1 has probability 1 - c / 2.
double two_point_adair(double p1, double p2, double gamma) {
  return 1.0 - std::pow(p2 / p1, 1.0 / gamma) / 2.0;
}

TEST(Rng, OpenUnitInterval) {
  EXPECT_GT(to_open_unit(0), 0.0);
  EXPECT_LT(to_open_unit(0xFFFFFFFFu), 1.0);
  EXPECT_EQ(to_open_unit(0x80000000u), 0.5 + 0.5 * 0x1p-32);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  RandomStream a({1, 2, 3, 4});
  RandomStream b({1, 2, 3, 4});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_bits(), b.next_bits());
  EXPECT_EQ(a.position(), 100u);

  std::set<std::uint64_t> keys;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (std::uint64_t it = 0; it < 4; ++it) {
      for (std::uint32_t ant = 0; ant < 8; ++ant) {
        for (std::uint32_t step : {0u, 1u, 2u, kStartStep}) keys.insert(derive_key({seed, it, ant, step}));
      }
    }
  }
  EXPECT_EQ(keys.size(), 4u * 4u * 8u * 4u);
}

TEST(Rng, CounterDrawMatchesSequentialStream) {
  RandomStream s({9, 0, 1, 2});
  const std::uint64_t key = s.key();
  for (std::uint32_t c = 0; c < 50; ++c) EXPECT_EQ(s.next_bits(), draw_bits(key, c));
}

TEST(Rng, UniformMomentsAndBoundedIntegers) {
  RandomStream s({3, 0, 0, 0});
  double sum = 0.0;
  double sum_sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_uniform();
    sum += u;
    sum_sq += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.005);
  EXPECT_NEAR(sum_sq / n - (sum / n) * (sum / n), 1.0 / 12.0, 0.002);

  std::vector<int> hist(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = s.below(7);
    ASSERT_LT(v, 7u);
    ++hist[v];
  }
  for (const int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Roulette, SingleDrawAndSupport) {
  const std::vector<double> w{0.0, 2.0, 0.0, 1.0};
  for (std::uint64_t t = 0; t < 500; ++t) {
    RandomStream s({t, 0, 0, 0});
    const auto pick = select_rw(w, s);
    EXPECT_TRUE(pick == 1 || pick == 3);
    EXPECT_EQ(s.position(), 1u);
  }
}

TEST(Roulette, UnnormalizedWeightsGiveSameChoiceAsNormalized) {
  const std::vector<double> w{1.0, 3.0, 4.0};
  const std::vector<double> p{0.125, 0.375, 0.5};
  for (std::uint64_t t = 0; t < 1000; ++t) {
    RandomStream a({t, 1, 0, 0});
    RandomStream b({t, 1, 0, 0});
    EXPECT_EQ(select_rw(w, a), select_rw(p, b));
  }
}

TEST(Roulette, AllZeroWeightsThrow) {
  const std::vector<double> w{0.0, 0.0};
  RandomStream s({0, 0, 0, 0});
  EXPECT_THROW(select_rw(w, s), SelectionError);
  EXPECT_THROW(select_ir(w, s), SelectionError);
  EXPECT_THROW(select_adair(w, GammaValue{1.5}, s), SelectionError);
}

TEST(Roulette, FrequenciesTrackProbabilities) {
  const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
  const auto f = oracle::empirical_selection_distribution(SelectionKind::RouletteWheel, p, {},
                                                          200000, 1);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(f[i], p[i], 0.005);
}

TEST(IndependentRoulette, DrawsOncePerEntryAndSkipsZeros) {
  const std::vector<double> p{0.0, 0.5, 0.0, 0.5};
  for (std::uint64_t t = 0; t < 200; ++t) {
    RandomStream s({t, 0, 0, 0});
    const auto pick = select_ir(p, s);
    EXPECT_TRUE(pick == 1 || pick == 3);
    EXPECT_EQ(s.position(), 4u);
  }
}

TEST(IndependentRoulette, TwoPointClosedForm) {
  for (const double p1 : {0.5, 0.75}) {
    const std::vector<double> p{p1, 1.0 - p1};
    const auto f = oracle::empirical_selection_distribution(SelectionKind::IndependentRoulette, p,
                                                            {}, 200000, 2);
    EXPECT_NEAR(f[0], 1.0 - (1.0 - p1) / (2.0 * p1), 0.005);
  }
}

TEST(Adaptive, GammaOneIsIndependentRoulette) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t t = 0; t < 2000; ++t) {
    std::vector<double> p(2 + t % 20);
    for (double& v : p) v = u(rng);
    RandomStream a({t, 0, 0, 0});
    RandomStream b({t, 0, 0, 0});
    EXPECT_EQ(select_adair(p, GammaValue{1.0}, a), select_ir(p, b));
  }
}

TEST(Adaptive, LogDomainGivesSameIndex) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  std::uniform_real_distribution<double> g(0.25, 8.0);
  for (std::uint64_t t = 0; t < 2000; ++t) {
    std::vector<double> p(2 + t % 20);
    for (double& v : p) v = u(rng);
    const GammaValue gamma{g(rng)};
    RandomStream a({t, 0, 0, 0});
    RandomStream b({t, 0, 0, 0});
    EXPECT_EQ(select_adair(p, gamma, a), select_adair_log(p, gamma, b));
  }
}

TEST(Adaptive, TwoPointClosedForm) {
  const std::vector<double> p{0.75, 0.25};
  for (const double gamma : {0.5, 1.0, 1.5, 2.0, 4.0}) {
    const auto f = oracle::empirical_selection_distribution(
        SelectionKind::AdaptiveIndependentRoulette, p, gamma, 200000, 3);
    EXPECT_NEAR(f[0], two_point_adair(0.75, 0.25, gamma), 0.005) << "gamma " << gamma;
  }
}

TEST(Adaptive, TwoPointClosedFormKnownValues) {
  EXPECT_DOUBLE_EQ(two_point_adair(0.75, 0.25, 1.0), 5.0 / 6.0);
  EXPECT_NEAR(two_point_adair(0.75, 0.25, 0.5), 17.0 / 18.0, 1e-15);
  // Larger exponents flatten the choice toward a coin flip.
  EXPECT_LT(two_point_adair(0.75, 0.25, 2.0), two_point_adair(0.75, 0.25, 1.0));
  EXPECT_NEAR(two_point_adair(0.75, 0.25, 1e9), 0.5, 1e-8);
}

TEST(GammaSchedule, CosineAnnealing) {
  const GammaSchedule s{1.5, 1.0, 100};
  EXPECT_EQ(gamma_at(0, s).value, 1.5);
  EXPECT_NEAR(gamma_at(50, s).value, 1.25, 1e-15);
  EXPECT_EQ(gamma_at(100, s).value, 1.5);
  EXPECT_NEAR(gamma_at(99, s).value, 1.0, 1e-3);
  EXPECT_NEAR(gamma_at(25, s).value, 1.0 + 0.25 * (1.0 + std::cos(std::numbers::pi / 4)), 1e-15);
  for (std::uint64_t t = 0; t < 300; ++t) {
    const double g = gamma_at(t, s).value;
    EXPECT_GE(g, 1.0);
    EXPECT_LE(g, 1.5);
    // Nonincreasing within a cycle.
    if (t % 100 != 99) {
      EXPECT_GE(g, gamma_at(t + 1, s).value);
    }
  }
}

TEST(GammaSchedule, MechanismReportsGamma) {
  EXPECT_EQ(SelectionMechanism::roulette_wheel().gamma(7).value, 1.0);
  EXPECT_EQ(SelectionMechanism::independent_roulette().gamma(7).value, 1.0);
  const GammaSchedule s{2.0, 1.0, 10};
  EXPECT_EQ(SelectionMechanism::adaptive(s).gamma(0).value, 2.0);
  AcoParams p = AcoParams::defaults_for(10);
  p.selection = SelectionKind::AdaptiveIndependentRoulette;
  const auto m = SelectionMechanism::from_params(p);
  EXPECT_EQ(m.kind, SelectionKind::AdaptiveIndependentRoulette);
  EXPECT_EQ(m.schedule, p.gamma_schedule);
}

TEST(TransformedDeviate, DensityAndDistribution) {
  EXPECT_EQ(transformed_deviate_pdf(0.3, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(transformed_deviate_pdf(0.25, 2.0), 1.0);
  EXPECT_EQ(transformed_deviate_pdf(0.0, 2.0), 0.0);
  EXPECT_EQ(transformed_deviate_pdf(1.2, 2.0), 0.0);
  EXPECT_DOUBLE_EQ(transformed_deviate_cdf(0.25, 2.0), 0.5);
  EXPECT_EQ(transformed_deviate_cdf(-1.0, 2.0), 0.0);
  EXPECT_EQ(transformed_deviate_cdf(2.0, 2.0), 1.0);
  // The density integrates to the distribution function.
  for (const double gamma : {0.5, 1.5, 3.0}) {
    const int steps = 200000;
    double integral = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double y = 0.1 + 0.8 * (i + 0.5) / steps;
      integral += transformed_deviate_pdf(y, gamma) * 0.8 / steps;
    }
    EXPECT_NEAR(integral, transformed_deviate_cdf(0.9, gamma) - transformed_deviate_cdf(0.1, gamma),
                1e-8);
  }
}

}  // namespace
}  // namespace aco
