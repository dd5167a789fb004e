#include "aco/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

namespace aco {
namespace {

void fill_heuristic(TspInstance& inst, BuildOptions options) {
  const std::size_t n = inst.n;
  inst.eta = Matrix(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      double d = inst.dist(i, j);
      if (d <= 0.0) {
        if (!options.lenient) {
          throw ModelError(ModelErrorKind::DegenerateInstance,
                           "cities " + std::to_string(i) + " and " + std::to_string(j) +
                               " are at distance 0 (duplicate coordinates)");
        }
        d = kMinDistance;
      }
      inst.eta(i, j) = 1.0 / d;
    }
  }
}

}  // namespace

TspInstance instance_from_points(std::string name, std::span<const tsplib::Point> points,
                                 tsplib::EdgeWeightType type, BuildOptions options) {
  if (points.size() < 3) {
    throw ModelError(ModelErrorKind::InvalidInstance, "an instance needs at least 3 cities");
  }
  TspInstance inst;
  inst.name = std::move(name);
  inst.n = points.size();
  inst.coords.assign(points.begin(), points.end());
  inst.dist = Matrix(inst.n, 0.0);
  for (std::size_t i = 0; i < inst.n; ++i) {
    for (std::size_t j = i + 1; j < inst.n; ++j) {
      const auto d = static_cast<double>(tsplib::distance(points[i], points[j], type));
      inst.dist(i, j) = d;
      inst.dist(j, i) = d;
    }
  }
  inst.best_known = tsplib::best_known_length(inst.name);
  fill_heuristic(inst, options);
  return inst;
}

TspInstance build_instance(const tsplib::RawTspFile& raw, BuildOptions options) {
  std::vector<tsplib::Point> points;
  points.reserve(raw.node_coords.size());
  for (const auto& c : raw.node_coords) points.push_back({c.x, c.y});
  return instance_from_points(raw.name, points, raw.edge_weight_type, options);
}

TspInstance instance_from_distances(std::string name, Matrix dist, BuildOptions options) {
  const std::size_t n = dist.size();
  if (n < 3) throw ModelError(ModelErrorKind::InvalidInstance, "an instance needs at least 3 cities");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist(i, i) != 0.0) {
      throw ModelError(ModelErrorKind::InvalidInstance, "distance matrix diagonal must be 0");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (dist(i, j) != dist(j, i) || dist(i, j) < 0.0 || !std::isfinite(dist(i, j))) {
        throw ModelError(ModelErrorKind::InvalidInstance,
                         "distance matrix must be symmetric, finite and non-negative");
      }
    }
  }
  TspInstance inst;
  inst.name = std::move(name);
  inst.n = n;
  inst.dist = std::move(dist);
  fill_heuristic(inst, options);
  return inst;
}

TspInstance random_euclidean_instance(std::size_t n, std::uint64_t seed, double extent) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<long> coord(0, static_cast<long>(extent));
  std::set<std::pair<long, long>> used;
  std::vector<tsplib::Point> points;
  points.reserve(n);
  while (points.size() < n) {
    const long x = coord(gen);
    const long y = coord(gen);
    if (!used.emplace(x, y).second) continue;
    points.push_back({static_cast<double>(x), static_cast<double>(y)});
  }
  auto inst = instance_from_points("rand" + std::to_string(n) + "-" + std::to_string(seed), points,
                                   tsplib::EdgeWeightType::Euc2d, {});
  return inst;
}

bool is_permutation(std::span<const City> tour, std::size_t n) noexcept {
  if (tour.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const City c : tour) {
    if (c >= n || seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

double tour_cost(std::span<const City> tour, const TspInstance& inst) {
  if (!is_permutation(tour, inst.n)) {
    throw ModelError(ModelErrorKind::InvalidPermutation, "tour is not a permutation of 0..n-1");
  }
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < tour.size(); ++t) total += inst.dist(tour[t], tour[t + 1]);
  total += inst.dist(tour.back(), tour.front());
  return total;
}

std::string_view to_string(SelectionKind kind) noexcept {
  switch (kind) {
    case SelectionKind::RouletteWheel: return "rw";
    case SelectionKind::IndependentRoulette: return "ir";
    case SelectionKind::AdaptiveIndependentRoulette: return "adair";
  }
  return "unknown";
}

std::optional<SelectionKind> selection_kind_from_string(std::string_view s) noexcept {
  if (s == "rw" || s == "RW") return SelectionKind::RouletteWheel;
  if (s == "ir" || s == "IR") return SelectionKind::IndependentRoulette;
  if (s == "adair" || s == "AdaIR") return SelectionKind::AdaptiveIndependentRoulette;
  return std::nullopt;
}

void GammaSchedule::validate() const {
  if (!(gamma_min > 0.0) || !(gamma_max >= gamma_min) || !std::isfinite(gamma_max)) {
    throw ModelError(ModelErrorKind::InvalidParams,
                     "gamma schedule needs 0 < gamma_min <= gamma_max");
  }
  if (period == 0) throw ModelError(ModelErrorKind::InvalidParams, "gamma period must be positive");
}

AcoParams AcoParams::defaults_for(std::size_t n, std::uint64_t max_iters) {
  AcoParams p;
  p.ants = n;
  p.elite = std::max<std::size_t>(1, n / 10);
  p.max_iters = max_iters;
  p.gamma_schedule.period = max_iters;
  return p;
}

void AcoParams::validate() const {
  const auto fail = [](const std::string& what) {
    throw ModelError(ModelErrorKind::InvalidParams, what);
  };
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) fail("beta must be >= 0");
  if (!(rho >= 0.0 && rho < 1.0)) fail("rho must lie in [0, 1)");
  if (ants < 1) fail("ant count must be >= 1");
  if (elite < 1 || elite > ants) fail("elite count must satisfy 1 <= k <= m");
  if (!(initial_pheromone > 0.0) || !std::isfinite(initial_pheromone)) {
    fail("initial pheromone must be > 0");
  }
  if (max_iters < 1) fail("max_iters must be positive");
  if (selection == SelectionKind::AdaptiveIndependentRoulette) gamma_schedule.validate();
}

PheromoneState PheromoneState::uniform(std::size_t n, double level) {
  PheromoneState s{Matrix(n, level), 0};
  for (std::size_t i = 0; i < n; ++i) s.tau(i, i) = 0.0;
  return s;
}

}  // namespace aco
