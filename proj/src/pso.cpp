#include "retarget/pso.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "retarget/error.hpp"

namespace retarget {

namespace {

// 53-bit uniform in [0, 1), independent of the standard library's
// distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void evaluate_all(const FitnessFunction& fitness, const std::vector<Particle>& swarm,
                  std::vector<double>& out, int threads) {
  const std::size_t n = swarm.size();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fitness(swarm[i].position);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += workers) out[i] = fitness(swarm[i].position);
    });
  }
}

}  // namespace

void PsoConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (swarm_size < 2) fail("swarm_size must be >= 2");
  if (max_iters < 1) fail("max_iters must be >= 1");
  if (!(inertia >= 0.0 && inertia <= 1.0)) fail("inertia must lie in [0, 1]");
  if (!(cognitive >= 0.0) || !(social >= 0.0)) fail("acceleration coefficients must be >= 0");
  if (stall_iters < 1) fail("stall_iters must be >= 1");
  if (!(stall_tol >= 0.0)) fail("stall_tol must be >= 0");
  if (threads < 1) fail("threads must be >= 1");
}

void SearchBounds::validate() const {
  if (lower.empty() || lower.size() != upper.size()) {
    throw Error(ErrorCode::InvalidBounds, "bounds need matching, non-empty lower/upper vectors");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw Error(ErrorCode::InvalidBounds, "invalid interval in dimension " + std::to_string(i));
    }
  }
}

PsoResult pso_maximize(const FitnessFunction& fitness, const SearchBounds& bounds,
                       const PsoConfig& config) {
  bounds.validate();
  config.validate();
  const std::size_t dim = bounds.dimension();
  const std::size_t n = static_cast<std::size_t>(config.swarm_size);
  std::mt19937_64 rng(config.seed);

  std::vector<Particle> swarm(n);
  for (auto& p : swarm) {
    p.position.resize(dim);
    p.velocity.assign(dim, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
      const double u = uniform01(rng);
      p.position[d] = std::clamp(bounds.lower[d] + u * (bounds.upper[d] - bounds.lower[d]),
                                 bounds.lower[d], bounds.upper[d]);
    }
  }

  std::vector<double> values(n);
  evaluate_all(fitness, swarm, values, config.threads);
  std::size_t leader = 0;
  for (std::size_t i = 0; i < n; ++i) {
    swarm[i].best_position = swarm[i].position;
    swarm[i].best_fitness = values[i];
    if (values[i] > values[leader]) leader = i;
  }
  std::vector<double> global_best = swarm[leader].best_position;
  double global_fitness = swarm[leader].best_fitness;

  PsoResult result;
  result.trace.push_back({0, global_fitness, global_best});

  int stalled = 0;
  for (int it = 1; it <= config.max_iters; ++it) {
    for (auto& p : swarm) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        double v = config.inertia * p.velocity[d] +
                   config.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                   config.social * r2 * (global_best[d] - p.position[d]);
        double x = p.position[d] + v;
        if (x < bounds.lower[d]) {
          x = bounds.lower[d];
          v = 0.0;
        } else if (x > bounds.upper[d]) {
          x = bounds.upper[d];
          v = 0.0;
        }
        p.position[d] = x;
        p.velocity[d] = v;
      }
    }

    evaluate_all(fitness, swarm, values, config.threads);

    const double previous = global_fitness;
    for (std::size_t i = 0; i < n; ++i) {
      Particle& p = swarm[i];
      if (values[i] > p.best_fitness) {
        p.best_fitness = values[i];
        p.best_position = p.position;
      }
      if (p.best_fitness > global_fitness) {
        global_fitness = p.best_fitness;
        global_best = p.best_position;
      }
    }
    result.trace.push_back({it, global_fitness, global_best});

    stalled = (global_fitness - previous < config.stall_tol) ? stalled + 1 : 0;
    if (stalled >= config.stall_iters) break;
  }

  result.best_position = std::move(global_best);
  result.best_fitness = global_fitness;
  return result;
}

}  // namespace retarget
