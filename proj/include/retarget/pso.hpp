#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace retarget {

struct PsoConfig {
  int swarm_size = 30;
  int max_iters = 100;
  double inertia = 0.72;
  double cognitive = 1.49;
  double social = 1.49;
  int stall_iters = 15;
  double stall_tol = 1e-4;
  std::uint64_t seed = 0;
  int threads = 1;  // fitness evaluations per iteration may be spread over this many threads

  /// Throws InvalidConfig.
  void validate() const;
};

struct SearchBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const noexcept { return lower.size(); }
  /// Throws InvalidBounds.
  void validate() const;
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double best_fitness = 0.0;
};

struct TraceRecord {
  int iteration = 0;  // 0 is the initial swarm
  double best_fitness = 0.0;
  std::vector<double> best_position;

  bool operator==(const TraceRecord&) const = default;
};

using OptimizationTrace = std::vector<TraceRecord>;

struct PsoResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  OptimizationTrace trace;
};

using FitnessFunction = std::function<double(std::span<const double>)>;

/// Box-bounded particle swarm maximisation.
///
/// Positions start uniform in the box with zero velocity. Each iteration
/// draws r1, r2 ~ U[0,1] per particle and dimension (particle-major order)
/// and applies
///   v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x),  x <- x + v,
/// clamping x into the box and zeroing the velocity of clamped components.
/// Personal and global bests are updated in particle order after all of the
/// iteration's evaluations, on strict improvement only, so the result does
/// not depend on how evaluations are scheduled across threads.
///
/// Stops after max_iters iterations, or once the global best has improved by
/// less than stall_tol for stall_iters consecutive iterations.
PsoResult pso_maximize(const FitnessFunction& fitness, const SearchBounds& bounds,
                       const PsoConfig& config);

}  // namespace retarget
