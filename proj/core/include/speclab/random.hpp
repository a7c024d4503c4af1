#pragma once

#include <cstdint>
#include <functional>
#include <span>

namespace speclab {

/// SplitMix64 finalizer; used to hash (master seed, task index) into independent streams.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for task `index` of a run driven by `master`. Serial and parallel runs
/// draw the same stream for the same task.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// xoshiro256** generator with platform-independent uniform and normal draws.
/// std::*_distribution output is implementation-defined, so we avoid it in
/// anything that feeds a serialized report.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (cached second variate).
  double normal() noexcept;

  /// Uniform point in the ball of `radius` around `center` (written into `out`).
  void in_ball(std::span<const double> center, double radius, std::span<double> out) noexcept;
  /// Uniform point on the sphere of `radius` centered at the origin.
  void on_sphere(double radius, std::span<double> out) noexcept;

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

/// Runs body(i) for i in [0, count) across hardware threads. Each index must
/// write only its own output slot; results are then reduced by the caller in
/// index order, which keeps parallel and serial runs bit-identical.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated sum over a span, in order.
double compensated_sum(std::span<const double> values) noexcept;

}  // namespace speclab
