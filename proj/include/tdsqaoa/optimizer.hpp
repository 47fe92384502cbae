#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tdsqaoa/qaoa.hpp"

namespace tdsqaoa {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
  bool contains(double x) const { return x >= lower && x <= upper; }
};

struct OptimizerConfig {
  int max_iterations = 500;          // objective-evaluation budget
  double function_tolerance = 1e-8;  // final trust-region radius / minimum predicted decrease
  std::vector<Interval> bounds;
  std::uint64_t seed = 0;
  double initial_radius = 0.0;       // <= 0 selects 0.1 * smallest bound width
};

enum class Termination { budget_exhausted, tolerance_met };

std::string to_string(Termination t);

struct Evaluation {
  std::vector<double> point;
  double value = 0.0;
};

struct OptimizationTrace {
  std::vector<Evaluation> evaluations;
  std::vector<double> best_point;
  double best_value = 0.0;
  Termination termination = Termination::budget_exhausted;

  /// Running minimum of the recorded values.
  std::vector<double> best_so_far() const;
};

using Objective = std::function<double(std::span<const double>)>;

/// Ramp schedule: gamma grows and beta shrinks linearly across the q layers.
/// Values are clamped to [0, 2pi] and [0, pi].
AngleSchedule initial_angles(int q, double gamma_scale = 1.0, double beta_scale = 1.0);

/// Bound-constrained derivative-free minimization by linear interpolation models
/// on a simplex of n + 1 points with a shrinking trust region (COBYLA family).
///
/// Each iteration fits the affine model through the simplex, minimizes it over the
/// intersection of the trust-region ball and the bound box, and swaps the trial
/// point into the simplex so as to keep it well poised. The radius halves after
/// unsuccessful steps taken from an acceptable simplex. Stops when the radius has
/// reached function_tolerance and a further step fails, or when max_iterations
/// objective values have been computed. Every evaluated point lies inside the
/// bounds. Throws DomainError if x0 violates the bounds or the config is invalid.
OptimizationTrace minimize(const Objective& objective, std::vector<double> x0,
                           const OptimizerConfig& config);

}  // namespace tdsqaoa
