#include "tdsqaoa/optimizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tdsqaoa/errors.hpp"

namespace tdsqaoa {

std::string to_string(Termination t) {
  return t == Termination::budget_exhausted ? "budget_exhausted" : "tolerance_met";
}

std::vector<double> OptimizationTrace::best_so_far() const {
  std::vector<double> out;
  out.reserve(evaluations.size());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : evaluations) {
    best = std::min(best, e.value);
    out.push_back(best);
  }
  return out;
}

AngleSchedule initial_angles(int q, double gamma_scale, double beta_scale) {
  if (q < 1) throw DomainError("layer count must be >= 1");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> gammas(q);
  std::vector<double> betas(q);
  for (int k = 1; k <= q; ++k) {
    const double frac = (k - 0.5) / q;
    gammas[k - 1] = std::clamp(frac * gamma_scale, 0.0, two_pi);
    betas[k - 1] = std::clamp((1.0 - frac) * beta_scale, 0.0, std::numbers::pi);
  }
  return AngleSchedule(std::move(gammas), std::move(betas));
}

namespace {

using Vec = Eigen::VectorXd;

struct BudgetExhausted {};

class Solver {
 public:
  Solver(const Objective& f, const OptimizerConfig& cfg, int n) : f_(f), cfg_(cfg), n_(n) {
    lower_.resize(n);
    upper_.resize(n);
    for (int i = 0; i < n; ++i) {
      lower_[i] = cfg.bounds[i].lower;
      upper_[i] = cfg.bounds[i].upper;
    }
  }

  OptimizationTrace run(const Vec& x0) {
    double min_width = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_; ++i) min_width = std::min(min_width, upper_[i] - lower_[i]);
    rho_ = cfg_.initial_radius > 0.0 ? cfg_.initial_radius : 0.1 * min_width;
    rho_end_ = std::min(cfg_.function_tolerance, rho_);
    try {
      iterate(x0);
      trace_.termination = Termination::tolerance_met;
    } catch (const BudgetExhausted&) {
      trace_.termination = Termination::budget_exhausted;
    }
    return std::move(trace_);
  }

 private:
  double evaluate(const Vec& x) {
    if (static_cast<int>(trace_.evaluations.size()) >= cfg_.max_iterations) throw BudgetExhausted{};
    std::vector<double> point(x.data(), x.data() + n_);
    const double value = f_(point);
    if (trace_.evaluations.empty() || value < trace_.best_value) {
      trace_.best_value = value;
      trace_.best_point = point;
    }
    trace_.evaluations.push_back({std::move(point), value});
    return value;
  }

  Vec clip(Vec x) const { return x.cwiseMax(lower_).cwiseMin(upper_); }

  // Coordinate simplex of radius rho around the pivot; step signs are seeded and
  // flipped when the first choice leaves the box.
  void build_simplex(const Vec& pivot, double f_pivot) {
    points_.assign(1, pivot);
    values_.assign(1, f_pivot);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n_; ++i) {
      double step = coin(rng_) ? rho_ : -rho_;
      if (pivot[i] + step > upper_[i] || pivot[i] + step < lower_[i]) step = -step;
      Vec x = pivot;
      x[i] += step;
      x = clip(x);
      points_.push_back(x);
      values_.push_back(evaluate(x));
    }
  }

  // argmin g.d subject to |d| <= rho and lo <= d <= hi (lo <= 0 <= hi).
  Vec trust_region_step(const Vec& g, const Vec& lo, const Vec& hi) const {
    auto step_at = [&](double t) {
      Vec d(n_);
      for (int i = 0; i < n_; ++i) d[i] = std::clamp(-t * g[i], lo[i], hi[i]);
      return d;
    };
    const double gnorm = g.norm();
    if (gnorm == 0.0) return Vec::Zero(n_);
    Vec far(n_);
    for (int i = 0; i < n_; ++i) far[i] = g[i] > 0 ? lo[i] : (g[i] < 0 ? hi[i] : 0.0);
    if (far.norm() <= rho_) return far;
    double t_hi = rho_ / gnorm;
    while (step_at(t_hi).norm() < rho_) t_hi *= 2.0;
    double t_lo = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (t_lo + t_hi);
      (step_at(mid).norm() < rho_ ? t_lo : t_hi) = mid;
    }
    return step_at(t_lo);
  }

  // Replaces vertex k (k >= 1) by a point at distance rho from the pivot along the
  // direction that maximizes the simplex volume.
  void geometry_step(int k, const Eigen::MatrixXd& inverse) {
    const Vec& pivot = points_[0];
    Vec w = inverse.col(k - 1);
    w *= rho_ / w.norm();
    Vec best_x;
    double best_score = -1.0;
    for (double sign : {1.0, -1.0}) {
      Vec x = clip(pivot + sign * w);
      const double score = std::abs((x - pivot).dot(inverse.col(k - 1)));
      if (score > best_score) {
        best_score = score;
        best_x = x;
      }
    }
    points_[k] = best_x;
    values_[k] = evaluate(best_x);
  }

  void make_best_pivot() {
    const auto best = std::min_element(values_.begin(), values_.end()) - values_.begin();
    if (best != 0) {
      std::swap(points_[0], points_[best]);
      std::swap(values_[0], values_[best]);
    }
  }

  // Returns false once the radius can no longer shrink.
  bool shrink() {
    if (rho_ <= rho_end_) return false;
    rho_ *= 0.5;
    if (rho_ <= 3.0 * rho_end_) rho_ = rho_end_;
    return true;
  }

  void iterate(const Vec& x0) {
    rng_.seed(cfg_.seed);
    build_simplex(x0, evaluate(x0));
    for (;;) {
      make_best_pivot();
      const Vec& pivot = points_[0];
      Eigen::MatrixXd d(n_, n_);
      Vec df(n_);
      for (int k = 1; k <= n_; ++k) {
        d.row(k - 1) = (points_[k] - pivot).transpose();
        df[k - 1] = values_[k] - values_[0];
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(d);
      if (!lu.isInvertible()) {
        build_simplex(pivot, values_[0]);
        continue;
      }
      const Eigen::MatrixXd inverse = lu.inverse();
      const Vec g = inverse * df;

      // Poisedness: vertex k lies at distance 1/|w_k| from the face spanned by the others.
      int worst = 0;
      double worst_ratio = 0.0;
      for (int k = 1; k <= n_; ++k) {
        const double dist = d.row(k - 1).norm();
        const double height = 1.0 / inverse.col(k - 1).norm();
        double ratio = 0.0;
        if (dist > 2.0 * rho_) ratio = dist / rho_;
        else if (height < 0.25 * rho_) ratio = rho_ / height;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          worst = k;
        }
      }
      const bool acceptable = worst == 0;
      if (repair_next_ && !acceptable) {
        repair_next_ = false;
        geometry_step(worst, inverse);
        continue;
      }
      repair_next_ = false;

      const Vec step = trust_region_step(g, lower_ - pivot, upper_ - pivot);
      const double predicted = -g.dot(step);
      if (predicted < cfg_.function_tolerance) {
        if (!acceptable) {
          geometry_step(worst, inverse);
        } else if (!shrink()) {
          return;
        }
        continue;
      }

      const Vec trial = clip(pivot + step);
      const double f_trial = evaluate(trial);
      const double ratio = (values_[0] - f_trial) / predicted;

      // Swap the trial point in for the vertex whose replacement keeps the most volume.
      int replace = 1;
      double best_score = -1.0;
      for (int k = 1; k <= n_; ++k) {
        double score = std::abs(step.dot(inverse.col(k - 1)));
        const double dist = d.row(k - 1).norm();
        if (dist > rho_) score *= dist / rho_;
        if (score > best_score) {
          best_score = score;
          replace = k;
        }
      }
      points_[replace] = trial;
      values_[replace] = f_trial;

      if (ratio < 0.1) {
        if (!acceptable) {
          repair_next_ = true;
          continue;
        }
        if (!shrink()) return;
      }
    }
  }

  const Objective& f_;
  const OptimizerConfig& cfg_;
  int n_;
  Vec lower_;
  Vec upper_;
  double rho_ = 0.0;
  double rho_end_ = 0.0;
  bool repair_next_ = false;
  std::mt19937_64 rng_;
  std::vector<Vec> points_;
  std::vector<double> values_;
  OptimizationTrace trace_;
};

}  // namespace

OptimizationTrace minimize(const Objective& objective, std::vector<double> x0,
                           const OptimizerConfig& config) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw DomainError("empty starting point");
  if (config.max_iterations < 1) throw DomainError("max_iterations must be positive");
  if (!(config.function_tolerance > 0.0)) throw DomainError("function_tolerance must be positive");
  if (static_cast<int>(config.bounds.size()) != n) {
    throw DomainError("bounds must have one interval per coordinate");
  }
  for (int i = 0; i < n; ++i) {
    if (!(config.bounds[i].lower < config.bounds[i].upper)) {
      throw DomainError("bound interval " + std::to_string(i) + " is empty");
    }
    if (!config.bounds[i].contains(x0[i])) {
      throw DomainError("starting point coordinate " + std::to_string(i) + " violates its bounds");
    }
  }
  Solver solver(objective, config, n);
  return solver.run(Eigen::Map<const Vec>(x0.data(), n));
}

}  // namespace tdsqaoa
