// Copyright 2026 The chaingate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>

#include "chaingate/optimize.hpp"

namespace chaingate {
namespace {

constexpr double kMinStep = 1e-14;
constexpr int kMaxBacktracks = 60;

RealVector clamp_to_box(const RealVector& x, double box) {
  if (!std::isfinite(box)) return x;
  return x.cwiseMax(-box).cwiseMin(box);
}

// Drops direction components that would push a variable sitting on the box
// boundary further outward.
void freeze_active_bounds(const RealVector& x, double box, RealVector& p) {
  if (!std::isfinite(box)) return;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if ((x(i) >= box && p(i) > 0.0) || (x(i) <= -box && p(i) < 0.0)) {
      p(i) = 0.0;
    }
  }
}

}  // namespace

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kConverged:
      return "converged";
    case SearchStatus::kMaxIterations:
      return "max_iterations";
    case SearchStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

BfgsResult maximize_bfgs(const Objective& f, RealVector x0,
                         const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  BfgsResult r;
  r.x = clamp_to_box(x0, options.box);
  r.gradient.resize(n);
  r.value = f(r.x, &r.gradient);
  r.evaluations = 1;
  r.history.push_back(r.value);

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  RealVector trial_grad(n);

  while (true) {
    if (r.gradient.lpNorm<Eigen::Infinity>() <= options.gradient_tol) {
      r.status = SearchStatus::kConverged;
      return r;
    }
    if (r.iterations >= options.max_iters) {
      r.status = SearchStatus::kMaxIterations;
      return r;
    }

    RealVector p = inv_hessian * r.gradient;
    freeze_active_bounds(r.x, options.box, p);
    double slope = r.gradient.dot(p);
    if (!(slope > 0.0)) {
      // Not an ascent direction any more; fall back to steepest ascent.
      inv_hessian.setIdentity();
      fresh_hessian = true;
      p = r.gradient;
      freeze_active_bounds(r.x, options.box, p);
      slope = r.gradient.dot(p);
      if (!(slope > 0.0)) {
        r.status = SearchStatus::kConverged;
        return r;
      }
    }
    // Quadratic-model gain of the full step is slope / 2.
    if (!fresh_hessian && 0.5 * slope < options.convergence_tol) {
      r.status = SearchStatus::kConverged;
      return r;
    }

    // Backtracking line search with quadratic interpolation and a sufficient
    // increase test on the projected step.
    double alpha = 1.0;
    bool accepted = false;
    RealVector trial;
    double trial_value = 0.0;
    for (int bt = 0; bt < kMaxBacktracks && alpha >= kMinStep; ++bt) {
      trial = clamp_to_box(r.x + alpha * p, options.box);
      trial_value = f(trial, &trial_grad);
      ++r.evaluations;
      const double gain = trial_value - r.value;
      const double expected = r.gradient.dot(trial - r.x);
      if (std::isfinite(trial_value) &&
          gain >= options.sufficient_increase * expected && gain > 0.0) {
        accepted = true;
        break;
      }
      // Maximizer of the 1-D quadratic through value, slope and trial.
      const double denom = 2.0 * (slope * alpha - gain);
      double next = denom > 0.0 ? slope * alpha * alpha / denom : 0.5 * alpha;
      if (!std::isfinite(next)) next = 0.5 * alpha;
      alpha = std::clamp(next, 0.1 * alpha, 0.5 * alpha);
    }

    if (!accepted) {
      if (!fresh_hessian) {
        inv_hessian.setIdentity();
        fresh_hessian = true;
        continue;
      }
      r.status = SearchStatus::kStalled;
      return r;
    }

    const RealVector s = trial - r.x;
    // Curvature of the minimized objective -f.
    const RealVector y = r.gradient - trial_grad;
    const double change = trial_value - r.value;
    r.x = trial;
    r.value = trial_value;
    r.gradient = trial_grad;
    ++r.iterations;
    r.history.push_back(r.value);

    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const RealVector hy = inv_hessian * y;
      const double yhy = y.dot(hy);
      inv_hessian += ((sy + yhy) * rho * rho) * (s * s.transpose()) -
                     rho * (hy * s.transpose() + s * hy.transpose());
      fresh_hessian = false;
    }

    if (change < options.convergence_tol) {
      r.status = SearchStatus::kConverged;
      return r;
    }
  }
}

}  // namespace chaingate
