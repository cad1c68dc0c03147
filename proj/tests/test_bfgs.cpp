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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chaingate/optimize.hpp"

using namespace chaingate;
using Catch::Matchers::WithinAbs;

namespace {

// Concave quadratic with maximum value 3 at c.
double quadratic(const RealVector& x, RealVector* grad) {
  RealVector c(4);
  c << 1.0, -2.0, 0.5, 3.0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(0, 0) = 4.0;
  a(1, 2) = a(2, 1) = 0.5;
  const RealVector d = x - c;
  if (grad) *grad = -a * d;
  return 3.0 - 0.5 * d.dot(a * d);
}

double neg_rosenbrock(const RealVector& x, RealVector* grad) {
  const double a = 1.0 - x[0];
  const double b = x[1] - x[0] * x[0];
  if (grad) {
    grad->resize(2);
    (*grad)[0] = -(-2.0 * a - 400.0 * x[0] * b);
    (*grad)[1] = -(200.0 * b);
  }
  return -(a * a + 100.0 * b * b);
}

}  // namespace

TEST_CASE("seed at the optimum of a quadratic stops immediately") {
  RealVector x0(4);
  x0 << 1.0, -2.0, 0.5, 3.0;
  const BfgsResult r = maximize_bfgs(quadratic, x0, {});
  CHECK(r.iterations <= 2);
  CHECK(r.status == SearchStatus::kConverged);
  CHECK(r.value == 3.0);
  CHECK((r.x - x0).norm() == 0.0);
  CHECK(r.gradient.norm() < 10 * BfgsOptions{}.convergence_tol);
}

TEST_CASE("quadratic from a distant start converges to the maximizer") {
  RealVector x0 = RealVector::Constant(4, 10.0);
  const BfgsResult r = maximize_bfgs(quadratic, x0, {});
  CHECK(r.status == SearchStatus::kConverged);
  CHECK_THAT(r.value, WithinAbs(3.0, 1e-12));
  CHECK_THAT(r.x[3], WithinAbs(3.0, 1e-6));
}

TEST_CASE("Rosenbrock calibration from (-1.2, 1)") {
  RealVector x0(2);
  x0 << -1.2, 1.0;
  BfgsOptions opts;
  opts.convergence_tol = 0.0;
  opts.gradient_tol = 1e-12;
  const BfgsResult r = maximize_bfgs(neg_rosenbrock, x0, opts);
  CHECK(r.status == SearchStatus::kConverged);
  CHECK_THAT(r.x[0], WithinAbs(1.0, 1e-8));
  CHECK_THAT(r.x[1], WithinAbs(1.0, 1e-8));
}

TEST_CASE("accepted iterates never decrease the objective", "[property]") {
  RealVector x0(2);
  x0 << -1.2, 1.0;
  const BfgsResult r = maximize_bfgs(neg_rosenbrock, x0, {});
  REQUIRE(r.history.size() >= 2);
  CHECK(r.history.size() == static_cast<std::size_t>(r.iterations) + 1);
  for (std::size_t i = 1; i < r.history.size(); ++i) {
    CHECK(r.history[i] >= r.history[i - 1]);
  }
}

TEST_CASE("box constraint is respected") {
  RealVector x0(4);
  x0 << 0.0, 0.0, 0.0, 0.0;
  BfgsOptions opts;
  opts.box = 2.0;
  const BfgsResult r = maximize_bfgs(quadratic, x0, opts);
  CHECK(r.x.cwiseAbs().maxCoeff() <= 2.0);
  // The unconstrained maximizer has x[3] = 3, so the bound is active.
  CHECK(r.x[3] == 2.0);
}

TEST_CASE("iteration cap is reported distinctly") {
  RealVector x0(2);
  x0 << -1.2, 1.0;
  BfgsOptions opts;
  opts.max_iters = 3;
  const BfgsResult r = maximize_bfgs(neg_rosenbrock, x0, opts);
  CHECK(r.status == SearchStatus::kMaxIterations);
  CHECK(r.iterations == 3);
  CHECK(to_string(r.status) != to_string(SearchStatus::kConverged));
}
