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

#include "chaingate/dla.hpp"

#include <cmath>

#include "chaingate/propagation.hpp"

namespace chaingate {
namespace {

constexpr double kGeneratorTol = 1e-10;

// Stacks real and imaginary parts; the Euclidean inner product of two such
// vectors equals Re Tr(A^dagger B).
RealVector vectorize(const Matrix& a) {
  const Eigen::Index n = a.size();
  RealVector v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v(k) = a.data()[k].real();
    v(n + k) = a.data()[k].imag();
  }
  return v;
}

// Commutators of traceless skew-Hermitian matrices stay in su(n); projecting
// back removes rounding drift before admission.
Matrix project_su(const Matrix& a) {
  Matrix s = 0.5 * (a - a.adjoint());
  s.diagonal().array() -= s.trace() / static_cast<double>(s.rows());
  return s;
}

Matrix devectorize(const RealVector& v, Eigen::Index dim) {
  Matrix a(dim, dim);
  const Eigen::Index n = a.size();
  for (Eigen::Index k = 0; k < n; ++k) a.data()[k] = Complex(v(k), v(n + k));
  return a;
}

class OrthonormalBasis {
 public:
  OrthonormalBasis(double tol, Eigen::Index dim) : tol_(tol), dim_(dim) {}

  // Two Gram-Schmidt passes; returns true if a new direction was admitted.
  // Small residuals amplify rounding error, so the residual is mapped back
  // into su(n) and orthogonalized once more before the norm test.
  bool admit(RealVector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const RealVector& b : vectors_) v -= b.dot(v) * b;
    }
    v = vectorize(project_su(devectorize(v, dim_)));
    for (const RealVector& b : vectors_) v -= b.dot(v) * b;
    const double norm = v.norm();
    if (norm <= tol_) return false;
    vectors_.push_back(v / norm);
    return true;
  }

  const std::vector<RealVector>& vectors() const { return vectors_; }

  double residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        const double target = i == j ? 1.0 : 0.0;
        worst = std::max(worst,
                         std::abs(vectors_[i].dot(vectors_[j]) - target));
      }
    }
    return worst;
  }

 private:
  double tol_;
  Eigen::Index dim_;
  std::vector<RealVector> vectors_;
};

}  // namespace

DlaReport dla_dimension(const std::vector<Matrix>& generators,
                        std::vector<std::string> labels,
                        const DlaOptions& options) {
  if (generators.empty()) throw ValidationError("no DLA generators given");
  const Eigen::Index dim = generators.front().rows();
  for (const Matrix& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw ValidationError("DLA generators must share one square dimension");
    }
    if (hermiticity_deviation(g) > kGeneratorTol) {
      throw ValidationError("DLA generator is not Hermitian");
    }
    if (std::abs(g.trace()) > kGeneratorTol * static_cast<double>(dim)) {
      throw ValidationError("DLA generator is not traceless");
    }
  }

  DlaReport report;
  report.dim = static_cast<int>(dim);
  report.expected_dimension = static_cast<int>(dim * dim - 1);
  report.generator_labels = std::move(labels);

  OrthonormalBasis basis(options.admission_tol, dim);
  std::vector<Matrix> elements;  // skew-Hermitian, orthonormal
  for (const Matrix& g : generators) {
    if (basis.admit(vectorize(kI * g))) {
      elements.push_back(devectorize(basis.vectors().back(), dim));
    }
  }

  // Round r commutes the elements admitted in round r-1 with the whole
  // basis; closure is reached when a round admits nothing.
  std::size_t begin = 0;
  while (begin < elements.size()) {
    const std::size_t end = elements.size();
    ++report.closure_sweeps;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < elements.size(); ++j) {
        if (j == i) continue;
        const Matrix c = elements[i] * elements[j] - elements[j] * elements[i];
        if (basis.admit(vectorize(c))) {
          elements.push_back(devectorize(basis.vectors().back(), dim));
        }
      }
    }
    begin = end;
  }

  report.dimension = static_cast<int>(elements.size());
  report.orthonormality_residual = basis.residual();
  return report;
}

ControlSet parse_control_set(const std::string& name) {
  if (name == "xy") return ControlSet::kXY;
  if (name == "x") return ControlSet::kX;
  if (name == "y") return ControlSet::kY;
  throw ValidationError("unknown control set '" + name +
                        "' (expected xy, x or y)");
}

DlaReport chain_dla(const SpinChainSpec& spec, ControlSet controls,
                    const DlaOptions& options) {
  const ChainModel model(spec);
  std::vector<Matrix> gens{model.drift};
  std::vector<std::string> labels{"H_d[" + spec.coupling.label() + "]"};
  if (controls != ControlSet::kY) {
    gens.push_back(model.controls.x);
    labels.emplace_back("C_x");
  }
  if (controls != ControlSet::kX) {
    gens.push_back(model.controls.y);
    labels.emplace_back("C_y");
  }
  return dla_dimension(gens, std::move(labels), options);
}

DlaReport verify_leakage_controllability(const SpinChainSpec& spec,
                                         const DlaOptions& options) {
  if (!spec.leakage) {
    throw ValidationError("leakage controllability check needs a leakage value");
  }
  return chain_dla(spec, ControlSet::kXY, options);
}

}  // namespace chaingate
