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

#pragma once

#include <span>
#include <vector>

#include "chaingate/hamiltonians.hpp"
#include "chaingate/targets.hpp"
#include "chaingate/types.hpp"

namespace chaingate {

// Alternating piecewise-constant schedule. Slices are stored in time order,
// x-pulse first: [h_x1, h_y1, h_x2, h_y2, ...]; every slice lasts T.
class ControlSequence {
 public:
  ControlSequence(std::vector<double> amplitudes, double slice_duration);

  static ControlSequence zeros(int n_pulses, double slice_duration);
  static ControlSequence with_total_time(std::vector<double> amplitudes,
                                         double total_time);

  int n_pulses() const { return static_cast<int>(amplitudes_.size()); }
  double slice_duration() const { return slice_duration_; }
  double total_time() const { return slice_duration_ * n_pulses(); }

  // 1-based pulse-pair index n = 1..N_f/2.
  double hx(int n) const { return amplitudes_.at(2 * (n - 1)); }
  double hy(int n) const { return amplitudes_.at(2 * (n - 1) + 1); }

  std::span<const double> amplitudes() const { return amplitudes_; }
  std::span<double> amplitudes() { return amplitudes_; }

  double max_abs_amplitude() const;
  // Throws ValidationError if any |h| exceeds a_max.
  void check_box(double a_max) const;

  bool operator==(const ControlSequence&) const = default;

 private:
  std::vector<double> amplitudes_;
  double slice_duration_;
};

// Drift and control operators of one chain, built once and shared by every
// propagation against that chain.
struct ChainModel {
  explicit ChainModel(const SpinChainSpec& spec);

  SpinChainSpec spec;
  Matrix drift;
  ControlGenerators controls;

  int dim() const { return static_cast<int>(drift.rows()); }
  // Even slices (0-based) are x pulses.
  const Matrix& control_for_slice(int slice) const {
    return slice % 2 == 0 ? controls.x : controls.y;
  }
};

// exp(-i H t) together with the spectral data it was built from.
struct SpectralExponential {
  RealVector eigenvalues;
  Matrix eigenvectors;
  Eigen::VectorXcd phases;  // exp(-i lambda_k t)
  Matrix propagator;
};

SpectralExponential spectral_exponential(const Matrix& h, double t);

// exp(-i H t) via H = V diag(lambda) V^dagger. Rejects H whose hermiticity
// deviation exceeds 1e-10.
Matrix expm_hermitian_generator(const Matrix& h, double t);

// Ordered product of the N_f slice propagators; later slices multiply on the
// left.
Matrix propagate(const ChainModel& model, const ControlSequence& seq);
Matrix propagate(const SpinChainSpec& spec, const ControlSequence& seq);

// 2^-N |Tr(U^dagger G)|.
double trace_fidelity(const Matrix& u, const Matrix& gate);
double trace_fidelity(const Matrix& u, const TargetGate& gate);

}  // namespace chaingate
