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

#include "chaingate/propagation.hpp"

#include <cmath>

namespace chaingate {
namespace {

constexpr double kHermitianTol = 1e-10;

}  // namespace

ControlSequence::ControlSequence(std::vector<double> amplitudes,
                                 double slice_duration)
    : amplitudes_(std::move(amplitudes)), slice_duration_(slice_duration) {
  if (amplitudes_.size() < 2 || amplitudes_.size() % 2 != 0) {
    throw ValidationError("n_pulses must be even and >= 2, got " +
                          std::to_string(amplitudes_.size()));
  }
  if (!(slice_duration_ > 0.0) || !std::isfinite(slice_duration_)) {
    throw ValidationError("slice_duration must be positive and finite");
  }
  for (double h : amplitudes_) {
    if (!std::isfinite(h)) throw ValidationError("amplitudes must be finite");
  }
}

ControlSequence ControlSequence::zeros(int n_pulses, double slice_duration) {
  if (n_pulses < 0) throw ValidationError("n_pulses must be non-negative");
  return ControlSequence(std::vector<double>(n_pulses, 0.0), slice_duration);
}

ControlSequence ControlSequence::with_total_time(std::vector<double> amplitudes,
                                                 double total_time) {
  const double n = static_cast<double>(amplitudes.size());
  return ControlSequence(std::move(amplitudes), total_time / n);
}

double ControlSequence::max_abs_amplitude() const {
  double m = 0.0;
  for (double h : amplitudes_) m = std::max(m, std::abs(h));
  return m;
}

void ControlSequence::check_box(double a_max) const {
  if (max_abs_amplitude() > a_max) {
    throw ValidationError("amplitude exceeds the configured box |h| <= " +
                          std::to_string(a_max));
  }
}

ChainModel::ChainModel(const SpinChainSpec& s)
    : spec(s), drift(build_drift(s)), controls(build_control_generators(s)) {}

SpectralExponential spectral_exponential(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition failed");
  }
  SpectralExponential out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.phases.resize(out.eigenvalues.size());
  for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
    out.phases(k) = std::polar(1.0, -out.eigenvalues(k) * t);
  }
  out.propagator = out.eigenvectors * out.phases.asDiagonal() *
                   out.eigenvectors.adjoint();
  return out;
}

Matrix expm_hermitian_generator(const Matrix& h, double t) {
  if (hermiticity_deviation(h) > kHermitianTol) {
    throw ValidationError("generator is not Hermitian");
  }
  return spectral_exponential(h, t).propagator;
}

Matrix propagate(const ChainModel& model, const ControlSequence& seq) {
  const auto amps = seq.amplitudes();
  const double dt = seq.slice_duration();
  Matrix u = Matrix::Identity(model.dim(), model.dim());
  Matrix h(model.dim(), model.dim());
  for (int k = 0; k < seq.n_pulses(); ++k) {
    h = model.drift + amps[k] * model.control_for_slice(k);
    u = spectral_exponential(h, dt).propagator * u;
  }
  return u;
}

Matrix propagate(const SpinChainSpec& spec, const ControlSequence& seq) {
  return propagate(ChainModel(spec), seq);
}

double trace_fidelity(const Matrix& u, const Matrix& gate) {
  if (u.rows() != gate.rows() || u.cols() != gate.cols() ||
      u.rows() != u.cols()) {
    throw ValidationError("trace_fidelity: dimension mismatch");
  }
  const Complex tr = (u.adjoint() * gate).trace();
  return std::abs(tr) / static_cast<double>(u.rows());
}

double trace_fidelity(const Matrix& u, const TargetGate& gate) {
  return trace_fidelity(u, gate_matrix(gate));
}

}  // namespace chaingate
