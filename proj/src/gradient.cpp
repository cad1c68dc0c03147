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

#include <cmath>
#include <vector>

#include "chaingate/optimize.hpp"

namespace chaingate {
namespace {

constexpr double kDegenerateTrace = 1e-12;

// (V^dagger dP V)_{jl} / C~_{jl} for P = exp(-i H T): the divided difference
// of exp(-i lambda T), written as -i T e^{-i m T} sinc(d T / 2) with
// m = (lambda_j + lambda_l)/2, d = lambda_j - lambda_l, which is exact on
// and near the diagonal.
Complex divided_difference(double lj, double ll, double t) {
  const double mean = 0.5 * (lj + ll);
  const double half = 0.5 * (lj - ll) * t;
  const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0
                                            : std::sin(half) / half;
  return Complex{0.0, -t} * std::polar(1.0, -mean * t) * sinc;
}

double fidelity_only(const ChainModel& model, const ControlSequence& seq,
                     const Matrix& gate) {
  return trace_fidelity(propagate(model, seq), gate);
}

FidelityGradient analytic(const ChainModel& model, const ControlSequence& seq,
                          const Matrix& gate) {
  const int nf = seq.n_pulses();
  const int dim = model.dim();
  const double t = seq.slice_duration();
  const auto amps = seq.amplitudes();

  std::vector<SpectralExponential> slices;
  slices.reserve(nf);
  for (int k = 0; k < nf; ++k) {
    slices.push_back(spectral_exponential(
        model.drift + amps[k] * model.control_for_slice(k), t));
  }

  // before[k] = P_{k-1} ... P_0
  std::vector<Matrix> before(nf);
  before[0] = Matrix::Identity(dim, dim);
  for (int k = 1; k < nf; ++k) {
    before[k] = slices[k - 1].propagator * before[k - 1];
  }
  const Matrix u = slices[nf - 1].propagator * before[nf - 1];
  const Complex w = (gate.adjoint() * u).trace();  // Tr(G^dagger U)
  const double modulus = std::abs(w);
  if (modulus < kDegenerateTrace) {
    throw NumericalError(
        "fidelity gradient undefined: |Tr(U^dagger G)| below 1e-12");
  }

  FidelityGradient out;
  out.fidelity = modulus / dim;
  out.gradient.resize(nf);
  const Complex scale = std::conj(w) / (modulus * dim);

  // after = G^dagger P_{nf-1} ... P_{k+1}, built from the right end.
  Matrix after = gate.adjoint();
  Matrix kernel(dim, dim);
  for (int k = nf - 1; k >= 0; --k) {
    const SpectralExponential& s = slices[k];
    const Matrix& v = s.eigenvectors;
    const Matrix m = v.adjoint() * (before[k] * after) * v;
    const Matrix c = v.adjoint() * model.control_for_slice(k) * v;
    Complex dw{0.0, 0.0};
    for (int j = 0; j < dim; ++j) {
      for (int l = 0; l < dim; ++l) {
        dw += m(l, j) * c(j, l) *
              divided_difference(s.eigenvalues(j), s.eigenvalues(l), t);
      }
    }
    out.gradient(k) = (scale * dw).real();
    after = after * s.propagator;
  }
  return out;
}

FidelityGradient central_differences(const ChainModel& model,
                                     const ControlSequence& seq,
                                     const Matrix& gate, double step) {
  if (!(step > 0.0)) throw ValidationError("fd_step must be positive");
  FidelityGradient out;
  out.fidelity = fidelity_only(model, seq, gate);
  out.gradient.resize(seq.n_pulses());
  ControlSequence probe = seq;
  for (int k = 0; k < seq.n_pulses(); ++k) {
    const double h0 = seq.amplitudes()[k];
    probe.amplitudes()[k] = h0 + step;
    const double up = fidelity_only(model, probe, gate);
    probe.amplitudes()[k] = h0 - step;
    const double down = fidelity_only(model, probe, gate);
    probe.amplitudes()[k] = h0;
    out.gradient(k) = (up - down) / (2.0 * step);
  }
  return out;
}

}  // namespace

FidelityGradient fidelity_and_gradient(const ChainModel& model,
                                       const ControlSequence& seq,
                                       const Matrix& gate, GradientMode mode,
                                       double fd_step) {
  if (gate.rows() != model.dim() || gate.cols() != model.dim()) {
    throw ValidationError("gate dimension does not match the chain");
  }
  return mode == GradientMode::kAnalytic
             ? analytic(model, seq, gate)
             : central_differences(model, seq, gate, fd_step);
}

RealVector fidelity_gradient(const SpinChainSpec& spec,
                             const ControlSequence& seq,
                             const TargetGate& gate, GradientMode mode,
                             double fd_step) {
  return fidelity_and_gradient(ChainModel(spec), seq, gate_matrix(gate), mode,
                               fd_step)
      .gradient;
}

}  // namespace chaingate
