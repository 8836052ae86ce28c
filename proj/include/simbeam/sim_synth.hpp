// SPDX-License-Identifier: Apache-2.0
//
// simbeam: wave-domain multiuser beamforming through stacked metasurfaces
// Copyright (C) 2026 The simbeam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

#include <span>
#include <vector>

#include "simbeam/propagation.hpp"
#include "simbeam/types.hpp"

namespace simbeam
{

enum class Quantization
{
    continuous,       // phases anywhere in [0, 2pi)
    post_convergence, // fit continuously, round once at the end
    step_by_step      // round after every phase update
};

enum class AmplitudeGradient
{
    scaled, // 2 Re{diag(gamma*) (A gamma - v)}: the exact gradient times alpha
    exact   // 2 Re{diag(exp(-j phi)) (A gamma - v)}
};

struct FitOptions
{
    int max_iterations = 1000;
    double tolerance = 1e-9; // relative decrease of f2 per sweep
    double initial_step = 1.0;
    double shrink = 0.5;
    double sufficient_decrease = 1e-4;
    int max_halvings = 30;
    // Next sweep starts from (last accepted step) * growth for that layer.
    double step_growth = 2.0;
    Quantization quantization = Quantization::continuous;
    int phase_bits = 3;
    AmplitudeGradient amplitude_gradient = AmplitudeGradient::scaled;

    void validate() const;
};

/// ||cascade(Ws, stack) - target||_F^2
double ls_objective(const LayerStack &stack, std::span<const CMat> Ws, const CMat &target);

struct Coupling
{
    CMat A; // (conj(B) B^T) o (E^H E), Hermitian PSD
    CVec v; // [E^H o (conj(B) T^T)] 1
};

/// Quadratic model of f2 in the coefficients of one layer:
/// f2 = gamma^H A gamma - 2 Re{gamma^H v} + ||T||^2.
Coupling coupling(const LayerStack &stack, std::span<const CMat> Ws, const CMat &target, int layer);

/// d f2 / d phi for a PC layer: 2 Im{diag(gamma*) (A gamma - v)}.
RVec grad_phase(const LayerStack &stack, int layer, const Coupling &c);

/// Descent direction for the amplitudes of an AC layer.
RVec grad_amplitude(const LayerStack &stack, int layer, const Coupling &c,
                    AmplitudeGradient variant = AmplitudeGradient::scaled);

/// Nearest point of {2 pi m / 2^bits} in circular distance; ties go to the smaller m.
double quantize_phase(double phi, int bits);
RVec quantize_phases(const RVec &phases, int bits);
void quantize_stack(LayerStack &stack, int bits);

struct FitResult
{
    LayerStack stack;
    std::vector<double> trace;        // f2 after every sweep, starting with the initial value
    int iterations = 0;
    double objective = 0.0;           // f2 of the returned stack
    double continuous_objective = 0.0; // f2 before the final rounding (post-convergence only)
};

/// Alternating projected gradient descent over the layers (ascending order),
/// with a backtracking step per layer.
FitResult pgd_fit(std::span<const CMat> Ws, const CMat &target, LayerStack stack, const FitOptions &opt);

/// PC phases uniform on [0, 2pi), AC amplitudes 1 clamped into the box, AC
/// fixed phases zero unless `random_ac_phases`.
LayerStack initial_stack(Rng &rng, std::vector<LayerKind> kinds, int num_meta, const StackParams &params,
                         bool random_ac_phases = false);

} // namespace simbeam
