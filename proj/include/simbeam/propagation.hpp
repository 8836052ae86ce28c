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
#include <string>
#include <string_view>
#include <vector>

#include "simbeam/geometry.hpp"
#include "simbeam/types.hpp"

namespace simbeam
{

/// Rayleigh-Sommerfeld transfer matrix between two parallel planes.
/// Rows index `dst`, columns index `src`.
CMat diffraction_matrix(std::span<const Point> src, std::span<const Point> dst, double gap, double element_area,
                        double wavelength);

/// W_1 (array to first layer, Q x N) followed by W_2..W_L (Q x Q).
std::vector<CMat> diffraction_chain(const SimGeometry &geometry);

enum class LayerKind
{
    phase_controlled,
    amplitude_controlled
};

enum class Arrangement
{
    rf_ac_pc,   // AC layers nearest the feed array, PC layers after
    interlaced, // AC layers spread evenly through the stack
    rf_pc_ac,   // PC layers first, AC layers radiate
    pc_only     // no AC layers at all
};

std::string_view to_string(Arrangement a);
Arrangement parse_arrangement(std::string_view s);

/// Layer kinds ordered from the feed array outwards.
std::vector<LayerKind> arrange_layers(Arrangement arrangement, int num_pc, int num_ac);

struct StackParams
{
    double alpha_pc = 0.9;
    double alpha_min = 0.07943282347242814; // -22 dB
    double alpha_max = 4.466835921509635;   // +13 dB
    int phase_bits = 3;
};

/// Transmission coefficients of every meta-atom, stored as amplitude and phase.
/// PC layers keep |gamma| = alpha_pc; AC layers keep their phase fixed and the
/// amplitude inside [alpha_min, alpha_max].
class LayerStack
{
  public:
    LayerStack(std::vector<LayerKind> kinds, int num_meta, const StackParams &params);

    int num_layers() const { return static_cast<int>(kinds_.size()); }
    int num_meta() const { return num_meta_; }
    LayerKind kind(int layer) const { return kinds_.at(layer); }
    const std::vector<LayerKind> &kinds() const { return kinds_; }
    int count(LayerKind k) const;
    const StackParams &params() const { return params_; }

    const RVec &amplitudes(int layer) const { return amplitude_.at(layer); }
    const RVec &phases(int layer) const { return phase_.at(layer); }

    /// Sets the controllable phases of a PC layer; values are wrapped into [0, 2pi).
    void set_phases(int layer, const RVec &phases);
    /// Sets the controllable amplitudes of an AC layer; values must lie in the box.
    void set_amplitudes(int layer, const RVec &amplitudes);
    /// Sets the fixed phases of an AC layer.
    void set_fixed_phases(int layer, const RVec &phases);

    CVec coefficients(int layer) const;

  private:
    void check_layer(int layer, LayerKind expected) const;

    std::vector<LayerKind> kinds_;
    int num_meta_;
    StackParams params_;
    std::vector<RVec> amplitude_;
    std::vector<RVec> phase_;
};

double wrap_phase(double phi);

/// G = Gamma_L W_L ... Gamma_1 W_1.
CMat cascade(std::span<const CMat> Ws, const LayerStack &stack);

struct PartialProducts
{
    CMat E; // Gamma_L W_L ... Gamma_{l+1} W_{l+1}, identity for the last layer
    CMat B; // W_l Gamma_{l-1} ... Gamma_1 W_1
};

/// Split of the cascade around layer `layer` (0-based): G = E diag(gamma_layer) B.
PartialProducts partial_products(std::span<const CMat> Ws, const LayerStack &stack, int layer);

/// sum_i P_i ||g_i||^2
double radiated_power(const CMat &G, const RVec &powers);

/// Largest eigenvalue of W^H W by power iteration.
double spectral_norm_squared(const CMat &W, double tol = 1e-10, int max_iter = 10000);

/// alpha_max^(2 L_ac) * prod_l beta_max(W_l^H W_l) * sum_i P_i
double radiated_power_bound(std::span<const CMat> Ws, const LayerStack &stack, const RVec &powers);

} // namespace simbeam
