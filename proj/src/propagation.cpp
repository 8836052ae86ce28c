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


#include "simbeam/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "simbeam/kernels.hpp"

namespace simbeam
{

CMat diffraction_matrix(std::span<const Point> src, std::span<const Point> dst, double gap, double element_area,
                        double wavelength)
{
    return kernels::omp::diffraction({src, dst, gap, element_area, wavelength});
}

std::vector<CMat> diffraction_chain(const SimGeometry &g)
{
    std::vector<CMat> Ws;
    Ws.reserve(g.layers.size());
    Ws.push_back(diffraction_matrix(g.antennas, g.layers.front(), g.first_gap, g.antenna_area, g.wavelength));
    // All inter-layer transfers share the same geometry.
    if (g.layers.size() > 1)
    {
        const CMat W = diffraction_matrix(g.layers[0], g.layers[1], g.layer_gap, g.meta_area, g.wavelength);
        for (std::size_t l = 1; l < g.layers.size(); ++l)
            Ws.push_back(W);
    }
    return Ws;
}

std::string_view to_string(Arrangement a)
{
    switch (a)
    {
    case Arrangement::rf_ac_pc:
        return "rf-ac-pc";
    case Arrangement::interlaced:
        return "interlaced";
    case Arrangement::rf_pc_ac:
        return "rf-pc-ac";
    case Arrangement::pc_only:
        return "pc-only";
    }
    return "unknown";
}

Arrangement parse_arrangement(std::string_view s)
{
    if (s == "rf-ac-pc")
        return Arrangement::rf_ac_pc;
    if (s == "interlaced")
        return Arrangement::interlaced;
    if (s == "rf-pc-ac")
        return Arrangement::rf_pc_ac;
    if (s == "pc-only")
        return Arrangement::pc_only;
    throw ConfigError("unknown layer arrangement '" + std::string(s) + "'");
}

std::vector<LayerKind> arrange_layers(Arrangement arrangement, int num_pc, int num_ac)
{
    if (num_pc < 0 || num_ac < 0 || num_pc + num_ac < 1)
        throw ConfigError("arrange_layers: need at least one layer");
    if (arrangement == Arrangement::pc_only)
        num_ac = 0;
    const int L = num_pc + num_ac;
    std::vector<LayerKind> kinds(L, LayerKind::phase_controlled);
    switch (arrangement)
    {
    case Arrangement::rf_ac_pc:
        for (int l = 0; l < num_ac; ++l)
            kinds[l] = LayerKind::amplitude_controlled;
        break;
    case Arrangement::rf_pc_ac:
        for (int l = num_pc; l < L; ++l)
            kinds[l] = LayerKind::amplitude_controlled;
        break;
    case Arrangement::interlaced:
        // AC layer j at round(j L / L_ac): 0, 3, 6, 9 for L = 12, L_ac = 4.
        for (int j = 0; j < num_ac; ++j)
            kinds[static_cast<int>(std::lround(static_cast<double>(j) * L / num_ac))] =
                LayerKind::amplitude_controlled;
        break;
    case Arrangement::pc_only:
        break;
    }
    return kinds;
}

double wrap_phase(double phi)
{
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

LayerStack::LayerStack(std::vector<LayerKind> kinds, int num_meta, const StackParams &params)
    : kinds_(std::move(kinds)), num_meta_(num_meta), params_(params)
{
    if (kinds_.empty())
        throw ConfigError("LayerStack: at least one layer is required");
    if (num_meta_ < 1)
        throw ConfigError("LayerStack: Q must be >= 1");
    if (!(params_.alpha_pc > 0.0) || params_.alpha_pc > 1.0)
        throw ConfigError("LayerStack: alpha_pc must lie in (0, 1]");
    if (!(params_.alpha_min > 0.0) || params_.alpha_min > params_.alpha_max)
        throw ConfigError("LayerStack: amplitude box must satisfy 0 < alpha_min <= alpha_max");
    if (params_.phase_bits < 1)
        throw ConfigError("LayerStack: phase bit depth must be >= 1");

    amplitude_.reserve(kinds_.size());
    phase_.reserve(kinds_.size());
    for (LayerKind k : kinds_)
    {
        if (k == LayerKind::phase_controlled)
            amplitude_.push_back(RVec::Constant(num_meta_, params_.alpha_pc));
        else
            amplitude_.push_back(RVec::Constant(num_meta_, std::clamp(1.0, params_.alpha_min, params_.alpha_max)));
        phase_.push_back(RVec::Zero(num_meta_));
    }
}

int LayerStack::count(LayerKind k) const
{
    int n = 0;
    for (LayerKind x : kinds_)
        n += (x == k) ? 1 : 0;
    return n;
}

void LayerStack::check_layer(int layer, LayerKind expected) const
{
    if (layer < 0 || layer >= num_layers())
        throw StructuralError("LayerStack: layer index " + std::to_string(layer) + " out of range");
    if (kinds_[layer] != expected)
        throw StructuralError("LayerStack: layer " + std::to_string(layer) + " has the wrong kind for this update");
}

void LayerStack::set_phases(int layer, const RVec &phases)
{
    check_layer(layer, LayerKind::phase_controlled);
    if (phases.size() != num_meta_)
        throw StructuralError("LayerStack::set_phases: expected Q values");
    RVec &dst = phase_[layer];
    for (Eigen::Index q = 0; q < phases.size(); ++q)
        dst[q] = wrap_phase(phases[q]);
}

void LayerStack::set_amplitudes(int layer, const RVec &amplitudes)
{
    check_layer(layer, LayerKind::amplitude_controlled);
    if (amplitudes.size() != num_meta_)
        throw StructuralError("LayerStack::set_amplitudes: expected Q values");
    if (amplitudes.minCoeff() < params_.alpha_min || amplitudes.maxCoeff() > params_.alpha_max)
        throw DomainError("LayerStack::set_amplitudes: amplitude outside [alpha_min, alpha_max]");
    amplitude_[layer] = amplitudes;
}

void LayerStack::set_fixed_phases(int layer, const RVec &phases)
{
    check_layer(layer, LayerKind::amplitude_controlled);
    if (phases.size() != num_meta_)
        throw StructuralError("LayerStack::set_fixed_phases: expected Q values");
    RVec &dst = phase_[layer];
    for (Eigen::Index q = 0; q < phases.size(); ++q)
        dst[q] = wrap_phase(phases[q]);
}

CVec LayerStack::coefficients(int layer) const
{
    const RVec &a = amplitude_.at(layer);
    const RVec &p = phase_.at(layer);
    CVec g(num_meta_);
    for (int q = 0; q < num_meta_; ++q)
        g[q] = std::polar(a[q], p[q]);
    return g;
}

namespace
{

void check_chain(std::span<const CMat> Ws, const LayerStack &stack)
{
    if (Ws.size() != static_cast<std::size_t>(stack.num_layers()))
        throw StructuralError("cascade: need one diffraction matrix per layer");
    const Eigen::Index Q = stack.num_meta();
    if (Ws[0].rows() != Q)
        throw StructuralError("cascade: W_1 must have Q rows");
    for (std::size_t l = 1; l < Ws.size(); ++l)
        if (Ws[l].rows() != Q || Ws[l].cols() != Q)
            throw StructuralError("cascade: W_" + std::to_string(l + 1) + " must be QxQ");
}

} // namespace

CMat cascade(std::span<const CMat> Ws, const LayerStack &stack)
{
    check_chain(Ws, stack);
    CMat G = stack.coefficients(0).asDiagonal() * Ws[0];
    for (int l = 1; l < stack.num_layers(); ++l)
        G = stack.coefficients(l).asDiagonal() * (Ws[l] * G);
    return G;
}

PartialProducts partial_products(std::span<const CMat> Ws, const LayerStack &stack, int layer)
{
    check_chain(Ws, stack);
    const int L = stack.num_layers();
    if (layer < 0 || layer >= L)
        throw StructuralError("partial_products: layer index out of range");

    PartialProducts pp;
    pp.B = Ws[0];
    for (int l = 1; l <= layer; ++l)
        pp.B = Ws[l] * (stack.coefficients(l - 1).asDiagonal() * pp.B);

    const Eigen::Index Q = stack.num_meta();
    pp.E = CMat::Identity(Q, Q);
    for (int l = L - 1; l > layer; --l)
        pp.E = pp.E * (stack.coefficients(l).asDiagonal() * Ws[l]);
    return pp;
}

double radiated_power(const CMat &G, const RVec &powers)
{
    if (powers.size() != G.cols())
        throw StructuralError("radiated_power: one power per column required");
    return (G.colwise().squaredNorm().transpose().array() * powers.array()).sum();
}

double spectral_norm_squared(const CMat &W, double tol, int max_iter)
{
    if (W.size() == 0)
        return 0.0;
    // Deterministic start with energy on every coordinate.
    CVec x = CVec::Ones(W.cols()) / std::sqrt(static_cast<double>(W.cols()));
    double lambda = 0.0;
    for (int it = 0; it < max_iter; ++it)
    {
        CVec y = W.adjoint() * (W * x);
        const double ny = y.norm();
        if (ny == 0.0)
            return 0.0;
        const double next = std::real(x.dot(y));
        x = y / ny;
        if (std::abs(next - lambda) <= tol * std::abs(next))
        {
            lambda = next;
            break;
        }
        lambda = next;
    }
    // Rayleigh quotient at the final iterate.
    return std::max(lambda, (W * x).squaredNorm());
}

double radiated_power_bound(std::span<const CMat> Ws, const LayerStack &stack, const RVec &powers)
{
    check_chain(Ws, stack);
    const int l_ac = stack.count(LayerKind::amplitude_controlled);
    double bound = std::pow(stack.params().alpha_max, 2.0 * l_ac);
    for (const CMat &W : Ws)
        bound *= spectral_norm_squared(W);
    return bound * powers.sum();
}

} // namespace simbeam
