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


#include "simbeam/sim_synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simbeam/kernels.hpp"

namespace simbeam
{

void FitOptions::validate() const
{
    if (max_iterations < 0)
        throw ConfigError("fit: max_iterations must be >= 0");
    if (!(tolerance > 0.0))
        throw ConfigError("fit: tolerance must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw ConfigError("fit: shrink must lie in (0, 1)");
    if (!(initial_step > 0.0) || max_halvings < 0 || sufficient_decrease < 0.0 || !(step_growth >= 1.0))
        throw ConfigError("fit: invalid backtracking parameters");
    if (phase_bits < 1)
        throw ConfigError("fit: phase bit depth must be >= 1");
}

double ls_objective(const LayerStack &stack, std::span<const CMat> Ws, const CMat &target)
{
    const CMat G = cascade(Ws, stack);
    if (G.rows() != target.rows() || G.cols() != target.cols())
        throw StructuralError("ls_objective: target shape does not match the cascade");
    return (G - target).squaredNorm();
}

Coupling coupling(const LayerStack &stack, std::span<const CMat> Ws, const CMat &target, int layer)
{
    const PartialProducts pp = partial_products(Ws, stack, layer);
    if (target.rows() != pp.B.rows() || target.cols() != pp.B.cols())
        throw StructuralError("coupling: target shape does not match the cascade");
    const CMat gram = pp.E.adjoint() * pp.E;
    return {kernels::omp::coupling_matrix(gram, pp.B), kernels::omp::coupling_vector(pp.E, pp.B, target)};
}

RVec grad_phase(const LayerStack &stack, int layer, const Coupling &c)
{
    if (stack.kind(layer) != LayerKind::phase_controlled)
        throw StructuralError("grad_phase: layer is not phase-controlled");
    const CVec gamma = stack.coefficients(layer);
    const CVec r = c.A * gamma - c.v;
    return 2.0 * (gamma.conjugate().cwiseProduct(r)).imag();
}

RVec grad_amplitude(const LayerStack &stack, int layer, const Coupling &c, AmplitudeGradient variant)
{
    if (stack.kind(layer) != LayerKind::amplitude_controlled)
        throw StructuralError("grad_amplitude: layer is not amplitude-controlled");
    const CVec gamma = stack.coefficients(layer);
    const CVec r = c.A * gamma - c.v;
    if (variant == AmplitudeGradient::scaled)
        return 2.0 * (gamma.conjugate().cwiseProduct(r)).real();
    const RVec &phi = stack.phases(layer);
    RVec g(r.size());
    for (Eigen::Index q = 0; q < r.size(); ++q)
        g[q] = 2.0 * std::real(std::polar(1.0, -phi[q]) * r[q]);
    return g;
}

double quantize_phase(double phi, int bits)
{
    if (bits < 1)
        throw DomainError("quantize_phase: bit depth must be >= 1");
    const long long M = 1LL << bits;
    const double quantum = kTwoPi / static_cast<double>(M);
    const double w = wrap_phase(phi);
    const long long lo = static_cast<long long>(std::floor(w / quantum)) % M;
    const long long hi = (lo + 1) % M;
    const double d_lo = w - lo * quantum;
    const double d_hi = (lo + 1) * quantum - w;
    long long m = lo;
    if (d_hi < d_lo || (d_hi == d_lo && hi < lo))
        m = hi;
    return m * quantum;
}

RVec quantize_phases(const RVec &phases, int bits)
{
    RVec out(phases.size());
    for (Eigen::Index q = 0; q < phases.size(); ++q)
        out[q] = quantize_phase(phases[q], bits);
    return out;
}

void quantize_stack(LayerStack &stack, int bits)
{
    for (int l = 0; l < stack.num_layers(); ++l)
        if (stack.kind(l) == LayerKind::phase_controlled)
            stack.set_phases(l, quantize_phases(stack.phases(l), bits));
}

namespace
{

CVec make_coefficients(const RVec &amp, const RVec &phase)
{
    CVec g(amp.size());
    for (Eigen::Index q = 0; q < amp.size(); ++q)
        g[q] = std::polar(amp[q], phase[q]);
    return g;
}

// f2 for coefficients `gamma` on the current layer: ||E diag(gamma) B - T||^2.
double layer_objective(const CMat &E, bool identity_E, const CVec &gamma, const CMat &B, const CMat &target)
{
    const CMat M = gamma.asDiagonal() * B;
    if (identity_E)
        return (M - target).squaredNorm();
    return (E * M - target).squaredNorm();
}

} // namespace

FitResult pgd_fit(std::span<const CMat> Ws, const CMat &target, LayerStack stack, const FitOptions &opt)
{
    opt.validate();
    const int L = stack.num_layers();
    const Eigen::Index Q = stack.num_meta();
    if (Ws.size() != static_cast<std::size_t>(L))
        throw StructuralError("pgd_fit: need one diffraction matrix per layer");
    if (target.rows() != Q || target.cols() != Ws[0].cols())
        throw StructuralError("pgd_fit: target must be Q x N");

    const bool stepwise = opt.quantization == Quantization::step_by_step;
    // Step-by-step mode descends on continuous shadow phases; the stack holds
    // their quantized image and only takes it when f2 drops.
    std::vector<RVec> shadow(L);
    if (stepwise)
    {
        for (int l = 0; l < L; ++l)
            if (stack.kind(l) == LayerKind::phase_controlled)
                shadow[l] = stack.phases(l);
        quantize_stack(stack, opt.phase_bits);
    }

    FitResult out{stack, {}, 0, 0.0, 0.0};
    double f = ls_objective(stack, Ws, target);
    out.trace.push_back(f);
    const double floor = std::numeric_limits<double>::min();

    std::vector<double> step(L, opt.initial_step);
    std::vector<CMat> E(L);

    int it = 0;
    while (it < opt.max_iterations)
    {
        ++it;
        // Suffix products for this sweep; layers after l are untouched until
        // the sweep reaches them.
        for (int l = L - 2; l >= 0; --l)
        {
            const CVec g_next = stack.coefficients(l + 1);
            if (l == L - 2)
                E[l] = g_next.asDiagonal() * Ws[l + 1];
            else
                E[l] = (E[l + 1] * g_next.asDiagonal()) * Ws[l + 1];
        }

        CMat B = Ws[0];
        double f_layer = f;
        double shadow_gain = 0.0;
        for (int l = 0; l < L; ++l)
        {
            const bool last = (l == L - 1);
            const bool pc = stack.kind(l) == LayerKind::phase_controlled;
            const bool use_shadow = stepwise && pc;
            const CMat &El = last ? CMat() : E[l];
            const RVec &amp = stack.amplitudes(l);
            const RVec &phase = use_shadow ? shadow[l] : stack.phases(l);

            if (use_shadow)
                f_layer = layer_objective(El, last, stack.coefficients(l), B, target);

            const CVec gamma = make_coefficients(amp, phase);
            const CMat M = gamma.asDiagonal() * B;
            const CMat R = (last ? M : El * M) - target;
            const double f_here = R.squaredNorm();
            if (!use_shadow)
                f_layer = f_here;
            const CMat P = last ? R : CMat(El.adjoint() * R);
            const CVec r = kernels::omp::residual_correlation(B, P); // = A gamma - v

            RVec grad(Q);
            if (pc)
                grad = 2.0 * (gamma.conjugate().cwiseProduct(r)).imag();
            else if (opt.amplitude_gradient == AmplitudeGradient::scaled)
                grad = 2.0 * (gamma.conjugate().cwiseProduct(r)).real();
            else
                for (Eigen::Index q = 0; q < Q; ++q)
                    grad[q] = 2.0 * std::real(std::polar(1.0, -phase[q]) * r[q]);

            if (grad.squaredNorm() > 0.0 && std::isfinite(grad.squaredNorm()))
            {
                const RVec &x = pc ? phase : amp;
                double t = step[l];
                RVec cand(Q);
                for (int h = 0; h <= opt.max_halvings; ++h, t *= opt.shrink)
                {
                    cand = x - t * grad;
                    if (!pc)
                    {
                        const auto &prm = stack.params();
                        cand = cand.cwiseMax(prm.alpha_min).cwiseMin(prm.alpha_max);
                    }
                    const CVec gc = pc ? make_coefficients(amp, cand) : make_coefficients(cand, phase);
                    const double fc = layer_objective(El, last, gc, B, target);
                    if (fc <= f_here - opt.sufficient_decrease * std::max(0.0, grad.dot(x - cand)))
                    {
                        if (use_shadow)
                        {
                            shadow[l] = cand.unaryExpr([](double v) { return wrap_phase(v); });
                            shadow_gain += f_here - fc;
                        }
                        else
                        {
                            if (pc)
                                stack.set_phases(l, cand);
                            else
                                stack.set_amplitudes(l, cand);
                            f_layer = fc;
                        }
                        step[l] = t * opt.step_growth;
                        break;
                    }
                }
            }

            if (use_shadow)
            {
                const RVec q = quantize_phases(shadow[l], opt.phase_bits);
                if ((q - stack.phases(l)).cwiseAbs().maxCoeff() > 0.0)
                {
                    const double fq = layer_objective(El, last, make_coefficients(amp, q), B, target);
                    if (fq < f_layer)
                    {
                        stack.set_phases(l, q);
                        f_layer = fq;
                    }
                }
            }

            if (!last)
                B = Ws[l + 1] * (stack.coefficients(l).asDiagonal() * B);
        }

        const double f_new = f_layer;
        out.trace.push_back(f_new);
        const double rel = (f - f_new) / std::max(f, floor);
        const double shadow_rel = shadow_gain / std::max(f, floor);
        f = f_new;
        if ((rel < opt.tolerance && shadow_rel < opt.tolerance) || f <= floor)
            break;
    }

    out.iterations = it;
    out.continuous_objective = f;
    if (opt.quantization == Quantization::post_convergence)
    {
        quantize_stack(stack, opt.phase_bits);
        f = ls_objective(stack, Ws, target);
    }
    out.objective = f;
    out.stack = std::move(stack);
    return out;
}

LayerStack initial_stack(Rng &rng, std::vector<LayerKind> kinds, int num_meta, const StackParams &params,
                         bool random_ac_phases)
{
    LayerStack stack(std::move(kinds), num_meta, params);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    for (int l = 0; l < stack.num_layers(); ++l)
    {
        const bool pc = stack.kind(l) == LayerKind::phase_controlled;
        if (!pc && !random_ac_phases)
            continue;
        RVec phi(num_meta);
        for (int q = 0; q < num_meta; ++q)
            phi[q] = unif(rng);
        if (pc)
            stack.set_phases(l, phi);
        else
            stack.set_fixed_phases(l, phi);
    }
    return stack;
}

} // namespace simbeam
