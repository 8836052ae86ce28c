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


#include "simbeam/opt_beamform.hpp"

#include <cmath>
#include <limits>

namespace simbeam
{

void OptimizerOptions::validate() const
{
    if (max_iterations < 0)
        throw ConfigError("optimizer: max_iterations must be >= 0");
    if (!(tolerance > 0.0) || !(waterfill_tolerance > 0.0))
        throw ConfigError("optimizer: tolerances must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
        throw ConfigError("optimizer: shrink must lie in (0, 1)");
    if (!(initial_step > 0.0) || max_halvings < 0 || sufficient_increase < 0.0)
        throw ConfigError("optimizer: invalid backtracking parameters");
    if (power_damping < 0.0 || power_damping >= 1.0)
        throw ConfigError("optimizer: power damping must lie in [0, 1)");
}

namespace
{

void check_problem(const SumRateProblem &prob, const CMat &G, const RVec &powers)
{
    const Eigen::Index N = prob.H.rows();
    if (G.rows() != prob.H.cols() || G.cols() != N || powers.size() != N || prob.path_loss.size() != N)
        throw StructuralError("beamforming: inconsistent dimensions");
}

} // namespace

double beam_objective(const SumRateProblem &prob, const CMat &G, const RVec &powers)
{
    return evaluate_sum_rate(prob.H, prob.path_loss, G, powers, prob.noise_variance);
}

namespace
{

// Gradient of the sum rate with respect to g_i divided by P_i, well defined
// at P_i = 0.
CVec beam_direction(const SumRateProblem &prob, const CMat &G, const RVec &powers, Eigen::Index i)
{
    const Eigen::Index N = prob.H.rows();
    const CMat HG = prob.H * G; // (j, k) = h_j^H g_k
    const RMat gain = HG.cwiseAbs2();
    const RVec &rho = prob.path_loss;
    const double s2 = prob.noise_variance;

    CVec dir = CVec::Zero(prob.H.cols());
    for (Eigen::Index j = 0; j < N; ++j)
    {
        double total = 0.0;
        for (Eigen::Index k = 0; k < N; ++k)
            total += powers[k] * gain(j, k);
        const double S = rho[j] * total + s2;
        // h_j (h_j^H g_i)
        const CVec proj = prob.H.row(j).adjoint() * HG(j, i);
        if (j == i)
        {
            dir += (rho[i] / S) * proj;
        }
        else
        {
            const double I = S - rho[j] * powers[j] * gain(j, j);
            const double w = rho[j] * rho[j] * powers[j] * gain(j, j) / (S * I);
            dir -= w * proj;
        }
    }
    return dir;
}

} // namespace

CVec grad_beam(const SumRateProblem &prob, const CMat &G, const RVec &powers, int i)
{
    check_problem(prob, G, powers);
    if (i < 0 || i >= prob.H.rows())
        throw StructuralError("grad_beam: stream index out of range");
    return powers[i] * beam_direction(prob, G, powers, i);
}

PgaStep pga_step(const SumRateProblem &prob, const CMat &G, const RVec &powers, const OptimizerOptions &opt)
{
    check_problem(prob, G, powers);
    PgaStep out;
    out.beams = G;
    double f = beam_objective(prob, out.beams, powers);
    out.objective_before = f;
    const double real_scale = 2.0 / std::log(2.0);

    for (Eigen::Index i = 0; i < G.cols(); ++i)
    {
        const CVec ascent = beam_direction(prob, out.beams, powers, i);
        const CVec grad = powers[i] * ascent;
        const double gn = ascent.norm();
        if (gn == 0.0 || !std::isfinite(gn))
        {
            out.trace.push_back(f);
            continue;
        }
        const CVec dir = ascent / gn;
        const CVec g_old = out.beams.col(i);

        double step = opt.initial_step;
        for (int h = 0; h <= opt.max_halvings; ++h, step *= opt.shrink)
        {
            CVec cand = g_old + step * dir;
            const double cn = cand.norm();
            if (cn == 0.0)
                break; // keep the previous column
            cand /= cn;
            out.beams.col(i) = cand;
            const double f_new = beam_objective(prob, out.beams, powers);
            const double slope = real_scale * std::real(grad.dot(cand - g_old));
            if (f_new >= f + opt.sufficient_increase * std::max(0.0, slope))
            {
                f = f_new;
                break;
            }
            out.beams.col(i) = g_old;
        }
        out.trace.push_back(f);
    }
    out.objective_after = f;
    return out;
}

WaterfillResult waterfill_interference(const SumRateProblem &prob, const CMat &G, const RVec &powers,
                                       double total_power, double tol)
{
    check_problem(prob, G, powers);
    const Eigen::Index N = prob.H.rows();
    const RMat gain = (prob.H * G).cwiseAbs2();
    RVec thresholds(N);
    for (Eigen::Index i = 0; i < N; ++i)
    {
        double interference = 0.0;
        for (Eigen::Index k = 0; k < N; ++k)
            if (k != i)
                interference += powers[k] * gain(i, k);
        const double signal_gain = prob.path_loss[i] * gain(i, i);
        thresholds[i] = signal_gain > 0.0
                            ? (prob.path_loss[i] * interference + prob.noise_variance) / signal_gain
                            : std::numeric_limits<double>::infinity();
    }
    return waterfill(thresholds, total_power, tol);
}

CMat random_unit_beams(Rng &rng, int num_meta, int num_streams)
{
    std::normal_distribution<double> nd(0.0, 1.0);
    CMat G(num_meta, num_streams);
    for (int i = 0; i < num_streams; ++i)
    {
        for (int q = 0; q < num_meta; ++q)
        {
            const double re = nd(rng);
            const double im = nd(rng);
            G(q, i) = cplx(re, im);
        }
        G.col(i).normalize();
    }
    return G;
}

CMat matched_filter_beams(const CMat &H)
{
    CMat G = H.adjoint();
    for (Eigen::Index i = 0; i < G.cols(); ++i)
    {
        const double n = G.col(i).norm();
        if (n > 0.0)
            G.col(i) /= n;
    }
    return G;
}

BeamformingSolution optimize_beamforming(const SumRateProblem &prob, double total_power, const CMat &initial_beams,
                                         const OptimizerOptions &opt, OptimizeTrace *trace)
{
    opt.validate();
    const int N = prob.num_streams();
    if (N > prob.num_meta())
        throw DomainError("optimize_beamforming: more streams than radiating elements");
    if (!(total_power > 0.0))
        throw DomainError("optimize_beamforming: power budget must be positive");

    CMat G = initial_beams;
    for (Eigen::Index i = 0; i < G.cols(); ++i)
        G.col(i).normalize();
    RVec P = RVec::Constant(N, total_power / N);
    check_problem(prob, G, P);

    double f = beam_objective(prob, G, P);
    BeamformingSolution best{G, P, total_power, f, 0};
    if (trace)
        trace->objective.push_back(f);

    int it = 0;
    while (it < opt.max_iterations)
    {
        ++it;
        PgaStep step = pga_step(prob, G, P, opt);
        if (trace)
            trace->pga.insert(trace->pga.end(), step.trace.begin(), step.trace.end());

        WaterfillResult wf = waterfill_interference(prob, step.beams, P, total_power, opt.waterfill_tolerance);
        RVec P_new = wf.powers;
        if (opt.power_damping > 0.0 && !wf.inactive)
            P_new = (1.0 - opt.power_damping) * P_new + opt.power_damping * P;

        const double f_new = beam_objective(prob, step.beams, P_new);
        if (trace)
            trace->objective.push_back(f_new);

        double change = 0.0;
        if (opt.stop == OptimizerOptions::Stop::objective)
            change = std::abs(f_new - f) / std::max(std::abs(f_new), std::numeric_limits<double>::min());
        else
            change = (step.beams - G).norm() + (P_new - P).norm() / total_power;

        G = std::move(step.beams);
        P = std::move(P_new);
        f = f_new;
        if (f > best.sum_rate)
        {
            best.beams = G;
            best.powers = P;
            best.sum_rate = f;
        }
        if (change < opt.tolerance)
            break;
    }
    best.iterations = it;
    return best;
}

BeamformingSolution optimize_beamforming(const SumRateProblem &prob, double total_power, Rng &rng,
                                         const OptimizerOptions &opt, OptimizeTrace *trace)
{
    const CMat init = opt.init == OptimizerOptions::Init::matched_filter
                          ? matched_filter_beams(prob.H)
                          : random_unit_beams(rng, prob.num_meta(), prob.num_streams());
    return optimize_beamforming(prob, total_power, init, opt, trace);
}

} // namespace simbeam
