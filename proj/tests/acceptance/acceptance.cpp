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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "simbeam/harness.hpp"
#include "simbeam/log.hpp"
#include "simbeam/scheduler.hpp"

using namespace simbeam;

namespace
{

struct Outcome
{
    bool pass;
    std::string detail;
};

double mean_of(const CampaignResult &r, Scheme scheme, std::optional<Variant> variant,
               std::optional<Arrangement> arrangement, int sweep_index = 0)
{
    for (const auto &g : r.groups)
        if (g.scheme == scheme && g.variant == variant && g.arrangement == arrangement && g.sweep_index == sweep_index)
            return g.count > 0 ? g.mean : std::nan("");
    return std::nan("");
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

CampaignConfig reference_config(int trials, int iterations)
{
    CampaignConfig c;
    c.trials = trials;
    c.seed = 20260101;
    c.optimizer.max_iterations = iterations;
    c.fit.max_iterations = iterations;
    return c;
}

Outcome zf_matches_optimal()
{
    CampaignConfig c = reference_config(30, 200);
    c.schemes = {Scheme::mmimo_opt, Scheme::mmimo_zf};
    c.sweep = SweepVariable::users;
    c.sweep_values = {4, 5, 6, 7, 8};
    const auto r = run_campaign(c);
    bool pass = r.failed_trials == 0;
    std::ostringstream d;
    for (int s = 0; s < 5; ++s)
    {
        const double opt = mean_of(r, Scheme::mmimo_opt, std::nullopt, std::nullopt, s);
        const double zf = mean_of(r, Scheme::mmimo_zf, std::nullopt, std::nullopt, s);
        pass = pass && zf >= 0.92 * opt;
        d << " K=" << (4 + s) << " zf=" << fmt(zf) << " opt=" << fmt(opt) << " ratio=" << fmt(zf / opt);
    }
    return {pass, d.str()};
}

struct ArrangementRates
{
    double ac_pc, interlaced, pc_ac, pc_only;
    std::size_t failed;
};

ArrangementRates arrangement_campaign()
{
    CampaignConfig c = reference_config(30, 500);
    c.schemes = {Scheme::sim_opt};
    c.variants = {Variant::cnt_phase};
    c.arrangements = {Arrangement::rf_ac_pc, Arrangement::interlaced, Arrangement::rf_pc_ac, Arrangement::pc_only};
    const auto r = run_campaign(c);
    auto m = [&](Arrangement a) { return mean_of(r, Scheme::sim_opt, Variant::cnt_phase, a); };
    return {m(Arrangement::rf_ac_pc), m(Arrangement::interlaced), m(Arrangement::rf_pc_ac), m(Arrangement::pc_only),
            r.failed_trials};
}

Outcome amplitude_layers_gain(const ArrangementRates &a)
{
    const double gap = a.ac_pc - a.pc_only;
    return {a.failed == 0 && gap >= 10.0,
            " pc+ac=" + fmt(a.ac_pc) + " pc-only=" + fmt(a.pc_only) + " gap=" + fmt(gap)};
}

Outcome arrangement_ordering(const ArrangementRates &a)
{
    const bool pass = a.failed == 0 && a.ac_pc >= a.interlaced - 1.0 && a.interlaced >= a.pc_ac - 1.0;
    return {pass, " rf-ac-pc=" + fmt(a.ac_pc) + " interlaced=" + fmt(a.interlaced) + " rf-pc-ac=" + fmt(a.pc_ac)};
}

Outcome quantization_ordering()
{
    CampaignConfig c = reference_config(30, 200);
    c.schemes = {Scheme::sim_opt};
    c.variants = {Variant::cnt_phase, Variant::qnt_phase, Variant::step_by_step_qnt};
    c.arrangements = {Arrangement::rf_ac_pc};
    c.sweep = SweepVariable::phase_bits;
    c.sweep_values = {3, 8};
    const auto r = run_campaign(c);
    auto m = [&](Variant v, int s) { return mean_of(r, Scheme::sim_opt, v, Arrangement::rf_ac_pc, s); };
    const double post3 = m(Variant::qnt_phase, 0);
    const double step3 = m(Variant::step_by_step_qnt, 0);
    const double cnt8 = m(Variant::cnt_phase, 1);
    const double post8 = m(Variant::qnt_phase, 1);
    const double step8 = m(Variant::step_by_step_qnt, 1);
    const double spread8 = std::max({cnt8, post8, step8}) - std::min({cnt8, post8, step8});
    const bool pass = r.failed_trials == 0 && step3 >= post3 && spread8 <= 2.0;
    return {pass, " b=3 step=" + fmt(step3) + " post=" + fmt(post3) + "; b=8 cnt=" + fmt(cnt8) + " post=" +
                      fmt(post8) + " step=" + fmt(step8) + " spread=" + fmt(spread8)};
}

Outcome subset_count()
{
    const std::size_t listed = enumerate_subsets(10, 4).size();
    const CMat H = CMat::Identity(10, 10);
    const SubsetSolver solver = [](const ReducedChannel &, std::uint64_t) { return BeamformingSolution{}; };
    const auto r = select_best(H, RVec::Ones(10), 4, solver, 1);
    return {listed == 210 && r.evaluated == 210,
            " listed=" + std::to_string(listed) + " evaluated=" + std::to_string(r.evaluated)};
}

struct Suite
{
    const char *binary;
    const char *cases;
};

Outcome property_suites()
{
    const std::vector<Suite> suites{
        {SIMBEAM_TEST_BEAMFORMING, "beam gradient matches finite differences,waterfilling,interference-aware "
                                   "waterfilling,zero-forcing beamformer,zero-forcing power allocation,projected "
                                   "gradient step"},
        {SIMBEAM_TEST_SIM_SYNTH, "phase gradient matches finite differences,amplitude gradient*,Hadamard coupling "
                                 "matches the sum form,fit on a planted target recovers it,fit traces never "
                                 "increase"},
        {SIMBEAM_TEST_PROPAGATION, "radiated power never exceeds the bound on physical stacks"},
        {SIMBEAM_TEST_HARNESS, "campaign output is reproducible and well formed"},
    };
    bool pass = true;
    std::string detail;
    for (const auto &s : suites)
    {
        const std::string cmd = std::string("\"") + s.binary + "\" --test-case=\"" + s.cases +
                                "\" --no-intro --no-version > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        std::string name = s.binary;
        name = name.substr(name.find_last_of('/') + 1);
        detail += " " + name + (rc == 0 ? "=ok" : "=failed");
        pass = pass && rc == 0;
    }
    return {pass, detail};
}

void report(int id, const char *title, const Outcome &o, bool &all)
{
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " |" << o.detail << std::endl;
    all = all && o.pass;
}

} // namespace

int main()
{
    log::set_level(log::Level::quiet);
    bool all = true;
    report(5, "K=10, N=4 scheduler explores 210 subsets", subset_count(), all);
    report(6, "oracle and property suites", property_suites(), all);
    report(1, "mMIMO zero-forcing within 8% of optimal beamforming", zf_matches_optimal(), all);
    const ArrangementRates a = arrangement_campaign();
    report(2, "amplitude-controlled layers add at least 10 bit/s/Hz", amplitude_layers_gain(a), all);
    report(3, "RF-AC-PC >= interlaced >= RF-PC-AC (1 bit/s/Hz slack)", arrangement_ordering(a), all);
    report(4, "step-by-step >= post-convergence at b=3, variants within 2 bit/s/Hz at b=8", quantization_ordering(),
           all);
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
