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

#include <atomic>
#include <iostream>
#include <string_view>

namespace simbeam::log
{

enum class Level : int
{
    quiet = 0,
    warn = 1,
    info = 2,
    debug = 3
};

inline std::atomic<int> &threshold()
{
    static std::atomic<int> level{static_cast<int>(Level::warn)};
    return level;
}

inline void set_level(Level level) { threshold().store(static_cast<int>(level)); }

inline bool enabled(Level level) { return static_cast<int>(level) <= threshold().load(); }

inline void warn(std::string_view msg)
{
    if (enabled(Level::warn))
    {
#pragma omp critical(simbeam_log)
        std::cerr << "[simbeam] warning: " << msg << '\n';
    }
}

inline void info(std::string_view msg)
{
    if (enabled(Level::info))
    {
#pragma omp critical(simbeam_log)
        std::cerr << "[simbeam] " << msg << '\n';
    }
}

} // namespace simbeam::log
