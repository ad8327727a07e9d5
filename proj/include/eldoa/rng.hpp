// SPDX-License-Identifier: Apache-2.0
//
// eldoa: joint direction-of-arrival and time-of-arrival estimation with
// wideband elliptical sensor arrays
// Copyright (C) 2026 The eldoa authors
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

#ifndef ELDOA_RNG_HPP
#define ELDOA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace eldoa
{
    // Counter-based generator: the n-th draw of stream (seed, stream) is a pure
    // function of (seed, stream, n), so results never depend on call order or on
    // how work is split across threads.
    class counter_rng
    {
    public:
        constexpr counter_rng(std::uint64_t seed, std::uint64_t stream) noexcept
            : key_(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + stream * 0x9e3779b97f4a7c15ULL)) {}

        constexpr std::uint64_t bits(std::uint64_t counter) const noexcept
        {
            return mix(key_ + mix(counter + 0xbb67ae8584caa73bULL));
        }

        // Uniform in (0, 1]
        double uniform(std::uint64_t counter) const noexcept
        {
            return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
        }

        // Two independent standard normal draws (Box-Muller) at counter slot n.
        std::pair<double, double> normal_pair(std::uint64_t n) const noexcept
        {
            const double u1 = uniform(2 * n);
            const double u2 = uniform(2 * n + 1);
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            return {radius * std::cos(angle), radius * std::sin(angle)};
        }

    private:
        // SplitMix64 finaliser
        static constexpr std::uint64_t mix(std::uint64_t z) noexcept
        {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        std::uint64_t key_;
    };
}

#endif
