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

#ifndef ELDOA_SPECFUN_HPP
#define ELDOA_SPECFUN_HPP

#include "errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

// Bessel functions of the first kind, integer order, real argument x >= 0.
//
// All internal arithmetic runs in long double so that the values rounded back to
// double keep a relative error near 1e-13 even close to the zeros of J_m.
//
//  - x < series_limit     : ascending power series, one order at a time
//  - x >= max(hankel_limit, m^2 / 2), single values only: Hankel's asymptotic
//                           expansion, used when its terms fall below 1e-21
//                           without growing (accurate next to zeros at large x)
//  - otherwise            : Miller's downward recurrence, normalised with
//                           J_0 + 2 (J_2 + J_4 + ...) = 1
//  - negative orders      : J_{-m} = (-1)^m J_m, applied to the computed value

namespace eldoa::specfun
{
    inline constexpr int max_order = 1000000;
    inline constexpr double series_limit = 8.0;
    inline constexpr double hankel_limit = 50.0;

    namespace detail
    {
        using ext = long double;

        inline void check_args(int m, double x)
        {
            if (!std::isfinite(x))
                throw eldoa::domain_error("Bessel J: argument is not finite");
            if (x < 0.0)
                throw eldoa::domain_error("Bessel J: argument must be non-negative");
            if (m > max_order || m < -max_order)
                throw eldoa::argument_error("Bessel J: |order| exceeds " + std::to_string(max_order));
        }

        // Kapteyn's bound: |J_n(n z)| <= (z e^s / (1 + s))^n, s = sqrt(1 - z^2), 0 < z <= 1.
        // Returns true when J_n(x) is certainly below 1e-300.
        inline bool negligible(int n, double x)
        {
            if (n == 0 || x >= static_cast<double>(n))
                return false;
            const double z = x / n;
            const double s = std::sqrt(1.0 - z * z);
            const double log_bound = n * (std::log(z) + s - std::log1p(s));
            return log_bound < -700.0;
        }

        // Start order for the downward recurrence. The tail J_N / Y_N must be
        // negligible; beyond the turning point J decays like Ai((2/x)^(1/3) t).
        inline int miller_start(int n_max, double x)
        {
            const double base = std::max(static_cast<double>(n_max), std::ceil(x));
            return static_cast<int>(base + 30.0 + std::ceil(12.0 * std::cbrt(x)));
        }

        inline ext series(int n, double x)
        {
            const ext half = static_cast<ext>(x) / 2;
            ext lead;
            if (n < 150)
            {
                lead = 1;
                for (int i = 1; i <= n; ++i)
                    lead *= half / i;
            }
            else
                lead = std::exp(n * std::log(half) - std::lgamma(static_cast<ext>(n) + 1));

            const ext q = -half * half;
            ext term = 1, sum = 1;
            for (int k = 1; k < 200; ++k)
            {
                term *= q / (static_cast<ext>(k) * (n + k));
                sum += term;
                if (std::fabs(term) < 1e-22L * std::fabs(sum))
                    break;
            }
            return lead * sum;
        }

        // out[n] = J_n(x) for n = 0 .. out.size()-1, x > 0.
        inline void miller(double x, std::span<ext> out)
        {
            const int n_max = static_cast<int>(out.size()) - 1;
            const int start = miller_start(n_max, x);
            const ext two_over_x = 2.0L / static_cast<ext>(x);
            constexpr ext big = 1e1000L;
            constexpr ext rescale = 1e-1000L;

            std::fill(out.begin(), out.end(), ext(0));
            ext j_next = 0;         // J_{n+1}
            ext j_cur = 1e-30L;     // J_n, arbitrary seed at n = start
            ext norm = 0;
            ext order = static_cast<ext>(start);
            int n = start;
            // Above n_max only the recurrence and normalization run.
            for (; n > n_max && n >= 1; --n, order -= 1)
            {
                if ((n & 1) == 0)
                    norm += 2 * j_cur;
                const ext j_prev = order * two_over_x * j_cur - j_next;
                j_next = j_cur;
                j_cur = j_prev;
                if (std::fabs(j_cur) > big)
                {
                    j_cur *= rescale;
                    j_next *= rescale;
                    norm *= rescale;
                }
            }
            for (; n >= 1; --n, order -= 1)
            {
                out[n] = j_cur;
                if ((n & 1) == 0)
                    norm += 2 * j_cur;
                const ext j_prev = order * two_over_x * j_cur - j_next;
                j_next = j_cur;
                j_cur = j_prev;
                if (std::fabs(j_cur) > big)
                {
                    j_cur *= rescale;
                    j_next *= rescale;
                    norm *= rescale;
                    for (int i = n; i <= n_max; ++i)
                        out[i] *= rescale;
                }
            }
            out[0] = j_cur;
            norm += j_cur;
            const ext scale = 1 / norm;
            for (auto &v : out)
                v *= scale;
        }

        // J_n(x) = sqrt(2 / (pi x)) (P cos chi - Q sin chi), chi = x - (2n + 1) pi / 4.
        // Returns false when the expansion cannot reach full long double accuracy.
        inline bool hankel(int n, double x, ext &value)
        {
            const ext mu = 4.0L * static_cast<ext>(n) * n;
            const ext eight_x = 8.0L * static_cast<ext>(x);
            if (x < hankel_limit || mu > eight_x)
                return false;
            ext p = 1, q = 0, a = 1;
            bool converged = false;
            for (int k = 1; k < 400; ++k)
            {
                const ext odd = 2.0L * k - 1;
                const ext next = a * (mu - odd * odd) / (k * eight_x);
                if (std::fabs(next) > std::fabs(a))
                    return false;
                a = next;
                // a_k enters P (even k) or Q (odd k) with sign (-1)^floor(k/2)
                const ext signed_a = ((k / 2) & 1) ? -a : a;
                if (k & 1)
                    q += signed_a;
                else
                    p += signed_a;
                if (std::fabs(a) < 1e-21L)
                {
                    converged = true;
                    break;
                }
            }
            if (!converged)
                return false;

            // cos and sin of (2n + 1) pi / 4 are +-sqrt(2)/2 by octant
            constexpr ext h = 0.70710678118654752440084436210484903928L;
            const int octant = (2 * (n % 4) + 1) % 8;
            const ext c = (octant == 1 || octant == 7) ? h : -h;
            const ext s = (octant == 1 || octant == 3) ? h : -h;
            const ext cx = std::cos(static_cast<ext>(x)), sx = std::sin(static_cast<ext>(x));
            const ext cos_chi = cx * c + sx * s;
            const ext sin_chi = sx * c - cx * s;
            constexpr ext pi = 3.14159265358979323846264338327950288L;
            value = std::sqrt(2.0L / (pi * static_cast<ext>(x))) * (p * cos_chi - q * sin_chi);
            return true;
        }

        inline double from_ext(ext v) { return static_cast<double>(v); }
    }

    // J_n(x) for n = 0 .. out.size()-1 from a single evaluation pass.
    inline void bessel_j_sequence(double x, std::span<double> out)
    {
        if (out.empty())
            return;
        detail::check_args(static_cast<int>(std::min<std::size_t>(out.size() - 1, max_order)), x);
        if (out.size() - 1 > static_cast<std::size_t>(max_order))
            throw eldoa::argument_error("Bessel J: sequence length exceeds order guard");

        if (x == 0.0)
        {
            std::fill(out.begin(), out.end(), 0.0);
            out[0] = 1.0;
            return;
        }
        if (x < series_limit)
        {
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] = detail::negligible(static_cast<int>(n), x) ? 0.0 : detail::from_ext(detail::series(static_cast<int>(n), x));
            return;
        }
        thread_local std::vector<detail::ext> work;
        work.resize(out.size());
        detail::miller(x, work);
        std::transform(work.begin(), work.end(), out.begin(), detail::from_ext);
    }

    inline std::vector<double> bessel_j_sequence(int n_max, double x)
    {
        if (n_max < 0)
            throw eldoa::argument_error("Bessel J: negative sequence length");
        std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
        bessel_j_sequence(x, out);
        return out;
    }

    // J_m(x)
    inline double bessel_j(int m, double x)
    {
        detail::check_args(m, x);
        const int n = std::abs(m);
        double value;
        if (x == 0.0)
            value = n == 0 ? 1.0 : 0.0;
        else if (detail::negligible(n, x))
            value = 0.0;
        else if (x < series_limit)
            value = detail::from_ext(detail::series(n, x));
        else if (detail::ext h; detail::hankel(n, x, h))
            value = detail::from_ext(h);
        else
        {
            std::vector<detail::ext> work(static_cast<std::size_t>(n) + 1);
            detail::miller(x, work);
            value = detail::from_ext(work[n]);
        }
        return (m < 0 && (n & 1)) ? -value : value;
    }

    // J'_m(x) = (J_{m-1}(x) - J_{m+1}(x)) / 2
    inline double bessel_j_prime(int m, double x)
    {
        detail::check_args(m, x);
        if (m == max_order || m == -max_order)
            throw eldoa::argument_error("Bessel J': order at guard limit");
        return (bessel_j(m - 1, x) - bessel_j(m + 1, x)) / 2.0;
    }

    // Derivative from a precomputed non-negative sequence (seq[n] = J_n(x), n <= m+1).
    inline double derivative_from_sequence(std::span<const double> seq, int m)
    {
        const int n = std::abs(m);
        const double lower = n == 0 ? -seq[1] : seq[n - 1];
        const double d = (lower - seq[n + 1]) / 2.0;
        return (m < 0 && (n & 1)) ? -d : d;
    }
}

#endif
