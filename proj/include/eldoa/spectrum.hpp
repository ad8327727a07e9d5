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

#ifndef ELDOA_SPECTRUM_HPP
#define ELDOA_SPECTRUM_HPP

#include "beamform.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eldoa
{
    // Magnitude of the joint azimuth-delay transform of a mode matrix.
    //   rows    : azimuth bins, phi_q = q * 360 / (M * pad_az) degrees
    //   columns : delay bins,   tau_k = k / (B * pad_delay) seconds
    struct joint_spectrum
    {
        mode_range modes;
        frequency_grid grid;
        int pad_az = 1;
        int pad_delay = 1;
        real_matrix magnitude;

        int azimuth_bins() const { return static_cast<int>(magnitude.rows()); }
        int delay_bins() const { return static_cast<int>(magnitude.cols()); }
        double azimuth_step_deg() const { return 360.0 / azimuth_bins(); }
        double delay_step_s() const { return 1.0 / (grid.bandwidth_hz * pad_delay); }
        double azimuth_deg(int q) const { return q * 360.0 / azimuth_bins(); }
        double delay_s(int k) const { return k / (grid.bandwidth_hz * pad_delay); }

        // Nearest bin to an azimuth (any real value, wrapped) and a delay (clamped to the axis).
        int azimuth_bin(double phi_deg) const
        {
            const double wrapped = phi_deg - 360.0 * std::floor(phi_deg / 360.0);
            return static_cast<int>(std::llround(wrapped / azimuth_step_deg())) % azimuth_bins();
        }
        int delay_bin(double tau_s) const
        {
            const long k = std::lround(tau_s / delay_step_s());
            return static_cast<int>(std::clamp<long>(k, 0, delay_bins() - 1));
        }
    };

    // S(phi_q, tau_k) = | sum_m sum_k' H[m][k'] exp(-j m phi_q) exp(+j 2 pi (f_k' - f_start) tau_k) |
    // Mode m sits in row (m mod Na); padding appends zeros on both axes. The delay axis uses
    // the positive kernel because a delay enters the channel as exp(-j 2 pi f tau).
    inline joint_spectrum make_joint_spectrum(const mode_matrix &modes, int pad_az = 1, int pad_delay = 1)
    {
        if (pad_az < 1 || pad_delay < 1)
            throw argument_error("joint spectrum: pad factors must be >= 1");
        if (!modes.values.allFinite())
            throw domain_error("joint spectrum: mode matrix contains non-finite values");
        const int M = modes.modes.count();
        const int K = static_cast<int>(modes.values.cols());
        if (modes.values.rows() != M || K == 0)
            throw argument_error("joint spectrum: mode matrix shape does not match its mode range");
        const int Na = M * pad_az;
        const int Nd = K * pad_delay;

        complex_matrix work = complex_matrix::Zero(Na, Nd);
        for (int row = 0; row < M; ++row)
        {
            const int m = modes.modes.mode(row);
            const int dest = ((m % Na) + Na) % Na;
            work.row(dest).head(K) = modes.values.row(row);
        }
        fft::forward_2d(work);

        joint_spectrum out;
        out.modes = modes.modes;
        out.grid = modes.grid;
        out.pad_az = pad_az;
        out.pad_delay = pad_delay;
        out.magnitude.resize(Na, Nd);
        // Forward bin (Nd - k) mod Nd carries the exp(+j ...) sum for delay bin k.
        for (int q = 0; q < Na; ++q)
            for (int k = 0; k < Nd; ++k)
                out.magnitude(q, k) = std::abs(work(q, (Nd - k) % Nd));
        return out;
    }

    // Artifact neighbourhood, counted in unpadded bins and scaled by the pad factors.
    struct exclusion_window
    {
        int azimuth_bins = 2;
        int delay_bins = 2;

        bool operator==(const exclusion_window &) const = default;
    };

    struct spectrum_peak
    {
        int azimuth_bin = 0;
        int delay_bin = 0;
        double azimuth_deg = 0.0;
        double delay_s = 0.0;
        double magnitude = 0.0;
    };

    struct expected_peak
    {
        double azimuth_deg = 0.0;
        double delay_s = 0.0;
    };

    struct peak_report
    {
        spectrum_peak main;
        std::optional<spectrum_peak> artifact; // largest local maximum outside the window
        double delta_db = std::numeric_limits<double>::infinity();
        std::vector<spectrum_peak> ranked;     // local maxima, strongest first
    };

    namespace detail
    {
        inline spectrum_peak make_peak(const joint_spectrum &s, int q, int k)
        {
            return {q, k, s.azimuth_deg(q), s.delay_s(k), s.magnitude(q, k)};
        }

        inline int cyclic_distance(int a, int b, int n)
        {
            const int d = std::abs(a - b) % n;
            return std::min(d, n - d);
        }

        // Strictly greater than all 8 neighbours; azimuth wraps, delay does not.
        inline bool is_local_max(const real_matrix &s, int q, int k)
        {
            const int Na = static_cast<int>(s.rows());
            const int Nd = static_cast<int>(s.cols());
            const double v = s(q, k);
            for (int dq = -1; dq <= 1; ++dq)
            {
                const int qq = ((q + dq) % Na + Na) % Na;
                for (int dk = -1; dk <= 1; ++dk)
                {
                    if (dq == 0 && dk == 0)
                        continue;
                    const int kk = k + dk;
                    if (kk < 0 || kk >= Nd)
                        continue;
                    if (qq == q && kk == k)
                        continue;
                    if (!(v > s(qq, kk)))
                        return false;
                }
            }
            return true;
        }
    }

    inline peak_report find_peaks(const joint_spectrum &spectrum, std::optional<expected_peak> expected = std::nullopt,
                                  exclusion_window window = {}, std::size_t top_n = 10)
    {
        const auto &s = spectrum.magnitude;
        if (s.size() == 0)
            throw argument_error("find_peaks: empty spectrum");
        if (window.azimuth_bins < 0 || window.delay_bins < 0)
            throw argument_error("find_peaks: exclusion window must be non-negative");
        if (!(s.maxCoeff() > 0.0))
            throw degenerate_input_error("find_peaks: spectrum is identically zero");

        const int Na = spectrum.azimuth_bins();
        const int Nd = spectrum.delay_bins();
        const int wq = window.azimuth_bins * spectrum.pad_az;
        const int wk = window.delay_bins * spectrum.pad_delay;
        const auto inside = [&](int q0, int k0, int q, int k)
        { return detail::cyclic_distance(q, q0, Na) <= wq && std::abs(k - k0) <= wk; };

        // Main peak; strict comparison in row-major order breaks ties towards the lowest (q, k).
        int q0 = -1, k0 = -1;
        double best = -1.0;
        std::optional<int> eq, ek;
        if (expected)
        {
            eq = spectrum.azimuth_bin(expected->azimuth_deg);
            ek = spectrum.delay_bin(expected->delay_s);
        }
        for (int q = 0; q < Na; ++q)
            for (int k = 0; k < Nd; ++k)
                if ((!expected || inside(*eq, *ek, q, k)) && s(q, k) > best)
                {
                    best = s(q, k);
                    q0 = q;
                    k0 = k;
                }

        peak_report report;
        report.main = detail::make_peak(spectrum, q0, k0);

        for (int q = 0; q < Na; ++q)
            for (int k = 0; k < Nd; ++k)
                if (detail::is_local_max(s, q, k))
                {
                    const auto p = detail::make_peak(spectrum, q, k);
                    report.ranked.push_back(p);
                    if (!inside(q0, k0, q, k) && (!report.artifact || p.magnitude > report.artifact->magnitude))
                        report.artifact = p;
                }
        std::stable_sort(report.ranked.begin(), report.ranked.end(),
                         [](const spectrum_peak &a, const spectrum_peak &b) { return a.magnitude > b.magnitude; });
        if (report.ranked.size() > top_n)
            report.ranked.resize(top_n);

        if (report.artifact)
            report.delta_db = report.artifact->magnitude > 0.0
                                  ? 20.0 * std::log10(report.main.magnitude / report.artifact->magnitude)
                                  : std::numeric_limits<double>::infinity();
        return report;
    }

    inline constexpr const char *spectrum_csv_header = "phi_deg,tau_s,mag_db";
    inline constexpr double display_range_db = 35.0;

    // dB relative to the global maximum, -inf for exact zeros. Azimuth-major.
    inline void write_spectrum_csv(std::ostream &out, const joint_spectrum &spectrum)
    {
        const double peak = spectrum.magnitude.maxCoeff();
        out << spectrum_csv_header << '\n';
        for (int q = 0; q < spectrum.azimuth_bins(); ++q)
            for (int k = 0; k < spectrum.delay_bins(); ++k)
            {
                const double v = spectrum.magnitude(q, k);
                const double db = v > 0.0 ? 20.0 * std::log10(v / peak) : -std::numeric_limits<double>::infinity();
                out << csv::format_double(spectrum.azimuth_deg(q)) << ',' << csv::format_double(spectrum.delay_s(k)) << ','
                    << csv::format_double(db) << '\n';
            }
    }

    // Binary 8-bit graymap: one row per azimuth bin (ascending), one column per delay bin
    // (ascending); 255 at the peak, 0 at or below -range_db.
    inline void write_spectrum_pgm(std::ostream &out, const joint_spectrum &spectrum, double range_db = display_range_db)
    {
        if (!(range_db > 0.0))
            throw argument_error("heatmap: dynamic range must be positive");
        const double peak = spectrum.magnitude.maxCoeff();
        out << "P5\n" << spectrum.delay_bins() << ' ' << spectrum.azimuth_bins() << "\n255\n";
        std::vector<unsigned char> row(static_cast<std::size_t>(spectrum.delay_bins()));
        for (int q = 0; q < spectrum.azimuth_bins(); ++q)
        {
            for (int k = 0; k < spectrum.delay_bins(); ++k)
            {
                const double v = spectrum.magnitude(q, k);
                const double db = (v > 0.0 && peak > 0.0) ? 20.0 * std::log10(v / peak) : -range_db;
                const double level = std::clamp((db + range_db) / range_db, 0.0, 1.0);
                row[static_cast<std::size_t>(k)] = static_cast<unsigned char>(std::lround(255.0 * level));
            }
            out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size()));
        }
    }

    // Structured text form of a peak report; one "key value" pair per line.
    inline void write_peak_report(std::ostream &out, const peak_report &report)
    {
        const auto put = [&](const std::string &prefix, const spectrum_peak &p)
        {
            out << prefix << "_azimuth_deg " << csv::format_double(p.azimuth_deg) << '\n'
                << prefix << "_delay_s " << csv::format_double(p.delay_s) << '\n'
                << prefix << "_magnitude " << csv::format_double(p.magnitude) << '\n';
        };
        put("main", report.main);
        if (report.artifact)
            put("artifact", *report.artifact);
        out << "delta_db " << csv::format_double(report.delta_db) << '\n';
        for (std::size_t i = 0; i < report.ranked.size(); ++i)
        {
            const auto &p = report.ranked[i];
            out << "rank " << i + 1 << ' ' << csv::format_double(p.azimuth_deg) << ' ' << csv::format_double(p.delay_s)
                << ' ' << csv::format_double(p.magnitude) << '\n';
        }
    }
}

#endif
