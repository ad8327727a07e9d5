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

#ifndef ELDOA_PIPELINE_HPP
#define ELDOA_PIPELINE_HPP

#include "beamform.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "spectrum.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eldoa
{
    // How the mode half-width M_h is chosen.
    //   fixed     : half_width as given
    //   threshold : mode_limit(array, grid, threshold)
    //   argument  : floor(2 pi f_min r_min / c), where J_m(x) starts its decay
    enum class mode_rule
    {
        fixed,
        threshold,
        argument
    };

    struct mode_choice
    {
        mode_rule rule = mode_rule::argument;
        int half_width = 0;
        double threshold = default_mode_threshold;

        bool operator==(const mode_choice &) const = default;
    };

    // Main peak selection: global maximum, or the maximum near the first wave of the scene.
    enum class peak_reference
    {
        global,
        first_wave
    };

    struct processing_options
    {
        filter_design design = filter_design::robust;
        mode_choice modes;
        std::optional<reduction> reduce; // empty: strongest the geometry allows
        int pad_az = 1;
        int pad_delay = 1;
        exclusion_window exclusion;
        peak_reference reference = peak_reference::global;
        double snr_db = INFINITY;
        std::uint64_t seed = 0;
        int top_n = 10;

        bool operator==(const processing_options &) const = default;
    };

    struct scenario
    {
        std::vector<ellipse_spec> rings{ellipse_spec{}};
        frequency_grid grid;
        channel_model model = channel_model::planewave;
        std::vector<incident_wave> waves{incident_wave{}};
        processing_options processing;

        bool operator==(const scenario &) const = default;
    };

    struct run_flags
    {
        bool allow_undersampled = false;
        bool force_modes = false;
    };

    inline int argument_mode_limit(const sensor_array &array, const frequency_grid &grid)
    {
        const double x_min = detail::filter_argument(array.min_radius_m(), grid.start_hz);
        return static_cast<int>(std::floor(x_min));
    }

    inline int resolve_half_width(const mode_choice &choice, const sensor_array &array, const frequency_grid &grid,
                                  filter_design design)
    {
        switch (choice.rule)
        {
        case mode_rule::fixed:
            if (choice.half_width < 0)
                throw argument_error("modes: half_width must be >= 0");
            return choice.half_width;
        case mode_rule::threshold:
            return mode_limit(array, grid, choice.threshold, design);
        case mode_rule::argument:
            return argument_mode_limit(array, grid);
        }
        throw argument_error("modes: unknown rule");
    }

    struct pipeline_result
    {
        std::shared_ptr<const sensor_array> array;
        nyquist_report nyquist;
        int mode_ceiling = 0; // mode_limit at the configured threshold
        int half_width = 0;
        reduction reduce = reduction::none;
        std::size_t unique_evaluations = 0;
        std::size_t full_weights = 0;
        channel_matrix channel;
        mode_matrix modes;
        joint_spectrum spectrum;
        peak_report peaks;
    };

    namespace detail
    {
        inline void check_processing(const processing_options &proc)
        {
            if (proc.pad_az < 1 || proc.pad_delay < 1)
                throw argument_error("processing: pad factors must be >= 1");
            if (proc.exclusion.azimuth_bins < 0 || proc.exclusion.delay_bins < 0)
                throw argument_error("processing: exclusion window must be non-negative");
            if (proc.top_n < 1)
                throw argument_error("processing: top_n must be >= 1");
            if (std::isnan(proc.snr_db) || proc.snr_db == -INFINITY)
                throw argument_error("processing: snr_db must be finite or .inf");
            if (!(proc.modes.threshold > 0.0))
                throw argument_error("processing: mode threshold must be positive");
        }

        inline void audit_or_throw(const nyquist_report &report, const run_flags &flags)
        {
            if (!report.pass && !flags.allow_undersampled)
                throw validation_error("array is spatially undersampled: largest sensor spacing " +
                                       std::to_string(report.max_spacing_m * 1e3) + " mm exceeds half a wavelength (" +
                                       std::to_string(report.wavelength_m / 2.0 * 1e3) + " mm)");
        }

        // Beamforming, transform and peak search on an existing channel.
        // Simulated channels receive the scenario's noise; ingested ones are used as measured.
        inline pipeline_result process(const scenario &sc, channel_matrix channel, const run_flags &flags, bool simulated)
        {
            check_processing(sc.processing);
            const auto &proc = sc.processing;
            pipeline_result out;
            out.array = channel.array;
            out.nyquist = nyquist_audit(*channel.array, channel.grid.start_hz + channel.grid.bandwidth_hz);
            audit_or_throw(out.nyquist, flags);

            out.mode_ceiling = mode_limit(*channel.array, channel.grid, proc.modes.threshold, proc.design);
            out.half_width = resolve_half_width(proc.modes, *channel.array, channel.grid, proc.design);
            if (out.half_width > out.mode_ceiling && !flags.force_modes)
                throw validation_error("mode half-width " + std::to_string(out.half_width) + " exceeds the stable limit " +
                                       std::to_string(out.mode_ceiling) + " (use --force-modes to override)");

            out.reduce = proc.reduce.value_or(best_reduction(*channel.array));
            const auto bank = build_bank(*channel.array, channel.grid, proc.design, {out.half_width}, out.reduce);
            out.unique_evaluations = bank.unique_evaluations();
            out.full_weights = bank.full_weights();

            out.channel = simulated ? add_awgn(channel, proc.snr_db, proc.seed) : std::move(channel);
            out.modes = expand_array(out.channel, bank);
            out.spectrum = make_joint_spectrum(out.modes, proc.pad_az, proc.pad_delay);

            std::optional<expected_peak> expected;
            if (proc.reference == peak_reference::first_wave && !sc.waves.empty())
                expected = expected_peak{sc.waves.front().azimuth_deg, sc.waves.front().delay_s};
            out.peaks = find_peaks(out.spectrum, expected, proc.exclusion, static_cast<std::size_t>(proc.top_n));
            return out;
        }
    }

    inline std::shared_ptr<const sensor_array> build_scenario_array(const scenario &sc)
    {
        return std::make_shared<const sensor_array>(build_concentric(sc.rings));
    }

    // geometry -> channel -> filter bank -> mode expansion -> joint spectrum -> peaks
    inline pipeline_result run_pipeline(const scenario &sc, const run_flags &flags = {})
    {
        sc.grid.validate();
        if (sc.waves.empty())
            throw argument_error("scenario: no incident waves");
        auto array = build_scenario_array(sc);
        detail::audit_or_throw(nyquist_audit(*array, sc.grid.start_hz + sc.grid.bandwidth_hz), flags);
        auto channel = superpose(sc.waves, array, sc.grid, sc.model);
        return detail::process(sc, std::move(channel), flags, true);
    }

    // Same processing on a channel that was measured or read from disk. The scene, if any,
    // only serves as the peak reference, and no noise is added.
    inline pipeline_result process_channel(const scenario &sc, channel_matrix channel, const run_flags &flags = {})
    {
        if (!channel.array)
            throw argument_error("process_channel: channel has no geometry");
        return detail::process(sc, std::move(channel), flags, false);
    }

    enum class sweep_axis
    {
        azimuth_deg,
        elevation_deg,
        delay_s,
        eccentricity,
        rotation_deg,
        sigma_wavelengths,
        snr_db
    };

    // Overrides applied to every ring before the sweep values.
    struct sweep_series
    {
        std::string label;
        std::optional<double> eccentricity;
        std::optional<double> semi_major_m;

        bool operator==(const sweep_series &) const = default;
    };

    struct sweep_spec
    {
        sweep_axis axis = sweep_axis::azimuth_deg;
        std::vector<double> values;
        std::vector<sweep_series> series;   // empty: the scenario as is
        std::vector<std::uint64_t> seeds;   // empty: the scenario's seeds
        bool snap_azimuth = true;           // move the first wave onto the nearest azimuth bin

        bool operator==(const sweep_spec &) const = default;
    };

    struct sweep_row
    {
        std::string series;
        double value = 0.0;
        std::uint64_t seed = 0;
        double azimuth_deg = 0.0;  // first wave as simulated, after snapping
        double delay_s = 0.0;
        int half_width = 0;
        double peak_azimuth_deg = 0.0;
        double peak_delay_s = 0.0;
        double delta_db = 0.0;
    };

    // Scenario for one sweep point, before azimuth snapping.
    inline scenario sweep_point(const scenario &base, const sweep_spec &spec, const sweep_series *series, double value,
                                std::optional<std::uint64_t> seed)
    {
        scenario sc = base;
        if (series)
            for (auto &ring : sc.rings)
            {
                if (series->eccentricity)
                    ring.eccentricity = *series->eccentricity;
                if (series->semi_major_m)
                    ring.semi_major_m = *series->semi_major_m;
            }
        if (seed)
        {
            for (auto &ring : sc.rings)
                ring.noise_seed = *seed;
            sc.processing.seed = *seed;
        }
        if (sc.waves.empty())
            throw argument_error("sweep: scenario has no incident waves");
        auto &wave = sc.waves.front();
        switch (spec.axis)
        {
        case sweep_axis::azimuth_deg:
            wave.azimuth_deg = value - 360.0 * std::floor(value / 360.0);
            break;
        case sweep_axis::elevation_deg:
            wave.elevation_deg = value;
            break;
        case sweep_axis::delay_s:
            wave.delay_s = value;
            break;
        case sweep_axis::eccentricity:
            for (auto &ring : sc.rings)
                ring.eccentricity = value;
            break;
        case sweep_axis::rotation_deg:
            for (auto &ring : sc.rings)
                ring.rotation_deg = value - 360.0 * std::floor(value / 360.0);
            break;
        case sweep_axis::sigma_wavelengths:
        {
            const double lambda = speed_of_light / sc.grid.center_hz();
            for (auto &ring : sc.rings)
                ring.position_noise_sigma_m = value * lambda;
            break;
        }
        case sweep_axis::snr_db:
            sc.processing.snr_db = value;
            break;
        }
        return sc;
    }

    // Moves the first wave onto the centre of its nearest azimuth bin for the resolved mode count.
    inline void snap_first_wave(scenario &sc, const sensor_array &array)
    {
        const int half_width = resolve_half_width(sc.processing.modes, array, sc.grid, sc.processing.design);
        const int bins = (2 * half_width + 1) * sc.processing.pad_az;
        const double step = 360.0 / bins;
        auto &wave = sc.waves.front();
        const long q = std::lround(wave.azimuth_deg / step) % bins;
        wave.azimuth_deg = q * step;
    }

    // One full pipeline run per (series, value, seed), in that nesting order.
    inline std::vector<sweep_row> delta_sweep(const scenario &base, const sweep_spec &spec, const run_flags &flags = {})
    {
        if (spec.values.empty())
            throw argument_error("sweep: no axis values");
        std::vector<const sweep_series *> series;
        if (spec.series.empty())
            series.push_back(nullptr);
        for (const auto &s : spec.series)
            series.push_back(&s);
        std::vector<std::optional<std::uint64_t>> seeds;
        if (spec.seeds.empty())
            seeds.push_back(std::nullopt);
        for (auto s : spec.seeds)
            seeds.push_back(s);

        std::vector<sweep_row> rows;
        for (const auto *s : series)
            for (double value : spec.values)
                for (const auto &seed : seeds)
                {
                    scenario sc = sweep_point(base, spec, s, value, seed);
                    if (spec.snap_azimuth)
                        snap_first_wave(sc, *build_scenario_array(sc));
                    const auto result = run_pipeline(sc, flags);
                    sweep_row row;
                    row.series = s ? s->label : std::string();
                    row.value = value;
                    row.seed = sc.processing.seed;
                    row.azimuth_deg = sc.waves.front().azimuth_deg;
                    row.delay_s = sc.waves.front().delay_s;
                    row.half_width = result.half_width;
                    row.peak_azimuth_deg = result.peaks.main.azimuth_deg;
                    row.peak_delay_s = result.peaks.main.delay_s;
                    row.delta_db = result.peaks.delta_db;
                    rows.push_back(row);
                }
        return rows;
    }

    inline constexpr const char *sweep_csv_header =
        "series,value,seed,azimuth_deg,delay_s,half_width,peak_azimuth_deg,peak_delay_s,delta_db";

    inline void write_sweep_csv(std::ostream &out, const std::vector<sweep_row> &rows)
    {
        out << sweep_csv_header << '\n';
        for (const auto &r : rows)
            out << r.series << ',' << csv::format_double(r.value) << ',' << r.seed << ','
                << csv::format_double(r.azimuth_deg) << ',' << csv::format_double(r.delay_s) << ',' << r.half_width << ','
                << csv::format_double(r.peak_azimuth_deg) << ',' << csv::format_double(r.peak_delay_s) << ','
                << csv::format_double(r.delta_db) << '\n';
    }
}

#endif
