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

#ifndef ELDOA_CHANNEL_HPP
#define ELDOA_CHANNEL_HPP

#include "csv.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "rng.hpp"
#include "types.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

namespace eldoa
{
    // One propagation path. Delay and distance are independent inputs: the delay
    // drives the response at the array center, the distance drives the spherical
    // geometry terms. Set distance_m = d and delay_s = d / c for a physical scene.
    struct incident_wave
    {
        double azimuth_deg = 0.0;
        double elevation_deg = 90.0; // 90 = array plane
        double delay_s = 0.0;
        double attenuation = 1.0;
        double distance_m = INFINITY;

        void validate() const
        {
            if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg))
                throw argument_error("wave: angles must be finite");
            if (!(delay_s >= 0.0) || !std::isfinite(delay_s))
                throw argument_error("wave: delay must be finite and >= 0");
            if (!(attenuation > 0.0) || !std::isfinite(attenuation))
                throw argument_error("wave: attenuation must be finite and > 0");
            if (!(distance_m > 0.0))
                throw argument_error("wave: source distance must be > 0");
        }

        bool operator==(const incident_wave &) const = default;
    };

    // K samples f_k = start + k B / K, k = 0 .. K-1. The step B / K makes the K-point
    // DFT over frequency land exactly on delays k / B, up to (K - 1) / B.
    struct frequency_grid
    {
        double start_hz = 28e9;
        double bandwidth_hz = 2e9;
        int samples = 100;

        double step_hz() const { return bandwidth_hz / samples; }
        double frequency_hz(int k) const { return start_hz + bandwidth_hz * k / samples; }
        double last_hz() const { return frequency_hz(samples - 1); }
        double center_hz() const { return start_hz + bandwidth_hz / 2.0; }
        double delay_resolution_s() const { return 1.0 / bandwidth_hz; }
        double max_delay_s() const { return (samples - 1) / bandwidth_hz; }

        void validate() const
        {
            if (!(start_hz > 0.0) || !std::isfinite(start_hz))
                throw argument_error("grid: start frequency must be positive");
            if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
                throw argument_error("grid: bandwidth must be positive");
            if (samples < 2)
                throw argument_error("grid: at least two frequency samples are required");
        }

        bool operator==(const frequency_grid &) const = default;
    };

    enum class channel_model
    {
        planewave,
        spherical
    };

    enum class channel_provenance
    {
        synthetic_spherical,
        synthetic_planewave,
        ingested
    };

    // Frequency response per sensor (rows, ring-major array order) and frequency sample (columns).
    struct channel_matrix
    {
        std::shared_ptr<const sensor_array> array;
        frequency_grid grid;
        complex_matrix values;
        channel_provenance provenance = channel_provenance::synthetic_planewave;

        std::size_t sensor_count() const { return static_cast<std::size_t>(values.rows()); }
        int samples() const { return static_cast<int>(values.cols()); }
    };

    namespace detail
    {
        // A delay tau is the phase -2 pi f tau; the geometric term +2 pi f (d_l - d_p) / c then
        // advances sensors nearer the source.
        inline double center_phase(const incident_wave &w, double f_hz)
        {
            return -2.0 * std::numbers::pi * f_hz * w.delay_s;
        }

        inline channel_matrix empty_channel(std::shared_ptr<const sensor_array> array, const frequency_grid &grid,
                                            channel_provenance prov)
        {
            if (!array)
                throw argument_error("channel: sensor array is null");
            grid.validate();
            channel_matrix ch;
            ch.grid = grid;
            ch.provenance = prov;
            ch.values = complex_matrix::Zero(static_cast<Eigen::Index>(array->sensor_count()), grid.samples);
            ch.array = std::move(array);
            return ch;
        }

        inline std::vector<const sensor *> flat_sensors(const sensor_array &array)
        {
            std::vector<const sensor *> out;
            out.reserve(array.sensor_count());
            for (const auto &ring : array.rings)
                for (const auto &s : ring.sensors)
                    out.push_back(&s);
            return out;
        }

        // Adds kappa * (d/d_p) * exp(j 2 pi f (tau + delta_d / c)) per sensor. For the
        // plane-wave model the ratio is 1 and delta_d = r sin(theta) cos(phi_l - phi_p).
        inline void accumulate_wave(channel_matrix &ch, const incident_wave &w, channel_model model)
        {
            w.validate();
            const double phi_l = deg_to_rad(w.azimuth_deg);
            const double sin_theta = std::sin(deg_to_rad(w.elevation_deg));
            const auto sensors = flat_sensors(*ch.array);
            if (model == channel_model::spherical)
            {
                if (!std::isfinite(w.distance_m))
                    throw domain_error("spherical model: source distance must be finite");
                if (w.distance_m <= ch.array->max_radius_m())
                    throw domain_error("spherical model: source lies inside the array (d_l <= max r_p)");
            }

            for (std::size_t p = 0; p < sensors.size(); ++p)
            {
                const double r = sensors[p]->radius_m();
                const double proj = r * sin_theta * std::cos(phi_l - sensors[p]->azimuth_rad());
                double ratio = 1.0;
                double delta_d = proj;
                if (model == channel_model::spherical)
                {
                    const double d = w.distance_m;
                    const double d_p = std::sqrt(d * d + r * r - 2.0 * d * proj);
                    // d - d_p without cancellation
                    delta_d = (2.0 * d * proj - r * r) / (d + d_p);
                    ratio = d / d_p;
                }
                for (int k = 0; k < ch.grid.samples; ++k)
                {
                    const double f = ch.grid.frequency_hz(k);
                    const double phase = center_phase(w, f) + 2.0 * std::numbers::pi * f * delta_d / speed_of_light;
                    ch.values(static_cast<Eigen::Index>(p), k) += w.attenuation * std::polar(ratio, phase);
                }
            }
        }
    }

    // H_l(f_k) = kappa exp(-j 2 pi f_k tau)
    inline std::vector<complex> wave_response_center(const incident_wave &wave, const frequency_grid &grid)
    {
        wave.validate();
        grid.validate();
        std::vector<complex> out(static_cast<std::size_t>(grid.samples));
        for (int k = 0; k < grid.samples; ++k)
            out[static_cast<std::size_t>(k)] = wave.attenuation * std::polar(1.0, detail::center_phase(wave, grid.frequency_hz(k)));
        return out;
    }

    // Far-field response, path loss ignored.
    inline channel_matrix synthesize_planewave(std::shared_ptr<const sensor_array> array, const incident_wave &wave,
                                               const frequency_grid &grid)
    {
        auto ch = detail::empty_channel(std::move(array), grid, channel_provenance::synthetic_planewave);
        detail::accumulate_wave(ch, wave, channel_model::planewave);
        return ch;
    }

    // Exact spherical-wave response including the d_l / d_{p,l} path-loss ratio.
    inline channel_matrix synthesize_spherical(std::shared_ptr<const sensor_array> array, const incident_wave &wave,
                                               const frequency_grid &grid)
    {
        auto ch = detail::empty_channel(std::move(array), grid, channel_provenance::synthetic_spherical);
        detail::accumulate_wave(ch, wave, channel_model::spherical);
        return ch;
    }

    // Sum of the per-wave responses, accumulated in scene order.
    inline channel_matrix superpose(std::span<const incident_wave> scene, std::shared_ptr<const sensor_array> array,
                                    const frequency_grid &grid, channel_model model)
    {
        if (scene.empty())
            throw argument_error("superpose: scene has no waves");
        auto ch = detail::empty_channel(std::move(array), grid,
                                        model == channel_model::spherical ? channel_provenance::synthetic_spherical
                                                                          : channel_provenance::synthetic_planewave);
        for (const auto &w : scene)
            detail::accumulate_wave(ch, w, model);
        return ch;
    }

    // Circularly-symmetric complex Gaussian noise with variance mean|H|^2 / 10^(snr/10).
    // snr_db = +infinity returns the input unchanged.
    inline channel_matrix add_awgn(const channel_matrix &channel, double snr_db, std::uint64_t seed)
    {
        if (std::isnan(snr_db) || snr_db == -INFINITY)
            throw argument_error("add_awgn: SNR must be finite or +infinity");
        channel_matrix out = channel;
        if (snr_db == INFINITY || channel.values.size() == 0)
            return out;
        const double signal_power = channel.values.cwiseAbs2().mean();
        const double noise_var = signal_power / std::pow(10.0, snr_db / 10.0);
        const double scale = std::sqrt(noise_var / 2.0);
        const counter_rng rng(seed, 0x61776e ^ 0x1ULL);
        for (Eigen::Index i = 0; i < out.values.size(); ++i)
        {
            const auto [nr, ni] = rng.normal_pair(static_cast<std::uint64_t>(i));
            out.values.data()[i] += complex(scale * nr, scale * ni);
        }
        return out;
    }

    inline constexpr const char *channel_csv_header = "p,f_hz,re,im";

    // p is the global sensor row (ring-major order of the geometry file).
    inline void write_channel_csv(std::ostream &out, const channel_matrix &ch)
    {
        out << channel_csv_header << '\n';
        for (Eigen::Index p = 0; p < ch.values.rows(); ++p)
            for (int k = 0; k < ch.samples(); ++k)
            {
                const complex v = ch.values(p, k);
                out << p << ',' << csv::format_double(ch.grid.frequency_hz(k)) << ',' << csv::format_double(v.real())
                    << ',' << csv::format_double(v.imag()) << '\n';
            }
    }

    // Reads a channel file against a known geometry. The frequency grid is inferred
    // from the first sensor and must be uniform within 1e-6 relative; an expected grid that
    // reproduces the recorded frequencies exactly is used as is.
    inline channel_matrix ingest_channel(std::istream &in, std::shared_ptr<const sensor_array> array,
                                         const frequency_grid *expected_grid = nullptr)
    {
        if (!array)
            throw argument_error("ingest: sensor array is null");
        csv::reader rd(in, channel_csv_header);
        std::vector<std::vector<double>> freqs;
        std::vector<std::vector<complex>> vals;
        std::vector<std::string_view> f;
        while (rd.next(f, 4))
        {
            const long p = csv::parse_int(f[0], rd.line());
            const double fr = csv::parse_double(f[1], rd.line());
            const double re = csv::parse_double(f[2], rd.line());
            const double im = csv::parse_double(f[3], rd.line());
            if (!std::isfinite(fr) || !std::isfinite(re) || !std::isfinite(im))
                throw ingest_error(ingest_failure::non_finite_value,
                                   "line " + std::to_string(rd.line()) + ": non-finite value");
            if (p == static_cast<long>(freqs.size()))
            {
                freqs.emplace_back();
                vals.emplace_back();
            }
            if (p != static_cast<long>(freqs.size()) - 1)
                throw ingest_error(ingest_failure::malformed,
                                   "line " + std::to_string(rd.line()) + ": rows must be sorted by sensor index starting at 0");
            if (!freqs.back().empty() && !(fr > freqs.back().back()))
                throw ingest_error(ingest_failure::malformed,
                                   "line " + std::to_string(rd.line()) + ": frequencies must ascend within a sensor");
            freqs.back().push_back(fr);
            vals.back().emplace_back(re, im);
        }

        if (freqs.size() != array->sensor_count())
            throw ingest_error(ingest_failure::dimension_mismatch,
                               "channel has " + std::to_string(freqs.size()) + " sensors, geometry has " +
                                   std::to_string(array->sensor_count()));
        const std::size_t K = freqs.front().size();
        if (K < 2)
            throw ingest_error(ingest_failure::dimension_mismatch, "channel needs at least two frequency samples");
        for (std::size_t p = 0; p < freqs.size(); ++p)
        {
            if (freqs[p].size() != K)
                throw ingest_error(ingest_failure::dimension_mismatch,
                                   "sensor " + std::to_string(p) + " has " + std::to_string(freqs[p].size()) +
                                       " samples, expected " + std::to_string(K));
            for (std::size_t k = 0; k < K; ++k)
                if (std::fabs(freqs[p][k] - freqs[0][k]) > 1e-9 * freqs[0][k])
                    throw ingest_error(ingest_failure::non_uniform_grid,
                                       "sensor " + std::to_string(p) + " uses a different frequency list");
        }

        const auto &f0 = freqs.front();
        const double step = (f0.back() - f0.front()) / static_cast<double>(K - 1);
        for (std::size_t k = 1; k < K; ++k)
            if (std::fabs((f0[k] - f0[k - 1]) - step) > 1e-6 * step)
                throw ingest_error(ingest_failure::non_uniform_grid,
                                   "frequency step at sample " + std::to_string(k) + " deviates from uniform");

        // Prefer a grid that regenerates the recorded frequencies exactly, so an exported channel
        // reads back to the same grid: the caller's expected grid first, then the bandwidths
        // nearest the estimate. Otherwise keep the estimate.
        const auto reproduces = [&](const frequency_grid &g)
        {
            if (g.samples != static_cast<int>(K) || g.start_hz != f0.front())
                return false;
            for (std::size_t k = 0; k < K; ++k)
                if (g.frequency_hz(static_cast<int>(k)) != f0[k])
                    return false;
            return true;
        };
        channel_matrix ch;
        ch.grid = frequency_grid{f0.front(), step * static_cast<double>(K), static_cast<int>(K)};
        if (expected_grid && reproduces(*expected_grid))
            ch.grid = *expected_grid;
        else
        {
            double up = ch.grid.bandwidth_hz, down = ch.grid.bandwidth_hz;
            for (int i = 0; i <= 8; ++i)
            {
                if (reproduces(frequency_grid{f0.front(), up, static_cast<int>(K)}))
                {
                    ch.grid.bandwidth_hz = up;
                    break;
                }
                if (reproduces(frequency_grid{f0.front(), down, static_cast<int>(K)}))
                {
                    ch.grid.bandwidth_hz = down;
                    break;
                }
                up = std::nextafter(up, std::numeric_limits<double>::infinity());
                down = std::nextafter(down, 0.0);
            }
        }
        ch.provenance = channel_provenance::ingested;
        ch.values.resize(static_cast<Eigen::Index>(freqs.size()), static_cast<Eigen::Index>(K));
        for (std::size_t p = 0; p < vals.size(); ++p)
            for (std::size_t k = 0; k < K; ++k)
                ch.values(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k)) = vals[p][k];
        ch.array = std::move(array);
        return ch;
    }
}

#endif
