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

#ifndef ELDOA_GEOMETRY_HPP
#define ELDOA_GEOMETRY_HPP

#include "csv.hpp"
#include "errors.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace eldoa
{
    inline constexpr double speed_of_light = 299792458.0; // m/s

    constexpr double deg_to_rad(double deg) noexcept { return deg * (std::numbers::pi / 180.0); }
    constexpr double rad_to_deg(double rad) noexcept { return rad * (180.0 / std::numbers::pi); }

    // Placement recipe for one elliptical ring. Angles in degrees, lengths in meters.
    struct ellipse_spec
    {
        double semi_major_m = 0.5;
        double eccentricity = 0.0;          // [0, 1)
        double rotation_deg = 0.0;          // counter-clockwise, [0, 360)
        int sensor_count = 720;             // >= 4
        double position_noise_sigma_m = 0;  // 0 = exact placement
        std::uint64_t noise_seed = 0;

        double semi_minor_m() const { return semi_major_m * std::sqrt(1.0 - eccentricity * eccentricity); }

        // Exact 4-fold symmetry in the elliptic angle, required by the quadrant reduction
        bool quadrant_symmetric() const { return position_noise_sigma_m == 0.0 && sensor_count % 4 == 0; }

        void validate() const
        {
            if (!(semi_major_m > 0.0) || !std::isfinite(semi_major_m))
                throw argument_error("ellipse: semi-major axis must be positive");
            if (!(eccentricity >= 0.0 && eccentricity < 1.0))
                throw argument_error("ellipse: eccentricity must lie in [0, 1)");
            if (!(rotation_deg >= 0.0 && rotation_deg < 360.0))
                throw argument_error("ellipse: rotation must lie in [0, 360) degrees");
            if (sensor_count < 4)
                throw argument_error("ellipse: at least 4 sensors are required");
            if (!(position_noise_sigma_m >= 0.0) || !std::isfinite(position_noise_sigma_m))
                throw argument_error("ellipse: position noise sigma must be >= 0");
        }

        bool operator==(const ellipse_spec &) const = default;
    };

    // One sensor. Polar descriptors are always derived from (x, y).
    struct sensor
    {
        int index = 0; // position within its ring
        int ring = 0;
        double x_m = 0.0;
        double y_m = 0.0;

        double radius_m() const { return std::hypot(x_m, y_m); }
        double azimuth_rad() const { return std::atan2(y_m, x_m); }

        bool operator==(const sensor &) const = default;
    };

    struct sensor_ring
    {
        int index = 0;
        std::optional<ellipse_spec> spec; // empty for ingested geometries
        std::vector<sensor> sensors;

        double min_radius_m() const
        {
            double r = INFINITY;
            for (const auto &s : sensors)
                r = std::min(r, s.radius_m());
            return r;
        }

        double max_radius_m() const
        {
            double r = 0.0;
            for (const auto &s : sensors)
                r = std::max(r, s.radius_m());
            return r;
        }

        // (a + b) / 2 from the recipe, or (max r_p + min r_p) / 2 for ingested rings
        double average_radius_m() const
        {
            if (spec)
                return (spec->semi_major_m + spec->semi_minor_m()) / 2.0;
            return (max_radius_m() + min_radius_m()) / 2.0;
        }

        // Built from a recipe with exact placement (no position noise)
        bool exact_circle() const
        {
            return spec && spec->eccentricity == 0.0 && spec->position_noise_sigma_m == 0.0;
        }
    };

    enum class array_provenance
    {
        built,
        ingested
    };

    // Concentric rings sharing the origin as center.
    class sensor_array
    {
    public:
        std::vector<sensor_ring> rings;
        array_provenance provenance = array_provenance::built;

        std::size_t sensor_count() const
        {
            std::size_t n = 0;
            for (const auto &r : rings)
                n += r.sensors.size();
            return n;
        }

        // Global row of the first sensor of ring `ring` (rings are stored ring-major)
        std::size_t offset(std::size_t ring) const
        {
            std::size_t n = 0;
            for (std::size_t i = 0; i < ring; ++i)
                n += rings[i].sensors.size();
            return n;
        }

        double min_radius_m() const
        {
            double r = INFINITY;
            for (const auto &ring : rings)
                r = std::min(r, ring.min_radius_m());
            return r;
        }

        double max_radius_m() const
        {
            double r = 0.0;
            for (const auto &ring : rings)
                r = std::max(r, ring.max_radius_m());
            return r;
        }
    };

    // Sensor p at elliptic angle eta_p = 2 pi p / P, rotated counter-clockwise by alpha:
    //   x = a cos(eta) cos(alpha) - b sin(eta) sin(alpha)
    //   y = a cos(eta) sin(alpha) + b sin(eta) cos(alpha)
    // Optional Gaussian offsets with sigma/sqrt(2) per axis, drawn from stream
    // (noise_seed, ring_index).
    inline std::vector<sensor> build_ellipse(const ellipse_spec &spec, int ring_index = 0)
    {
        spec.validate();
        const double a = spec.semi_major_m;
        const double b = spec.semi_minor_m();
        const double alpha = deg_to_rad(spec.rotation_deg);
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        const int count = spec.sensor_count;
        const double sigma_axis = spec.position_noise_sigma_m / std::numbers::sqrt2;
        const counter_rng rng(spec.noise_seed, static_cast<std::uint64_t>(ring_index));

        std::vector<sensor> out(static_cast<std::size_t>(count));
        for (int p = 0; p < count; ++p)
        {
            const double eta = 2.0 * std::numbers::pi * p / count;
            const double ce = std::cos(eta), se = std::sin(eta);
            auto &s = out[static_cast<std::size_t>(p)];
            s.index = p;
            s.ring = ring_index;
            s.x_m = a * ce * ca - b * se * sa;
            s.y_m = a * ce * sa + b * se * ca;
            if (sigma_axis > 0.0)
            {
                const auto [nx, ny] = rng.normal_pair(static_cast<std::uint64_t>(p));
                s.x_m += sigma_axis * nx;
                s.y_m += sigma_axis * ny;
            }
        }
        return out;
    }

    // Coordinate substitution exactly as printed for rotated arrays:
    //   x -> x cos(alpha) + y sin(alpha)
    //   y -> x sin(alpha) - y cos(alpha)
    // NOTE: this map has determinant -1 (a rotation composed with a reflection), so it
    // is not the counter-clockwise rotation used by build_ellipse. Radii are preserved.
    inline std::vector<sensor> rotate_sensors(std::span<const sensor> sensors, double alpha_deg)
    {
        const double alpha = deg_to_rad(alpha_deg);
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        std::vector<sensor> out(sensors.begin(), sensors.end());
        for (auto &s : out)
        {
            const double x = s.x_m, y = s.y_m;
            s.x_m = x * ca + y * sa;
            s.y_m = x * sa - y * ca;
        }
        return out;
    }

    // Proper counter-clockwise rotation about the origin.
    inline std::vector<sensor> rotate_sensors_ccw(std::span<const sensor> sensors, double alpha_deg)
    {
        const double alpha = deg_to_rad(alpha_deg);
        const double ca = std::cos(alpha), sa = std::sin(alpha);
        std::vector<sensor> out(sensors.begin(), sensors.end());
        for (auto &s : out)
        {
            const double x = s.x_m, y = s.y_m;
            s.x_m = x * ca - y * sa;
            s.y_m = x * sa + y * ca;
        }
        return out;
    }

    inline sensor_array build_concentric(std::span<const ellipse_spec> specs)
    {
        if (specs.empty())
            throw argument_error("concentric array needs at least one ellipse");
        sensor_array array;
        array.provenance = array_provenance::built;
        for (std::size_t i = 0; i < specs.size(); ++i)
        {
            sensor_ring ring;
            ring.index = static_cast<int>(i);
            ring.spec = specs[i];
            ring.sensors = build_ellipse(specs[i], ring.index);
            array.rings.push_back(std::move(ring));
        }
        return array;
    }

    struct ring_spacing
    {
        int ring = 0;
        double max_spacing_m = 0.0;
        double max_spacing_wavelengths = 0.0;
        bool pass = false;
    };

    struct nyquist_report
    {
        double f_max_hz = 0.0;
        double wavelength_m = 0.0;
        double max_spacing_m = 0.0;
        double max_spacing_wavelengths = 0.0;
        std::vector<ring_spacing> rings;
        bool pass = false;
    };

    // Largest distance between cyclically consecutive sensors of each ring,
    // compared with half a wavelength at f_max.
    inline nyquist_report nyquist_audit(const sensor_array &array, double f_max_hz)
    {
        if (!(f_max_hz > 0.0))
            throw argument_error("nyquist audit: f_max must be positive");
        nyquist_report rep;
        rep.f_max_hz = f_max_hz;
        rep.wavelength_m = speed_of_light / f_max_hz;
        rep.pass = true;
        for (const auto &ring : array.rings)
        {
            ring_spacing rs;
            rs.ring = ring.index;
            const auto &s = ring.sensors;
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                const auto &nxt = s[(i + 1) % s.size()];
                rs.max_spacing_m = std::max(rs.max_spacing_m, std::hypot(nxt.x_m - s[i].x_m, nxt.y_m - s[i].y_m));
            }
            rs.max_spacing_wavelengths = rs.max_spacing_m / rep.wavelength_m;
            rs.pass = rs.max_spacing_m < rep.wavelength_m / 2.0;
            rep.pass = rep.pass && rs.pass;
            rep.max_spacing_m = std::max(rep.max_spacing_m, rs.max_spacing_m);
            rep.rings.push_back(rs);
        }
        rep.max_spacing_wavelengths = rep.max_spacing_m / rep.wavelength_m;
        return rep;
    }

    inline constexpr const char *geometry_csv_header = "ring,p,x_m,y_m";

    inline void write_geometry_csv(std::ostream &out, const sensor_array &array)
    {
        out << geometry_csv_header << '\n';
        for (const auto &ring : array.rings)
            for (const auto &s : ring.sensors)
                out << ring.index << ',' << s.index << ',' << csv::format_double(s.x_m) << ','
                    << csv::format_double(s.y_m) << '\n';
    }

    // Rings must appear in order 0, 1, ... and sensors within a ring as p = 0, 1, ...
    inline sensor_array read_geometry_csv(std::istream &in)
    {
        csv::reader rd(in, geometry_csv_header);
        sensor_array array;
        array.provenance = array_provenance::ingested;
        std::vector<std::string_view> f;
        while (rd.next(f, 4))
        {
            const long ring = csv::parse_int(f[0], rd.line());
            const long p = csv::parse_int(f[1], rd.line());
            const double x = csv::parse_double(f[2], rd.line());
            const double y = csv::parse_double(f[3], rd.line());
            if (!std::isfinite(x) || !std::isfinite(y))
                throw parse_error("non-finite sensor coordinate", rd.line());
            if (ring == static_cast<long>(array.rings.size()))
            {
                sensor_ring r;
                r.index = static_cast<int>(ring);
                array.rings.push_back(std::move(r));
            }
            if (ring != static_cast<long>(array.rings.size()) - 1)
                throw parse_error("ring indices must be contiguous and ascending", rd.line());
            auto &r = array.rings.back();
            if (p != static_cast<long>(r.sensors.size()))
                throw parse_error("sensor indices must start at 0 and ascend by one within a ring", rd.line());
            r.sensors.push_back(sensor{static_cast<int>(p), static_cast<int>(ring), x, y});
        }
        if (array.rings.empty())
            throw parse_error("geometry file has no sensors", rd.line());
        return array;
    }
}

#endif
