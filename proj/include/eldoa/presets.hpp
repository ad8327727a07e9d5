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

#ifndef ELDOA_PRESETS_HPP
#define ELDOA_PRESETS_HPP

#include "scenario.hpp"

#include <string>
#include <string_view>
#include <vector>

// Built-in reference scenarios. Each returns a complete
// configuration; `eldoa_cli preset <name>` prints it as YAML.
namespace eldoa
{
    namespace detail
    {
        inline scenario_config base_preset(std::string name)
        {
            scenario_config cfg;
            cfg.name = std::move(name);
            cfg.sc.rings = {ellipse_spec{0.5, 0.0, 0.0, 720}};
            cfg.sc.grid = frequency_grid{28e9, 2e9, 100};
            cfg.sc.model = channel_model::planewave;
            cfg.sc.waves = {incident_wave{90.0, 90.0, 30e-9, 1.0}};
            cfg.sc.processing.design = filter_design::robust;
            cfg.sc.processing.modes = mode_choice{mode_rule::argument, 0, default_mode_threshold};
            return cfg;
        }

        inline sweep_spec azimuth_sweep()
        {
            sweep_spec s;
            s.axis = sweep_axis::azimuth_deg;
            for (int phi = -90; phi <= 90; phi += 5)
                s.values.push_back(phi);
            return s;
        }

        inline std::vector<sweep_series> eccentricity_series(std::initializer_list<double> values)
        {
            std::vector<sweep_series> out;
            for (double e : values)
            {
                std::string label = "e=" + csv::format_double(e);
                out.push_back(sweep_series{label, e, std::nullopt});
            }
            return out;
        }

        // 39.5-43.5 GHz, K = 200, 2 M_h + 1 = 251 modes, wave at (55 deg, 20 ns)
        inline scenario_config comparison_preset(std::string name, std::vector<ellipse_spec> rings)
        {
            auto cfg = base_preset(std::move(name));
            cfg.sc.rings = std::move(rings);
            cfg.sc.grid = frequency_grid{39.5e9, 4e9, 200};
            cfg.sc.waves = {incident_wave{55.0, 90.0, 20e-9, 1.0}};
            cfg.sc.processing.modes = mode_choice{mode_rule::fixed, 125, default_mode_threshold};
            cfg.sc.processing.reference = peak_reference::first_wave;
            return cfg;
        }

        // Eight ellipses (a = 34.5 cm, e = 0.9) rotated in 22.5 deg steps plus a circle
        inline std::vector<ellipse_spec> elliptical_stack()
        {
            std::vector<ellipse_spec> rings;
            for (int i = 0; i < 8; ++i)
                rings.push_back(ellipse_spec{0.345, 0.9, 22.5 * i, 720});
            rings.push_back(ellipse_spec{0.345, 0.0, 0.0, 720});
            return rings;
        }
    }

    inline std::vector<std::string> preset_names()
    {
        return {"fig3",      "fig4a",     "fig4b",    "fig4c", "fig5",  "fig7-uca",
                "fig7-ucca", "fig7-cea",  "fig8",     "fig11", "fig13"};
    }

    inline scenario_config make_preset(std::string_view name)
    {
        using detail::base_preset;
        const std::string n(name);

        // Circle a = 50 cm, 28-30 GHz, wave at (90 deg, 30 ns)
        if (n == "fig3")
            return base_preset(n);

        // Azimuth sweeps of the single ellipse, one curve per eccentricity
        if (n == "fig4a" || n == "fig4b")
        {
            auto cfg = base_preset(n);
            cfg.sc.rings[0].rotation_deg = n == "fig4b" ? 90.0 : 0.0;
            cfg.sc.waves = {incident_wave{0.0, 90.0, 30e-9, 1.0}};
            cfg.sc.processing.reference = peak_reference::first_wave;
            cfg.sweep = detail::azimuth_sweep();
            cfg.sweep->series = detail::eccentricity_series({0.0, 0.7, 0.95, 0.99});
            cfg.output = output_options{false, false, false, true, false, false, false, display_range_db};
            return cfg;
        }

        // Two concentric ellipses rotated by 0 and 90 deg
        if (n == "fig4c")
        {
            auto cfg = base_preset(n);
            cfg.sc.rings = {ellipse_spec{0.5, 0.95, 0.0, 720}, ellipse_spec{0.5, 0.95, 90.0, 720}};
            cfg.sc.waves = {incident_wave{0.0, 90.0, 30e-9, 1.0}};
            cfg.sc.processing.reference = peak_reference::first_wave;
            cfg.sweep = detail::azimuth_sweep();
            cfg.sweep->series = detail::eccentricity_series({0.0, 0.7, 0.95, 0.99});
            cfg.output = output_options{false, false, false, true, false, false, false, display_range_db};
            return cfg;
        }

        // Elevation sweep at broadside azimuth
        if (n == "fig5")
        {
            auto cfg = base_preset(n);
            cfg.sc.waves = {incident_wave{0.0, 90.0, 30e-9, 1.0}};
            cfg.sc.processing.reference = peak_reference::first_wave;
            cfg.sweep = sweep_spec{};
            cfg.sweep->axis = sweep_axis::elevation_deg;
            for (int theta = 30; theta <= 90; theta += 5)
                cfg.sweep->values.push_back(theta);
            cfg.sweep->series = detail::eccentricity_series({0.0, 0.7, 0.95});
            cfg.output = output_options{false, false, false, true, false, false, false, display_range_db};
            return cfg;
        }

        if (n == "fig7-uca")
            return detail::comparison_preset(n, {ellipse_spec{0.345, 0.0, 0.0, 720}});

        if (n == "fig7-ucca")
        {
            std::vector<ellipse_spec> rings;
            for (int i = 0; i < 9; ++i)
                rings.push_back(ellipse_spec{0.15 + 0.024375 * i, 0.0, 0.0, 720});
            return detail::comparison_preset(n, std::move(rings));
        }

        if (n == "fig7-cea")
            return detail::comparison_preset(n, detail::elliptical_stack());

        // Elliptical stack with Gaussian placement errors, sigma in wavelengths at band centre
        if (n == "fig8")
        {
            auto cfg = detail::comparison_preset(n, detail::elliptical_stack());
            cfg.sc.waves = {incident_wave{45.0, 90.0, 20e-9, 1.0}};
            cfg.sc.processing.modes = mode_choice{mode_rule::argument, 0, default_mode_threshold};
            cfg.flags.allow_undersampled = true;
            cfg.sweep = sweep_spec{};
            cfg.sweep->axis = sweep_axis::sigma_wavelengths;
            cfg.sweep->values = {0.5, 1.0, 2.0, 5.0};
            cfg.sweep->seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
            cfg.sweep->snap_azimuth = false;
            cfg.output = output_options{false, false, false, true, false, false, false, display_range_db};
            return cfg;
        }

        // Near-field source 1.95 m away in front of a rotated ellipse, 58-62 GHz
        if (n == "fig11")
        {
            auto cfg = base_preset(n);
            cfg.sc.rings = {ellipse_spec{0.242, 0.95, 90.0, 720}};
            cfg.sc.grid = frequency_grid{58e9, 4e9, 200};
            cfg.sc.model = channel_model::spherical;
            cfg.sc.waves = {incident_wave{270.0, 90.0, 6.5e-9, 1.0, 1.95}};
            cfg.sc.processing.modes = mode_choice{mode_rule::fixed, 90, default_mode_threshold};
            return cfg;
        }

        // Two-ray near-field scene seen by two crossed ellipses, 58-62 GHz
        if (n == "fig13")
        {
            auto cfg = base_preset(n);
            cfg.sc.rings = {ellipse_spec{0.242, 0.7, 0.0, 720}, ellipse_spec{0.242, 0.7, 90.0, 720}};
            cfg.sc.grid = frequency_grid{58e9, 4e9, 200};
            cfg.sc.model = channel_model::spherical;
            cfg.sc.waves = {incident_wave{330.0, 90.0, 4e-9, 1.0, speed_of_light * 4e-9},
                            incident_wave{300.0, 90.0, 8e-9, 1.0, speed_of_light * 8e-9}};
            cfg.sc.processing.modes = mode_choice{mode_rule::fixed, 125, default_mode_threshold};
            return cfg;
        }

        std::string known;
        for (const auto &p : preset_names())
            known += (known.empty() ? "" : ", ") + p;
        throw parse_error("unknown preset '" + n + "' (known: " + known + ")");
    }
}

#endif
