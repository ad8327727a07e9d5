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

#ifndef ELDOA_SCENARIO_HPP
#define ELDOA_SCENARIO_HPP

#include "errors.hpp"
#include "pipeline.hpp"
#include "version.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace eldoa
{
    struct output_options
    {
        bool spectrum_csv = true;
        bool heatmap = true;
        bool report = true;
        bool manifest = true;
        bool channel_csv = false;
        bool geometry_csv = false;
        bool bank_csv = false; // M x P x K rows; large
        double heatmap_range_db = display_range_db;

        bool operator==(const output_options &) const = default;
    };

    struct scenario_config
    {
        std::string name;
        scenario sc;
        run_flags flags;
        std::optional<sweep_spec> sweep;
        output_options output;

        bool operator==(const scenario_config &) const = default;
    };

    // Values recorded next to a resolved configuration; ignored when the file is read back.
    struct run_provenance
    {
        int half_width = 0;
        int mode_ceiling = 0;
        std::string reduce;
        std::size_t unique_evaluations = 0;
        std::size_t full_weights = 0;
        double max_spacing_wavelengths = 0.0;
        bool nyquist_pass = false;
    };

    inline bool operator==(const run_flags &a, const run_flags &b)
    {
        return a.allow_undersampled == b.allow_undersampled && a.force_modes == b.force_modes;
    }

    namespace detail
    {
        template <typename E>
        struct enum_names;

        template <>
        struct enum_names<filter_design>
        {
            static constexpr std::pair<filter_design, std::string_view> list[] = {
                {filter_design::plain, "plain"}, {filter_design::robust, "robust"}, {filter_design::average, "average"}};
        };
        template <>
        struct enum_names<reduction>
        {
            static constexpr std::pair<reduction, std::string_view> list[] = {
                {reduction::none, "none"},
                {reduction::parity, "parity"},
                {reduction::quadrant, "quadrant"},
                {reduction::symmetric, "symmetric"}};
        };
        template <>
        struct enum_names<mode_rule>
        {
            static constexpr std::pair<mode_rule, std::string_view> list[] = {
                {mode_rule::fixed, "fixed"}, {mode_rule::threshold, "threshold"}, {mode_rule::argument, "argument"}};
        };
        template <>
        struct enum_names<channel_model>
        {
            static constexpr std::pair<channel_model, std::string_view> list[] = {
                {channel_model::planewave, "planewave"}, {channel_model::spherical, "spherical"}};
        };
        template <>
        struct enum_names<peak_reference>
        {
            static constexpr std::pair<peak_reference, std::string_view> list[] = {
                {peak_reference::global, "global"}, {peak_reference::first_wave, "first_wave"}};
        };
        template <>
        struct enum_names<sweep_axis>
        {
            static constexpr std::pair<sweep_axis, std::string_view> list[] = {
                {sweep_axis::azimuth_deg, "azimuth_deg"},
                {sweep_axis::elevation_deg, "elevation_deg"},
                {sweep_axis::delay_s, "delay_s"},
                {sweep_axis::eccentricity, "eccentricity"},
                {sweep_axis::rotation_deg, "rotation_deg"},
                {sweep_axis::sigma_wavelengths, "sigma_wavelengths"},
                {sweep_axis::snr_db, "snr_db"}};
        };

        template <typename E>
        std::string_view enum_name(E value)
        {
            for (const auto &[v, n] : enum_names<E>::list)
                if (v == value)
                    return n;
            return "?";
        }

        template <typename E>
        std::optional<E> enum_from_name(std::string_view name)
        {
            for (const auto &[v, n] : enum_names<E>::list)
                if (n == name)
                    return v;
            return std::nullopt;
        }

        inline std::size_t line_of(const YAML::Node &node) { return static_cast<std::size_t>(node.Mark().line + 1); }

        // Rejects keys outside `allowed`, so typos fail loudly.
        inline void check_keys(const YAML::Node &map, std::string_view where, std::initializer_list<std::string_view> allowed)
        {
            if (!map.IsMap())
                throw parse_error(std::string(where) + ": expected a mapping", line_of(map));
            for (const auto &kv : map)
            {
                const auto key = kv.first.as<std::string>();
                bool ok = false;
                for (auto a : allowed)
                    ok = ok || a == key;
                if (!ok)
                    throw parse_error(std::string(where) + ": unknown key '" + key + "'", line_of(kv.first));
            }
        }

        template <typename T>
        T read_scalar(const YAML::Node &node, std::string_view what)
        {
            if (!node.IsScalar())
                throw parse_error(std::string(what) + ": expected a scalar", line_of(node));
            try
            {
                return node.as<T>();
            }
            catch (const YAML::Exception &)
            {
                throw parse_error(std::string(what) + ": cannot read '" + node.Scalar() + "'", line_of(node));
            }
        }

        template <typename T>
        void read_opt(const YAML::Node &map, const char *key, T &target, std::string_view where)
        {
            if (const auto node = map[key])
                target = read_scalar<T>(node, std::string(where) + "." + key);
        }

        template <typename E>
        void read_enum(const YAML::Node &map, const char *key, E &target, std::string_view where)
        {
            if (const auto node = map[key])
            {
                const auto name = read_scalar<std::string>(node, std::string(where) + "." + key);
                const auto value = enum_from_name<E>(name);
                if (!value)
                    throw parse_error(std::string(where) + "." + key + ": unknown value '" + name + "'", line_of(node));
                target = *value;
            }
        }

        template <typename Fn>
        void with_line(const YAML::Node &node, Fn &&fn)
        {
            try
            {
                fn();
            }
            catch (const argument_error &e)
            {
                throw parse_error(e.what(), line_of(node));
            }
        }

        inline ellipse_spec parse_ring(const YAML::Node &node)
        {
            check_keys(node, "ring", {"semi_major_m", "eccentricity", "rotation_deg", "sensors", "position_sigma_m", "noise_seed"});
            ellipse_spec spec;
            read_opt(node, "semi_major_m", spec.semi_major_m, "ring");
            read_opt(node, "eccentricity", spec.eccentricity, "ring");
            read_opt(node, "rotation_deg", spec.rotation_deg, "ring");
            read_opt(node, "sensors", spec.sensor_count, "ring");
            read_opt(node, "position_sigma_m", spec.position_noise_sigma_m, "ring");
            read_opt(node, "noise_seed", spec.noise_seed, "ring");
            with_line(node, [&] { spec.validate(); });
            return spec;
        }

        inline incident_wave parse_wave(const YAML::Node &node)
        {
            check_keys(node, "wave", {"azimuth_deg", "elevation_deg", "delay_s", "attenuation", "distance_m"});
            incident_wave w;
            read_opt(node, "azimuth_deg", w.azimuth_deg, "wave");
            read_opt(node, "elevation_deg", w.elevation_deg, "wave");
            read_opt(node, "delay_s", w.delay_s, "wave");
            read_opt(node, "attenuation", w.attenuation, "wave");
            read_opt(node, "distance_m", w.distance_m, "wave");
            with_line(node, [&] { w.validate(); });
            return w;
        }

        inline std::vector<YAML::Node> read_list(const YAML::Node &node, std::string_view what)
        {
            if (!node.IsSequence())
                throw parse_error(std::string(what) + ": expected a list", line_of(node));
            std::vector<YAML::Node> out;
            for (const auto &item : node)
                out.push_back(item);
            return out;
        }

        inline void parse_processing(const YAML::Node &node, processing_options &proc)
        {
            check_keys(node, "processing", {"filter", "modes", "reduction", "pad_az", "pad_delay", "exclusion", "peak_reference",
                                            "snr_db", "seed", "top_n"});
            read_enum(node, "filter", proc.design, "processing");
            if (const auto modes = node["modes"])
            {
                check_keys(modes, "processing.modes", {"rule", "half_width", "threshold"});
                read_enum(modes, "rule", proc.modes.rule, "processing.modes");
                read_opt(modes, "half_width", proc.modes.half_width, "processing.modes");
                read_opt(modes, "threshold", proc.modes.threshold, "processing.modes");
            }
            if (const auto r = node["reduction"])
            {
                const auto name = read_scalar<std::string>(r, "processing.reduction");
                if (name == "auto")
                    proc.reduce.reset();
                else if (const auto value = enum_from_name<reduction>(name))
                    proc.reduce = *value;
                else
                    throw parse_error("processing.reduction: unknown value '" + name + "'", line_of(r));
            }
            read_opt(node, "pad_az", proc.pad_az, "processing");
            read_opt(node, "pad_delay", proc.pad_delay, "processing");
            if (const auto ex = node["exclusion"])
            {
                check_keys(ex, "processing.exclusion", {"azimuth_bins", "delay_bins"});
                read_opt(ex, "azimuth_bins", proc.exclusion.azimuth_bins, "processing.exclusion");
                read_opt(ex, "delay_bins", proc.exclusion.delay_bins, "processing.exclusion");
            }
            read_enum(node, "peak_reference", proc.reference, "processing");
            read_opt(node, "snr_db", proc.snr_db, "processing");
            read_opt(node, "seed", proc.seed, "processing");
            read_opt(node, "top_n", proc.top_n, "processing");
            with_line(node, [&] { check_processing(proc); });
        }

        inline sweep_spec parse_sweep(const YAML::Node &node)
        {
            check_keys(node, "sweep", {"axis", "values", "start", "stop", "step", "series", "seeds", "snap_azimuth"});
            sweep_spec spec;
            read_enum(node, "axis", spec.axis, "sweep");
            if (const auto values = node["values"])
            {
                if (node["start"] || node["stop"] || node["step"])
                    throw parse_error("sweep: give either values or start/stop/step", line_of(node));
                for (const auto &v : read_list(values, "sweep.values"))
                    spec.values.push_back(read_scalar<double>(v, "sweep.values"));
            }
            else
            {
                if (!node["start"] || !node["stop"] || !node["step"])
                    throw parse_error("sweep: values or start/stop/step required", line_of(node));
                const double start = read_scalar<double>(node["start"], "sweep.start");
                const double stop = read_scalar<double>(node["stop"], "sweep.stop");
                const double step = read_scalar<double>(node["step"], "sweep.step");
                if (!(step > 0.0) || !(stop >= start) || !std::isfinite(stop - start))
                    throw parse_error("sweep: need step > 0 and stop >= start", line_of(node));
                const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
                for (long i = 0; i < count; ++i)
                    spec.values.push_back(start + static_cast<double>(i) * step);
            }
            if (spec.values.empty())
                throw parse_error("sweep: no values", line_of(node));
            if (const auto series = node["series"])
                for (const auto &s : read_list(series, "sweep.series"))
                {
                    check_keys(s, "sweep.series", {"label", "eccentricity", "semi_major_m"});
                    sweep_series item;
                    read_opt(s, "label", item.label, "sweep.series");
                    if (s["eccentricity"])
                        item.eccentricity = read_scalar<double>(s["eccentricity"], "sweep.series.eccentricity");
                    if (s["semi_major_m"])
                        item.semi_major_m = read_scalar<double>(s["semi_major_m"], "sweep.series.semi_major_m");
                    if (item.label.find_first_of(",\n\"") != std::string::npos)
                        throw parse_error("sweep.series.label: commas, quotes and newlines are not allowed", line_of(s));
                    spec.series.push_back(item);
                }
            if (const auto seeds = node["seeds"])
                for (const auto &s : read_list(seeds, "sweep.seeds"))
                    spec.seeds.push_back(read_scalar<std::uint64_t>(s, "sweep.seeds"));
            read_opt(node, "snap_azimuth", spec.snap_azimuth, "sweep");
            return spec;
        }

        inline scenario_config parse_root(const YAML::Node &root)
        {
            if (!root || root.IsNull())
                throw parse_error("empty configuration", 1);
            check_keys(root, "configuration",
                       {"name", "array", "grid", "scene", "processing", "validation", "sweep", "output", "provenance"});
            scenario_config cfg;
            read_opt(root, "name", cfg.name, "configuration");

            const auto array = root["array"];
            if (!array)
                throw parse_error("configuration: missing 'array' section", line_of(root));
            check_keys(array, "array", {"rings"});
            if (!array["rings"])
                throw parse_error("array: missing 'rings'", line_of(array));
            cfg.sc.rings.clear();
            for (const auto &r : read_list(array["rings"], "array.rings"))
                cfg.sc.rings.push_back(parse_ring(r));
            if (cfg.sc.rings.empty())
                throw parse_error("array.rings: at least one ring is required", line_of(array));

            const auto grid = root["grid"];
            if (!grid)
                throw parse_error("configuration: missing 'grid' section", line_of(root));
            check_keys(grid, "grid", {"start_hz", "bandwidth_hz", "samples"});
            read_opt(grid, "start_hz", cfg.sc.grid.start_hz, "grid");
            read_opt(grid, "bandwidth_hz", cfg.sc.grid.bandwidth_hz, "grid");
            read_opt(grid, "samples", cfg.sc.grid.samples, "grid");
            with_line(grid, [&] { cfg.sc.grid.validate(); });

            const auto scene = root["scene"];
            if (!scene)
                throw parse_error("configuration: missing 'scene' section", line_of(root));
            check_keys(scene, "scene", {"model", "waves"});
            read_enum(scene, "model", cfg.sc.model, "scene");
            cfg.sc.waves.clear();
            if (scene["waves"])
                for (const auto &w : read_list(scene["waves"], "scene.waves"))
                    cfg.sc.waves.push_back(parse_wave(w));
            if (cfg.sc.model == channel_model::spherical)
                for (const auto &w : cfg.sc.waves)
                    if (!std::isfinite(w.distance_m))
                        throw parse_error("scene: spherical model needs a finite distance_m for every wave", line_of(scene));

            if (const auto proc = root["processing"])
                parse_processing(proc, cfg.sc.processing);

            if (const auto val = root["validation"])
            {
                check_keys(val, "validation", {"allow_undersampled", "force_modes"});
                read_opt(val, "allow_undersampled", cfg.flags.allow_undersampled, "validation");
                read_opt(val, "force_modes", cfg.flags.force_modes, "validation");
            }
            if (const auto sweep = root["sweep"])
                cfg.sweep = parse_sweep(sweep);
            if (const auto out = root["output"])
            {
                check_keys(out, "output", {"spectrum_csv", "heatmap", "report", "manifest", "channel_csv", "geometry_csv",
                                           "bank_csv", "heatmap_range_db"});
                read_opt(out, "spectrum_csv", cfg.output.spectrum_csv, "output");
                read_opt(out, "heatmap", cfg.output.heatmap, "output");
                read_opt(out, "report", cfg.output.report, "output");
                read_opt(out, "manifest", cfg.output.manifest, "output");
                read_opt(out, "channel_csv", cfg.output.channel_csv, "output");
                read_opt(out, "geometry_csv", cfg.output.geometry_csv, "output");
                read_opt(out, "bank_csv", cfg.output.bank_csv, "output");
                read_opt(out, "heatmap_range_db", cfg.output.heatmap_range_db, "output");
                if (!(cfg.output.heatmap_range_db > 0.0))
                    throw parse_error("output.heatmap_range_db must be positive", line_of(out));
            }
            return cfg;
        }

        // Shortest text that reads back to the same double; YAML spellings for non-finite values.
        inline std::string yaml_double(double v)
        {
            if (std::isnan(v))
                return ".nan";
            if (std::isinf(v))
                return v > 0 ? ".inf" : "-.inf";
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, v);
            return std::string(buf, res.ptr);
        }

        inline std::string yaml_bool(bool v) { return v ? "true" : "false"; }

        inline std::string yaml_string(const std::string &s)
        {
            std::string out = "\"";
            for (char c : s)
            {
                if (c == '"' || c == '\\')
                    out += '\\';
                out += c;
            }
            return out + "\"";
        }
    }

    inline scenario_config parse_config(std::istream &in)
    {
        std::stringstream buffer;
        buffer << in.rdbuf();
        YAML::Node root;
        try
        {
            root = YAML::Load(buffer.str());
        }
        catch (const YAML::ParserException &e)
        {
            throw parse_error(e.msg, static_cast<std::size_t>(e.mark.line + 1));
        }
        return detail::parse_root(root);
    }

    inline scenario_config parse_config(const std::string &text)
    {
        std::istringstream in(text);
        return parse_config(in);
    }

    inline scenario_config load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw parse_error("cannot open configuration file '" + path + "'");
        return parse_config(in);
    }

    // Canonical YAML form. Every field is written, so the output fully determines a run.
    inline void write_config(std::ostream &out, const scenario_config &cfg, const run_provenance *prov = nullptr)
    {
        using detail::yaml_bool;
        using detail::yaml_double;
        const auto &sc = cfg.sc;
        out << "# eldoa " << version_string << " scenario\n";
        out << "name: " << detail::yaml_string(cfg.name) << '\n';
        out << "array:\n  rings:\n";
        for (const auto &r : sc.rings)
            out << "    - semi_major_m: " << yaml_double(r.semi_major_m) << '\n'
                << "      eccentricity: " << yaml_double(r.eccentricity) << '\n'
                << "      rotation_deg: " << yaml_double(r.rotation_deg) << '\n'
                << "      sensors: " << r.sensor_count << '\n'
                << "      position_sigma_m: " << yaml_double(r.position_noise_sigma_m) << '\n'
                << "      noise_seed: " << r.noise_seed << '\n';
        out << "grid:\n"
            << "  start_hz: " << yaml_double(sc.grid.start_hz) << '\n'
            << "  bandwidth_hz: " << yaml_double(sc.grid.bandwidth_hz) << '\n'
            << "  samples: " << sc.grid.samples << '\n';
        out << "scene:\n  model: " << detail::enum_name(sc.model) << '\n';
        if (sc.waves.empty())
            out << "  waves: []\n";
        else
            out << "  waves:\n";
        for (const auto &w : sc.waves)
            out << "    - azimuth_deg: " << yaml_double(w.azimuth_deg) << '\n'
                << "      elevation_deg: " << yaml_double(w.elevation_deg) << '\n'
                << "      delay_s: " << yaml_double(w.delay_s) << '\n'
                << "      attenuation: " << yaml_double(w.attenuation) << '\n'
                << "      distance_m: " << yaml_double(w.distance_m) << '\n';
        const auto &p = sc.processing;
        out << "processing:\n"
            << "  filter: " << detail::enum_name(p.design) << '\n'
            << "  modes:\n"
            << "    rule: " << detail::enum_name(p.modes.rule) << '\n'
            << "    half_width: " << p.modes.half_width << '\n'
            << "    threshold: " << yaml_double(p.modes.threshold) << '\n'
            << "  reduction: " << (p.reduce ? detail::enum_name(*p.reduce) : std::string_view("auto")) << '\n'
            << "  pad_az: " << p.pad_az << '\n'
            << "  pad_delay: " << p.pad_delay << '\n'
            << "  exclusion:\n"
            << "    azimuth_bins: " << p.exclusion.azimuth_bins << '\n'
            << "    delay_bins: " << p.exclusion.delay_bins << '\n'
            << "  peak_reference: " << detail::enum_name(p.reference) << '\n'
            << "  snr_db: " << yaml_double(p.snr_db) << '\n'
            << "  seed: " << p.seed << '\n'
            << "  top_n: " << p.top_n << '\n';
        out << "validation:\n"
            << "  allow_undersampled: " << yaml_bool(cfg.flags.allow_undersampled) << '\n'
            << "  force_modes: " << yaml_bool(cfg.flags.force_modes) << '\n';
        if (cfg.sweep)
        {
            const auto &s = *cfg.sweep;
            out << "sweep:\n  axis: " << detail::enum_name(s.axis) << "\n  values: [";
            for (std::size_t i = 0; i < s.values.size(); ++i)
                out << (i ? ", " : "") << yaml_double(s.values[i]);
            out << "]\n  snap_azimuth: " << yaml_bool(s.snap_azimuth) << "\n  seeds: [";
            for (std::size_t i = 0; i < s.seeds.size(); ++i)
                out << (i ? ", " : "") << s.seeds[i];
            out << "]\n";
            if (s.series.empty())
                out << "  series: []\n";
            else
                out << "  series:\n";
            for (const auto &item : s.series)
            {
                out << "    - label: " << detail::yaml_string(item.label) << '\n';
                if (item.eccentricity)
                    out << "      eccentricity: " << yaml_double(*item.eccentricity) << '\n';
                if (item.semi_major_m)
                    out << "      semi_major_m: " << yaml_double(*item.semi_major_m) << '\n';
            }
        }
        const auto &o = cfg.output;
        out << "output:\n"
            << "  spectrum_csv: " << yaml_bool(o.spectrum_csv) << '\n'
            << "  heatmap: " << yaml_bool(o.heatmap) << '\n'
            << "  report: " << yaml_bool(o.report) << '\n'
            << "  manifest: " << yaml_bool(o.manifest) << '\n'
            << "  channel_csv: " << yaml_bool(o.channel_csv) << '\n'
            << "  geometry_csv: " << yaml_bool(o.geometry_csv) << '\n'
            << "  bank_csv: " << yaml_bool(o.bank_csv) << '\n'
            << "  heatmap_range_db: " << yaml_double(o.heatmap_range_db) << '\n';
        if (prov)
            out << "provenance:\n"
                << "  library_version: " << detail::yaml_string(version_string) << '\n'
                << "  half_width: " << prov->half_width << '\n'
                << "  mode_ceiling: " << prov->mode_ceiling << '\n'
                << "  reduction: " << prov->reduce << '\n'
                << "  unique_evaluations: " << prov->unique_evaluations << '\n'
                << "  full_weights: " << prov->full_weights << '\n'
                << "  max_spacing_wavelengths: " << yaml_double(prov->max_spacing_wavelengths) << '\n'
                << "  nyquist_pass: " << yaml_bool(prov->nyquist_pass) << '\n';
    }

    inline std::string config_to_string(const scenario_config &cfg)
    {
        std::ostringstream out;
        write_config(out, cfg);
        return out.str();
    }

    // Configuration with every automatic choice of a finished run pinned down.
    inline scenario_config resolved_config(scenario_config cfg, const pipeline_result &result)
    {
        cfg.sc.processing.modes.rule = mode_rule::fixed;
        cfg.sc.processing.modes.half_width = result.half_width;
        cfg.sc.processing.reduce = result.reduce;
        return cfg;
    }

    inline run_provenance provenance_of(const pipeline_result &result)
    {
        run_provenance p;
        p.half_width = result.half_width;
        p.mode_ceiling = result.mode_ceiling;
        p.reduce = std::string(detail::enum_name(result.reduce));
        p.unique_evaluations = result.unique_evaluations;
        p.full_weights = result.full_weights;
        p.max_spacing_wavelengths = result.nyquist.max_spacing_wavelengths;
        p.nyquist_pass = result.nyquist.pass;
        return p;
    }
}

#endif
