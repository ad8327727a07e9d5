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

// eldoa_cli: batch runner for scenario files and built-in presets.
//
// Exit codes: 0 success, 1 configuration error, 2 validation error, 3 numerical error.
// Every input is parsed and checked before the output directory is touched, so a
// configuration error never leaves files behind.

#include <eldoa/eldoa.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{
    enum exit_code : int
    {
        exit_ok = 0,
        exit_config = 1,
        exit_validation = 2,
        exit_numeric = 3
    };

    struct common_args
    {
        std::string config;
        std::string preset;
        std::string out_dir = "eldoa_out";
        std::optional<std::uint64_t> seed;
        bool allow_undersampled = false;
        bool force_modes = false;
        std::optional<int> pad_az;
        std::optional<int> pad_delay;
    };

    void add_common(CLI::App *cmd, common_args &args)
    {
        auto *cfg = cmd->add_option("--config", args.config, "Scenario file (YAML)");
        auto *pre = cmd->add_option("--preset", args.preset, "Built-in scenario name");
        cfg->excludes(pre);
        cmd->add_option("--out-dir", args.out_dir, "Directory for the outputs")->capture_default_str();
        cmd->add_option("--seed", args.seed, "Seed for sensor placement noise and channel noise");
        cmd->add_flag("--allow-undersampled", args.allow_undersampled, "Run even if the Nyquist audit fails");
        cmd->add_flag("--force-modes", args.force_modes, "Allow more modes than the stable limit");
        cmd->add_option("--pad-az", args.pad_az, "Zero-padding factor along azimuth")->check(CLI::PositiveNumber);
        cmd->add_option("--pad-delay", args.pad_delay, "Zero-padding factor along delay")->check(CLI::PositiveNumber);
    }

    // Scenario from --config or --preset with the command line overrides applied.
    eldoa::scenario_config load(const common_args &args)
    {
        if (args.config.empty() == args.preset.empty())
            throw eldoa::parse_error("exactly one of --config or --preset is required");
        auto cfg = args.config.empty() ? eldoa::make_preset(args.preset) : eldoa::load_config(args.config);
        if (args.seed)
        {
            cfg.sc.processing.seed = *args.seed;
            for (auto &ring : cfg.sc.rings)
                ring.noise_seed = *args.seed;
            if (cfg.sweep && !cfg.sweep->seeds.empty())
                cfg.sweep->seeds = {*args.seed};
        }
        cfg.flags.allow_undersampled = cfg.flags.allow_undersampled || args.allow_undersampled;
        cfg.flags.force_modes = cfg.flags.force_modes || args.force_modes;
        if (args.pad_az)
            cfg.sc.processing.pad_az = *args.pad_az;
        if (args.pad_delay)
            cfg.sc.processing.pad_delay = *args.pad_delay;
        return cfg;
    }

    void write_file(const fs::path &path, const std::function<void(std::ostream &)> &fn, bool binary = false)
    {
        std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
        if (!out)
            throw std::runtime_error("cannot write '" + path.string() + "'");
        fn(out);
        if (!out)
            throw std::runtime_error("write failed for '" + path.string() + "'");
    }

    fs::path prepare_dir(const std::string &dir)
    {
        fs::path p(dir);
        fs::create_directories(p);
        return p;
    }

    void write_outputs(const fs::path &dir, const eldoa::scenario_config &cfg, const eldoa::pipeline_result &res)
    {
        const auto &o = cfg.output;
        if (o.spectrum_csv)
            write_file(dir / "spectrum.csv", [&](std::ostream &s) { eldoa::write_spectrum_csv(s, res.spectrum); });
        if (o.heatmap)
            write_file(dir / "heatmap.pgm", [&](std::ostream &s) { eldoa::write_spectrum_pgm(s, res.spectrum, o.heatmap_range_db); }, true);
        if (o.report)
            write_file(dir / "report.txt", [&](std::ostream &s) {
                s << "scenario " << (cfg.name.empty() ? "-" : cfg.name) << '\n'
                  << "half_width " << res.half_width << '\n'
                  << "mode_ceiling " << res.mode_ceiling << '\n'
                  << "nyquist_pass " << (res.nyquist.pass ? 1 : 0) << '\n'
                  << "max_spacing_wavelengths " << eldoa::csv::format_double(res.nyquist.max_spacing_wavelengths) << '\n';
                eldoa::write_peak_report(s, res.peaks);
            });
        if (o.manifest)
            write_file(dir / "manifest.yaml", [&](std::ostream &s) {
                const auto prov = eldoa::provenance_of(res);
                eldoa::write_config(s, eldoa::resolved_config(cfg, res), &prov);
            });
        if (o.channel_csv)
            write_file(dir / "channel.csv", [&](std::ostream &s) { eldoa::write_channel_csv(s, res.channel); });
        if (o.geometry_csv)
            write_file(dir / "geometry.csv", [&](std::ostream &s) { eldoa::write_geometry_csv(s, *res.array); });
        if (o.bank_csv)
        {
            const auto bank = eldoa::build_bank(*res.array, res.channel.grid, cfg.sc.processing.design, {res.half_width}, res.reduce);
            write_file(dir / "bank.csv", [&](std::ostream &s) { eldoa::write_bank_csv(s, bank); });
        }
    }

    void print_summary(const eldoa::pipeline_result &res)
    {
        const auto &pk = res.peaks;
        std::cout << "modes: M_h = " << res.half_width << " (" << 2 * res.half_width + 1 << " modes), reduction "
                  << eldoa::detail::enum_name(res.reduce) << '\n'
                  << "main peak: " << pk.main.azimuth_deg << " deg, " << pk.main.delay_s * 1e9 << " ns\n";
        if (pk.artifact)
            std::cout << "largest artifact: " << pk.artifact->azimuth_deg << " deg, " << pk.artifact->delay_s * 1e9
                      << " ns, delta = " << pk.delta_db << " dB\n";
        else
            std::cout << "no artifact outside the exclusion window\n";
    }

    int cmd_run(const common_args &args)
    {
        const auto cfg = load(args);
        const auto res = eldoa::run_pipeline(cfg.sc, cfg.flags);
        write_outputs(prepare_dir(args.out_dir), cfg, res);
        print_summary(res);
        return exit_ok;
    }

    eldoa::sweep_axis parse_axis(const std::string &name)
    {
        const auto axis = eldoa::detail::enum_from_name<eldoa::sweep_axis>(name);
        if (!axis)
            throw eldoa::parse_error("unknown sweep axis '" + name + "'");
        return *axis;
    }

    int cmd_sweep(const common_args &args, const std::string &axis, const std::vector<double> &values)
    {
        auto cfg = load(args);
        if (!axis.empty())
        {
            if (!cfg.sweep)
                cfg.sweep = eldoa::sweep_spec{};
            cfg.sweep->axis = parse_axis(axis);
        }
        if (!values.empty())
        {
            if (!cfg.sweep)
                throw eldoa::parse_error("--values needs --axis or a sweep section");
            cfg.sweep->values = values;
        }
        if (!cfg.sweep || cfg.sweep->values.empty())
            throw eldoa::parse_error("no sweep: give a sweep section or --axis with --values");

        // Reject an invalid base scenario before any output exists.
        eldoa::detail::check_processing(cfg.sc.processing);
        cfg.sc.grid.validate();

        const auto rows = eldoa::delta_sweep(cfg.sc, *cfg.sweep, cfg.flags);
        const auto dir = prepare_dir(args.out_dir);
        write_file(dir / "sweep.csv", [&](std::ostream &s) { eldoa::write_sweep_csv(s, rows); });
        if (cfg.output.manifest)
            write_file(dir / "manifest.yaml", [&](std::ostream &s) { eldoa::write_config(s, cfg); });
        for (const auto &r : rows)
            std::cout << (r.series.empty() ? "" : r.series + " ") << "value " << r.value << " seed " << r.seed
                      << ": delta = " << r.delta_db << " dB\n";
        return exit_ok;
    }

    int cmd_audit(const common_args &args)
    {
        const auto cfg = load(args);
        cfg.sc.grid.validate();
        const auto array = eldoa::build_scenario_array(cfg.sc);
        const double f_max = cfg.sc.grid.start_hz + cfg.sc.grid.bandwidth_hz;
        const auto rep = eldoa::nyquist_audit(*array, f_max);
        const auto ceiling = eldoa::mode_limit(*array, cfg.sc.grid, cfg.sc.processing.modes.threshold, cfg.sc.processing.design);
        const auto chosen = eldoa::resolve_half_width(cfg.sc.processing.modes, *array, cfg.sc.grid, cfg.sc.processing.design);

        std::cout << "f_max " << f_max << " Hz, half wavelength " << rep.wavelength_m / 2.0 * 1e3 << " mm\n";
        for (const auto &r : rep.rings)
            std::cout << "ring " << r.ring << ": max spacing " << r.max_spacing_m * 1e3 << " mm ("
                      << r.max_spacing_wavelengths << " wavelengths) " << (r.pass ? "pass" : "FAIL") << '\n';
        std::cout << "nyquist " << (rep.pass ? "pass" : "FAIL") << '\n'
                  << "modes: chosen M_h " << chosen << ", stable limit " << ceiling << '\n';

        const auto dir = prepare_dir(args.out_dir);
        write_file(dir / "geometry.csv", [&](std::ostream &s) { eldoa::write_geometry_csv(s, *array); });
        if (!rep.pass && !cfg.flags.allow_undersampled)
            return exit_validation;
        if (chosen > ceiling && !cfg.flags.force_modes)
            return exit_validation;
        return exit_ok;
    }

    int cmd_ingest(const common_args &args, const std::string &channel_path, const std::string &geometry_path)
    {
        const auto cfg = load(args);
        std::shared_ptr<const eldoa::sensor_array> array;
        if (geometry_path.empty())
            array = eldoa::build_scenario_array(cfg.sc);
        else
        {
            std::ifstream in(geometry_path);
            if (!in)
                throw eldoa::parse_error("cannot open geometry file '" + geometry_path + "'");
            array = std::make_shared<const eldoa::sensor_array>(eldoa::read_geometry_csv(in));
        }
        std::ifstream in(channel_path);
        if (!in)
            throw eldoa::parse_error("cannot open channel file '" + channel_path + "'");
        auto channel = eldoa::ingest_channel(in, array, &cfg.sc.grid);
        auto sc = cfg.sc;
        sc.grid = channel.grid;
        const auto res = eldoa::process_channel(sc, std::move(channel), cfg.flags);
        auto out_cfg = cfg;
        out_cfg.sc.grid = res.channel.grid;
        write_outputs(prepare_dir(args.out_dir), out_cfg, res);
        print_summary(res);
        return exit_ok;
    }

    int cmd_preset(const std::string &name, bool list)
    {
        if (list || name.empty())
        {
            for (const auto &n : eldoa::preset_names())
                std::cout << n << '\n';
            return exit_ok;
        }
        eldoa::write_config(std::cout, eldoa::make_preset(name));
        return exit_ok;
    }

    int report_error(const char *kind, const char *module, const std::exception &e, int code)
    {
        std::cerr << "eldoa: " << kind << " error";
        if (module)
            std::cerr << " [" << module << "]";
        std::cerr << ": " << e.what() << '\n';
        return code;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Joint azimuth and delay estimation with elliptical sensor arrays"};
    app.set_version_flag("--version", eldoa::version_string);
    app.require_subcommand(1);

    common_args run_args, sweep_args, audit_args, ingest_args;
    auto *run = app.add_subcommand("run", "Simulate a scenario and write spectrum, heatmap, report and manifest");
    add_common(run, run_args);

    auto *sweep = app.add_subcommand("sweep", "Delta metric over one scenario parameter");
    add_common(sweep, sweep_args);
    std::string axis;
    std::vector<double> values;
    sweep->add_option("--axis", axis, "Swept parameter (azimuth_deg, elevation_deg, delay_s, eccentricity, rotation_deg, "
                                      "sigma_wavelengths, snr_db)");
    sweep->add_option("--values", values, "Values of the swept parameter")->delimiter(',');

    auto *audit = app.add_subcommand("audit", "Geometry, Nyquist audit and mode limits only");
    add_common(audit, audit_args);

    auto *ingest = app.add_subcommand("ingest", "Spectrum of a measured channel file");
    add_common(ingest, ingest_args);
    std::string channel_path, geometry_path;
    ingest->add_option("--channel", channel_path, "Channel CSV (p,f_hz,re,im)")->required();
    ingest->add_option("--geometry", geometry_path, "Geometry CSV (ring,p,x_m,y_m); default: the scenario's array");

    auto *preset = app.add_subcommand("preset", "Print a built-in scenario as YAML");
    std::string preset_name;
    bool list = false;
    preset->add_option("name", preset_name, "Preset name");
    preset->add_flag("--list", list, "List the preset names");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }

    try
    {
        if (*run)
            return cmd_run(run_args);
        if (*sweep)
            return cmd_sweep(sweep_args, axis, values);
        if (*audit)
            return cmd_audit(audit_args);
        if (*ingest)
            return cmd_ingest(ingest_args, channel_path, geometry_path);
        if (*preset)
            return cmd_preset(preset_name, list);
    }
    catch (const eldoa::parse_error &e)
    {
        return report_error("configuration", nullptr, e, exit_config);
    }
    catch (const eldoa::argument_error &e)
    {
        return report_error("configuration", nullptr, e, exit_config);
    }
    catch (const eldoa::ingest_error &e)
    {
        return report_error("validation", "channel", e, exit_validation);
    }
    catch (const eldoa::validation_error &e)
    {
        return report_error("validation", "pipeline", e, exit_validation);
    }
    catch (const eldoa::instability_error &e)
    {
        return report_error("numerical", "beamform", e, exit_numeric);
    }
    catch (const eldoa::degenerate_input_error &e)
    {
        return report_error("numerical", "spectrum", e, exit_numeric);
    }
    catch (const eldoa::domain_error &e)
    {
        return report_error("numerical", nullptr, e, exit_numeric);
    }
    catch (const std::exception &e)
    {
        return report_error("runtime", nullptr, e, exit_numeric);
    }
    return exit_config;
}
