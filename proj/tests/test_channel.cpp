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

#include "catch_amalgamated.hpp"

#include <eldoa/channel.hpp>

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <vector>

using namespace eldoa;

namespace
{
    std::shared_ptr<const sensor_array> make_array(std::vector<ellipse_spec> specs)
    {
        return std::make_shared<const sensor_array>(build_concentric(specs));
    }

    double wrap(double phase) { return std::remainder(phase, 2.0 * std::numbers::pi); }
}

TEST_CASE("Channel - Frequency grid")
{
    const frequency_grid g{28e9, 2e9, 100};
    CHECK(g.step_hz() == 20e6);
    CHECK(g.frequency_hz(0) == 28e9);
    CHECK(g.frequency_hz(50) == 29e9);
    CHECK(g.last_hz() == Catch::Approx(29.98e9).epsilon(1e-15));
    CHECK(g.delay_resolution_s() == 0.5e-9);
    CHECK(g.max_delay_s() == Catch::Approx(49.5e-9).epsilon(1e-15));
    CHECK_THROWS_AS((frequency_grid{0.0, 1e9, 10}.validate()), argument_error);
    CHECK_THROWS_AS((frequency_grid{1e9, -1.0, 10}.validate()), argument_error);
    CHECK_THROWS_AS((frequency_grid{1e9, 1e9, 1}.validate()), argument_error);
}

TEST_CASE("Channel - Response at the array centre")
{
    const frequency_grid g{28e9, 2e9, 100};
    for (const auto &h : wave_response_center({0.0, 90.0, 0.0, 1.0}, g))
        CHECK(h == complex(1.0, 0.0));
    for (const auto &h : wave_response_center({0.0, 90.0, 0.0, 2.0}, g))
        CHECK(h == complex(2.0, 0.0));

    const auto h = wave_response_center({0.0, 90.0, 30e-9, 1.0}, g);
    const double want = -2.0 * std::numbers::pi * 28e9 * 30e-9;
    CHECK(std::abs(h[0]) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(std::fabs(wrap(std::arg(h[0]) - want)) < 1e-9);

    CHECK_THROWS_AS(wave_response_center({0.0, 90.0, -1e-9, 1.0}, g), argument_error);
    CHECK_THROWS_AS(wave_response_center({0.0, 90.0, 0.0, 0.0}, g), argument_error);
}

TEST_CASE("Channel - Plane-wave model")
{
    const auto array = make_array({{0.5, 0.0, 0.0, 4}});
    const frequency_grid g{28e9, 2e9, 16};
    const auto center = wave_response_center({90.0, 90.0, 10e-9, 1.0}, g);

    // Sensor 0 sits at phi_p = 0, a wave from 90 deg is perpendicular to it
    const auto ch = synthesize_planewave(array, {90.0, 90.0, 10e-9, 1.0}, g);
    CHECK(ch.provenance == channel_provenance::synthetic_planewave);
    REQUIRE(ch.values.rows() == 4);
    REQUIRE(ch.values.cols() == 16);
    for (int k = 0; k < 16; ++k)
        CHECK(std::abs(ch.values(0, k) - center[k]) < 1e-12);

    // theta = 0: no sensor-dependent phase
    const auto broadside = synthesize_planewave(array, {37.0, 0.0, 10e-9, 1.0}, g);
    for (Eigen::Index p = 0; p < 4; ++p)
        for (int k = 0; k < 16; ++k)
            CHECK(std::abs(broadside.values(p, k) - center[k]) < 1e-12);

    // Sensor 1 at phi_p = 90 deg faces the source: phase advance 2 pi f r / c
    for (int k = 0; k < 16; ++k)
    {
        const double f = g.frequency_hz(k);
        const complex want = center[k] * std::polar(1.0, 2.0 * std::numbers::pi * f * 0.5 / speed_of_light);
        CHECK(std::abs(ch.values(1, k) - want) < 1e-9);
    }

    // |H| equals kappa at every entry
    const auto big = synthesize_planewave(make_array({{0.4, 0.6, 10.0, 64}}), {123.0, 70.0, 3e-9, 2.5}, g);
    for (Eigen::Index i = 0; i < big.values.size(); ++i)
        CHECK(std::abs(big.values.data()[i]) == Catch::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("Channel - Spherical model")
{
    const frequency_grid g{58e9, 4e9, 20};
    const auto array = make_array({{0.242, 0.95, 90.0, 64}});
    const incident_wave w{270.0, 90.0, 6.5e-9, 1.0, 1.95};
    const auto ch = synthesize_spherical(array, w, g);
    CHECK(ch.provenance == channel_provenance::synthetic_spherical);

    // Magnitude follows the path-loss ratio d / d_p
    for (Eigen::Index p = 0; p < ch.values.rows(); ++p)
    {
        const auto &s = array->rings[0].sensors[static_cast<std::size_t>(p)];
        const double sx = w.distance_m * std::cos(deg_to_rad(w.azimuth_deg));
        const double sy = w.distance_m * std::sin(deg_to_rad(w.azimuth_deg));
        const double d_p = std::hypot(sx - s.x_m, sy - s.y_m);
        for (int k = 0; k < g.samples; ++k)
            CHECK(std::abs(ch.values(p, k)) == Catch::Approx(w.distance_m / d_p).epsilon(1e-12));
        // The phase follows the exact path difference d - d_p
        const double f = g.frequency_hz(5);
        const double want = -2.0 * std::numbers::pi * f * w.delay_s +
                            2.0 * std::numbers::pi * f * (w.distance_m - d_p) / speed_of_light;
        CHECK(std::fabs(wrap(std::arg(ch.values(p, 5)) - want)) < 1e-6);
    }

    // The wavefront is curved: the phase across the array deviates from the plane-wave phase
    const auto flat = synthesize_planewave(array, w, g);
    double max_dev = 0.0;
    for (Eigen::Index p = 0; p < ch.values.rows(); ++p)
        max_dev = std::max(max_dev, std::fabs(std::arg(ch.values(p, g.samples - 1) / flat.values(p, g.samples - 1))));
    CHECK(max_dev > 0.5);

    CHECK_THROWS_AS(synthesize_spherical(array, {0.0, 90.0, 0.0, 1.0}, g), domain_error);
    CHECK_THROWS_AS(synthesize_spherical(array, {0.0, 90.0, 0.0, 1.0, 0.2}, g), domain_error);
}

TEST_CASE("Channel - Spherical model converges to the plane-wave model")
{
    // Small aperture so that the Fresnel term k a^2 / (2 d) is below 0.01 rad at d = 100 a
    const double a = 0.05;
    const auto array = make_array({{a, 0.5, 0.0, 32}});
    const frequency_grid g{1e9, 0.1e9, 8};
    std::vector<double> max_phase;
    for (double ratio : {10.0, 100.0, 1000.0})
    {
        const incident_wave w{40.0, 80.0, 2e-9, 1.0, ratio * a};
        const auto s = synthesize_spherical(array, w, g);
        const auto p = synthesize_planewave(array, w, g);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < s.values.size(); ++i)
            worst = std::max(worst, std::fabs(std::arg(s.values.data()[i] / p.values.data()[i])));
        max_phase.push_back(worst);
    }
    CHECK(max_phase[1] < max_phase[0]);
    CHECK(max_phase[2] < max_phase[1]);
    CHECK(max_phase[1] < 0.01);
}

TEST_CASE("Channel - Superposition")
{
    const auto array = make_array({{0.3, 0.4, 0.0, 24}});
    const frequency_grid g{10e9, 1e9, 12};
    const incident_wave w1{330.0, 90.0, 4e-9, 1.0, 1.2};
    const incident_wave w2{300.0, 90.0, 8e-9, 0.7, 2.4};

    const std::vector<incident_wave> one{w1};
    CHECK(superpose(one, array, g, channel_model::planewave).values == synthesize_planewave(array, w1, g).values);
    CHECK(superpose(one, array, g, channel_model::spherical).values == synthesize_spherical(array, w1, g).values);

    const std::vector<incident_wave> both{w1, w2}, second{w2};
    for (auto model : {channel_model::planewave, channel_model::spherical})
    {
        const auto sum = superpose(both, array, g, model);
        const auto parts = superpose(one, array, g, model).values + superpose(second, array, g, model).values;
        CHECK(sum.values == parts); // exact: same additions in the same order
    }

    // Doubling kappa doubles the response
    const incident_wave w3{w1.azimuth_deg, w1.elevation_deg, w1.delay_s, 2.0};
    CHECK((synthesize_planewave(array, w3, g).values - 2.0 * synthesize_planewave(array, {w1.azimuth_deg, 90.0, w1.delay_s, 1.0}, g).values)
              .cwiseAbs()
              .maxCoeff() < 1e-14);

    const std::vector<incident_wave> none;
    CHECK_THROWS_AS(superpose(none, array, g, channel_model::planewave), argument_error);
}

TEST_CASE("Channel - Additive noise")
{
    const auto array = make_array({{0.5, 0.0, 0.0, 720}});
    const frequency_grid g{28e9, 2e9, 150}; // 108000 entries
    const auto clean = synthesize_planewave(array, {90.0, 90.0, 30e-9, 1.0}, g);

    CHECK(add_awgn(clean, INFINITY, 1).values == clean.values);

    const auto noisy = add_awgn(clean, 0.0, 17);
    const double noise_power = (noisy.values - clean.values).cwiseAbs2().mean();
    const double snr_db = 10.0 * std::log10(clean.values.cwiseAbs2().mean() / noise_power);
    CHECK(std::fabs(snr_db) < 0.5);

    CHECK(add_awgn(clean, 10.0, 5).values == add_awgn(clean, 10.0, 5).values);
    CHECK(add_awgn(clean, 10.0, 5).values != add_awgn(clean, 10.0, 6).values);
    CHECK_THROWS_AS(add_awgn(clean, std::nan(""), 1), argument_error);
}

TEST_CASE("Channel - CSV export and ingest")
{
    const auto array = make_array({{0.242, 0.7, 0.0, 8}, {0.242, 0.7, 90.0, 8}});
    const frequency_grid g{58e9, 4e9, 200};
    const std::vector<incident_wave> scene{{330.0, 90.0, 4e-9, 1.0, 1.2}, {300.0, 90.0, 8e-9, 1.0, 2.4}};
    const auto ch = superpose(scene, array, g, channel_model::spherical);

    std::stringstream buf;
    write_channel_csv(buf, ch);
    const auto back = ingest_channel(buf, array);
    CHECK(back.provenance == channel_provenance::ingested);
    CHECK(back.values == ch.values);
    CHECK(back.grid.samples == 200);
    CHECK(back.grid.start_hz == 58e9);
    CHECK(back.grid.bandwidth_hz == Catch::Approx(4e9).epsilon(1e-12));
    CHECK(back.grid.step_hz() == Catch::Approx(20e6).epsilon(1e-12));
    CHECK(back.grid.delay_resolution_s() == Catch::Approx(0.25e-9).epsilon(1e-12));
}

TEST_CASE("Channel - Ingest rejects broken files")
{
    const auto array = make_array({{0.5, 0.0, 0.0, 4}});
    const auto reason = [&](const std::string &text) {
        std::istringstream in(text);
        try
        {
            ingest_channel(in, array);
        }
        catch (const ingest_error &e)
        {
            return static_cast<int>(e.reason());
        }
        return -1;
    };
    std::string good = "p,f_hz,re,im\n";
    for (int p = 0; p < 4; ++p)
        for (int k = 0; k < 3; ++k)
            good += std::to_string(p) + "," + std::to_string(1e9 + k * 1e6) + ",1,0\n";
    {
        std::istringstream in(good);
        CHECK(ingest_channel(in, array).values.cols() == 3);
    }

    // Missing sensor row
    std::string missing = "p,f_hz,re,im\n";
    for (int p = 0; p < 3; ++p)
        for (int k = 0; k < 3; ++k)
            missing += std::to_string(p) + "," + std::to_string(1e9 + k * 1e6) + ",1,0\n";
    CHECK(reason(missing) == static_cast<int>(ingest_failure::dimension_mismatch));

    // One frequency sample missing on the last sensor
    CHECK(reason(good.substr(0, good.rfind("3,"))) == static_cast<int>(ingest_failure::dimension_mismatch));

    std::string uneven = "p,f_hz,re,im\n";
    for (int p = 0; p < 4; ++p)
        uneven += std::to_string(p) + ",1e9,1,0\n" + std::to_string(p) + ",1.001e9,1,0\n" + std::to_string(p) + ",1.003e9,1,0\n";
    CHECK(reason(uneven) == static_cast<int>(ingest_failure::non_uniform_grid));

    std::string bad_value = good;
    bad_value.replace(bad_value.find(",1,0"), 4, ",inf,0");
    CHECK(reason(bad_value) == static_cast<int>(ingest_failure::non_finite_value));

    CHECK(reason("p,f_hz,re,im\n1,1e9,1,0\n") == static_cast<int>(ingest_failure::malformed));

    std::istringstream wrong_header("p,f,re,im\n");
    CHECK_THROWS_AS(ingest_channel(wrong_header, array), parse_error);
}
