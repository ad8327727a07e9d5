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

#ifndef ELDOA_BEAMFORM_HPP
#define ELDOA_BEAMFORM_HPP

#include "channel.hpp"
#include "csv.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "specfun.hpp"
#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace eldoa
{
    // Phase-mode filter W_{m,p}(f), x = 2 pi f r_p / c:
    //   plain   : 1 / (j^m J_m(x))
    //   robust  : 2 / (j^m [J_m(x) - j J'_m(x)])
    //   average : robust kernel with r_p replaced by the ring's (a + b) / 2
    enum class filter_design
    {
        plain,
        robust,
        average
    };

    // Which symmetries the bank exploits when evaluating filters.
    //   parity    : W_{-m,p} = W_{m,p}, so only m >= 0 is evaluated
    //   quadrant  : sensors at eta, pi - eta, pi + eta, 2 pi - eta share r_p
    //   symmetric : both
    enum class reduction
    {
        none,
        parity,
        quadrant,
        symmetric
    };

    inline constexpr double instability_floor = 1e-12;
    inline constexpr double default_mode_threshold = 1e-6;

    // Contiguous modes m = -half_width .. +half_width, M = 2 half_width + 1.
    struct mode_range
    {
        int half_width = 0;

        int count() const { return 2 * half_width + 1; }
        int lowest() const { return -half_width; }
        int row(int m) const { return m + half_width; }
        int mode(int row) const { return row - half_width; }

        bool operator==(const mode_range &) const = default;
    };

    namespace detail
    {
        inline double filter_argument(double radius_m, double f_hz)
        {
            return 2.0 * std::numbers::pi * f_hz * radius_m / speed_of_light;
        }

        inline bool uses_derivative(filter_design d) { return d != filter_design::plain; }

        // Denominator without the j^m factor
        inline complex filter_denominator(filter_design design, double j_m, double jp_m)
        {
            return uses_derivative(design) ? complex(j_m, -jp_m) : complex(j_m, 0.0);
        }

        // numer / (j^m den), den = J_m - j J'_m (robust) or J_m (plain); real arithmetic only.
        inline complex filter_from_parts(filter_design design, int m, double j_m, double jp_m, double floor,
                                         long sensor, double f_hz)
        {
            const double re = j_m;
            const double im = uses_derivative(design) ? -jp_m : 0.0;
            const double mag2 = re * re + im * im;
            if (!(mag2 >= floor * floor))
                throw instability_error(m, sensor, f_hz, std::sqrt(mag2));
            const double scale = (uses_derivative(design) ? 2.0 : 1.0) / mag2;
            return times_j_power(complex(re * scale, -im * scale), -m);
        }
    }

    // Largest M_h with |J_m(x) - j J'_m(x)| >= threshold for all |m| <= M_h (|J_m(x)| for
    // the plain design), where x = 2 pi f_min r_min / c.
    inline int mode_limit_at(double x, double threshold = default_mode_threshold,
                             filter_design design = filter_design::robust)
    {
        if (!(threshold > 0.0))
            throw argument_error("mode_limit: threshold must be positive");
        if (!(x >= 0.0) || !std::isfinite(x))
            throw domain_error("mode_limit: argument must be finite and >= 0");
        int n_max = static_cast<int>(std::ceil(x + 64.0 + 24.0 * std::cbrt(x)));
        while (true)
        {
            const auto seq = specfun::bessel_j_sequence(n_max + 1, x);
            for (int m = 0; m <= n_max; ++m)
            {
                const complex den = detail::filter_denominator(design, seq[m], specfun::derivative_from_sequence(seq, m));
                if (std::abs(den) < threshold)
                    return m - 1;
            }
            n_max *= 2;
        }
    }

    inline int mode_limit(const sensor_array &array, const frequency_grid &grid,
                          double threshold = default_mode_threshold, filter_design design = filter_design::robust)
    {
        grid.validate();
        const double x_min = detail::filter_argument(array.min_radius_m(), grid.start_hz);
        return std::max(0, mode_limit_at(x_min, threshold, design));
    }

    // Single filter coefficient. For the average design pass r = (a + b) / 2.
    inline complex make_filter(filter_design design, int m, double radius_m, double f_hz,
                               double floor = instability_floor, long sensor = -1)
    {
        const double x = detail::filter_argument(radius_m, f_hz);
        const double jm = specfun::bessel_j(m, x);
        const double jpm = detail::uses_derivative(design) ? specfun::bessel_j_prime(m, x) : 0.0;
        return detail::filter_from_parts(design, m, jm, jpm, floor, sensor, f_hz);
    }

    // Sensors of one ring grouped into classes that share a filter radius.
    struct ring_filter_plan
    {
        int ring = 0;
        std::vector<double> class_radius_m;
        std::vector<std::uint32_t> sensor_class;      // one entry per sensor
        std::vector<std::uint32_t> class_representative; // sensor index that defines each class
    };

    // Filter bank over all rings, modes and frequency samples. Weights are produced one
    // frequency slice at a time from the unique (order, radius class) table, so memory
    // stays at O(M P) however large K is.
    class filter_bank
    {
    public:
        mode_range modes;
        filter_design design = filter_design::robust;
        reduction reduce = reduction::none;
        frequency_grid grid;
        double floor = instability_floor;
        std::vector<ring_filter_plan> rings;

        bool parity_reduced() const { return reduce == reduction::parity || reduce == reduction::symmetric; }
        int stored_orders() const { return parity_reduced() ? modes.half_width + 1 : modes.count(); }

        // Row of mode m in a unique slice
        int stored_row(int m) const { return parity_reduced() ? std::abs(m) : modes.row(m); }

        // Unique weights of one ring at sample k, laid out [class][stored order].
        complex_matrix unique_slice(std::size_t ring, int k) const
        {
            const auto &plan = rings.at(ring);
            const int orders = stored_orders();
            const double f = grid.frequency_hz(k);
            complex_matrix out(static_cast<Eigen::Index>(plan.class_radius_m.size()), orders);
            std::vector<double> seq(static_cast<std::size_t>(modes.half_width) + 2);
            for (std::size_t c = 0; c < plan.class_radius_m.size(); ++c)
            {
                const double x = detail::filter_argument(plan.class_radius_m[c], f);
                specfun::bessel_j_sequence(x, seq);
                const long who = static_cast<long>(plan.class_representative[c]);
                for (int row = 0; row < orders; ++row)
                {
                    const int m = parity_reduced() ? row : modes.mode(row);
                    const int n = std::abs(m);
                    const double sign = (m < 0 && (n & 1)) ? -1.0 : 1.0;
                    const double jm = sign * seq[static_cast<std::size_t>(n)];
                    const double jpm = specfun::derivative_from_sequence(seq, m);
                    out(static_cast<Eigen::Index>(c), row) = detail::filter_from_parts(design, m, jm, jpm, floor, who, f);
                }
            }
            return out;
        }

        // Full M x P weights of one ring at sample k.
        complex_matrix expanded_slice(std::size_t ring, int k) const
        {
            const auto &plan = rings.at(ring);
            const auto unique = unique_slice(ring, k);
            complex_matrix out(modes.count(), static_cast<Eigen::Index>(plan.sensor_class.size()));
            for (int row = 0; row < modes.count(); ++row)
            {
                const int srow = stored_row(modes.mode(row));
                for (std::size_t p = 0; p < plan.sensor_class.size(); ++p)
                    out(row, static_cast<Eigen::Index>(p)) = unique(plan.sensor_class[p], srow);
            }
            return out;
        }

        std::size_t unique_weights(std::size_t ring) const
        {
            return static_cast<std::size_t>(stored_orders()) * rings.at(ring).class_radius_m.size();
        }

        // Distinct (order, radius) filter evaluations over the whole grid
        std::size_t unique_evaluations() const
        {
            std::size_t n = 0;
            for (std::size_t r = 0; r < rings.size(); ++r)
                n += unique_weights(r);
            return n * static_cast<std::size_t>(grid.samples);
        }

        // M x P x K over all rings, i.e. the unreduced count
        std::size_t full_weights() const
        {
            std::size_t n = 0;
            for (const auto &plan : rings)
                n += plan.sensor_class.size();
            return n * static_cast<std::size_t>(modes.count()) * static_cast<std::size_t>(grid.samples);
        }
    };

    namespace detail
    {
        inline ring_filter_plan plan_ring(const sensor_ring &ring, filter_design design, reduction reduce)
        {
            ring_filter_plan plan;
            plan.ring = ring.index;
            const std::size_t count = ring.sensors.size();
            plan.sensor_class.assign(count, 0);
            const bool quadrant = reduce == reduction::quadrant || reduce == reduction::symmetric;

            if (quadrant && !(ring.spec && ring.spec->quadrant_symmetric()))
                throw argument_error("quadrant reduction needs an exactly placed ring (sigma = 0) with P divisible by 4 (ring " +
                                     std::to_string(ring.index) + ")");

            if (design == filter_design::average)
            {
                plan.class_radius_m = {ring.average_radius_m()};
                plan.class_representative = {0};
            }
            else if (ring.exact_circle())
            {
                plan.class_radius_m = {ring.spec->semi_major_m};
                plan.class_representative = {0};
            }
            else if (quadrant)
            {
                const std::size_t half = count / 2;
                const std::size_t quarter = count / 4;
                for (std::size_t c = 0; c <= quarter; ++c)
                {
                    plan.class_radius_m.push_back(ring.sensors[c].radius_m());
                    plan.class_representative.push_back(static_cast<std::uint32_t>(c));
                }
                for (std::size_t p = 0; p < count; ++p)
                {
                    const std::size_t j = p % half;
                    plan.sensor_class[p] = static_cast<std::uint32_t>(std::min(j, half - j));
                }
            }
            else
            {
                for (std::size_t p = 0; p < count; ++p)
                {
                    plan.class_radius_m.push_back(ring.sensors[p].radius_m());
                    plan.class_representative.push_back(static_cast<std::uint32_t>(p));
                    plan.sensor_class[p] = static_cast<std::uint32_t>(p);
                }
            }
            return plan;
        }
    }

    inline filter_bank build_bank(const sensor_array &array, const frequency_grid &grid, filter_design design,
                                  mode_range modes, reduction reduce, double floor = instability_floor)
    {
        grid.validate();
        if (modes.half_width < 0)
            throw argument_error("filter bank: negative mode half-width");
        if (array.rings.empty())
            throw argument_error("filter bank: array has no rings");
        filter_bank bank;
        bank.modes = modes;
        bank.design = design;
        bank.reduce = reduce;
        bank.grid = grid;
        bank.floor = floor;
        for (const auto &ring : array.rings)
            bank.rings.push_back(detail::plan_ring(ring, design, reduce));
        return bank;
    }

    // The strongest reduction the geometry allows: symmetric when every ring is exactly
    // placed with P divisible by 4, parity otherwise.
    inline reduction best_reduction(const sensor_array &array)
    {
        for (const auto &ring : array.rings)
            if (!(ring.spec && ring.spec->quadrant_symmetric()))
                return reduction::parity;
        return reduction::symmetric;
    }

    // H[m][k] over modes m = -M_h .. M_h and frequency samples.
    struct mode_matrix
    {
        mode_range modes;
        frequency_grid grid;
        complex_matrix values;

        complex at(int m, int k) const { return values(modes.row(m), k); }
    };

    // H_m(f_k) = (1/P) sum_p H[p][k] exp(+j m phi_p) W_{m,p}(f_k), accumulated in ascending p.
    inline mode_matrix phase_mode_expand(const channel_matrix &channel, std::size_t ring, const filter_bank &bank)
    {
        if (!channel.array)
            throw argument_error("phase-mode expansion: channel has no geometry");
        const auto &array = *channel.array;
        if (ring >= array.rings.size() || ring >= bank.rings.size())
            throw argument_error("phase-mode expansion: ring index out of range");
        if (channel.samples() != bank.grid.samples)
            throw argument_error("phase-mode expansion: bank and channel frequency grids differ");
        const auto &sensors = array.rings[ring].sensors;
        const auto &plan = bank.rings[ring];
        if (plan.sensor_class.size() != sensors.size())
            throw argument_error("phase-mode expansion: bank was built for a different geometry");

        const int M = bank.modes.count();
        const std::size_t P = sensors.size();
        const Eigen::Index row0 = static_cast<Eigen::Index>(array.offset(ring));

        // exp(j m phi_p) as separate real and imaginary tables, [p][mode row]
        real_matrix basis_re(static_cast<Eigen::Index>(P), M), basis_im(static_cast<Eigen::Index>(P), M);
        for (std::size_t p = 0; p < P; ++p)
        {
            const double phi = sensors[p].azimuth_rad();
            for (int row = 0; row < M; ++row)
            {
                const complex b = std::polar(1.0, bank.modes.mode(row) * phi);
                basis_re(static_cast<Eigen::Index>(p), row) = b.real();
                basis_im(static_cast<Eigen::Index>(p), row) = b.imag();
            }
        }
        std::vector<int> srow(static_cast<std::size_t>(M));
        for (int row = 0; row < M; ++row)
            srow[static_cast<std::size_t>(row)] = bank.stored_row(bank.modes.mode(row));

        mode_matrix out;
        out.modes = bank.modes;
        out.grid = channel.grid;
        out.values = complex_matrix::Zero(M, channel.samples());
        const auto classes = static_cast<Eigen::Index>(plan.class_radius_m.size());
        real_matrix w_re(classes, M), w_im(classes, M);
        std::vector<double> acc_re(static_cast<std::size_t>(M)), acc_im(static_cast<std::size_t>(M));
        for (int k = 0; k < channel.samples(); ++k)
        {
            const complex_matrix w = bank.unique_slice(ring, k);
            for (Eigen::Index c = 0; c < classes; ++c)
                for (int row = 0; row < M; ++row)
                {
                    const complex v = w(c, srow[static_cast<std::size_t>(row)]);
                    w_re(c, row) = v.real();
                    w_im(c, row) = v.imag();
                }
            std::fill(acc_re.begin(), acc_re.end(), 0.0);
            std::fill(acc_im.begin(), acc_im.end(), 0.0);
            double *are = acc_re.data();
            double *aim = acc_im.data();
            for (std::size_t p = 0; p < P; ++p)
            {
                const complex h = channel.values(row0 + static_cast<Eigen::Index>(p), k);
                const double hr = h.real(), hi = h.imag();
                const double *br = basis_re.row(static_cast<Eigen::Index>(p)).data();
                const double *bi = basis_im.row(static_cast<Eigen::Index>(p)).data();
                const double *wr = w_re.row(plan.sensor_class[p]).data();
                const double *wi = w_im.row(plan.sensor_class[p]).data();
                for (int row = 0; row < M; ++row)
                {
                    // (h * basis) * weight
                    const double xr = hr * br[row] - hi * bi[row];
                    const double xi = hr * bi[row] + hi * br[row];
                    are[row] += xr * wr[row] - xi * wi[row];
                    aim[row] += xr * wi[row] + xi * wr[row];
                }
            }
            for (int row = 0; row < M; ++row)
                out.values(row, k) = complex(acc_re[static_cast<std::size_t>(row)], acc_im[static_cast<std::size_t>(row)]) /
                                     static_cast<double>(P);
        }
        return out;
    }

    // Equal-weight average over rings, accumulated in ring order.
    inline mode_matrix concentric_expand(std::span<const mode_matrix> per_ring)
    {
        if (per_ring.empty())
            throw argument_error("concentric expansion: no rings");
        mode_matrix out = per_ring.front();
        for (std::size_t i = 1; i < per_ring.size(); ++i)
        {
            if (!(per_ring[i].modes == out.modes) || !(per_ring[i].grid == out.grid) ||
                per_ring[i].values.rows() != out.values.rows() || per_ring[i].values.cols() != out.values.cols())
                throw argument_error("concentric expansion: rings use different mode ranges or grids");
            out.values += per_ring[i].values;
        }
        out.values /= static_cast<double>(per_ring.size());
        return out;
    }

    // Expands every ring of the channel's array and averages.
    inline mode_matrix expand_array(const channel_matrix &channel, const filter_bank &bank)
    {
        std::vector<mode_matrix> per_ring;
        for (std::size_t r = 0; r < bank.rings.size(); ++r)
            per_ring.push_back(phase_mode_expand(channel, r, bank));
        return concentric_expand(per_ring);
    }

    inline constexpr const char *bank_csv_header = "m,p,ring,f_hz,re,im";

    // Debug dump of every weight: M x P x K rows, several hundred MB for full-size arrays.
    inline void write_bank_csv(std::ostream &out, const filter_bank &bank)
    {
        out << bank_csv_header << '\n';
        for (int k = 0; k < bank.grid.samples; ++k)
            for (std::size_t r = 0; r < bank.rings.size(); ++r)
            {
                const auto w = bank.expanded_slice(r, k);
                for (Eigen::Index row = 0; row < w.rows(); ++row)
                    for (Eigen::Index p = 0; p < w.cols(); ++p)
                        out << bank.modes.mode(static_cast<int>(row)) << ',' << p << ',' << bank.rings[r].ring << ','
                            << csv::format_double(bank.grid.frequency_hz(k)) << ','
                            << csv::format_double(w(row, p).real()) << ',' << csv::format_double(w(row, p).imag()) << '\n';
            }
    }
}

#endif
