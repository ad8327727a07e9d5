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

#ifndef ELDOA_ERRORS_HPP
#define ELDOA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eldoa
{
    // Input outside the mathematical domain of an operation (non-finite argument,
    // source inside the array, ...).
    class domain_error : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Structurally invalid call: empty lists, mismatched dimensions, unsupported options.
    class argument_error : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A filter denominator fell below the hard floor.
    class instability_error : public std::runtime_error
    {
    public:
        instability_error(int mode, long sensor, double frequency_hz, double magnitude);

        int mode() const noexcept { return mode_; }
        long sensor() const noexcept { return sensor_; } // -1 when not tied to a sensor
        double frequency_hz() const noexcept { return frequency_hz_; }
        double magnitude() const noexcept { return magnitude_; }

    private:
        int mode_;
        long sensor_;
        double frequency_hz_;
        double magnitude_;
    };

    // Spectrum without any non-zero cell.
    class degenerate_input_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed text input (CSV, scenario files). Line is 1-based, 0 if unknown.
    class parse_error : public std::runtime_error
    {
    public:
        parse_error(const std::string &what, std::size_t line = 0)
            : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    // Well-formed input that fails a semantic check.
    class validation_error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Reasons an ingested channel file is rejected.
    enum class ingest_failure
    {
        malformed,
        dimension_mismatch,
        non_uniform_grid,
        non_finite_value
    };

    class ingest_error : public validation_error
    {
    public:
        ingest_error(ingest_failure reason, const std::string &what)
            : validation_error(what), reason_(reason) {}

        ingest_failure reason() const noexcept { return reason_; }

    private:
        ingest_failure reason_;
    };

    inline instability_error::instability_error(int mode, long sensor, double frequency_hz, double magnitude)
        : std::runtime_error("filter denominator below floor (|d| = " + std::to_string(magnitude) +
                             ") at mode " + std::to_string(mode) + ", sensor " + std::to_string(sensor) +
                             ", f = " + std::to_string(frequency_hz) + " Hz"),
          mode_(mode), sensor_(sensor), frequency_hz_(frequency_hz), magnitude_(magnitude)
    {
    }
}

#endif
