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

#ifndef ELDOA_CSV_HPP
#define ELDOA_CSV_HPP

#include "errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

// Minimal helpers for the comma-separated files the library reads and writes.
// Doubles are written with 17 significant digits so that a write/read cycle is exact.

namespace eldoa::csv
{
    inline std::string format_double(double v)
    {
        char buf[40];
        auto res = std::to_chars(buf, buf + sizeof(buf), v); // shortest form that round-trips exactly
        return std::string(buf, res.ptr);
    }

    inline std::vector<std::string_view> split(std::string_view line)
    {
        std::vector<std::string_view> out;
        std::size_t pos = 0;
        while (true)
        {
            const auto next = line.find(',', pos);
            auto field = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
            while (!field.empty() && (field.front() == ' ' || field.front() == '\t'))
                field.remove_prefix(1);
            while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
                field.remove_suffix(1);
            out.push_back(field);
            if (next == std::string_view::npos)
                break;
            pos = next + 1;
        }
        return out;
    }

    // Parses a double; "nan"/"inf" are accepted so callers can reject them with a
    // specific error.
    inline double parse_double(std::string_view field, std::size_t line)
    {
        double v = 0.0;
        const char *first = field.data();
        if (!field.empty() && field.front() == '+')
            ++first;
        auto res = std::from_chars(first, field.data() + field.size(), v);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size())
            throw parse_error("cannot parse number '" + std::string(field) + "'", line);
        return v;
    }

    inline long parse_int(std::string_view field, std::size_t line)
    {
        long v = 0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc() || res.ptr != field.data() + field.size())
            throw parse_error("cannot parse integer '" + std::string(field) + "'", line);
        return v;
    }

    // Iterates the data rows of a CSV stream after checking the header.
    class reader
    {
    public:
        reader(std::istream &in, std::string_view expected_header) : in_(in)
        {
            std::string header;
            if (!next_line(header))
                throw parse_error("empty file, expected header '" + std::string(expected_header) + "'", 1);
            if (header != expected_header)
                throw parse_error("expected header '" + std::string(expected_header) + "', found '" + header + "'", line_);
        }

        // Returns false at end of input; skips blank lines.
        bool next(std::vector<std::string_view> &fields, std::size_t expected_fields)
        {
            while (next_line(current_))
            {
                if (current_.find_first_not_of(" \t\r") == std::string::npos)
                    continue;
                fields = split(current_);
                if (fields.size() != expected_fields)
                    throw parse_error("expected " + std::to_string(expected_fields) + " fields, found " +
                                          std::to_string(fields.size()),
                                      line_);
                return true;
            }
            return false;
        }

        std::size_t line() const noexcept { return line_; }

    private:
        bool next_line(std::string &out)
        {
            if (!std::getline(in_, out))
                return false;
            ++line_;
            if (!out.empty() && out.back() == '\r')
                out.pop_back();
            return true;
        }

        std::istream &in_;
        std::string current_;
        std::size_t line_ = 0;
    };
}

#endif
