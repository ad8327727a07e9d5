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

#ifndef ELDOA_TYPES_HPP
#define ELDOA_TYPES_HPP

#include <Eigen/Core>
#include <complex>

namespace eldoa
{
    using complex = std::complex<double>;
    using complex_matrix = Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    using real_matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

    // j^m z, exact (component swaps and sign flips only)
    inline complex times_j_power(complex z, int m) noexcept
    {
        switch (((m % 4) + 4) % 4)
        {
        case 0:
            return z;
        case 1:
            return {-z.imag(), z.real()};
        case 2:
            return {-z.real(), -z.imag()};
        default:
            return {z.imag(), -z.real()};
        }
    }
}

#endif
