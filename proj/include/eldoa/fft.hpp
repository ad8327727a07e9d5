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

#ifndef ELDOA_FFT_HPP
#define ELDOA_FFT_HPP

#include "types.hpp"

#include <fftw3.h>

#include <memory>
#include <mutex>

namespace eldoa::fft
{
    namespace detail
    {
        // FFTW planning is not thread safe; execution is.
        inline std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }

        struct plan_deleter
        {
            void operator()(fftw_plan_s *plan) const
            {
                std::lock_guard<std::mutex> lock(planner_mutex());
                fftw_destroy_plan(plan);
            }
        };

        using plan_handle = std::unique_ptr<fftw_plan_s, plan_deleter>;
    }

    // In-place 2-D forward DFT, X[q][k] = sum_{r,c} x[r][c] exp(-2 pi j (q r / R + k c / C)).
    // FFTW_ESTIMATE planning keeps results independent of timing.
    inline void forward_2d(complex_matrix &data)
    {
        if (data.size() == 0)
            return;
        auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
        detail::plan_handle plan;
        {
            std::lock_guard<std::mutex> lock(detail::planner_mutex());
            plan.reset(fftw_plan_dft_2d(static_cast<int>(data.rows()), static_cast<int>(data.cols()), ptr, ptr,
                                        FFTW_FORWARD, FFTW_ESTIMATE));
        }
        fftw_execute(plan.get());
    }
}

#endif
