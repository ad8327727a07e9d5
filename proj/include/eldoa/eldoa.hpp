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

#ifndef ELDOA_HPP
#define ELDOA_HPP

// Umbrella header: wideband joint azimuth/delay estimation with elliptical arrays.
#include "errors.hpp"
#include "types.hpp"
#include "version.hpp"
#include "specfun.hpp"
#include "rng.hpp"
#include "csv.hpp"
#include "geometry.hpp"
#include "channel.hpp"
#include "beamform.hpp"
#include "fft.hpp"
#include "spectrum.hpp"
#include "pipeline.hpp"
#include "scenario.hpp"
#include "presets.hpp"

#endif
