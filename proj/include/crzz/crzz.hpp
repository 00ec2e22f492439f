// Copyright 2026 The crzz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "crzz/types.hpp"
#include "crzz/linalg.hpp"
#include "crzz/fit.hpp"
#include "crzz/parallel.hpp"
#include "crzz/qubit_spectra.hpp"
#include "crzz/coupled_system.hpp"
#include "crzz/cr_effective.hpp"
#include "crzz/pulse_calibration.hpp"
#include "crzz/noise_model.hpp"
#include "crzz/device.hpp"
#include "crzz/gate_error.hpp"
#include "crzz/rb_engine.hpp"
#include "crzz/device_card.hpp"
