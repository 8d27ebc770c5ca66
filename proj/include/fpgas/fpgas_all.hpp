// Copyright 2026 The fpgas Authors.
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

/// @file fpgas_all.hpp
/// Umbrella header pulling in the whole library. The *_io headers (and
/// therefore this one) need nlohmann's json.hpp on the include path.

#pragma once

#include "fpgas/adaptive.hpp"
#include "fpgas/circuit.hpp"
#include "fpgas/circuit_io.hpp"
#include "fpgas/encoder.hpp"
#include "fpgas/fpgs.hpp"
#include "fpgas/lowering.hpp"
#include "fpgas/manifest.hpp"
#include "fpgas/markov.hpp"
#include "fpgas/qubo.hpp"
#include "fpgas/qubo_io.hpp"
#include "fpgas/resources.hpp"
#include "fpgas/schedule.hpp"
#include "fpgas/statevector.hpp"
#include "fpgas/util.hpp"
#include "fpgas/version.hpp"
