// Copyright 2026 The fmasim Authors.
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


// Umbrella header.

#ifndef FMASIM_FMASIM_HPP_
#define FMASIM_FMASIM_HPP_

#include "fmasim/config.hpp"
#include "fmasim/dynamics.hpp"
#include "fmasim/errors.hpp"
#include "fmasim/fixtures.hpp"
#include "fmasim/fma.hpp"
#include "fmasim/force_control.hpp"
#include "fmasim/integrator.hpp"
#include "fmasim/io.hpp"
#include "fmasim/kinematics.hpp"
#include "fmasim/metrics.hpp"
#include "fmasim/random.hpp"
#include "fmasim/references.hpp"
#include "fmasim/simulation.hpp"
#include "fmasim/spatial.hpp"
#include "fmasim/units.hpp"

#endif  // FMASIM_FMASIM_HPP_
