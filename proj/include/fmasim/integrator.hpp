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


// Fixed-step classic fourth-order Runge-Kutta integration.

#ifndef FMASIM_INTEGRATOR_HPP_
#define FMASIM_INTEGRATOR_HPP_

#include <Eigen/Dense>
#include <stdexcept>

#include "fmasim/errors.hpp"

namespace fmasim {

// One RK4 step of x' = f(t, x). State is any Eigen column vector type.
template <typename State, typename Derivative>
State rk4_step(Derivative&& f, const State& x, double t, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const auto check = [](const State& k) {
    if (!k.allFinite()) throw IntegrationError("non-finite state derivative");
    return k;
  };
  const double half = 0.5 * dt;
  const State k1 = check(f(t, x));
  const State k2 = check(f(t + half, State(x + half * k1)));
  const State k3 = check(f(t + half, State(x + half * k2)));
  const State k4 = check(f(t + dt, State(x + dt * k3)));
  State next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) throw IntegrationError("non-finite state after step");
  return next;
}

}  // namespace fmasim

#endif  // FMASIM_INTEGRATOR_HPP_
