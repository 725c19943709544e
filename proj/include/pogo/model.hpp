/*
 Copyright 2026 The pogo-codesign Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef POGO_MODEL_HPP
#define POGO_MODEL_HPP

#include <cstddef>
#include <vector>

#include "pogo/command.hpp"
#include "pogo/params.hpp"

namespace pogo {

/// Rod height/velocity relative to the ground and actuator position/velocity
/// along the rod.
struct PogoState {
    double t = 0.0;
    double x = 0.0;
    double x_dot = 0.0;
    double x_a = 0.0;
    double x_a_dot = 0.0;
};

enum class EventKind { Liftoff, Touchdown, StopHit };

const char* to_string(EventKind kind);

struct Event {
    double t;
    EventKind kind;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<PogoState> samples;
    std::vector<Event> events;

    std::size_t count(EventKind kind) const;
};

struct SimConfig {
    double dt = 1e-4;
    double t_f = 2.0;

    void validate() const;
    std::size_t steps() const;
};

/// -1 while the foot is on the ground (x <= 0), 0 airborne.
int contact_indicator(double x);

/// Right-hand side of the rod equation of motion.
double rod_acceleration(const PogoState& state, double x_a_ddot, const DesignParams& params);

/// Rigid, perfectly plastic compression stop.
PogoState enforce_stop(const PogoState& state, const DesignParams& params);

/// Advances the rod by one RK4 step of length dt. The step is split at command
/// switching instants and at ground/stop crossings so each RK4 sub-step sees a
/// smooth right-hand side. The actuator channel is taken from the command's
/// closed form. Throws NonFiniteState.
PogoState integrate_step(const PogoState& state, const JumpCommand& command,
                         const DesignParams& params, double dt);

/// Uniformly sampled simulation over [0, t_f] starting from rest on the
/// uncompressed spring with the actuator at the command's start position.
Trajectory simulate(const DesignParams& params, const JumpCommand& command,
                    const SimConfig& config);

/// Same, from an arbitrary initial state (its t is ignored and set to 0).
Trajectory simulate(const DesignParams& params, const JumpCommand& command,
                    const SimConfig& config, const PogoState& initial);

/// Maximum rod height over the samples. Throws EmptyTrajectory.
double apex_height(const Trajectory& traj);

}  // namespace pogo

#endif  // POGO_MODEL_HPP
