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

#ifndef POGO_COMMAND_HPP
#define POGO_COMMAND_HPP

#include <array>
#include <vector>

#include "pogo/params.hpp"

namespace pogo {

struct SimConfig;

/// Impulse train that, convolved with a step of height accel_mag, yields the
/// actuator acceleration profile.
struct ImpulseSequence {
    std::vector<double> amplitudes;
    std::vector<double> times;
};

/// Gains of the two back-to-back bang-bang motions.
inline constexpr std::array<double, 6> kJumpAmplitudes = {-1.0, 2.0, -1.0, 1.0, -2.0, 1.0};

/// Bang-bang jump command: move the actuator down by delta_1, hold for
/// delta_t, then move it up by delta_2. Positions are measured from the
/// bottom of the stroke.
struct JumpCommand {
    double accel_mag = 0.0;
    ImpulseSequence sequence;
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double delta_t = 0.0;
    double x_a_0 = 0.0;

    /// Command that never moves the actuator.
    static JumpCommand idle(double x_a_0);

    /// Durations of the five constant-acceleration phases, from the geometry.
    std::array<double, 5> phase_durations() const;
    /// Phase start instants plus the final end instant (6 values).
    std::array<double, 6> switch_times() const;
    double end_time() const { return switch_times()[5]; }
};

/// Impulse times for the two bang-bang motions; throws StrokeViolation or
/// SaturationViolation when a stroke does not fit the actuator limits.
ImpulseSequence times_from_geometry(double delta_1, double delta_t, double delta_2,
                                    double accel_mag, const DesignParams& limits);

/// Validated command with the fixed amplitude pattern.
JumpCommand make_jump_command(double delta_1, double delta_t, double delta_2,
                              double accel_mag, double x_a_0, const DesignParams& limits);

/// Re-checks stroke, speed and acceleration limits for an existing command.
void validate_command(const JumpCommand& cmd, const DesignParams& limits);

/// Commanded actuator acceleration, half-open phases [t_i, t_{i+1}).
double accel_at(const JumpCommand& cmd, double t);

struct ActuatorState {
    double position;
    double velocity;
};

/// Closed-form actuator motion obtained by integrating accel_at from (x_a_0, 0).
ActuatorState actuator_kinematics(const JumpCommand& cmd, double t);

/// Compares a discrete step*impulse convolution on a grid of spacing dt with
/// accel_at. Grid points that coincide with a switching instant are skipped.
bool convolution_check(const JumpCommand& cmd, double dt);

struct DelayChoice {
    double delta_t;
    double apex;
};

/// Picks the pause maximizing apex height for the given design using
/// full-stroke bang-bang motions. Ties go to the smaller pause.
DelayChoice tune_delay(const DesignParams& params, const SimConfig& sim,
                       const std::vector<double>& delay_grid);

}  // namespace pogo

#endif  // POGO_COMMAND_HPP
