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

#include "pogo/command.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pogo/errors.hpp"
#include "pogo/model.hpp"

namespace pogo {

namespace {

// Sign of the acceleration in each of the five phases.
constexpr std::array<double, 5> kPhaseSign = {-1.0, 1.0, 0.0, 1.0, -1.0};

double half_duration(double delta, double accel_mag) {
    return accel_mag > 0.0 ? std::sqrt(delta / accel_mag) : 0.0;
}

void check_stroke(double delta, const char* name, const DesignParams& limits) {
    if (!(delta > 0.0)) {
        std::ostringstream msg;
        msg << name << " must be positive, got " << delta;
        throw InvalidParameter(msg.str());
    }
    if (delta > limits.stroke_max) {
        std::ostringstream msg;
        msg << name << " = " << delta << " m exceeds the actuator stroke " << limits.stroke_max << " m";
        throw StrokeViolation(msg.str());
    }
}

void check_speed(double delta, double accel_mag, const DesignParams& limits) {
    const double peak = accel_mag * half_duration(delta, accel_mag);
    if (peak > limits.vel_max) {
        std::ostringstream msg;
        msg << "peak actuator speed " << peak << " m/s exceeds the limit " << limits.vel_max << " m/s";
        throw SaturationViolation(msg.str());
    }
}

void check_geometry(double delta_1, double delta_t, double delta_2, double accel_mag,
                    const DesignParams& limits) {
    if (!(accel_mag > 0.0)) throw InvalidParameter("command acceleration must be positive");
    if (accel_mag > limits.accel_max) {
        std::ostringstream msg;
        msg << "command acceleration " << accel_mag << " m/s^2 exceeds the limit " << limits.accel_max;
        throw SaturationViolation(msg.str());
    }
    if (!(delta_t >= 0.0)) throw InvalidParameter("command pause must be non-negative");
    check_stroke(delta_1, "delta_1", limits);
    check_stroke(delta_2, "delta_2", limits);
    check_speed(delta_1, accel_mag, limits);
    check_speed(delta_2, accel_mag, limits);
}

void check_excursion(double x_a_0, double delta_1, double delta_2, const DesignParams& limits) {
    const double bottom = x_a_0 - delta_1;
    const double end = bottom + delta_2;
    if (x_a_0 > limits.stroke_max || x_a_0 < 0.0 || bottom < 0.0 || end > limits.stroke_max) {
        std::ostringstream msg;
        msg << "actuator excursion [" << bottom << ", " << std::max(x_a_0, end)
            << "] leaves the stroke [0, " << limits.stroke_max << "]";
        throw StrokeViolation(msg.str());
    }
}

}  // namespace

JumpCommand JumpCommand::idle(double x_a_0) {
    JumpCommand cmd;
    cmd.x_a_0 = x_a_0;
    cmd.sequence.amplitudes.assign(kJumpAmplitudes.begin(), kJumpAmplitudes.end());
    cmd.sequence.times.assign(6, 0.0);
    return cmd;
}

std::array<double, 5> JumpCommand::phase_durations() const {
    const double h1 = half_duration(delta_1, accel_mag);
    const double h2 = half_duration(delta_2, accel_mag);
    return {h1, h1, delta_t, h2, h2};
}

std::array<double, 6> JumpCommand::switch_times() const {
    const auto d = phase_durations();
    std::array<double, 6> s{};
    for (std::size_t i = 0; i < d.size(); ++i) s[i + 1] = s[i] + d[i];
    return s;
}

ImpulseSequence times_from_geometry(double delta_1, double delta_t, double delta_2,
                                    double accel_mag, const DesignParams& limits) {
    check_geometry(delta_1, delta_t, delta_2, accel_mag, limits);
    JumpCommand geometry;
    geometry.accel_mag = accel_mag;
    geometry.delta_1 = delta_1;
    geometry.delta_2 = delta_2;
    geometry.delta_t = delta_t;
    const auto s = geometry.switch_times();
    return {{kJumpAmplitudes.begin(), kJumpAmplitudes.end()}, {s.begin(), s.end()}};
}

JumpCommand make_jump_command(double delta_1, double delta_t, double delta_2,
                              double accel_mag, double x_a_0, const DesignParams& limits) {
    JumpCommand cmd;
    cmd.sequence = times_from_geometry(delta_1, delta_t, delta_2, accel_mag, limits);
    check_excursion(x_a_0, delta_1, delta_2, limits);
    cmd.accel_mag = accel_mag;
    cmd.delta_1 = delta_1;
    cmd.delta_2 = delta_2;
    cmd.delta_t = delta_t;
    cmd.x_a_0 = x_a_0;
    return cmd;
}

void validate_command(const JumpCommand& cmd, const DesignParams& limits) {
    if (cmd.accel_mag == 0.0) {
        check_excursion(cmd.x_a_0, 0.0, 0.0, limits);
        return;
    }
    check_geometry(cmd.delta_1, cmd.delta_t, cmd.delta_2, cmd.accel_mag, limits);
    check_excursion(cmd.x_a_0, cmd.delta_1, cmd.delta_2, limits);
}

double accel_at(const JumpCommand& cmd, double t) {
    const auto s = cmd.switch_times();
    for (std::size_t j = 0; j < kPhaseSign.size(); ++j) {
        if (t >= s[j] && t < s[j + 1]) return kPhaseSign[j] * cmd.accel_mag;
    }
    return 0.0;
}

ActuatorState actuator_kinematics(const JumpCommand& cmd, double t) {
    const auto s = cmd.switch_times();
    if (t >= s[5]) return {cmd.x_a_0 - cmd.delta_1 + cmd.delta_2, 0.0};

    const auto d = cmd.phase_durations();
    double pos = cmd.x_a_0;
    double vel = 0.0;
    for (std::size_t j = 0; j < d.size() && t > s[j]; ++j) {
        const double tau = std::min(t - s[j], d[j]);
        const double a = kPhaseSign[j] * cmd.accel_mag;
        pos += vel * tau + 0.5 * a * tau * tau;
        vel += a * tau;
    }
    return {pos, vel};
}

bool convolution_check(const JumpCommand& cmd, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("convolution grid spacing must be positive");
    const auto& amps = cmd.sequence.amplitudes;
    const auto& times = cmd.sequence.times;
    if (amps.size() != times.size() || amps.empty()) return false;

    const auto switches = cmd.switch_times();
    double horizon = switches[5];
    for (double ti : times) horizon = std::max(horizon, ti);
    const std::size_t n = static_cast<std::size_t>(std::ceil(horizon / dt)) + 16;

    // Impulse train on the grid: each impulse lands on the first grid point at
    // or after its time.
    std::vector<double> impulses(n, 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) return false;
        auto k = static_cast<std::size_t>(std::ceil(times[i] / dt));
        while (k > 0 && static_cast<double>(k - 1) * dt >= times[i]) --k;
        while (static_cast<double>(k) * dt < times[i]) ++k;
        if (k < n) impulses[k] += amps[i];
    }
    const std::vector<double> step(n, cmd.accel_mag);

    auto coincides = [&](double tk) {
        const double eps = 1e-9 * dt;
        for (double sw : switches)
            if (std::abs(tk - sw) <= eps) return true;
        for (double ti : times)
            if (std::abs(tk - ti) <= eps) return true;
        return false;
    };

    for (std::size_t k = 0; k < n; ++k) {
        double conv = 0.0;
        for (std::size_t j = 0; j <= k; ++j) conv += step[k - j] * impulses[j];
        const double tk = static_cast<double>(k) * dt;
        if (coincides(tk)) continue;
        if (conv != accel_at(cmd, tk)) return false;
    }
    return true;
}

DelayChoice tune_delay(const DesignParams& params, const SimConfig& sim,
                       const std::vector<double>& delay_grid) {
    if (delay_grid.empty()) throw InvalidParameter("delay grid is empty");
    DelayChoice best{0.0, -std::numeric_limits<double>::infinity()};
    bool have = false;
    for (double delay : delay_grid) {
        const JumpCommand cmd = make_jump_command(params.stroke_max, delay, params.stroke_max,
                                                  params.accel_max, params.stroke_max, params);
        const double apex = apex_height(simulate(params, cmd, sim));
        if (!have || apex > best.apex || (apex == best.apex && delay < best.delta_t)) {
            best = {delay, apex};
            have = true;
        }
    }
    return best;
}

}  // namespace pogo
