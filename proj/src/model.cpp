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

#include "pogo/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pogo/errors.hpp"

namespace pogo {

void DesignParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw InvalidParameter(what);
    };
    require(leg_mass > 0.0, "leg mass must be positive");
    require(actuator_mass > 0.0, "actuator mass must be positive");
    require(spring_constant > 0.0, "spring constant must be positive");
    require(cubic_stiffness >= 0.0, "cubic stiffness must be non-negative");
    require(damping_ratio >= 0.0, "damping ratio must be non-negative");
    require(gravity > 0.0, "gravity must be positive");
    require(stroke_max > 0.0, "stroke limit must be positive");
    require(vel_max > 0.0, "velocity limit must be positive");
    require(accel_max > 0.0, "acceleration limit must be positive");
    require(compression_limit > 0.0, "compression limit must be positive");
}

double damping_coefficient(const DesignParams& params) {
    return 2.0 * params.damping_ratio * std::sqrt(params.spring_constant * params.total_mass());
}

DerivedParams derive(const DesignParams& params) {
    const double m_t = params.total_mass();
    return {m_t, std::sqrt(params.spring_constant / m_t), damping_coefficient(params)};
}

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Liftoff: return "liftoff";
        case EventKind::Touchdown: return "touchdown";
        case EventKind::StopHit: return "stop_hit";
    }
    return "unknown";
}

std::size_t Trajectory::count(EventKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [kind](const Event& e) { return e.kind == kind; }));
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("sim dt must be positive");
    if (!(t_f > 0.0) || !std::isfinite(t_f)) throw InvalidParameter("sim t_f must be positive");
    const double ratio = t_f / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        throw InvalidParameter("sim t_f must be a whole number of dt steps");
}

std::size_t SimConfig::steps() const {
    return static_cast<std::size_t>(std::llround(t_f / dt));
}

int contact_indicator(double x) {
    return x <= 0.0 ? -1 : 0;
}

namespace {

struct RodState {
    double x;
    double v;
};

// Rod dynamics with the contact indicator held fixed over a sub-step.
struct RodDynamics {
    double spring;
    double cubic;
    double damping;
    double inv_total_mass;
    double mass_ratio;
    double gravity;
    double stop;

    explicit RodDynamics(const DesignParams& p)
        : spring(p.spring_constant),
          cubic(p.cubic_stiffness),
          damping(damping_coefficient(p)),
          inv_total_mass(1.0 / p.total_mass()),
          mass_ratio(p.actuator_mass / p.total_mass()),
          gravity(p.gravity),
          stop(-p.compression_limit) {}

    double accel(double x, double v, double u, int gamma) const {
        return gamma * inv_total_mass * (spring * x + cubic * x * x * x + damping * v) -
               mass_ratio * u - gravity;
    }

    RodState rk4(const RodState& s, double h, double u, int gamma) const {
        const double k1x = s.v;
        const double k1v = accel(s.x, s.v, u, gamma);
        const double k2x = s.v + 0.5 * h * k1v;
        const double k2v = accel(s.x + 0.5 * h * k1x, k2x, u, gamma);
        const double k3x = s.v + 0.5 * h * k2v;
        const double k3v = accel(s.x + 0.5 * h * k2x, k3x, u, gamma);
        const double k4x = s.v + h * k3v;
        const double k4v = accel(s.x + h * k3x, k4x, u, gamma);
        return {s.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
                s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
    }

    // Integrates over h with constant actuator acceleration u, locating ground
    // and stop crossings by bisection so each RK4 sub-step is smooth.
    RodState advance(RodState s, double h, double u, bool& stop_hit) const {
        constexpr int kMaxEvents = 16;
        constexpr int kBisections = 60;
        double remaining = h;
        for (int events = 0; remaining > 0.0; ++events) {
            if (s.x <= stop && s.v <= 0.0) {
                s = {stop, 0.0};
                if (accel(stop, 0.0, u, -1) <= 0.0) return s;  // held against the stop
            }
            const int gamma = contact_indicator(s.x);
            auto crossed = [&](const RodState& r) {
                return contact_indicator(r.x) != gamma || r.x < stop;
            };
            const RodState trial = rk4(s, remaining, u, gamma);
            if (!crossed(trial) || events >= kMaxEvents) return trial;

            double lo = 0.0;
            double hi = remaining;
            for (int i = 0; i < kBisections; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (crossed(rk4(s, mid, u, gamma)))
                    hi = mid;
                else
                    lo = mid;
            }
            s = rk4(s, hi, u, gamma);
            if (s.x < stop) {
                s.x = stop;
                s.v = std::max(s.v, 0.0);
                stop_hit = true;
            }
            remaining -= hi;
        }
        return s;
    }
};

bool finite(const PogoState& s) {
    return std::isfinite(s.x) && std::isfinite(s.x_dot) && std::isfinite(s.x_a) &&
           std::isfinite(s.x_a_dot);
}

PogoState step_impl(const PogoState& state, const JumpCommand& command,
                    const DesignParams& params, const RodDynamics& rod, double dt,
                    bool& stop_hit) {
    const double t0 = state.t;
    const double t1 = t0 + dt;
    RodState s{state.x, state.x_dot};
    double a = t0;
    for (double sw : command.switch_times()) {
        if (sw > a && sw < t1) {
            s = rod.advance(s, sw - a, accel_at(command, 0.5 * (a + sw)), stop_hit);
            a = sw;
        }
    }
    s = rod.advance(s, t1 - a, accel_at(command, 0.5 * (a + t1)), stop_hit);

    const ActuatorState act = actuator_kinematics(command, t1);
    PogoState next = enforce_stop({t1, s.x, s.v, act.position, act.velocity}, params);
    if (!finite(next)) {
        std::ostringstream msg;
        msg << "non-finite state at t = " << t1 << " (dt = " << dt << " may be unstable)";
        throw NonFiniteState(msg.str());
    }
    return next;
}

}  // namespace

double rod_acceleration(const PogoState& state, double x_a_ddot, const DesignParams& params) {
    return RodDynamics(params).accel(state.x, state.x_dot, x_a_ddot, contact_indicator(state.x));
}

PogoState enforce_stop(const PogoState& state, const DesignParams& params) {
    if (state.x >= -params.compression_limit) return state;
    PogoState out = state;
    out.x = -params.compression_limit;
    out.x_dot = std::max(state.x_dot, 0.0);
    return out;
}

PogoState integrate_step(const PogoState& state, const JumpCommand& command,
                         const DesignParams& params, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("integration step must be positive");
    bool stop_hit = false;
    return step_impl(state, command, params, RodDynamics(params), dt, stop_hit);
}

Trajectory simulate(const DesignParams& params, const JumpCommand& command,
                    const SimConfig& config) {
    return simulate(params, command, config, PogoState{0.0, 0.0, 0.0, command.x_a_0, 0.0});
}

Trajectory simulate(const DesignParams& params, const JumpCommand& command,
                    const SimConfig& config, const PogoState& initial) {
    params.validate();
    config.validate();
    validate_command(command, params);

    const RodDynamics rod(params);
    const std::size_t n = config.steps();
    Trajectory traj;
    traj.dt = config.dt;
    traj.samples.reserve(n + 1);

    const ActuatorState act0 = actuator_kinematics(command, 0.0);
    PogoState state = enforce_stop({0.0, initial.x, initial.x_dot, act0.position, act0.velocity}, params);
    traj.samples.push_back(state);

    for (std::size_t i = 0; i < n; ++i) {
        bool stop_hit = false;
        PogoState next = step_impl(state, command, params, rod, config.dt, stop_hit);
        next.t = static_cast<double>(i + 1) * config.dt;

        const int before = contact_indicator(state.x);
        const int after = contact_indicator(next.x);
        if (before == -1 && after == 0) traj.events.push_back({next.t, EventKind::Liftoff});
        if (before == 0 && after == -1) traj.events.push_back({next.t, EventKind::Touchdown});
        if (stop_hit) traj.events.push_back({next.t, EventKind::StopHit});

        traj.samples.push_back(next);
        state = next;
    }
    return traj;
}

double apex_height(const Trajectory& traj) {
    if (traj.samples.empty()) throw EmptyTrajectory();
    double apex = traj.samples.front().x;
    for (const PogoState& s : traj.samples) apex = std::max(apex, s.x);
    return apex;
}

}  // namespace pogo
