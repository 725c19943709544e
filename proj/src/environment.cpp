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

#include "pogo/environment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pogo/errors.hpp"

namespace pogo {

DesignSpace DesignSpace::from_name(const std::string& name) {
    if (name == "narrow") return narrow();
    if (name == "broad") return broad();
    throw ConfigError("unknown design space '" + name + "' (expected narrow or broad)");
}

Design action_to_design(const Eigen::Vector2d& action, const DesignSpace& space) {
    return {std::clamp(space.alpha_nom + action.x(), space.alpha_min(), space.alpha_max()),
            std::clamp(space.zeta_nom + action.y(), space.zeta_min(), space.zeta_max())};
}

Observation observe(const Trajectory& traj) {
    if (traj.samples.empty()) throw EmptyTrajectory();
    Observation obs;
    for (const PogoState& s : traj.samples) {
        obs.sum_x += s.x;
        obs.sum_x_dot += s.x_dot;
        obs.sum_x_a += s.x_a;
        obs.sum_x_a_dot += s.x_a_dot;
    }
    return obs;
}

double reward_max_height(const Trajectory& traj) {
    return apex_height(traj);
}

double specified_height_reward(double apex, double x_s) {
    if (!(x_s > 0.0)) {
        std::ostringstream msg;
        msg << "target height must be positive, got " << x_s;
        throw InvalidTarget(msg.str());
    }
    return 1.0 / (std::abs(apex - x_s) / x_s + 1.0);
}

double reward_specified_height(const Trajectory& traj, double x_s) {
    if (!(x_s > 0.0)) return specified_height_reward(0.0, x_s);
    return specified_height_reward(reward_max_height(traj), x_s);
}

EpisodeResult episode(const Eigen::Vector2d& action, const DesignSpace& space,
                      const DesignParams& base, const JumpCommand& command,
                      const SimConfig& sim, const RewardCase& reward_case) {
    EpisodeResult result;
    result.design = action_to_design(action, space);
    const Trajectory traj =
        simulate(base.with_design(result.design.alpha, result.design.zeta), command, sim);
    result.observation = observe(traj);
    result.apex = apex_height(traj);
    result.reward = reward_case.kind == RewardCase::Kind::MaxHeight
                        ? result.apex
                        : specified_height_reward(result.apex, reward_case.target);
    result.samples = traj.samples.size();
    result.done = true;
    return result;
}

Observation reset(const DesignSpace&) {
    return {};
}


PogoDesignEnv::PogoDesignEnv(DesignSpace space, DesignParams base, JumpCommand command,
                             SimConfig sim, RewardCase reward_case)
    : space_(std::move(space)),
      base_(base),
      command_(std::move(command)),
      sim_(sim),
      reward_case_(reward_case) {
    base_.validate();
    sim_.validate();
    validate_command(command_, base_);
}

Eigen::VectorXd PogoDesignEnv::reset() {
    return pogo::reset(space_).vector();
}

StepOutcome PogoDesignEnv::step(const Eigen::VectorXd& action) {
    const EpisodeResult r = episode(action.head<2>(), space_, base_, command_, sim_, reward_case_);
    StepOutcome out;
    out.next_observation = r.observation.vector() / static_cast<double>(r.samples);
    out.reward = r.reward;
    out.done = r.done;
    out.design = {r.design.alpha, r.design.zeta};
    out.apex = r.apex;
    return out;
}

Eigen::Vector2d PogoDesignEnv::design_of(const Eigen::VectorXd& action) const {
    const Design d = action_to_design(action.head<2>(), space_);
    return {d.alpha, d.zeta};
}

}  // namespace pogo
