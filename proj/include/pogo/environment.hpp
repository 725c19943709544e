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

#ifndef POGO_ENVIRONMENT_HPP
#define POGO_ENVIRONMENT_HPP

#include <string>

#include <Eigen/Dense>

#include "pogo/command.hpp"
#include "pogo/model.hpp"
#include "pogo/params.hpp"

namespace pogo {

/// Nominal design plus the +/-90% offset box the agent acts in.
struct DesignSpace {
    std::string name = "narrow";
    double alpha_nom = 5760.0;
    double zeta_nom = 1e-2;

    static DesignSpace narrow() { return {"narrow", 5760.0, 1e-2}; }
    static DesignSpace broad() { return {"broad", 5760.0, 7.5e-2}; }
    /// "narrow" or "broad"; throws ConfigError otherwise.
    static DesignSpace from_name(const std::string& name);

    /// Half-widths of the action box.
    Eigen::Vector2d action_bounds() const { return {0.9 * alpha_nom, 0.9 * zeta_nom}; }
    double alpha_min() const { return 0.1 * alpha_nom; }
    double alpha_max() const { return 1.9 * alpha_nom; }
    double zeta_min() const { return 0.1 * zeta_nom; }
    double zeta_max() const { return 1.9 * zeta_nom; }
};

struct Design {
    double alpha;
    double zeta;
};

/// Channel-wise sums over every trajectory sample.
struct Observation {
    double sum_x = 0.0;
    double sum_x_dot = 0.0;
    double sum_x_a = 0.0;
    double sum_x_a_dot = 0.0;

    Eigen::Vector4d vector() const { return {sum_x, sum_x_dot, sum_x_a, sum_x_a_dot}; }
};

struct RewardCase {
    enum class Kind { MaxHeight, SpecifiedHeight };
    Kind kind = Kind::MaxHeight;
    double target = 0.01;  // x_s, m; only used by SpecifiedHeight

    static RewardCase max_height() { return {Kind::MaxHeight, 0.0}; }
    static RewardCase specified_height(double x_s) { return {Kind::SpecifiedHeight, x_s}; }
};

struct EpisodeResult {
    Observation observation;
    double reward = 0.0;
    double apex = 0.0;
    Design design{};
    bool done = true;
    std::size_t samples = 0;
};

/// design = nominal + action, clamped to [0.1, 1.9] x nominal.
Design action_to_design(const Eigen::Vector2d& action, const DesignSpace& space);

Observation observe(const Trajectory& traj);

double reward_max_height(const Trajectory& traj);
double reward_specified_height(const Trajectory& traj, double x_s);
/// 1 / (|apex - x_s| / x_s + 1). Throws InvalidTarget if x_s <= 0.
double specified_height_reward(double apex, double x_s);

/// One design decision: realize the design, simulate once with the fixed
/// command and score it.
EpisodeResult episode(const Eigen::Vector2d& action, const DesignSpace& space,
                      const DesignParams& base, const JumpCommand& command,
                      const SimConfig& sim, const RewardCase& reward_case);

/// The observation the actor sees when choosing a design: all zeros.
Observation reset(const DesignSpace& space);


/// What an environment reports back for one action.
struct StepOutcome {
    Eigen::VectorXd next_observation;
    double reward = 0.0;
    bool done = true;
    Eigen::Vector2d design = Eigen::Vector2d::Zero();  // logged design values
    double apex = 0.0;                                  // logged performance value
};

/// Minimal gym-style interface the learner trains against.
class Environment {
public:
    virtual ~Environment() = default;
    virtual int observation_size() const = 0;
    /// Per-dimension half-widths of the symmetric action box.
    virtual Eigen::VectorXd action_bounds() const = 0;
    virtual Eigen::VectorXd reset() = 0;
    virtual StepOutcome step(const Eigen::VectorXd& action) = 0;
    /// Design values an action maps to, for logging.
    virtual Eigen::Vector2d design_of(const Eigen::VectorXd& action) const = 0;
};

/// The pogo-stick design problem as a one-step environment. Observations
/// handed to the learner are per-sample means of the channel sums.
class PogoDesignEnv : public Environment {
public:
    PogoDesignEnv(DesignSpace space, DesignParams base, JumpCommand command, SimConfig sim,
                  RewardCase reward_case);

    int observation_size() const override { return 4; }
    Eigen::VectorXd action_bounds() const override { return space_.action_bounds(); }
    Eigen::VectorXd reset() override;
    StepOutcome step(const Eigen::VectorXd& action) override;
    Eigen::Vector2d design_of(const Eigen::VectorXd& action) const override;

    const DesignSpace& space() const { return space_; }

private:
    DesignSpace space_;
    DesignParams base_;
    JumpCommand command_;
    SimConfig sim_;
    RewardCase reward_case_;
};

}  // namespace pogo

#endif  // POGO_ENVIRONMENT_HPP
