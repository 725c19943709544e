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

#ifndef POGO_TD3_HPP
#define POGO_TD3_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pogo/environment.hpp"
#include "pogo/mlp.hpp"
#include "pogo/rng.hpp"

namespace pogo {

struct Td3Config {
    double learning_rate = 1e-3;
    int learning_starts = 100;  // episodes of uniform random actions
    int batch_size = 100;
    double tau = 0.005;
    double discount = 0.99;
    int train_freq = 1;        // episodes between training calls
    int gradient_steps = 1;    // train_step calls per training call
    int policy_delay = 2;      // critic updates per actor update
    double target_noise = 0.2; // in normalized action units
    double target_noise_clip = 0.5;
    int buffer_capacity = 1000;
    double reward_scale = 1.0; // multiplies rewards before they enter the buffer
    std::vector<int> actor_hidden = {64, 64};
    std::vector<int> critic_hidden = {256, 256};
    double actor_final_scale = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_epsilon = 1e-8;
    std::uint64_t seed = 0;

    void validate() const;
};

struct Transition {
    Eigen::VectorXd observation;
    Eigen::VectorXd action;  // environment units
    double reward = 0.0;
    Eigen::VectorXd next_observation;
    bool done = true;
};

/// Column-stacked minibatch.
struct Batch {
    Eigen::MatrixXd observation;
    Eigen::MatrixXd action;
    Eigen::VectorXd reward;
    Eigen::MatrixXd next_observation;
    Eigen::VectorXd done;  // 1.0 for terminal
};

/// Fixed-capacity FIFO experience store.
class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity);

    void add(Transition t);
    std::size_t size() const { return storage_.size(); }
    std::size_t capacity() const { return capacity_; }
    const Transition& at(std::size_t i) const { return storage_.at(i); }

    /// batch_size indices drawn uniformly with replacement.
    std::vector<std::size_t> sample_indices(std::size_t batch_size, Rng& rng) const;
    Batch gather(const std::vector<std::size_t>& indices) const;

private:
    std::size_t capacity_;
    std::size_t next_ = 0;
    std::vector<Transition> storage_;
};

/// Clamps a raw target-policy noise draw to +/-clip.
double clip_noise(double raw, double clip);

/// y = r + discount * (1 - done) * min(q1, q2), elementwise.
Eigen::VectorXd clipped_double_q(const Eigen::VectorXd& reward, const Eigen::VectorXd& done,
                                 const Eigen::VectorXd& q1, const Eigen::VectorXd& q2,
                                 double discount);

struct TrainDiagnostics {
    double critic_loss = 0.0;             // mean of the two critic losses
    std::optional<double> actor_loss;     // set on delayed actor updates
};

/// Actor, twin critics and their target copies. Networks work in normalized
/// action units [-1, 1]; the public interface speaks environment units.
class Td3Agent {
public:
    /// Draws actor, critic 1, critic 2 initial weights from rng in that order.
    Td3Agent(int observation_size, Eigen::VectorXd action_bounds, Td3Config config, Rng& rng);

    /// bounds .* tanh(actor(obs)); no exploration noise.
    Eigen::VectorXd select_action(const Eigen::VectorXd& observation) const;
    /// Uniform sample from the action box.
    Eigen::VectorXd random_action(Rng& rng) const;
    double critic_value(const Eigen::VectorXd& observation, const Eigen::VectorXd& action,
                        int which = 0) const;

    /// Target-policy-smoothed clipped double-Q targets for a batch.
    Eigen::VectorXd td_targets(const Batch& batch, Rng& rng) const;

    /// One critic step on both twins; every policy_delay-th call also one actor
    /// step and a soft update of all targets. Throws BufferUnderflow.
    TrainDiagnostics train_step(const ReplayBuffer& buffer, Rng& rng);

    const Td3Config& config() const { return config_; }
    const Eigen::VectorXd& action_bounds() const { return bounds_; }
    long critic_updates() const { return critic_updates_; }
    long actor_updates() const { return actor_updates_; }

    Mlp& actor() { return actor_; }
    Mlp& critic(int which) { return which == 0 ? critic1_ : critic2_; }
    Mlp& actor_target() { return actor_target_; }
    Mlp& critic_target(int which) { return which == 0 ? critic1_target_ : critic2_target_; }
    const Mlp& actor() const { return actor_; }
    const Mlp& critic(int which) const { return which == 0 ? critic1_ : critic2_; }
    const Mlp& actor_target() const { return actor_target_; }
    const Mlp& critic_target(int which) const { return which == 0 ? critic1_target_ : critic2_target_; }

private:
    Eigen::MatrixXd normalize(const Eigen::MatrixXd& action) const;
    static Eigen::MatrixXd stack(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& action);

    Td3Config config_;
    Eigen::VectorXd bounds_;
    Mlp actor_, critic1_, critic2_;
    Mlp actor_target_, critic1_target_, critic2_target_;
    Adam actor_opt_, critic1_opt_, critic2_opt_;
    long critic_updates_ = 0;
    long actor_updates_ = 0;
};

struct EpisodeRecord {
    int episode = 0;
    Eigen::VectorXd action;
    Eigen::Vector2d design = Eigen::Vector2d::Zero();
    double apex = 0.0;
    double reward = 0.0;
    double critic_loss = 0.0;  // NaN when no training happened this episode
    double actor_loss = 0.0;   // NaN when the actor was not updated
};

struct TrainingLog {
    std::uint64_t seed = 0;
    std::vector<EpisodeRecord> records;
    /// Deterministic policy output after the last episode.
    Eigen::VectorXd final_action;
    Eigen::Vector2d final_design = Eigen::Vector2d::Zero();
    Mlp final_actor;
};

/// Full training loop: random rollout for learning_starts episodes, then the
/// actor's choice, one transition per episode, train_step on schedule.
/// Random draws happen in the order init, rollout actions, batch indices,
/// target noise, all from one generator seeded with config.seed.
TrainingLog train_run(Environment& env, const Td3Config& config, int episodes);

}  // namespace pogo

#endif  // POGO_TD3_HPP
