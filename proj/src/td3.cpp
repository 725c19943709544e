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

#include "pogo/td3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pogo/errors.hpp"

namespace pogo {

void Td3Config::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ConfigError(what);
    };
    require(learning_rate > 0.0, "td3 learning_rate must be positive");
    require(learning_starts >= 0, "td3 learning_starts must be non-negative");
    require(batch_size > 0, "td3 batch_size must be positive");
    require(tau > 0.0 && tau <= 1.0, "td3 tau must lie in (0, 1]");
    require(discount >= 0.0 && discount <= 1.0, "td3 discount must lie in [0, 1]");
    require(train_freq >= 1, "td3 train_freq must be at least 1");
    require(gradient_steps >= 1, "td3 gradient_steps must be at least 1");
    require(policy_delay >= 1, "td3 policy_delay must be at least 1");
    require(target_noise >= 0.0, "td3 target_noise must be non-negative");
    require(target_noise_clip >= 0.0, "td3 target_noise_clip must be non-negative");
    require(buffer_capacity > 0, "td3 buffer_capacity must be positive");
    require(reward_scale > 0.0, "td3 reward_scale must be positive");
    require(!actor_hidden.empty() && !critic_hidden.empty(), "td3 hidden layer lists must not be empty");
    for (int h : actor_hidden) require(h > 0, "td3 hidden layer sizes must be positive");
    for (int h : critic_hidden) require(h > 0, "td3 hidden layer sizes must be positive");
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw InvalidParameter("replay buffer capacity must be positive");
    storage_.reserve(capacity);
}

void ReplayBuffer::add(Transition t) {
    if (storage_.size() < capacity_) {
        storage_.push_back(std::move(t));
    } else {
        storage_[next_] = std::move(t);
    }
    next_ = (next_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch_size, Rng& rng) const {
    if (storage_.empty()) throw BufferUnderflow("cannot sample from an empty replay buffer");
    std::vector<std::size_t> idx(batch_size);
    for (auto& i : idx) i = rng.index(storage_.size());
    return idx;
}

Batch ReplayBuffer::gather(const std::vector<std::size_t>& indices) const {
    const Transition& first = storage_.at(indices.front());
    const auto n = static_cast<Eigen::Index>(indices.size());
    Batch b{Eigen::MatrixXd(first.observation.size(), n), Eigen::MatrixXd(first.action.size(), n),
            Eigen::VectorXd(n), Eigen::MatrixXd(first.next_observation.size(), n),
            Eigen::VectorXd(n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const Transition& t = storage_.at(indices[static_cast<std::size_t>(k)]);
        b.observation.col(k) = t.observation;
        b.action.col(k) = t.action;
        b.reward[k] = t.reward;
        b.next_observation.col(k) = t.next_observation;
        b.done[k] = t.done ? 1.0 : 0.0;
    }
    return b;
}

double clip_noise(double raw, double clip) {
    return std::clamp(raw, -clip, clip);
}

Eigen::VectorXd clipped_double_q(const Eigen::VectorXd& reward, const Eigen::VectorXd& done,
                                 const Eigen::VectorXd& q1, const Eigen::VectorXd& q2,
                                 double discount) {
    return reward.array() + discount * (1.0 - done.array()) * q1.array().min(q2.array());
}

Td3Agent::Td3Agent(int observation_size, Eigen::VectorXd action_bounds, Td3Config config, Rng& rng)
    : config_(std::move(config)), bounds_(std::move(action_bounds)) {
    config_.validate();
    if (observation_size <= 0 || bounds_.size() == 0 || (bounds_.array() <= 0.0).any())
        throw InvalidParameter("agent needs a positive observation size and positive action bounds");
    const int act = static_cast<int>(bounds_.size());

    std::vector<int> actor_sizes{observation_size};
    actor_sizes.insert(actor_sizes.end(), config_.actor_hidden.begin(), config_.actor_hidden.end());
    actor_sizes.push_back(act);
    std::vector<int> critic_sizes{observation_size + act};
    critic_sizes.insert(critic_sizes.end(), config_.critic_hidden.begin(), config_.critic_hidden.end());
    critic_sizes.push_back(1);

    actor_ = Mlp(actor_sizes, Activation::Tanh, rng, config_.actor_final_scale);
    critic1_ = Mlp(critic_sizes, Activation::Identity, rng);
    critic2_ = Mlp(critic_sizes, Activation::Identity, rng);
    actor_target_ = actor_;
    critic1_target_ = critic1_;
    critic2_target_ = critic2_;

    const double lr = config_.learning_rate;
    actor_opt_ = Adam(actor_, lr, config_.adam_beta1, config_.adam_beta2, config_.adam_epsilon);
    critic1_opt_ = Adam(critic1_, lr, config_.adam_beta1, config_.adam_beta2, config_.adam_epsilon);
    critic2_opt_ = Adam(critic2_, lr, config_.adam_beta1, config_.adam_beta2, config_.adam_epsilon);
}

Eigen::MatrixXd Td3Agent::normalize(const Eigen::MatrixXd& action) const {
    return bounds_.cwiseInverse().asDiagonal() * action;
}

Eigen::MatrixXd Td3Agent::stack(const Eigen::MatrixXd& obs, const Eigen::MatrixXd& action) {
    Eigen::MatrixXd x(obs.rows() + action.rows(), obs.cols());
    x << obs, action;
    return x;
}

Eigen::VectorXd Td3Agent::select_action(const Eigen::VectorXd& observation) const {
    return bounds_.cwiseProduct(actor_.predict(observation));
}

Eigen::VectorXd Td3Agent::random_action(Rng& rng) const {
    Eigen::VectorXd a(bounds_.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = rng.uniform(-bounds_[i], bounds_[i]);
    return a;
}

double Td3Agent::critic_value(const Eigen::VectorXd& observation, const Eigen::VectorXd& action,
                              int which) const {
    return critic(which).forward(stack(observation, normalize(action)))(0, 0);
}

Eigen::VectorXd Td3Agent::td_targets(const Batch& batch, Rng& rng) const {
    Eigen::MatrixXd next_action = actor_target_.forward(batch.next_observation);
    for (Eigen::Index k = 0; k < next_action.cols(); ++k) {
        for (Eigen::Index i = 0; i < next_action.rows(); ++i) {
            const double eps = clip_noise(rng.normal(0.0, config_.target_noise), config_.target_noise_clip);
            next_action(i, k) = std::clamp(next_action(i, k) + eps, -1.0, 1.0);
        }
    }
    const Eigen::MatrixXd next_input = stack(batch.next_observation, next_action);
    const Eigen::VectorXd q1 = critic1_target_.forward(next_input).row(0).transpose();
    const Eigen::VectorXd q2 = critic2_target_.forward(next_input).row(0).transpose();
    return clipped_double_q(batch.reward, batch.done, q1, q2, config_.discount);
}

TrainDiagnostics Td3Agent::train_step(const ReplayBuffer& buffer, Rng& rng) {
    const auto batch_size = static_cast<std::size_t>(config_.batch_size);
    if (buffer.size() < batch_size)
        throw BufferUnderflow("replay buffer holds " + std::to_string(buffer.size()) +
                              " transitions, batch needs " + std::to_string(batch_size));

    const Batch batch = buffer.gather(buffer.sample_indices(batch_size, rng));
    const Eigen::VectorXd y = td_targets(batch, rng);
    const Eigen::MatrixXd input = stack(batch.observation, normalize(batch.action));
    const double n = static_cast<double>(batch_size);

    TrainDiagnostics diag;
    auto fit_critic = [&](Mlp& critic, Adam& opt) {
        Mlp::Cache cache;
        const Eigen::MatrixXd q = critic.forward(input, cache);
        const Eigen::RowVectorXd err = q.row(0) - y.transpose();
        MlpGradients grads;
        critic.backward(cache, 2.0 / n * err, grads);
        opt.step(critic, grads);
        return err.squaredNorm() / n;
    };
    diag.critic_loss = 0.5 * (fit_critic(critic1_, critic1_opt_) + fit_critic(critic2_, critic2_opt_));
    ++critic_updates_;

    if (critic_updates_ % config_.policy_delay == 0) {
        Mlp::Cache actor_cache;
        const Eigen::MatrixXd action = actor_.forward(batch.observation, actor_cache);
        Mlp::Cache critic_cache;
        const Eigen::MatrixXd q = critic1_.forward(stack(batch.observation, action), critic_cache);
        diag.actor_loss = -q.mean();

        MlpGradients unused;
        const Eigen::MatrixXd dq = Eigen::MatrixXd::Constant(1, q.cols(), -1.0 / n);
        const Eigen::MatrixXd d_input = critic1_.backward(critic_cache, dq, unused);
        MlpGradients actor_grads;
        actor_.backward(actor_cache, d_input.bottomRows(action.rows()), actor_grads);
        actor_opt_.step(actor_, actor_grads);
        ++actor_updates_;

        soft_update(actor_target_, actor_, config_.tau);
        soft_update(critic1_target_, critic1_, config_.tau);
        soft_update(critic2_target_, critic2_, config_.tau);
    }
    return diag;
}

TrainingLog train_run(Environment& env, const Td3Config& config, int episodes) {
    config.validate();
    if (episodes < 0) throw InvalidParameter("episode count must be non-negative");

    Rng rng(config.seed);
    Td3Agent agent(env.observation_size(), env.action_bounds(), config, rng);
    ReplayBuffer buffer(static_cast<std::size_t>(config.buffer_capacity));
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    TrainingLog log;
    log.seed = config.seed;
    log.records.reserve(static_cast<std::size_t>(episodes));
    for (int ep = 0; ep < episodes; ++ep) {
        const Eigen::VectorXd obs = env.reset();
        const Eigen::VectorXd action =
            ep < config.learning_starts ? agent.random_action(rng) : agent.select_action(obs);
        const StepOutcome out = env.step(action);
        buffer.add({obs, action, config.reward_scale * out.reward, out.next_observation, out.done});

        EpisodeRecord rec;
        rec.episode = ep;
        rec.action = action;
        rec.design = out.design;
        rec.apex = out.apex;
        rec.reward = out.reward;
        rec.critic_loss = nan;
        rec.actor_loss = nan;

        const bool train_now = ep >= config.learning_starts &&
                               (ep - config.learning_starts) % config.train_freq == 0 &&
                               buffer.size() >= static_cast<std::size_t>(config.batch_size);
        if (train_now) {
            for (int g = 0; g < config.gradient_steps; ++g) {
                const TrainDiagnostics d = agent.train_step(buffer, rng);
                rec.critic_loss = d.critic_loss;
                if (d.actor_loss) rec.actor_loss = *d.actor_loss;
            }
        }
        log.records.push_back(std::move(rec));
    }
    log.final_action = agent.select_action(env.reset());
    log.final_design = env.design_of(log.final_action);
    log.final_actor = agent.actor();
    return log;
}

}  // namespace pogo
