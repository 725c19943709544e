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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "pogo/environment.hpp"
#include "pogo/errors.hpp"
#include "pogo/rng.hpp"

using namespace pogo;

TEST_CASE("design spaces") {
    CHECK(DesignSpace::from_name("narrow").zeta_nom == 1e-2);
    CHECK(DesignSpace::from_name("broad").zeta_nom == 7.5e-2);
    CHECK_THROWS_AS(DesignSpace::from_name("wide"), ConfigError);
}

TEST_CASE("action to design is nominal plus offset, clamped") {
    const DesignSpace s = DesignSpace::narrow();
    Design d = action_to_design({0, 0}, s);
    CHECK(d.alpha == 5760.0);
    CHECK(d.zeta == 1e-2);
    d = action_to_design({-0.9 * 5760, 0}, s);
    CHECK(d.alpha == doctest::Approx(576.0).epsilon(1e-14));
    d = action_to_design({10000, 0}, s);
    CHECK(d.alpha == doctest::Approx(10944.0).epsilon(1e-14));
    d = action_to_design({0, -1.0}, s);
    CHECK(d.zeta == doctest::Approx(1e-3).epsilon(1e-14));
}

TEST_CASE("observation sums") {
    Trajectory t;
    for (double x : {0.0, 0.01, 0.02}) t.samples.push_back({0, x, 0, 0, 0});
    Observation o = observe(t);
    CHECK(o.sum_x == doctest::Approx(0.03));
    CHECK(o.sum_x_dot == 0.0);
    CHECK(o.sum_x_a == 0.0);
    CHECK(o.sum_x_a_dot == 0.0);
    t.samples.assign(5, PogoState{});
    o = observe(t);
    CHECK(o.vector() == Eigen::Vector4d::Zero());
}

TEST_CASE("observation sums scale with the sample count") {
    const DesignParams p;
    const JumpCommand cmd = pogo_test::tuned_command();
    const Observation fine = observe(simulate(p, cmd, SimConfig{1e-4, 2.0}));
    const Observation coarse = observe(simulate(p, cmd, SimConfig{2e-4, 2.0}));
    // Riemann sums of the same motion: half the samples, about half the sum
    CHECK(coarse.sum_x / fine.sum_x == doctest::Approx(0.5).epsilon(0.02));
    CHECK(coarse.sum_x_a / fine.sum_x_a == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("rewards") {
    Trajectory t;
    for (double x : {0.0, 0.009, 0.002}) t.samples.push_back({0, x, 0, 0, 0});
    CHECK(reward_max_height(t) == 0.009);
    t.samples.assign(3, PogoState{});
    CHECK(reward_max_height(t) == 0.0);

    CHECK(specified_height_reward(0.01, 0.01) == 1.0);
    CHECK(specified_height_reward(0.02, 0.01) == doctest::Approx(0.5));
    CHECK(specified_height_reward(0.015, 0.01) == doctest::Approx(1.0 / 1.5));
    CHECK_THROWS_AS(specified_height_reward(0.01, 0.0), InvalidTarget);
}

TEST_CASE("property: specified-height reward is in (0, 1] and falls with the miss") {
    const double xs = 0.01;
    double prev = 2.0;
    for (int i = 0; i <= 400; ++i) {
        const double miss = 1e-4 * i;
        const double r_above = specified_height_reward(xs + miss, xs);
        const double r_below = specified_height_reward(xs - miss, xs);
        CHECK(r_above > 0.0);
        CHECK(r_above <= 1.0);
        CHECK(r_above == doctest::Approx(r_below).epsilon(1e-12));
        CHECK(r_above < prev);
        prev = r_above;
    }
}

TEST_CASE("episode") {
    const DesignSpace s = DesignSpace::narrow();
    const DesignParams base;
    const JumpCommand cmd = pogo_test::tuned_command();
    const SimConfig sim;
    const EpisodeResult a = episode({-1000, 2e-3}, s, base, cmd, sim, RewardCase::max_height());
    const EpisodeResult b = episode({-1000, 2e-3}, s, base, cmd, sim, RewardCase::max_height());
    CHECK(a.reward == b.reward);
    CHECK(a.observation.vector() == b.observation.vector());
    CHECK(a.done);
    CHECK(a.samples == 20001);
    CHECK(a.reward == a.apex);
    CHECK(a.design.alpha == 4760.0);

    const EpisodeResult spec = episode({-1000, 2e-3}, s, base, cmd, sim, RewardCase::specified_height(a.apex));
    CHECK(spec.reward == 1.0);
}

TEST_CASE("reset is always zero") {
    for (const DesignSpace& s : {DesignSpace::narrow(), DesignSpace::broad()}) {
        CHECK(reset(s).vector() == Eigen::Vector4d::Zero());
        CHECK(reset(s).vector() == reset(s).vector());
    }
    PogoDesignEnv env(DesignSpace::broad(), DesignParams{}, pogo_test::tuned_command(), SimConfig{},
                      RewardCase::max_height());
    CHECK(env.reset() == Eigen::VectorXd::Zero(4));
    const StepOutcome out = env.step(Eigen::Vector2d(100.0, 0.01));
    CHECK(out.done);
    CHECK(env.reset() == Eigen::VectorXd::Zero(4));
    // next observation is the per-sample mean of the sums
    const EpisodeResult ep = episode({100.0, 0.01}, DesignSpace::broad(), DesignParams{},
                                     pogo_test::tuned_command(), SimConfig{}, RewardCase::max_height());
    CHECK(out.next_observation(0) == doctest::Approx(ep.observation.sum_x / 20001.0).epsilon(1e-14));
    CHECK(out.reward == ep.reward);
}

TEST_CASE("property: realized designs stay in the box, in-range actions map exactly") {
    Rng rng(7);
    for (const DesignSpace& s : {DesignSpace::narrow(), DesignSpace::broad()}) {
        for (int i = 0; i < 2000; ++i) {
            const Eigen::Vector2d a(rng.uniform(-3, 3) * s.alpha_nom, rng.uniform(-3, 3) * s.zeta_nom);
            const Design d = action_to_design(a, s);
            REQUIRE(d.alpha >= s.alpha_min());
            REQUIRE(d.alpha <= s.alpha_max());
            REQUIRE(d.zeta >= s.zeta_min());
            REQUIRE(d.zeta <= s.zeta_max());
            const Eigen::Vector2d in(rng.uniform(-0.9, 0.9) * s.alpha_nom, rng.uniform(-0.9, 0.9) * s.zeta_nom);
            const Design e = action_to_design(in, s);
            REQUIRE(e.alpha == s.alpha_nom + in(0));
            REQUIRE(e.zeta == s.zeta_nom + in(1));
        }
    }
}

TEST_CASE("property: max-height reward is non-negative from a standing start") {
    Rng rng(3);
    const DesignSpace s = DesignSpace::broad();
    for (int i = 0; i < 8; ++i) {
        const Eigen::Vector2d a(rng.uniform(-1, 1) * 0.9 * s.alpha_nom, rng.uniform(-1, 1) * 0.9 * s.zeta_nom);
        CHECK(episode(a, s, DesignParams{}, pogo_test::tuned_command(), SimConfig{}, RewardCase::max_height()).reward >= 0.0);
    }
}
