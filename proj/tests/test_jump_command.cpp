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
#include "pogo/command.hpp"
#include "pogo/errors.hpp"

using namespace pogo;

TEST_CASE("bang-bang timing from the stroke geometry") {
    DesignParams limits;
    const ImpulseSequence seq = times_from_geometry(0.008, 0.077, 0.008, 10.0, limits);
    REQUIRE(seq.times.size() == 6);
    // delta = a (T/2)^2, so T = 2 sqrt(delta / a)
    const double T = 2.0 * std::sqrt(0.008 / 10.0);
    CHECK(T == doctest::Approx(0.056569).epsilon(1e-5));
    CHECK(seq.times[0] == 0.0);
    CHECK(seq.times[2] == doctest::Approx(T).epsilon(1e-14));
    CHECK(seq.times[3] - seq.times[2] == doctest::Approx(0.077).epsilon(1e-12));
    CHECK(seq.times[5] - seq.times[3] == doctest::Approx(T).epsilon(1e-12));
    for (std::size_t i = 1; i < 6; ++i) CHECK(seq.times[i] >= seq.times[i - 1]);

    const ImpulseSequence z = times_from_geometry(0.008, 0.0, 0.008, 10.0, limits);
    CHECK(z.times[2] == z.times[3]);

    CHECK_THROWS_AS(times_from_geometry(0.02, 0.0, 0.008, 10.0, limits), StrokeViolation);
    CHECK_THROWS_AS(times_from_geometry(0.008, -0.1, 0.008, 10.0, limits), InvalidParameter);
    CHECK_THROWS_AS(times_from_geometry(0.008, 0.0, 0.008, 20.0, limits), SaturationViolation);
    DesignParams slow = limits;
    slow.vel_max = 0.1;
    CHECK_THROWS_AS(times_from_geometry(0.008, 0.0, 0.008, 10.0, slow), SaturationViolation);
}

TEST_CASE("impulse pattern") {
    const JumpCommand cmd = pogo_test::tuned_command();
    const std::vector<double> want = {-1, 2, -1, 1, -2, 1};
    CHECK(cmd.sequence.amplitudes == want);
    double sum = 0;
    for (double a : cmd.sequence.amplitudes) sum += a;
    CHECK(sum == 0.0);
}

TEST_CASE("piecewise acceleration") {
    const JumpCommand cmd = pogo_test::tuned_command();
    const auto t = cmd.switch_times();
    CHECK(accel_at(cmd, 0.0) == -10.0);
    CHECK(accel_at(cmd, 0.5 * t[1]) == -10.0);
    CHECK(accel_at(cmd, t[1]) == 10.0);  // half-open phases
    CHECK(accel_at(cmd, 0.5 * (t[2] + t[3])) == 0.0);
    CHECK(accel_at(cmd, t[5] + 1e-6) == 0.0);
    CHECK(accel_at(cmd, 1.5) == 0.0);
    for (double s = 0; s < 0.3; s += 1e-4) REQUIRE(std::abs(accel_at(cmd, s)) <= 10.0);
}

TEST_CASE("closed-form actuator motion") {
    const JumpCommand cmd = pogo_test::tuned_command();
    const auto t = cmd.switch_times();
    const double T = 2.0 * std::sqrt(0.008 / 10.0);

    ActuatorState s = actuator_kinematics(cmd, t[2]);
    CHECK(std::abs(s.position - (0.008 - 0.008)) <= 1e-12);
    CHECK(std::abs(s.velocity) <= 1e-12);

    s = actuator_kinematics(cmd, T / 2.0);
    CHECK(s.velocity == doctest::Approx(-10.0 * T / 2.0).epsilon(1e-12));
    CHECK(std::abs(std::abs(s.velocity) - 0.28284271247461906) <= 1e-9);

    s = actuator_kinematics(cmd, t[5]);
    CHECK(std::abs(s.position - 0.008) <= 1e-12);
    CHECK(std::abs(s.velocity) <= 1e-12);

    DesignParams p;
    const JumpCommand uneven = make_jump_command(0.006, 0.05, 0.004, 10.0, 0.008, p);
    s = actuator_kinematics(uneven, 1.0);
    CHECK(std::abs(s.position - (0.008 - 0.006 + 0.004)) <= 1e-15);
    CHECK(s.velocity == 0.0);

    // position stays inside the stroke over the whole command
    for (double u = 0; u < 0.3; u += 1e-4) {
        const double x = actuator_kinematics(cmd, u).position;
        REQUIRE(x >= -1e-15);
        REQUIRE(x <= 0.008 + 1e-15);
    }
}

TEST_CASE("stroke excursion is checked against the start position") {
    DesignParams p;
    CHECK_THROWS_AS(make_jump_command(0.008, 0.05, 0.008, 10.0, 0.004, p), StrokeViolation);
}

TEST_CASE("convolution equivalence") {
    JumpCommand cmd = pogo_test::tuned_command();
    CHECK(convolution_check(cmd, 1e-4));
    DesignParams p;
    for (double dt : {0.0, 0.01, 0.2}) CHECK(convolution_check(make_jump_command(0.008, dt, 0.005, 10.0, 0.008, p), 1e-4));

    JumpCommand bad = cmd;
    bad.sequence.amplitudes[1] = -0.5;
    CHECK_FALSE(convolution_check(bad, 1e-4));

    bad = cmd;
    bad.sequence.times[3] += 10 * 1e-4;
    CHECK_FALSE(convolution_check(bad, 1e-4));
}

TEST_CASE("delay tuning") {
    DesignParams p;
    const SimConfig sim;
    const DelayChoice one = tune_delay(p, sim, {0.05});
    CHECK(one.delta_t == 0.05);
    CHECK(one.apex == doctest::Approx(apex_height(simulate(p, make_jump_command(0.008, 0.05, 0.008, 10.0, 0.008, p), sim))));

    // duplicates tie exactly; the earlier, smaller entry wins
    const DelayChoice tie = tune_delay(p, sim, {0.1, 0.1});
    CHECK(tie.delta_t == 0.1);

    // the coarse grid picks its own argmax
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) grid.push_back(0.05 * i);
    const DelayChoice coarse = tune_delay(p, sim, grid);
    for (double d : grid)
        CHECK(apex_height(simulate(p, make_jump_command(0.008, d, 0.008, 10.0, 0.008, p), sim)) <= coarse.apex);
    CHECK_THROWS_AS(tune_delay(p, sim, {}), InvalidParameter);
}

TEST_CASE("committed pause is the fine-grid optimum") {
    DesignParams p;
    std::vector<double> grid;
    for (int i = 60; i <= 95; ++i) grid.push_back(1e-3 * i);
    CHECK(tune_delay(p, SimConfig{}, grid).delta_t == doctest::Approx(pogo_test::kTunedDelay).epsilon(1e-12));
}
