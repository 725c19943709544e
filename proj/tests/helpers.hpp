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

#ifndef POGO_TESTS_HELPERS_HPP
#define POGO_TESTS_HELPERS_HPP

#include "pogo/command.hpp"
#include "pogo/environment.hpp"
#include "pogo/model.hpp"
#include "pogo/params.hpp"

namespace pogo_test {

// committed pause for the nominal narrow design
inline constexpr double kTunedDelay = 0.077;

inline pogo::JumpCommand tuned_command(const pogo::DesignParams& p = {}) {
    return pogo::make_jump_command(0.008, kTunedDelay, 0.008, 10.0, 0.008, p);
}

// Scalar bisection, independent of anything in the library.
template <class F>
double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// reward = 1 - ((a1 - 0.3)^2 + (a2 + 0.2)^2) on the box [-1, 1]^2
class QuadraticBandit : public pogo::Environment {
public:
    int observation_size() const override { return 4; }
    Eigen::VectorXd action_bounds() const override { return Eigen::Vector2d(1.0, 1.0); }
    Eigen::VectorXd reset() override { return Eigen::VectorXd::Zero(4); }
    pogo::StepOutcome step(const Eigen::VectorXd& a) override {
        pogo::StepOutcome out;
        out.next_observation = Eigen::VectorXd::Zero(4);
        out.reward = 1.0 - ((a(0) - 0.3) * (a(0) - 0.3) + (a(1) + 0.2) * (a(1) + 0.2));
        out.design = a;
        out.apex = out.reward;
        return out;
    }
    Eigen::Vector2d design_of(const Eigen::VectorXd& a) const override { return a; }
};

}  // namespace pogo_test

#endif  // POGO_TESTS_HELPERS_HPP
