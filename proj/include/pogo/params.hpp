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

#ifndef POGO_PARAMS_HPP
#define POGO_PARAMS_HPP

namespace pogo {

/// Physical configuration of the pogo-stick. The spring constant and damping
/// ratio are the quantities the design learner chooses; everything else is
/// held at the nominal hardware values.
struct DesignParams {
    double leg_mass = 0.175;         // m_l, kg
    double actuator_mass = 1.003;    // m_a, kg
    double spring_constant = 5760.0; // alpha, N/m
    double cubic_stiffness = 1e8;    // beta, N/m^3
    double damping_ratio = 1e-2;     // zeta
    double gravity = 9.81;           // m/s^2
    double stroke_max = 0.008;       // m
    double vel_max = 1.0;            // m/s
    double accel_max = 10.0;         // m/s^2
    double compression_limit = 0.008;// m, stop sits at x = -compression_limit

    double total_mass() const { return leg_mass + actuator_mass; }

    /// Throws InvalidParameter on the first violated invariant.
    void validate() const;

    DesignParams with_design(double alpha, double zeta) const {
        DesignParams p = *this;
        p.spring_constant = alpha;
        p.damping_ratio = zeta;
        return p;
    }
};

struct DerivedParams {
    double total_mass;
    double natural_frequency;   // rad/s
    double damping_coefficient; // N/(m/s)
};

DerivedParams derive(const DesignParams& params);

/// c = 2 zeta sqrt(alpha m_t), i.e. 2 zeta m_t omega_n.
double damping_coefficient(const DesignParams& params);

}  // namespace pogo

#endif  // POGO_PARAMS_HPP
