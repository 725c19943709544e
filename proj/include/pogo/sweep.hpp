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

#ifndef POGO_SWEEP_HPP
#define POGO_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pogo/command.hpp"
#include "pogo/environment.hpp"
#include "pogo/model.hpp"

namespace pogo {

/// Linearly spaced (spring constant, damping ratio) grid.
struct DesignGrid {
    double alpha_min = 576.0;
    double alpha_max = 10944.0;
    int n_alpha = 60;
    double zeta_min = 1e-3;
    double zeta_max = 1.9e-2;
    int n_zeta = 60;

    /// The full realizable box of a design space.
    static DesignGrid for_space(const DesignSpace& space, int n_alpha = 60, int n_zeta = 60);

    void validate() const;
    /// Also requires the ranges to lie inside the space's realizable box.
    void validate_within(const DesignSpace& space) const;

    std::vector<double> alpha_values() const;
    std::vector<double> zeta_values() const;
};

struct DesignPoint {
    double alpha;
    double zeta;
    double height;
};

/// Apex heights over a design grid; heights(i, j) is (alphas[i], zetas[j]).
struct PerformanceSurface {
    std::string space;
    std::vector<double> alphas;
    std::vector<double> zetas;
    Eigen::MatrixXd heights;
    std::uint64_t fingerprint = 0;

    double max_height() const { return heights.maxCoeff(); }
};

PerformanceSurface sweep(const DesignGrid& grid, const DesignParams& base,
                         const JumpCommand& command, const SimConfig& sim, int workers = 1);

/// Sweep over explicit axis values; cells are computed independently, so any
/// subset of a larger sweep reproduces the same bits.
PerformanceSurface sweep(const std::vector<double>& alphas, const std::vector<double>& zetas,
                         const DesignParams& base, const JumpCommand& command,
                         const SimConfig& sim, int workers = 1);

/// Highest cell; ties go to the smaller damping ratio, then the smaller spring constant.
DesignPoint argmax_design(const PerformanceSurface& surface);

/// Cells whose height is within relative tolerance tol of x_s.
std::vector<DesignPoint> target_band(const PerformanceSurface& surface, double x_s, double tol);

/// "# pogo-surface 1 key=value ..." metadata line, a column header
/// "alpha,zeta,apex_height", then one row per cell in (alpha, zeta) order.
void write_surface_csv(std::ostream& out, const PerformanceSurface& surface);
PerformanceSurface read_surface_csv(std::istream& in);

}  // namespace pogo

#endif  // POGO_SWEEP_HPP
