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

#ifndef POGO_SVG_PLOT_HPP
#define POGO_SVG_PLOT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "pogo/sweep.hpp"

namespace pogo {

/// A mean curve with a +/- 1 std band.
struct BandSeries {
    std::string title;
    std::string y_label;
    std::vector<double> x;
    std::vector<double> mean;
    std::vector<double> std;
};

std::string band_plot_svg(const BandSeries& series);

/// Apex heights as a colored grid, argmax marked.
std::string surface_heatmap_svg(const PerformanceSurface& surface);

/// Reads aggregate.csv and writes apex/reward/alpha/zeta plots into plots_dir.
/// Output depends only on the CSV, so re-rendering is idempotent.
void render_training_plots(const std::filesystem::path& aggregate_csv,
                           const std::filesystem::path& plots_dir);

void render_surface_plot(const std::filesystem::path& surface_csv,
                         const std::filesystem::path& out_svg);

}  // namespace pogo

#endif  // POGO_SVG_PLOT_HPP
