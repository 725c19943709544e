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

#ifndef POGO_EXPERIMENT_HPP
#define POGO_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pogo/command.hpp"
#include "pogo/environment.hpp"
#include "pogo/model.hpp"
#include "pogo/sweep.hpp"
#include "pogo/td3.hpp"

namespace pogo {

struct CommandSettings {
    double delta_1 = 0.008;
    double delta_2 = 0.008;
    double delta_t = 0.077;  // tune-command on the nominal narrow design, 1 ms grid
    double accel_mag = 10.0;
    double x_a_0 = 0.008;
};

struct DelayGrid {
    double start = 0.0;
    double stop = 0.5;
    double step = 0.001;

    std::vector<double> values() const;
};

/// Everything one training experiment depends on. JSON keys match the member
/// names; see README for the schema.
struct ExperimentConfig {
    std::string space = "narrow";            // narrow | broad
    std::string reward_case = "max_height";  // max_height | specified_height
    double x_s = 0.01;
    int episodes = 1000;
    int rollout = 100;
    std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    DesignParams params;  // spring constant and damping ratio come from the space
    CommandSettings command;
    DelayGrid tune_grid;
    SimConfig sim;
    Td3Config td3;
    /// Unset means 100 for max_height (apex in cm) and 1 for specified_height.
    std::optional<double> reward_scale;
    int sweep_resolution = 60;
    std::string out_dir = "runs/experiment";
    int workers = 1;

    void validate() const;

    DesignSpace design_space() const { return DesignSpace::from_name(space); }
    RewardCase reward() const;
    /// Base physical parameters with the space's nominal design.
    DesignParams base_params() const;
    JumpCommand jump_command() const;
    /// TD3 settings with rollout, capacity and reward scale resolved.
    Td3Config resolved_td3(std::uint64_t seed) const;

    /// Hash of every field that affects results (not out_dir or workers).
    std::uint64_t config_hash() const;
    std::uint64_t fingerprint() const;
};

/// Reads a JSON config; missing keys keep their defaults, unknown keys are an error.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

struct AggregateStats {
    std::vector<std::uint64_t> seeds;  // seeds the statistics cover
    std::vector<double> apex_mean, apex_std;
    std::vector<double> reward_mean, reward_std;
    std::vector<double> alpha_mean, alpha_std;
    std::vector<double> zeta_mean, zeta_std;

    double final_alpha_mean = 0.0, final_alpha_std = 0.0;
    double final_zeta_mean = 0.0, final_zeta_std = 0.0;
    double final_apex_mean = 0.0, final_apex_std = 0.0;
    /// Apex of the design (mean final alpha, mean final zeta).
    double mean_design_apex = 0.0;
};

/// Per-seed results needed for aggregation.
struct SeedOutcome {
    TrainingLog log;
    double final_apex = 0.0;
};

/// Population mean and standard deviation across seeds, per episode and for
/// the final designs. mean_design_apex is left for the caller to fill.
AggregateStats aggregate(const std::vector<SeedOutcome>& runs);

struct ExperimentResult {
    AggregateStats stats;
    std::vector<std::uint64_t> incomplete_seeds;
    std::filesystem::path out_dir;
};

/// Trains every seed, writes per-seed logs, aggregate.csv, summary.csv,
/// manifest.json and SVG plots under config.out_dir.
ExperimentResult run_experiment(const ExperimentConfig& config);

void write_training_csv(std::ostream& out, const SeedOutcome& run, const ExperimentConfig& config);

/// Trajectory of one design under the config's command: metadata line, then
/// t,x,x_dot,x_a,x_a_dot rows.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const DesignParams& params,
                          const ExperimentConfig& config);

struct SummaryFile {
    std::string space;
    std::string reward_case;
    double x_s = 0.0;
    std::uint64_t fingerprint = 0;
    std::uint64_t config_hash = 0;
    std::size_t n_seeds = 0;
    bool complete = true;
    double alpha_mean = 0.0, alpha_std = 0.0;
    double zeta_mean = 0.0, zeta_std = 0.0;
    double final_apex_mean = 0.0, final_apex_std = 0.0;
    double mean_design_apex = 0.0;
};

SummaryFile read_summary(const std::filesystem::path& path);

struct ReportCase {
    SummaryFile run;
    DesignPoint oracle{};
    double height_ratio = 0.0;         // mean-design apex / surface max
    std::optional<double> abs_error;   // specified-height only
    std::optional<double> rel_error;
};

struct Report {
    std::vector<ReportCase> cases;
    std::string text;
};

/// Compares learned designs against sweep surfaces of the same space.
/// Throws FingerprintMismatch if a run and its surface disagree on the
/// command or simulation settings.
Report make_report(const std::vector<PerformanceSurface>& surfaces,
                   const std::vector<SummaryFile>& runs);

}  // namespace pogo

#endif  // POGO_EXPERIMENT_HPP
