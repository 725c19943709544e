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

// pogo: command-line front end. Every subcommand reads the same JSON config
// (optional) and applies flag overrides on top.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pogo/csv.hpp"
#include "pogo/errors.hpp"
#include "pogo/experiment.hpp"
#include "pogo/svg_plot.hpp"
#include "pogo/sweep.hpp"

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string seeds;
    std::string out_dir;
    std::string space;
    std::string reward;
    std::optional<int> episodes;
    std::optional<int> workers;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "run a single seed");
    sub->add_option("--seeds", o.seeds, "N for seeds 0..N-1, or a comma list");
    sub->add_option("--out-dir", o.out_dir, "output directory");
    sub->add_option("--space", o.space, "design space")->check(CLI::IsMember({"narrow", "broad"}));
    sub->add_option("--reward", o.reward, "reward case")->check(CLI::IsMember({"max", "target"}));
    sub->add_option("--episodes", o.episodes, "episodes per seed");
    sub->add_option("--workers", o.workers, "worker threads");
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> out;
    if (text.find(',') == std::string::npos) {
        const auto n = std::stoull(text);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(i);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoull(item));
    return out;
}

pogo::ExperimentConfig resolve(const Overrides& o) {
    pogo::ExperimentConfig c = o.config.empty() ? pogo::ExperimentConfig{} : pogo::load_config(o.config);
    if (!o.space.empty()) c.space = o.space;
    if (!o.reward.empty()) c.reward_case = o.reward == "max" ? "max_height" : "specified_height";
    if (o.episodes) c.episodes = *o.episodes;
    if (o.workers) c.workers = *o.workers;
    if (!o.out_dir.empty()) c.out_dir = o.out_dir;
    if (!o.seeds.empty()) c.seeds = parse_seeds(o.seeds);
    if (o.seed) c.seeds = {*o.seed};
    return c;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pogo::PogoError("cannot write " + path.string());
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pogo-stick design co-optimization toolkit"};
    app.require_subcommand(1);

    Overrides o;

    auto* sim = app.add_subcommand("simulate", "simulate one design, write the trajectory CSV");
    add_common(sim, o);
    std::optional<double> alpha, zeta;
    std::string traj_out;
    sim->add_option("--alpha", alpha, "spring constant [N/m] (default: space nominal)");
    sim->add_option("--zeta", zeta, "damping ratio (default: space nominal)");
    sim->add_option("--out", traj_out, "trajectory CSV (default: <out-dir>/trajectory.csv)");

    auto* tune = app.add_subcommand("tune-command", "pick the jump pause that maximizes apex at the nominal design");
    add_common(tune, o);
    std::string tuned_config;
    tune->add_option("--write-config", tuned_config, "write the config with the tuned pause here");

    auto* sw = app.add_subcommand("sweep", "apex surface over the design space");
    add_common(sw, o);
    std::optional<int> resolution;
    std::string surface_out;
    sw->add_option("--resolution", resolution, "grid points per axis");
    sw->add_option("--out", surface_out, "surface CSV (default: <out-dir>/surface_<space>.csv)");

    auto* train = app.add_subcommand("train", "multi-seed TD3 design training");
    add_common(train, o);

    auto* rep = app.add_subcommand("report", "compare learned designs with sweep surfaces");
    std::vector<std::string> surfaces, runs;
    std::string report_out;
    rep->add_option("--surface", surfaces, "surface CSV files")->required()->check(CLI::ExistingFile);
    rep->add_option("--run", runs, "training output directories")->required()->check(CLI::ExistingDirectory);
    rep->add_option("--out", report_out, "also write the report here");

    auto* plot = app.add_subcommand("plot", "re-render SVG plots from CSV artifacts");
    std::vector<std::string> plot_runs, plot_surfaces;
    plot->add_option("--run", plot_runs, "training output directories")->check(CLI::ExistingDirectory);
    plot->add_option("--surface", plot_surfaces, "surface CSV files")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            const auto c = resolve(o);
            c.validate();
            const auto space = c.design_space();
            const auto params = c.params.with_design(alpha.value_or(space.alpha_nom), zeta.value_or(space.zeta_nom));
            const auto traj = pogo::simulate(params, c.jump_command(), c.sim);
            const std::filesystem::path path =
                traj_out.empty() ? std::filesystem::path(c.out_dir) / "trajectory.csv" : std::filesystem::path(traj_out);
            auto out = open_out(path);
            pogo::write_trajectory_csv(out, traj, params, c);
            std::cout << "apex " << pogo::format_double(pogo::apex_height(traj)) << " m\n";
            for (const auto& e : traj.events)
                std::cout << "  " << pogo::to_string(e.kind) << " at t=" << pogo::format_double(e.t) << '\n';
            std::cout << "wrote " << path.string() << '\n';
        } else if (*tune) {
            auto c = resolve(o);
            c.validate();
            const auto choice = pogo::tune_delay(c.base_params(), c.sim, c.tune_grid.values());
            std::cout << "delta_t " << pogo::format_double(choice.delta_t) << " s, apex "
                      << pogo::format_double(choice.apex) << " m (" << c.space << " nominal design)\n";
            if (!tuned_config.empty()) {
                c.command.delta_t = choice.delta_t;
                auto out = open_out(tuned_config);
                out << pogo::config_to_json(c);
                std::cout << "wrote " << tuned_config << '\n';
            }
        } else if (*sw) {
            auto c = resolve(o);
            if (resolution) c.sweep_resolution = *resolution;
            c.validate();
            const auto space = c.design_space();
            const auto grid = pogo::DesignGrid::for_space(space, c.sweep_resolution, c.sweep_resolution);
            auto surface = pogo::sweep(grid, c.base_params(), c.jump_command(), c.sim, c.workers);
            surface.space = space.name;
            const std::filesystem::path path =
                surface_out.empty() ? std::filesystem::path(c.out_dir) / ("surface_" + space.name + ".csv")
                                    : std::filesystem::path(surface_out);
            {
                auto out = open_out(path);
                pogo::write_surface_csv(out, surface);
            }
            auto svg = path;
            pogo::render_surface_plot(path, svg.replace_extension(".svg"));
            const auto best = pogo::argmax_design(surface);
            std::cout << space.name << " argmax alpha=" << best.alpha << " zeta=" << best.zeta
                      << " apex=" << best.height << " m\nwrote " << path.string() << '\n';
        } else if (*train) {
            const auto c = resolve(o);
            const auto result = pogo::run_experiment(c);
            const auto& st = result.stats;
            std::cout << c.space << '/' << c.reward_case << ", " << st.seeds.size() << " seeds\n"
                      << "final alpha " << st.final_alpha_mean << " +- " << st.final_alpha_std << '\n'
                      << "final zeta  " << st.final_zeta_mean << " +- " << st.final_zeta_std << '\n'
                      << "final apex  " << st.final_apex_mean << " +- " << st.final_apex_std << '\n'
                      << "mean-design apex " << st.mean_design_apex << '\n';
            if (!result.incomplete_seeds.empty())
                std::cout << result.incomplete_seeds.size() << " seed(s) failed, see manifest.json\n";
            std::cout << "wrote " << result.out_dir.string() << '\n';
            return result.incomplete_seeds.empty() ? 0 : 3;
        } else if (*rep) {
            std::vector<pogo::PerformanceSurface> surf;
            for (const auto& f : surfaces) {
                std::ifstream in(f);
                surf.push_back(pogo::read_surface_csv(in));
            }
            std::vector<pogo::SummaryFile> sums;
            for (const auto& r : runs) sums.push_back(pogo::read_summary(std::filesystem::path(r) / "summary.csv"));
            const auto report = pogo::make_report(surf, sums);
            std::cout << report.text;
            if (!report_out.empty()) open_out(report_out) << report.text;
        } else if (*plot) {
            if (plot_runs.empty() && plot_surfaces.empty()) throw pogo::ConfigError("nothing to plot");
            for (const auto& r : plot_runs) {
                const std::filesystem::path d = r;
                pogo::render_training_plots(d / "aggregate.csv", d / "plots");
                std::cout << "rendered " << (d / "plots").string() << '\n';
            }
            for (const auto& f : plot_surfaces) {
                std::filesystem::path svg = f;
                svg.replace_extension(".svg");
                pogo::render_surface_plot(f, svg);
                std::cout << "rendered " << svg.string() << '\n';
            }
        }
    } catch (const pogo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
