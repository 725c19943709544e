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

// Acceptance run: one PASS/FAIL line per criterion. Trains 10 seeds for each
// of the four cases, so expect the better part of an hour on one core.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "helpers.hpp"
#include "pogo/csv.hpp"
#include "pogo/experiment.hpp"
#include "pogo/mlp.hpp"
#include "pogo/svg_plot.hpp"
#include "pogo/sweep.hpp"
#include "pogo/td3.hpp"

using namespace pogo;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Verdict> verdicts;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
    verdicts.push_back({id, name, pass, detail});
    std::cout << "criterion " << id << " [" << name << "]: " << (pass ? "PASS" : "FAIL") << "  " << detail
              << std::endl;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

// ---- 1 ----------------------------------------------------------------------

void physics(const DesignParams& nominal) {
    const auto t0 = std::chrono::steady_clock::now();
    DesignParams p = nominal;
    p.damping_ratio = 0.0;
    double worst_apex = 0.0;
    for (double v0 : {0.1, 0.3, 0.6, 1.0}) {
        const Trajectory traj = simulate(p, JumpCommand::idle(0.008), SimConfig{1e-4, 0.3}, {0, 0.0, v0, 0.008, 0});
        const double want = v0 * v0 / (2.0 * p.gravity);
        worst_apex = std::max(worst_apex, std::abs(apex_height(traj) - want) / want);
    }
    const double t_apex = seconds_since(t0);

    const double mt = p.total_mass();
    auto energy = [&](const PogoState& s) {
        double e = 0.5 * mt * s.x_dot * s.x_dot + mt * p.gravity * s.x;
        if (s.x <= 0.0) e += 0.5 * p.spring_constant * s.x * s.x + 0.25 * p.cubic_stiffness * std::pow(s.x, 4);
        return e;
    };
    const Trajectory drop = simulate(p, JumpCommand::idle(0.008), SimConfig{1e-4, 2.0}, {0, 0.01, 0, 0.008, 0});
    const double e0 = energy(drop.samples.front());
    double drift = 0.0;
    for (const PogoState& s : drop.samples) drift = std::max(drift, std::abs(energy(s) - e0) / std::abs(e0));
    const bool stop_clear = drop.count(EventKind::StopHit) == 0;

    record(1, "physics exactness", worst_apex <= 5e-3 && t_apex < 1.0 && drift < 1e-3 && stop_clear,
           "ballistic apex rel err " + fmt("%.2e", worst_apex) + " (<= 5e-3, " + fmt("%.3f", t_apex) +
               " s), energy drift " + fmt("%.2e", drift) + " (< 1e-3)" + (stop_clear ? "" : ", stop was hit"));
}

// ---- 2 ----------------------------------------------------------------------

void command(const ExperimentConfig& cfg) {
    const JumpCommand cmd = cfg.jump_command();
    const bool conv = convolution_check(cmd, 1e-4);
    const auto t = cmd.switch_times();
    const ActuatorState after1 = actuator_kinematics(cmd, t[2]);
    const ActuatorState fin = actuator_kinematics(cmd, t[5]);
    const double disp_err = std::abs((after1.position - cmd.x_a_0) - (-cmd.delta_1));
    const double v1 = std::abs(after1.velocity), vf = std::abs(fin.velocity);

    // peak speed of a bang-bang stroke: a * T/2 with T/2 = sqrt(delta / a)
    const ActuatorState mid = actuator_kinematics(cmd, 0.5 * t[2]);
    const double peak_oracle = std::sqrt(10.0 * 0.008);
    const double peak_err = std::abs(std::abs(mid.velocity) - peak_oracle);
    const bool ok = conv && disp_err <= 1e-12 && v1 <= 1e-12 && vf <= 1e-12 && peak_err <= 1e-9 &&
                    std::abs(peak_oracle - 0.28284) < 5e-6 && peak_oracle < cfg.params.vel_max;
    record(2, "command correctness", ok,
           std::string("convolution ") + (conv ? "ok" : "MISMATCH") + ", phase-1 displacement err " +
               fmt("%.1e", disp_err) + ", end speed " + fmt("%.1e", vf) + ", peak speed " +
               fmt("%.9f", std::abs(mid.velocity)) + " (err " + fmt("%.1e", peak_err) + ", limit 1.0)");
}

// ---- 3 ----------------------------------------------------------------------

void learner() {
    Rng rng(123);
    const Td3Config def;
    std::vector<int> actor_sizes{4};
    actor_sizes.insert(actor_sizes.end(), def.actor_hidden.begin(), def.actor_hidden.end());
    actor_sizes.push_back(2);
    std::vector<int> critic_sizes{6};
    critic_sizes.insert(critic_sizes.end(), def.critic_hidden.begin(), def.critic_hidden.end());
    critic_sizes.push_back(1);
    const Mlp actor(actor_sizes, Activation::Tanh, rng, 1.0);
    const Mlp critic(critic_sizes, Activation::Identity, rng);
    Eigen::MatrixXd xa(4, 3), xc(6, 3), ya(2, 3), yc(1, 3);
    for (Eigen::Index i = 0; i < xa.size(); ++i) xa(i) = rng.uniform(-1, 1);
    for (Eigen::Index i = 0; i < xc.size(); ++i) xc(i) = rng.uniform(-1, 1);
    for (Eigen::Index i = 0; i < ya.size(); ++i) ya(i) = rng.uniform(-1, 1);
    for (Eigen::Index i = 0; i < yc.size(); ++i) yc(i) = rng.uniform(-1, 1);
    const double ga = gradient_check(actor, xa, squared_error_loss(ya));
    const double gc = gradient_check(critic, xc, squared_error_loss(yc));

    const auto t0 = std::chrono::steady_clock::now();
    pogo_test::QuadraticBandit bandit;
    double worst = 0.0;
    const int n_seeds = 3;
    for (int s = 0; s < n_seeds; ++s) {
        Td3Config c;
        c.seed = static_cast<std::uint64_t>(s);
        const TrainingLog log = train_run(bandit, c, 1000);
        worst = std::max(worst, (log.final_action - Eigen::Vector2d(0.3, -0.2)).norm());
    }
    const double per_run = seconds_since(t0) / n_seeds;
    record(3, "TD3 unit correctness", ga <= 1e-5 && gc <= 1e-5 && worst <= 0.05 && per_run < 120.0,
           "grad check actor " + fmt("%.1e", ga) + " critic " + fmt("%.1e", gc) + " (<= 1e-5), bandit worst distance " +
               fmt("%.4f", worst) + " over " + std::to_string(n_seeds) + " seeds (<= 0.05), " +
               fmt("%.1f", per_run) + " s per run");
}

// ---- 4-8 --------------------------------------------------------------------

PerformanceSurface surface_for(const ExperimentConfig& cfg, const fs::path& out) {
    const DesignSpace space = cfg.design_space();
    PerformanceSurface s = sweep(DesignGrid::for_space(space, cfg.sweep_resolution, cfg.sweep_resolution),
                                 cfg.base_params(), cfg.jump_command(), cfg.sim, cfg.workers);
    s.space = space.name;
    std::ostringstream os;
    write_surface_csv(os, s);
    spit(out, os.str());
    render_surface_plot(out, fs::path(out).replace_extension(".svg"));
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pogo acceptance run"};
    std::string out_dir = "acceptance";
    int workers = 1;
    app.add_option("--out-dir", out_dir);
    app.add_option("--workers", workers);
    CLI11_PARSE(app, argc, argv);
    const fs::path root = out_dir;
    fs::create_directories(root);

    ExperimentConfig base;
    base.workers = workers;

    physics(base.params);
    command(base);
    learner();

    // oracles
    const auto t_sweep = std::chrono::steady_clock::now();
    std::vector<PerformanceSurface> surfaces;
    for (const char* space : {"narrow", "broad"}) {
        ExperimentConfig c = base;
        c.space = space;
        surfaces.push_back(surface_for(c, root / ("surface_" + std::string(space) + ".csv")));
    }
    std::cout << "sweeps done in " << fmt("%.0f", seconds_since(t_sweep)) << " s" << std::endl;

    // training, four cases
    std::vector<SummaryFile> runs;
    for (const char* reward : {"max_height", "specified_height"}) {
        for (const char* space : {"narrow", "broad"}) {
            ExperimentConfig c = base;
            c.space = space;
            c.reward_case = reward;
            c.out_dir = (root / (std::string(space) + "_" + reward)).string();
            const auto t0 = std::chrono::steady_clock::now();
            const ExperimentResult r = run_experiment(c);
            std::cout << space << "/" << reward << ": " << r.stats.seeds.size() << " seeds in "
                      << fmt("%.0f", seconds_since(t0)) << " s, mean design apex "
                      << fmt("%.6f", r.stats.mean_design_apex) << std::endl;
            runs.push_back(read_summary(fs::path(c.out_dir) / "summary.csv"));
        }
    }
    const Report rep = make_report(surfaces, runs);
    spit(root / "report.txt", rep.text);
    std::cout << rep.text << std::endl;

    auto find = [&](const std::string& space, const std::string& reward) -> const ReportCase& {
        for (const auto& rc : rep.cases)
            if (rc.run.space == space && rc.run.reward_case == reward) return rc;
        throw std::runtime_error("missing case " + space + "/" + reward);
    };

    {
        const ReportCase& n = find("narrow", "max_height");
        const ReportCase& b = find("broad", "max_height");
        record(4, "optimality vs oracle", n.height_ratio >= 0.95 && b.height_ratio >= 0.95,
               "mean-design apex / sweep max: narrow " + fmt("%.4f", n.height_ratio) + ", broad " +
                   fmt("%.4f", b.height_ratio) + " (>= 0.95)");
    }
    {
        const ReportCase& n = find("narrow", "specified_height");
        const ReportCase& b = find("broad", "specified_height");
        record(5, "specified height", *n.rel_error <= 0.10 && *b.rel_error <= 0.10,
               "mean-design apex narrow " + fmt("%.5f", n.run.mean_design_apex) + " (" +
                   fmt("%.1f", 100 * *n.rel_error) + "%), broad " + fmt("%.5f", b.run.mean_design_apex) + " (" +
                   fmt("%.1f", 100 * *b.rel_error) + "%) vs 0.01 (<= 10%); for reference, per-seed final apex means " +
                   fmt("%.5f", n.run.final_apex_mean) + " / " + fmt("%.5f", b.run.final_apex_mean));
    }
    {
        const ReportCase& m = find("broad", "max_height");
        const ReportCase& s = find("broad", "specified_height");
        const double rm = m.run.alpha_std / m.run.alpha_mean, rs = s.run.alpha_std / s.run.alpha_mean;
        record(6, "variance ordering", rm <= rs,
               "broad spring-constant relative std: max_height " + fmt("%.4f", rm) + " vs specified_height " +
                   fmt("%.4f", rs));
    }
    {
        const PerformanceSurface& n = surfaces[0];
        const DesignPoint best = argmax_design(n);
        const bool interior = best.alpha > n.alphas.front() && best.alpha < n.alphas.back();
        const bool below = best.alpha < DesignSpace::narrow().alpha_nom;
        record(7, "surface shape", interior && below,
               "narrow argmax alpha " + fmt("%.1f", best.alpha) + " in (" + fmt("%.0f", n.alphas.front()) + ", " +
                   fmt("%.0f", n.alphas.back()) + "), nominal 5760");
    }
    {
        // every stage again with the same config
        std::vector<std::string> diffs;
        const fs::path again = root / "rerun";
        fs::remove_all(again);

        ExperimentConfig c = base;
        const auto d1 = tune_delay(c.base_params(), c.sim, c.tune_grid.values());
        const auto d2 = tune_delay(c.base_params(), c.sim, c.tune_grid.values());
        if (d1.delta_t != d2.delta_t || d1.apex != d2.apex) diffs.push_back("tune-command");
        if (d1.delta_t != c.command.delta_t) diffs.push_back("tuned pause differs from the committed config");

        const DesignParams p = c.params.with_design(4000.0, 5e-3);
        std::ostringstream t1, t2;
        write_trajectory_csv(t1, simulate(p, c.jump_command(), c.sim), p, c);
        write_trajectory_csv(t2, simulate(p, c.jump_command(), c.sim), p, c);
        if (t1.str() != t2.str()) diffs.push_back("simulate");

        surface_for(c, again / "surface_narrow.csv");
        if (slurp(again / "surface_narrow.csv") != slurp(root / "surface_narrow.csv")) diffs.push_back("sweep");

        c.out_dir = (again / "narrow_max_height").string();
        run_experiment(c);
        for (const char* f : {"seed_0.csv", "seed_9.csv", "seed_4_actor.txt", "aggregate.csv", "summary.csv",
                              "manifest.json", "plots/alpha.svg"})
            if (slurp(again / "narrow_max_height" / f) != slurp(root / "narrow_max_height" / f))
                diffs.push_back(std::string("train ") + f);

        render_training_plots(root / "narrow_max_height" / "aggregate.csv", again / "plots");
        if (slurp(again / "plots" / "zeta.svg") != slurp(root / "narrow_max_height" / "plots" / "zeta.svg"))
            diffs.push_back("plot");

        std::string detail = "tune-command, simulate, sweep, train, plot re-run";
        for (const auto& d : diffs) detail += "; differs: " + d;
        record(8, "reproducibility", diffs.empty(), diffs.empty() ? detail + ": byte-identical" : detail);
    }

    int failed = 0;
    std::cout << "\nsummary\n";
    for (const auto& v : verdicts) {
        std::cout << "  " << v.id << " " << (v.pass ? "PASS" : "FAIL") << "  " << v.name << '\n';
        failed += v.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion(s) failed\n" : "all criteria passed\n");
    return failed ? 1 : 0;
}
