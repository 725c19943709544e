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

#include "pogo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"

#include "pogo/csv.hpp"
#include "pogo/errors.hpp"
#include "pogo/svg_plot.hpp"

namespace pogo {

using nlohmann::json;

std::vector<double> DelayGrid::values() const {
    if (!(step > 0.0) || !(stop >= start) || start < 0.0)
        throw ConfigError("tune_grid needs 0 <= start <= stop and step > 0");
    // integer stepping keeps the grid free of accumulated drift
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    std::vector<double> out;
    out.reserve(n + 1);
    for (long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

void ExperimentConfig::validate() const {
    (void)design_space();
    if (reward_case != "max_height" && reward_case != "specified_height")
        throw ConfigError("reward_case must be max_height or specified_height, got '" + reward_case + "'");
    if (reward_case == "specified_height" && !(x_s > 0.0))
        throw ConfigError("x_s must be positive for specified_height");
    if (episodes <= 0) throw ConfigError("episodes must be positive");
    if (rollout < 0 || rollout >= episodes) throw ConfigError("rollout must lie in [0, episodes)");
    if (seeds.empty()) throw ConfigError("seed list is empty");
    if (std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size())
        throw ConfigError("seed list has duplicates");
    if (reward_scale && !(*reward_scale > 0.0)) throw ConfigError("reward_scale must be positive");
    if (sweep_resolution < 2) throw ConfigError("sweep_resolution must be at least 2");
    if (workers < 1) throw ConfigError("workers must be at least 1");
    try {
        params.validate();
        sim.validate();
        (void)jump_command();
    } catch (const ConfigError&) {
        throw;
    } catch (const PogoError& e) {
        throw ConfigError(e.what());
    }
    resolved_td3(seeds.front()).validate();
}

RewardCase ExperimentConfig::reward() const {
    return reward_case == "specified_height" ? RewardCase::specified_height(x_s)
                                             : RewardCase::max_height();
}

DesignParams ExperimentConfig::base_params() const {
    const DesignSpace s = design_space();
    return params.with_design(s.alpha_nom, s.zeta_nom);
}

JumpCommand ExperimentConfig::jump_command() const {
    return make_jump_command(command.delta_1, command.delta_t, command.delta_2,
                             command.accel_mag, command.x_a_0, params);
}

Td3Config ExperimentConfig::resolved_td3(std::uint64_t seed) const {
    Td3Config c = td3;
    c.learning_starts = rollout;
    c.seed = seed;
    if (reward_scale)
        c.reward_scale = *reward_scale;
    else
        c.reward_scale = reward_case == "max_height" ? 100.0 : 1.0;
    return c;
}

// ---- json ------------------------------------------------------------------

namespace {

json params_json(const DesignParams& p) {
    return {{"leg_mass", p.leg_mass},
            {"actuator_mass", p.actuator_mass},
            {"cubic_stiffness", p.cubic_stiffness},
            {"gravity", p.gravity},
            {"stroke_max", p.stroke_max},
            {"vel_max", p.vel_max},
            {"accel_max", p.accel_max},
            {"compression_limit", p.compression_limit}};
}

json td3_json(const Td3Config& c) {
    return {{"learning_rate", c.learning_rate},
            {"batch_size", c.batch_size},
            {"tau", c.tau},
            {"discount", c.discount},
            {"train_freq", c.train_freq},
            {"gradient_steps", c.gradient_steps},
            {"policy_delay", c.policy_delay},
            {"target_noise", c.target_noise},
            {"target_noise_clip", c.target_noise_clip},
            {"buffer_capacity", c.buffer_capacity},
            {"actor_hidden", c.actor_hidden},
            {"critic_hidden", c.critic_hidden},
            {"actor_final_scale", c.actor_final_scale},
            {"adam_beta1", c.adam_beta1},
            {"adam_beta2", c.adam_beta2},
            {"adam_epsilon", c.adam_epsilon}};
}

json to_json_value(const ExperimentConfig& c, bool with_runtime) {
    json j = {{"space", c.space},
              {"reward_case", c.reward_case},
              {"x_s", c.x_s},
              {"episodes", c.episodes},
              {"rollout", c.rollout},
              {"seeds", c.seeds},
              {"params", params_json(c.params)},
              {"command",
               {{"delta_1", c.command.delta_1},
                {"delta_2", c.command.delta_2},
                {"delta_t", c.command.delta_t},
                {"accel_mag", c.command.accel_mag},
                {"x_a_0", c.command.x_a_0}}},
              {"tune_grid",
               {{"start", c.tune_grid.start}, {"stop", c.tune_grid.stop}, {"step", c.tune_grid.step}}},
              {"sim", {{"dt", c.sim.dt}, {"t_f", c.sim.t_f}}},
              {"td3", td3_json(c.td3)},
              {"reward_scale", c.reward_scale ? json(*c.reward_scale) : json(nullptr)},
              {"sweep_resolution", c.sweep_resolution}};
    if (with_runtime) {
        j["out_dir"] = c.out_dir;
        j["workers"] = c.workers;
    }
    return j;
}

// Copies j[key] into out when present; remembers which keys were consumed.
template <class T>
void take(const json& j, const char* key, T& out, std::set<std::string>& seen) {
    seen.insert(key);
    if (j.contains(key)) out = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& seen, const std::string& where) {
    for (const auto& item : j.items())
        if (!seen.count(item.key())) throw ConfigError("unknown config key '" + where + item.key() + "'");
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
    ExperimentConfig c;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    try {
        std::set<std::string> seen;
        take(j, "space", c.space, seen);
        take(j, "reward_case", c.reward_case, seen);
        take(j, "x_s", c.x_s, seen);
        take(j, "episodes", c.episodes, seen);
        take(j, "rollout", c.rollout, seen);
        take(j, "seeds", c.seeds, seen);
        take(j, "sweep_resolution", c.sweep_resolution, seen);
        take(j, "out_dir", c.out_dir, seen);
        take(j, "workers", c.workers, seen);
        seen.insert("reward_scale");
        if (j.contains("reward_scale") && !j["reward_scale"].is_null())
            c.reward_scale = j["reward_scale"].get<double>();

        if (j.contains("params")) {
            const json& p = j["params"];
            std::set<std::string> s;
            take(p, "leg_mass", c.params.leg_mass, s);
            take(p, "actuator_mass", c.params.actuator_mass, s);
            take(p, "cubic_stiffness", c.params.cubic_stiffness, s);
            take(p, "gravity", c.params.gravity, s);
            take(p, "stroke_max", c.params.stroke_max, s);
            take(p, "vel_max", c.params.vel_max, s);
            take(p, "accel_max", c.params.accel_max, s);
            take(p, "compression_limit", c.params.compression_limit, s);
            reject_unknown(p, s, "params.");
        }
        seen.insert("params");
        if (j.contains("command")) {
            const json& p = j["command"];
            std::set<std::string> s;
            take(p, "delta_1", c.command.delta_1, s);
            take(p, "delta_2", c.command.delta_2, s);
            take(p, "delta_t", c.command.delta_t, s);
            take(p, "accel_mag", c.command.accel_mag, s);
            take(p, "x_a_0", c.command.x_a_0, s);
            reject_unknown(p, s, "command.");
        }
        seen.insert("command");
        if (j.contains("tune_grid")) {
            const json& p = j["tune_grid"];
            std::set<std::string> s;
            take(p, "start", c.tune_grid.start, s);
            take(p, "stop", c.tune_grid.stop, s);
            take(p, "step", c.tune_grid.step, s);
            reject_unknown(p, s, "tune_grid.");
        }
        seen.insert("tune_grid");
        if (j.contains("sim")) {
            const json& p = j["sim"];
            std::set<std::string> s;
            take(p, "dt", c.sim.dt, s);
            take(p, "t_f", c.sim.t_f, s);
            reject_unknown(p, s, "sim.");
        }
        seen.insert("sim");
        if (j.contains("td3")) {
            const json& p = j["td3"];
            std::set<std::string> s;
            Td3Config& t = c.td3;
            take(p, "learning_rate", t.learning_rate, s);
            take(p, "batch_size", t.batch_size, s);
            take(p, "tau", t.tau, s);
            take(p, "discount", t.discount, s);
            take(p, "train_freq", t.train_freq, s);
            take(p, "gradient_steps", t.gradient_steps, s);
            take(p, "policy_delay", t.policy_delay, s);
            take(p, "target_noise", t.target_noise, s);
            take(p, "target_noise_clip", t.target_noise_clip, s);
            take(p, "buffer_capacity", t.buffer_capacity, s);
            take(p, "actor_hidden", t.actor_hidden, s);
            take(p, "critic_hidden", t.critic_hidden, s);
            take(p, "actor_final_scale", t.actor_final_scale, s);
            take(p, "adam_beta1", t.adam_beta1, s);
            take(p, "adam_beta2", t.adam_beta2, s);
            take(p, "adam_epsilon", t.adam_epsilon, s);
            reject_unknown(p, s, "td3.");
        }
        seen.insert("td3");
        reject_unknown(j, seen, "");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    return to_json_value(config, true).dump(2) + "\n";
}

std::uint64_t ExperimentConfig::config_hash() const {
    return fnv1a64(to_json_value(*this, false).dump());
}

std::uint64_t ExperimentConfig::fingerprint() const {
    return sim_fingerprint(base_params(), jump_command(), sim);
}

// ---- aggregation -----------------------------------------------------------

namespace {

struct MeanStd {
    double mean;
    double std;
};

// population statistics, summed in seed order
MeanStd mean_std(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    const double mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / static_cast<double>(v.size()))};
}

}  // namespace

AggregateStats aggregate(const std::vector<SeedOutcome>& runs) {
    AggregateStats st;
    if (runs.empty()) return st;
    const std::size_t n_ep = runs.front().log.records.size();
    for (const auto& r : runs) {
        if (r.log.records.size() != n_ep) throw PogoError("seed logs differ in length");
        st.seeds.push_back(r.log.seed);
    }
    std::vector<double> col(runs.size());
    auto fill = [&](auto get) {
        for (std::size_t s = 0; s < runs.size(); ++s) col[s] = get(runs[s]);
        return mean_std(col);
    };
    for (std::size_t e = 0; e < n_ep; ++e) {
        MeanStd m = fill([&](const SeedOutcome& r) { return r.log.records[e].apex; });
        st.apex_mean.push_back(m.mean);
        st.apex_std.push_back(m.std);
        m = fill([&](const SeedOutcome& r) { return r.log.records[e].reward; });
        st.reward_mean.push_back(m.mean);
        st.reward_std.push_back(m.std);
        m = fill([&](const SeedOutcome& r) { return r.log.records[e].design(0); });
        st.alpha_mean.push_back(m.mean);
        st.alpha_std.push_back(m.std);
        m = fill([&](const SeedOutcome& r) { return r.log.records[e].design(1); });
        st.zeta_mean.push_back(m.mean);
        st.zeta_std.push_back(m.std);
    }
    MeanStd m = fill([](const SeedOutcome& r) { return r.log.final_design(0); });
    st.final_alpha_mean = m.mean;
    st.final_alpha_std = m.std;
    m = fill([](const SeedOutcome& r) { return r.log.final_design(1); });
    st.final_zeta_mean = m.mean;
    st.final_zeta_std = m.std;
    m = fill([](const SeedOutcome& r) { return r.final_apex; });
    st.final_apex_mean = m.mean;
    st.final_apex_std = m.std;
    return st;
}

// ---- artifacts -------------------------------------------------------------

namespace {

std::string provenance(const ExperimentConfig& c) {
    std::ostringstream os;
    os << "space=" << c.space << " reward_case=" << c.reward_case << " x_s=" << format_double(c.x_s)
       << " fingerprint=" << to_hex(c.fingerprint()) << " config_hash=" << to_hex(c.config_hash());
    return os.str();
}

std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
    std::string s;
    for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? ";" : "") + std::to_string(seeds[i]);
    return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PogoError("cannot write " + path.string());
    out << text;
}

double design_apex(const ExperimentConfig& c, double alpha, double zeta) {
    const Trajectory traj = simulate(c.params.with_design(alpha, zeta), c.jump_command(), c.sim);
    return apex_height(traj);
}

}  // namespace

void write_training_csv(std::ostream& out, const SeedOutcome& run, const ExperimentConfig& config) {
    const TrainingLog& log = run.log;
    out << "# pogo-train 1 seed=" << log.seed << ' ' << provenance(config)
        << " episodes=" << log.records.size() << " final_alpha=" << format_double(log.final_design(0))
        << " final_zeta=" << format_double(log.final_design(1))
        << " final_apex=" << format_double(run.final_apex) << '\n';
    out << "seed,episode,a_alpha,a_zeta,alpha,zeta,apex,reward,critic_loss,actor_loss\n";
    for (const auto& r : log.records) {
        out << log.seed << ',' << r.episode << ',' << format_double(r.action(0)) << ','
            << format_double(r.action(1)) << ',' << format_double(r.design(0)) << ','
            << format_double(r.design(1)) << ',' << format_double(r.apex) << ','
            << format_double(r.reward) << ',' << format_double(r.critic_loss) << ','
            << format_double(r.actor_loss) << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const DesignParams& params,
                          const ExperimentConfig& config) {
    out << "# pogo-trajectory 1 alpha=" << format_double(params.spring_constant)
        << " zeta=" << format_double(params.damping_ratio) << " fingerprint=" << to_hex(config.fingerprint())
        << " config_hash=" << to_hex(config.config_hash()) << '\n';
    out << "t,x,x_dot,x_a,x_a_dot\n";
    for (const auto& s : traj.samples)
        out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.x_dot) << ','
            << format_double(s.x_a) << ',' << format_double(s.x_a_dot) << '\n';
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    namespace fs = std::filesystem;
    const fs::path dir = config.out_dir;
    fs::create_directories(dir / "plots");
    write_file(dir / "config.json", config_to_json(config));

    const DesignSpace space = config.design_space();
    const DesignParams base = config.base_params();
    const JumpCommand cmd = config.jump_command();

    std::vector<std::optional<SeedOutcome>> outcomes(config.seeds.size());
    std::vector<std::string> failures(config.seeds.size());
    parallel_for(config.seeds.size(), config.workers, [&](std::size_t i) {
        const std::uint64_t seed = config.seeds[i];
        try {
            PogoDesignEnv env(space, base, cmd, config.sim, config.reward());
            SeedOutcome out;
            out.log = train_run(env, config.resolved_td3(seed), config.episodes);
            out.final_apex = design_apex(config, out.log.final_design(0), out.log.final_design(1));
            std::ostringstream csv;
            write_training_csv(csv, out, config);
            write_file(dir / ("seed_" + std::to_string(seed) + ".csv"), csv.str());
            std::ostringstream actor;
            out.log.final_actor.save(actor);
            write_file(dir / ("seed_" + std::to_string(seed) + "_actor.txt"), actor.str());
            outcomes[i] = std::move(out);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });

    ExperimentResult result;
    result.out_dir = dir;
    std::vector<SeedOutcome> done;
    json manifest = {{"config_hash", to_hex(config.config_hash())},
                     {"fingerprint", to_hex(config.fingerprint())},
                     {"seeds", config.seeds}};
    json complete = json::array(), incomplete = json::array();
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
        if (outcomes[i]) {
            complete.push_back(config.seeds[i]);
            done.push_back(std::move(*outcomes[i]));
        } else {
            incomplete.push_back({{"seed", config.seeds[i]}, {"error", failures[i]}});
            result.incomplete_seeds.push_back(config.seeds[i]);
        }
    }
    manifest["complete"] = complete;
    manifest["incomplete"] = incomplete;
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    if (done.empty()) throw PogoError("every seed failed; see " + (dir / "manifest.json").string());

    AggregateStats st = aggregate(done);
    st.mean_design_apex = design_apex(config, st.final_alpha_mean, st.final_zeta_mean);
    const bool is_complete = result.incomplete_seeds.empty();

    std::ostringstream agg;
    agg << "# pogo-aggregate 1 " << provenance(config) << " seeds=" << join_seeds(st.seeds)
        << " complete=" << (is_complete ? 1 : 0) << '\n';
    agg << "episode,apex_mean,apex_std,reward_mean,reward_std,alpha_mean,alpha_std,zeta_mean,zeta_std\n";
    for (std::size_t e = 0; e < st.apex_mean.size(); ++e) {
        agg << e << ',' << format_double(st.apex_mean[e]) << ',' << format_double(st.apex_std[e])
            << ',' << format_double(st.reward_mean[e]) << ',' << format_double(st.reward_std[e])
            << ',' << format_double(st.alpha_mean[e]) << ',' << format_double(st.alpha_std[e])
            << ',' << format_double(st.zeta_mean[e]) << ',' << format_double(st.zeta_std[e]) << '\n';
    }
    write_file(dir / "aggregate.csv", agg.str());

    std::ostringstream sum;
    sum << "# pogo-summary 1 " << provenance(config) << " seeds=" << join_seeds(st.seeds)
        << " complete=" << (is_complete ? 1 : 0) << '\n';
    sum << "quantity,mean,std\n";
    sum << "final_alpha," << format_double(st.final_alpha_mean) << ',' << format_double(st.final_alpha_std) << '\n';
    sum << "final_zeta," << format_double(st.final_zeta_mean) << ',' << format_double(st.final_zeta_std) << '\n';
    sum << "final_apex," << format_double(st.final_apex_mean) << ',' << format_double(st.final_apex_std) << '\n';
    sum << "mean_design_apex," << format_double(st.mean_design_apex) << ",0\n";
    write_file(dir / "summary.csv", sum.str());

    render_training_plots(dir / "aggregate.csv", dir / "plots");
    result.stats = std::move(st);
    return result;
}

SummaryFile read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PogoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    const auto meta = parse_metadata(line);
    auto need = [&](const char* key) -> const std::string& {
        auto it = meta.find(key);
        if (it == meta.end()) throw PogoError(path.string() + ": missing '" + key + "' in metadata");
        return it->second;
    };
    SummaryFile s;
    s.space = need("space");
    s.reward_case = need("reward_case");
    s.x_s = std::stod(need("x_s"));
    s.fingerprint = std::stoull(need("fingerprint"), nullptr, 16);
    s.config_hash = std::stoull(need("config_hash"), nullptr, 16);
    s.complete = need("complete") == "1";
    const std::string& seeds = need("seeds");
    s.n_seeds = seeds.empty() ? 0 : 1 + std::count(seeds.begin(), seeds.end(), ';');
    std::getline(in, line);  // column header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw PogoError(path.string() + ": malformed row '" + line + "'");
        const double mean = std::stod(f[1]), sd = std::stod(f[2]);
        if (f[0] == "final_alpha") {
            s.alpha_mean = mean;
            s.alpha_std = sd;
        } else if (f[0] == "final_zeta") {
            s.zeta_mean = mean;
            s.zeta_std = sd;
        } else if (f[0] == "final_apex") {
            s.final_apex_mean = mean;
            s.final_apex_std = sd;
        } else if (f[0] == "mean_design_apex") {
            s.mean_design_apex = mean;
        }
    }
    return s;
}

// ---- report ----------------------------------------------------------------

namespace {

struct ReferenceRow {
    const char* space;
    const char* reward_case;
    double alpha_mean, alpha_std, zeta_mean, zeta_std;
};

// learned design parameters reported for 100 agents per case
constexpr ReferenceRow kReference[] = {
    {"narrow", "max_height", 3.62e3, 3.82e1, 3.37e-4, 2.11e-3},
    {"narrow", "specified_height", 7.74e3, 1.24e3, 4.55e-3, 6.49e-3},
    {"broad", "max_height", 3.55e3, 4.86e1, 7.53e-3, 8.86e-6},
    {"broad", "specified_height", 7.07e3, 2.16e2, 7.54e-3, 3.27e-5},
};

std::string sci(double v, int digits = 3) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

Report make_report(const std::vector<PerformanceSurface>& surfaces,
                   const std::vector<SummaryFile>& runs) {
    Report rep;
    std::ostringstream os;

    os << "== sweep oracle ==\n";
    for (const auto& s : surfaces) {
        const DesignPoint best = argmax_design(s);
        const DesignSpace space = DesignSpace::from_name(s.space);
        const bool interior = best.alpha > s.alphas.front() && best.alpha < s.alphas.back();
        const bool below_nom = best.alpha < space.alpha_nom;
        os << s.space << ": argmax alpha=" << sci(best.alpha) << " zeta=" << sci(best.zeta)
           << " apex=" << sci(best.height, 5) << " (" << s.alphas.size() << "x" << s.zetas.size()
           << ", fingerprint " << to_hex(s.fingerprint) << ")\n";
        if (s.space == "narrow") {
            if (interior && below_nom)
                os << "  argmax spring constant is interior and below nominal " << sci(space.alpha_nom) << "\n";
            else
                os << "  FLAG: argmax spring constant is " << (interior ? "" : "not interior, ")
                   << (below_nom ? "" : "not below nominal, ")
                   << "likely a consequence of the jump command timing\n";
        }
    }

    os << "\n== learned vs oracle ==\n";
    for (const auto& run : runs) {
        auto it = std::find_if(surfaces.begin(), surfaces.end(),
                               [&](const PerformanceSurface& s) { return s.space == run.space; });
        if (it == surfaces.end()) {
            os << run.space << "/" << run.reward_case << ": no surface for this space, skipped\n";
            continue;
        }
        if (it->fingerprint != run.fingerprint)
            throw FingerprintMismatch("surface for '" + run.space + "' has fingerprint " +
                                      to_hex(it->fingerprint) + " but the " + run.reward_case +
                                      " run has " + to_hex(run.fingerprint));
        ReportCase rc;
        rc.run = run;
        rc.oracle = argmax_design(*it);
        rc.height_ratio = run.mean_design_apex / rc.oracle.height;
        os << run.space << "/" << run.reward_case << " (" << run.n_seeds << " seeds"
           << (run.complete ? "" : ", INCOMPLETE") << "): mean design apex "
           << sci(run.mean_design_apex, 5) << ", ratio to oracle max " << std::fixed
           << std::setprecision(4) << rc.height_ratio << std::defaultfloat;
        if (run.reward_case == "specified_height") {
            rc.abs_error = std::abs(run.mean_design_apex - run.x_s);
            rc.rel_error = *rc.abs_error / run.x_s;
            os << ", |apex - x_s| " << sci(*rc.abs_error) << " (" << std::fixed
               << std::setprecision(2) << 100.0 * *rc.rel_error << "%)" << std::defaultfloat
               << "; per-seed final apex " << sci(run.final_apex_mean, 4) << " +- "
               << sci(run.final_apex_std, 2);
        }
        os << "\n";
        rep.cases.push_back(rc);
    }

    os << "\n== learned design parameters (this run | reference, 100 agents) ==\n";
    os << "case                     alpha mean +- std         zeta mean +- std          "
          "| reference alpha           reference zeta\n";
    for (const auto& rc : rep.cases) {
        const auto& r = rc.run;
        os << std::left << std::setw(24) << (r.space + "/" + r.reward_case) << ' '
           << std::setw(25) << (sci(r.alpha_mean) + " +- " + sci(r.alpha_std)) << ' '
           << std::setw(25) << (sci(r.zeta_mean) + " +- " + sci(r.zeta_std)) << " | ";
        for (const auto& p : kReference)
            if (r.space == p.space && r.reward_case == p.reward_case)
                os << std::setw(25) << (sci(p.alpha_mean) + " +- " + sci(p.alpha_std)) << ' '
                   << sci(p.zeta_mean) << " +- " << sci(p.zeta_std);
        os << std::right << "\n";
    }

    const ReportCase* bmax = nullptr;
    const ReportCase* bspec = nullptr;
    for (const auto& rc : rep.cases) {
        if (rc.run.space != "broad") continue;
        if (rc.run.reward_case == "max_height") bmax = &rc;
        if (rc.run.reward_case == "specified_height") bspec = &rc;
    }
    if (bmax && bspec) {
        const double rmax = bmax->run.alpha_std / bmax->run.alpha_mean;
        const double rspec = bspec->run.alpha_std / bspec->run.alpha_mean;
        os << "\nbroad spring-constant relative std: max_height " << sci(rmax) << ", specified_height "
           << sci(rspec) << (rmax <= rspec ? " (max_height is tighter, matching the reference)\n"
                                           : " (ordering differs from the reference)\n");
    }
    rep.text = os.str();
    return rep;
}

}  // namespace pogo
