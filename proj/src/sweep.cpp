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

#include "pogo/sweep.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "pogo/csv.hpp"
#include "pogo/errors.hpp"

namespace pogo {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = (i == n - 1) ? hi : lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace

DesignGrid DesignGrid::for_space(const DesignSpace& space, int n_alpha, int n_zeta) {
    DesignGrid g{space.alpha_min(), space.alpha_max(), n_alpha,
                 space.zeta_min(), space.zeta_max(), n_zeta};
    g.validate();
    return g;
}

void DesignGrid::validate() const {
    if (!(alpha_min < alpha_max) || !(zeta_min < zeta_max))
        throw InvalidParameter("design grid ranges must satisfy min < max");
    if (n_alpha < 2 || n_zeta < 2) throw InvalidParameter("design grid needs at least 2 points per axis");
    if (!(alpha_min > 0.0) || zeta_min < 0.0) throw InvalidParameter("design grid leaves the physical range");
}

void DesignGrid::validate_within(const DesignSpace& space) const {
    validate();
    const double eps = 1e-12;
    if (alpha_min < space.alpha_min() * (1 - eps) || alpha_max > space.alpha_max() * (1 + eps) ||
        zeta_min < space.zeta_min() * (1 - eps) || zeta_max > space.zeta_max() * (1 + eps))
        throw InvalidParameter("design grid exceeds the realizable box of space '" + space.name + "'");
}

std::vector<double> DesignGrid::alpha_values() const { return linspace(alpha_min, alpha_max, n_alpha); }
std::vector<double> DesignGrid::zeta_values() const { return linspace(zeta_min, zeta_max, n_zeta); }

PerformanceSurface sweep(const DesignGrid& grid, const DesignParams& base,
                         const JumpCommand& command, const SimConfig& sim, int workers) {
    grid.validate();
    return sweep(grid.alpha_values(), grid.zeta_values(), base, command, sim, workers);
}

PerformanceSurface sweep(const std::vector<double>& alphas, const std::vector<double>& zetas,
                         const DesignParams& base, const JumpCommand& command,
                         const SimConfig& sim, int workers) {
    if (alphas.empty() || zetas.empty()) throw InvalidParameter("sweep axes must be non-empty");
    PerformanceSurface surface;
    surface.alphas = alphas;
    surface.zetas = zetas;
    surface.fingerprint = sim_fingerprint(base, command, sim);
    const auto na = static_cast<Eigen::Index>(alphas.size());
    const auto nz = static_cast<Eigen::Index>(zetas.size());
    surface.heights.resize(na, nz);

    parallel_for(alphas.size() * zetas.size(), workers, [&](std::size_t cell) {
        const std::size_t i = cell / zetas.size();
        const std::size_t j = cell % zetas.size();
        try {
            const Trajectory traj = simulate(base.with_design(alphas[i], zetas[j]), command, sim);
            surface.heights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = apex_height(traj);
        } catch (const NonFiniteState& e) {
            std::ostringstream msg;
            msg << "sweep cell alpha = " << format_double(alphas[i]) << ", zeta = "
                << format_double(zetas[j]) << ": " << e.what();
            throw NonFiniteState(msg.str());
        }
    });
    return surface;
}

DesignPoint argmax_design(const PerformanceSurface& surface) {
    if (surface.heights.size() == 0) throw InvalidParameter("surface is empty");
    DesignPoint best{surface.alphas[0], surface.zetas[0], surface.heights(0, 0)};
    for (Eigen::Index i = 0; i < surface.heights.rows(); ++i) {
        for (Eigen::Index j = 0; j < surface.heights.cols(); ++j) {
            const DesignPoint p{surface.alphas[static_cast<std::size_t>(i)],
                                surface.zetas[static_cast<std::size_t>(j)], surface.heights(i, j)};
            const bool better = p.height > best.height ||
                                (p.height == best.height &&
                                 (p.zeta < best.zeta || (p.zeta == best.zeta && p.alpha < best.alpha)));
            if (better) best = p;
        }
    }
    return best;
}

std::vector<DesignPoint> target_band(const PerformanceSurface& surface, double x_s, double tol) {
    if (!(tol > 0.0)) throw InvalidParameter("target band tolerance must be positive");
    if (!(x_s > 0.0)) throw InvalidTarget("target height must be positive");
    std::vector<DesignPoint> band;
    for (Eigen::Index i = 0; i < surface.heights.rows(); ++i)
        for (Eigen::Index j = 0; j < surface.heights.cols(); ++j)
            if (std::abs(surface.heights(i, j) - x_s) <= tol * x_s)
                band.push_back({surface.alphas[static_cast<std::size_t>(i)],
                                surface.zetas[static_cast<std::size_t>(j)], surface.heights(i, j)});
    return band;
}

void write_surface_csv(std::ostream& out, const PerformanceSurface& surface) {
    out << "# pogo-surface 1 space=" << (surface.space.empty() ? "custom" : surface.space)
        << " fingerprint=" << to_hex(surface.fingerprint) << " n_alpha=" << surface.alphas.size()
        << " n_zeta=" << surface.zetas.size() << " alpha_min=" << format_double(surface.alphas.front())
        << " alpha_max=" << format_double(surface.alphas.back())
        << " zeta_min=" << format_double(surface.zetas.front())
        << " zeta_max=" << format_double(surface.zetas.back()) << '\n';
    out << "alpha,zeta,apex_height\n";
    for (std::size_t i = 0; i < surface.alphas.size(); ++i)
        for (std::size_t j = 0; j < surface.zetas.size(); ++j)
            out << format_double(surface.alphas[i]) << ',' << format_double(surface.zetas[j]) << ','
                << format_double(surface.heights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))
                << '\n';
}

PerformanceSurface read_surface_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# pogo-surface 1", 0) != 0)
        throw ConfigError("not a pogo-surface v1 file");
    const auto meta = parse_metadata(line);
    PerformanceSurface s;
    try {
        s.space = meta.at("space");
        s.fingerprint = std::stoull(meta.at("fingerprint"), nullptr, 16);
        const auto na = std::stoul(meta.at("n_alpha"));
        const auto nz = std::stoul(meta.at("n_zeta"));
        if (!std::getline(in, line) || line.rfind("alpha,zeta,apex_height", 0) != 0)
            throw ConfigError("surface file: missing column header");
        s.heights.resize(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nz));
        for (std::size_t i = 0; i < na; ++i) {
            for (std::size_t j = 0; j < nz; ++j) {
                if (!std::getline(in, line)) throw ConfigError("surface file: truncated");
                const auto f = split_csv_line(line);
                if (f.size() != 3) throw ConfigError("surface file: malformed row '" + line + "'");
                if (j == 0) s.alphas.push_back(std::stod(f[0]));
                if (i == 0) s.zetas.push_back(std::stod(f[1]));
                s.heights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::stod(f[2]);
            }
        }
    } catch (const std::out_of_range&) {
        throw ConfigError("surface file: missing metadata field");
    } catch (const std::invalid_argument&) {
        throw ConfigError("surface file: unparsable number");
    }
    return s;
}

}  // namespace pogo
