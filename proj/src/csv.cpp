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

#include "pogo/csv.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace pogo {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string to_hex(std::uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

std::uint64_t sim_fingerprint(const DesignParams& base, const JumpCommand& command,
                              const SimConfig& sim) {
    std::ostringstream s;
    auto put = [&s](const char* key, double v) { s << key << '=' << format_double(v) << ';'; };
    put("m_l", base.leg_mass);
    put("m_a", base.actuator_mass);
    put("beta", base.cubic_stiffness);
    put("g", base.gravity);
    put("stroke_max", base.stroke_max);
    put("vel_max", base.vel_max);
    put("accel_max", base.accel_max);
    put("compression_limit", base.compression_limit);
    put("accel_mag", command.accel_mag);
    put("delta_1", command.delta_1);
    put("delta_2", command.delta_2);
    put("delta_t", command.delta_t);
    put("x_a_0", command.x_a_0);
    for (double a : command.sequence.amplitudes) put("A", a);
    for (double t : command.sequence.times) put("t", t);
    put("dt", sim.dt);
    put("t_f", sim.t_f);
    return fnv1a64(s.str());
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::map<std::string, std::string> parse_metadata(const std::string& line) {
    std::map<std::string, std::string> meta;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        const auto eq = token.find('=');
        if (eq != std::string::npos) meta[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return meta;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    const std::size_t threads =
        std::clamp<std::size_t>(workers > 0 ? static_cast<std::size_t>(workers) : 1, 1, std::max<std::size_t>(count, 1));
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_at = count;
    std::exception_ptr failure;

    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_at) {
                    failed_at = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (threads == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(run);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace pogo
