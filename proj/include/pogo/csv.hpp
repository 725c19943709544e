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

#ifndef POGO_CSV_HPP
#define POGO_CSV_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pogo/command.hpp"
#include "pogo/model.hpp"
#include "pogo/params.hpp"

namespace pogo {

/// %.17g, so values round-trip exactly.
std::string format_double(double value);

std::uint64_t fnv1a64(const std::string& text);
std::string to_hex(std::uint64_t value);

/// Hash of everything that shapes a simulation except the two design values
/// (spring constant and damping ratio), which vary per cell or per episode.
std::uint64_t sim_fingerprint(const DesignParams& base, const JumpCommand& command,
                              const SimConfig& sim);

std::vector<std::string> split_csv_line(const std::string& line);

/// Parses "# tag key=value key=value ..." metadata lines.
std::map<std::string, std::string> parse_metadata(const std::string& line);

/// Runs body(i) for i in [0, count) on up to `workers` threads. Exceptions
/// from the lowest failing index are rethrown after all threads join.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body);

}  // namespace pogo

#endif  // POGO_CSV_HPP
