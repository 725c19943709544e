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

#ifndef POGO_RNG_HPP
#define POGO_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace pogo {

/// Seeded random stream with platform-independent draws.
///
/// std::mt19937_64 output is fixed by the standard, but the std::*_distribution
/// adaptors are not, so the conversions to uniform/normal/index are done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller; consumes exactly two uniforms.
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }
    /// Uniform integer in [0, n), unbiased.
    std::size_t index(std::size_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace pogo

#endif  // POGO_RNG_HPP
