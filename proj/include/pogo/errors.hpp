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

#ifndef POGO_ERRORS_HPP
#define POGO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pogo {

// Base of every error raised by the library.
class PogoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public PogoError {
public:
    using PogoError::PogoError;
};

// Integration produced NaN/Inf, usually because dt is too coarse.
class NonFiniteState : public PogoError {
public:
    using PogoError::PogoError;
};

class EmptyTrajectory : public PogoError {
public:
    EmptyTrajectory() : PogoError("trajectory has no samples") {}
};

class SaturationViolation : public PogoError {
public:
    using PogoError::PogoError;
};

class StrokeViolation : public PogoError {
public:
    using PogoError::PogoError;
};

class InvalidTarget : public PogoError {
public:
    using PogoError::PogoError;
};

class BufferUnderflow : public PogoError {
public:
    using PogoError::PogoError;
};

class ConfigError : public PogoError {
public:
    using PogoError::PogoError;
};

class FingerprintMismatch : public PogoError {
public:
    using PogoError::PogoError;
};

}  // namespace pogo

#endif  // POGO_ERRORS_HPP
