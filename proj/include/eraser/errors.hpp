// Copyright 2026 The Partial Eraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace eraser {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (alpha > 1, rho <= 0, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Both amplitudes vanish, so no polarization angle exists.
struct DegenerateState : Error {
    using Error::Error;
};

/// A no-click outcome was requested although it has probability zero.
struct ZeroSurvival : Error {
    using Error::Error;
};

/// Same-axis composition was asked to combine operators on different axes.
struct AxisMismatch : Error {
    using Error::Error;
};

struct ConvergenceFailure : Error {
    using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientStatistics : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace eraser
