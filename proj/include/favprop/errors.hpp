// SPDX-License-Identifier: Apache-2.0
//
// favprop: interference scaling analysis for massive MIMO in Ricean fading
// Copyright (C) 2026 The favprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FAVPROP_ERRORS_HPP
#define FAVPROP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace favprop
{

// Shape mismatch between operands.
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Non-finite entries or values outside the mathematical domain.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Matrix has an eigenvalue below the PSD tolerance.
class NotPsdError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Out-of-range model parameter (angular spread, gamma, trial count, ...).
class ParameterError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Scenario geometry that cannot be realized, e.g. |sin(theta) + gamma/M| > 1.
class InfeasibleAngleError : public ParameterError
{
public:
    using ParameterError::ParameterError;
};

// Experiment configuration failed validation. `field` is the JSON path of the offending key.
class ConfigError : public std::invalid_argument
{
public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field))
    {
    }

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

// A computed result was NaN or infinite.
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace favprop

#endif
