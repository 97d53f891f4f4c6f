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

#ifndef FAVPROP_CONFIG_HPP
#define FAVPROP_CONFIG_HPP

#include "favprop/scenarios.hpp"
#include "favprop/scheduler.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace favprop
{

enum class ExperimentKind
{
    Cdf,
    Saturation,
    Terms,
    Scaling,
    Gram,
};

std::string_view to_string(ExperimentKind kind);
std::optional<ExperimentKind> experiment_kind_from_string(std::string_view name);

enum class CovarianceModel
{
    Identity, // uncorrelated diffuse part, R = I
    OneRing,
};

enum class KFactorMode
{
    Zero,
    Fixed,
    Uniform,
};

struct KFactorSpec
{
    KFactorMode mode = KFactorMode::Zero;
    double value = 0.0; // Fixed
    double min = 0.0;   // Uniform
    double max = 0.0;
};

// Declarative description of one experiment. Field defaults follow the reference system:
// M = 100, L = 10, p_u = 0 dB, half-wavelength spacing, directions uniform on [0, 2 pi).
struct ExperimentConfig
{
    ExperimentKind experiment = ExperimentKind::Cdf;
    std::vector<std::size_t> m{100};
    std::size_t l = 10;
    double p_u_db = 0.0;
    double p_u = 1.0; // linear, derived from p_u_db
    double spacing_wavelengths = 0.5;
    CovarianceModel covariance = CovarianceModel::OneRing;
    std::vector<double> delta_deg{10.0}; // one value for all users, or one per user
    KFactorSpec k_factor;
    std::vector<double> large_scale; // empty means unit gains
    std::optional<ScenarioSpec> scenario;
    std::size_t drop_count = 0;
    DropOptions drop;
    bool paired_baseline = false;
    std::size_t trials = 1000;
    std::uint64_t seed = 1;

    ArrayGeometry geometry(std::size_t m) const { return {m, spacing_wavelengths}; }
    double delta_rad(std::size_t user) const;
    double large_scale_for(std::size_t user) const;
};

/// Parses and validates a config document. Unknown keys are rejected. Throws ConfigError
/// naming the offending field.
ExperimentConfig parse_config(const nlohmann::json &doc);
ExperimentConfig load_config(const std::filesystem::path &path);

// Checks cross-field constraints; parse_config calls this, and so should code that mutates a
// parsed config (e.g. CLI overrides).
void validate(const ExperimentConfig &config);

// Canonical JSON form (every field explicit, keys sorted).
nlohmann::json to_json(const ExperimentConfig &config);

// 16 hex digits of FNV-1a over the canonical JSON text.
std::string config_hash(const ExperimentConfig &config);

} // namespace favprop

#endif
