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

#ifndef FAVPROP_EXPERIMENTS_HPP
#define FAVPROP_EXPERIMENTS_HPP

#include "favprop/config.hpp"
#include "favprop/interference.hpp"
#include "favprop/performance.hpp"

#include <optional>
#include <span>
#include <vector>

namespace favprop
{

// Stream ids at and above this value are reserved for geometry draws; trial streams use
// smaller ids, so the two never collide.
inline constexpr std::uint64_t kGeometryStream = std::uint64_t{1} << 63;

struct CdfPoint
{
    double value = 0.0;
    double prob = 0.0;
};

/// Right-continuous empirical CDF: one step per distinct sample value.
std::vector<CdfPoint> estimate_cdf(std::span<const double> values);

struct TrialEnsemble
{
    std::vector<double> per_trial_values; // in trial order
    std::vector<CdfPoint> cdf;
    double mean = 0.0;
    double std_error = 0.0;
    double std_dev = 0.0;

    // Smallest sample x with empirical CDF(x) >= p.
    double quantile(double p) const;
};

// Throws NumericalError if any value is non-finite.
TrialEnsemble make_ensemble(std::vector<double> values);

// Random geometry for L users: directions uniform on [0, 2 pi), then K-factors per mode.
// Covariances follow config.covariance; large-scale gains follow config.large_scale.
std::vector<UserProfile> draw_users(const ExperimentConfig &config, std::size_t m, RngStream &rng);

// Scenario pair with any unset direction drawn uniformly on [0, 2 pi). Both directions are
// always drawn so the stream advances identically for every scenario kind.
UserPair draw_scenario_pair(const ScenarioSpec &spec, const ArrayGeometry &geom, RngStream &rng);

struct CdfResult
{
    TrialEnsemble ensemble;
    // With paired_baseline: the same retained users and LoS/K draws, but R = I.
    std::optional<TrialEnsemble> baseline;
};

/// Capacity-per-user distribution. Trial t: draw geometry, optionally drop users by the
/// configured interference score, sample G and evaluate the capacity with D restricted to the
/// retained users.
CdfResult run_cdf_experiment(const ExperimentConfig &config, unsigned threads = 1);

struct SaturationRow
{
    std::size_t m = 0;
    double mean_se = 0.0;
    double se_stderr = 0.0;
};

/// Average per-user MRC spectral efficiency of the configured two-user scenario at each M.
std::vector<SaturationRow> run_saturation_sweep(const ExperimentConfig &config, unsigned threads = 1);

struct TermRow
{
    std::size_t k = 0; // 0-based user indices
    std::size_t l = 0;
    InterferenceBreakdown terms;
    double mc_mean = 0.0;
    double mc_se = 0.0;
    double z = 0.0;
};

struct TermReport
{
    std::vector<TermRow> rows;
    bool pass = true; // |z| <= 4 for every pair
};

inline constexpr double kTermZLimit = 4.0;

/// Closed-form mean interference against its Monte-Carlo estimate for every user pair.
TermReport run_term_validation(const ExperimentConfig &config, unsigned threads = 1);

/// Closed-form check on an explicit user set (used by run_term_validation).
TermReport validate_terms(std::span<const UserProfile> users, std::size_t trials, std::uint64_t seed,
                          unsigned threads = 1);

/// Favorable-propagation metrics over the M grid for the configured scenario (i.i.d. when
/// no scenario is set). Directions are drawn once and reused for every M.
ScalingReport run_scaling_experiment(const ExperimentConfig &config, unsigned threads = 1);

/// Gram-matrix mean-square deviation at each M.
std::vector<GramDeviation> run_gram_experiment(const ExperimentConfig &config, unsigned threads = 1);

} // namespace favprop

#endif
