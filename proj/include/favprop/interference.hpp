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

#ifndef FAVPROP_INTERFERENCE_HPP
#define FAVPROP_INTERFERENCE_HPP

#include "favprop/channel.hpp"

#include <array>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

namespace favprop
{

// E|g_k^H g_l|^2 split into its four closed-form contributions (unit large-scale gain):
//   term1  LoS of l seen through the covariance of k
//   term2  diffuse x diffuse, tr(R_l R_k)
//   term3  LoS x LoS, |h_l^H h_k|^2
//   term4  LoS of k seen through the covariance of l
struct InterferenceBreakdown
{
    double term1 = 0.0;
    double term2 = 0.0;
    double term3 = 0.0;
    double term4 = 0.0;
    double total = 0.0;
};

InterferenceBreakdown mean_interference(const UserProfile &user_k, const UserProfile &user_l);

// |g_k^H g_l|^2
double instantaneous_interference(const ComplexVector &g_k, const ComplexVector &g_l);

struct RitzBounds
{
    double lower = 0.0; // lambda_M / M
    double upper = 0.0; // lambda_1 / M
};

/// Rayleigh-Ritz sandwich for h^H R h / M^2 with ||h||^2 = M.
RitzBounds ritz_bounds(const ComplexVector &h_bar, const ComplexMatrix &r);

// Expansion of h_bar / sqrt(M) in the eigenbasis of R.
struct AlignmentProfile
{
    ComplexVector betas;
    RealVector eigenvalues; // descending

    // (1/M) sum |beta_i|^2 lambda_i, equal to h^H R h / M^2.
    double weighted_energy() const;
};

AlignmentProfile alignment_profile(const ComplexVector &h_bar, const ComplexMatrix &r);

struct TraceProductBound
{
    double value = 0.0; // tr(R_l R_k) / M^2
    double bound = 0.0; // lambda_1(R_l) / M
};

TraceProductBound trace_product_bound(const ComplexMatrix &r_l, const ComplexMatrix &r_k);

// Normalized favorable-propagation metrics for one (k, l) pair at one M.
struct FavorabilityMetrics
{
    double c1 = 0.0; // h_l^H R_k h_l / M^2
    double c2 = 0.0; // tr(R_l R_k) / M^2
    double c3 = 0.0; // |h_l^H h_k|^2 / M^2
};

FavorabilityMetrics favorability_metrics(const UserProfile &user_k, const UserProfile &user_l);

enum class ScalingClass
{
    Vanishing,
    NonVanishing,
    Inconclusive,
};

std::string_view to_string(ScalingClass c);

// Slope <= -0.5 vanishing, > -0.1 non-vanishing, otherwise inconclusive. -inf is vanishing.
ScalingClass classify_slope(double slope);

struct ScalingReport
{
    std::vector<std::size_t> m_values;
    std::vector<double> c1_metric;
    std::vector<double> c2_metric;
    std::vector<double> c3_metric;
    // Least-squares slope of log(metric) against log(M) over the second half of the grid.
    // -infinity when fewer than two nonzero points remain.
    std::array<double, 3> fitted_slopes{};

    std::array<ScalingClass, 3> classification() const;
};

// Builds the (user k, user l) pair at a given antenna count.
using UserPairFactory = std::function<std::pair<UserProfile, UserProfile>(std::size_t m)>;

/// Sweeps M, evaluates the three normalized metrics and fits their log-log slopes.
/// Evaluation at different M may run on `threads` workers; output order follows m_values.
ScalingReport scaling_report(const UserPairFactory &factory, const std::vector<std::size_t> &m_values,
                             unsigned threads = 1);

// OLS slope of log(y) vs log(x) over points with y > 0, using only the last ceil(n/2) grid
// points. Returns -infinity if fewer than two usable points.
double fit_log_log_slope(const std::vector<std::size_t> &x, const std::vector<double> &y);

} // namespace favprop

#endif
