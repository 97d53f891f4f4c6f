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

#ifndef FAVPROP_SCENARIOS_HPP
#define FAVPROP_SCENARIOS_HPP

#include "favprop/channel.hpp"

#include <optional>
#include <string_view>
#include <utility>

namespace favprop
{

// Two-user constructions that break channel orthogonality as M grows.
//
//   EigenAligned            LoS of user 2 along the principal eigenvector of R_1
//   SharedSpikedCovariance  R_1 = R_2 = diag(M/2, M/(2M-2), ..., M/(2M-2))
//   LosAligned              h_2 = e^{j alpha} h_1
//   LosNearAligned          sin(theta_l) - sin(theta_k) = gamma / M^c on a ULA
//   Iid                     benign reference: K = 0, R = I, independent directions
enum class ScenarioKind
{
    EigenAligned,
    SharedSpikedCovariance,
    LosAligned,
    LosNearAligned,
    Iid,
};

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name);

struct KFactorPair
{
    double first = 1.0;
    double second = 1.0;

    // K_1/(K_1+1) * K_2/(K_2+1)
    double los_weight() const;
};

struct ScenarioSpec
{
    ScenarioKind kind = ScenarioKind::Iid;
    KFactorPair k_factors;
    std::optional<double> gamma;   // LosNearAligned only
    double exponent = 1.0;         // c in gamma / M^c
    double delta = 0.0;            // one-ring spread, radians
    double alpha_phase = 0.0;      // LosAligned phase, radians
    std::optional<double> theta;   // reference direction; drawn per trial when unset
    std::optional<double> theta_2; // second direction (SharedSpikedCovariance / Iid); drawn when unset
};

// Throws ParameterError when `gamma` is present without LosNearAligned or missing with it.
void validate(const ScenarioSpec &spec);

using UserPair = std::pair<UserProfile, UserProfile>;

/// User 1: one-ring covariance around phi0 with ULA LoS at phi0. User 2: LoS = sqrt(M) u_1,
/// with u_1 the principal eigenvector of R_1, and covariance I.
UserPair build_scenario_1(const ArrayGeometry &geom, double delta, double phi0, KFactorPair k);

/// Both users share the spiked diagonal covariance; LoS directions theta_1, theta_2.
UserPair build_scenario_2(const ArrayGeometry &geom, KFactorPair k, double theta_1, double theta_2);

/// h_2 = e^{j alpha} h_1 with h_1 the ULA response at theta; both covariances one-ring at theta.
UserPair build_scenario_3(const ArrayGeometry &geom, double theta, double alpha_phase, KFactorPair k,
                          double delta);

/// theta_l = asin(sin(theta_k) + gamma / M^exponent); each user gets its own ULA LoS and a
/// one-ring covariance centred on its angle. Throws InfeasibleAngleError if the sine leaves [-1, 1].
UserPair build_scenario_4(const ArrayGeometry &geom, double theta_k, double gamma, KFactorPair k, double delta,
                          double exponent = 1.0);

/// Large-M limit of term3 / M^2 for LosNearAligned:
///   w * (lambda / (2 pi gamma d))^2 * |e^{j 2 pi gamma d / lambda} - 1|^2,  w = K-weights.
/// gamma = 0 returns the continuous limit w.
double scenario_4_limit(double gamma, double spacing_wavelengths, KFactorPair k);

/// Exact finite-M |h_l^H h_k|^2 / M^2 for two ULA responses whose sines differ by delta_sin:
///   [sin(M pi (d/lambda) delta_sin) / (M sin(pi (d/lambda) delta_sin))]^2.
double dirichlet_metric(std::size_t m, double spacing_wavelengths, double delta_sin);

// The spiked diagonal diag(M/2, M/(2M-2), ...) shared by both users in SharedSpikedCovariance.
RealVector spiked_diagonal(std::size_t m);

} // namespace favprop

#endif
