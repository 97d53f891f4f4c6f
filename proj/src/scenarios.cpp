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

#include "favprop/scenarios.hpp"
#include "favprop/errors.hpp"

#include <cmath>

namespace favprop
{

namespace
{

void require_pair_size(const ArrayGeometry &geom)
{
    if (geom.antennas < 2)
        throw ParameterError("scenario: need at least two antennas");
}

} // namespace

std::string_view to_string(ScenarioKind kind)
{
    switch (kind)
    {
    case ScenarioKind::EigenAligned:
        return "eigen_aligned";
    case ScenarioKind::SharedSpikedCovariance:
        return "shared_spiked_covariance";
    case ScenarioKind::LosAligned:
        return "los_aligned";
    case ScenarioKind::LosNearAligned:
        return "los_near_aligned";
    case ScenarioKind::Iid:
        return "iid";
    }
    return "iid";
}

std::optional<ScenarioKind> scenario_kind_from_string(std::string_view name)
{
    for (auto kind : {ScenarioKind::EigenAligned, ScenarioKind::SharedSpikedCovariance, ScenarioKind::LosAligned,
                      ScenarioKind::LosNearAligned, ScenarioKind::Iid})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

double KFactorPair::los_weight() const
{
    return los_fraction(first) * los_fraction(second);
}

void validate(const ScenarioSpec &spec)
{
    const bool near = spec.kind == ScenarioKind::LosNearAligned;
    if (near && !spec.gamma)
        throw ParameterError("scenario: gamma is required for los_near_aligned");
    if (!near && spec.gamma)
        throw ParameterError("scenario: gamma is only valid for los_near_aligned");
    if (near && !(*spec.gamma > 0.0))
        throw ParameterError("scenario: gamma must be positive");
    if (!(spec.k_factors.first >= 0.0) || !(spec.k_factors.second >= 0.0))
        throw ParameterError("scenario: K-factors must be >= 0");
    if (!(spec.exponent >= 1.0))
        throw ParameterError("scenario: exponent must be >= 1");
    const bool uses_ring = spec.kind == ScenarioKind::EigenAligned || spec.kind == ScenarioKind::LosAligned ||
                           spec.kind == ScenarioKind::LosNearAligned;
    if (uses_ring && (!(spec.delta > 0.0) || spec.delta > kPi))
        throw ParameterError("scenario: angular spread must lie in (0, pi]");
}

UserPair build_scenario_1(const ArrayGeometry &geom, double delta, double phi0, KFactorPair k)
{
    require_pair_size(geom);
    OneRingDecomposition ring = one_ring_decomposition(geom, delta, phi0);
    const EigenSystem &eig = ring.eig;

    const double m = static_cast<double>(geom.antennas);
    ComplexVector h2 = eig.vectors.col(0);
    h2 *= std::sqrt(m) / h2.norm();

    UserProfile user1(k.first, ula_los(geom, phi0), std::move(ring.covariance), psd_sqrt(eig), 1.0);
    UserProfile user2 = identity_user(k.second, h2);
    return {std::move(user1), std::move(user2)};
}

RealVector spiked_diagonal(std::size_t m)
{
    if (m < 2)
        throw ParameterError("spiked_diagonal: need at least two antennas");
    const double md = static_cast<double>(m);
    RealVector d = RealVector::Constant(static_cast<Eigen::Index>(m), md / (2.0 * md - 2.0));
    d(0) = md / 2.0;
    return d;
}

UserPair build_scenario_2(const ArrayGeometry &geom, KFactorPair k, double theta_1, double theta_2)
{
    require_pair_size(geom);
    const RealVector d = spiked_diagonal(geom.antennas);
    const ComplexMatrix r = d.cast<Complex>().asDiagonal();
    const ComplexMatrix s = d.cwiseSqrt().cast<Complex>().asDiagonal();
    UserProfile user1(k.first, ula_los(geom, theta_1), r, s, 1.0);
    UserProfile user2(k.second, ula_los(geom, theta_2), r, s, 1.0);
    return {std::move(user1), std::move(user2)};
}

UserPair build_scenario_3(const ArrayGeometry &geom, double theta, double alpha_phase, KFactorPair k, double delta)
{
    require_pair_size(geom);
    const ComplexVector h1 = ula_los(geom, theta);
    const ComplexVector h2 = std::polar(1.0, alpha_phase) * h1;
    UserProfile user1 = one_ring_user(geom, delta, theta, k.first, h1);
    UserProfile user2(k.second, h2, user1.covariance(), user1.covariance_sqrt(), 1.0);
    return {std::move(user1), std::move(user2)};
}

UserPair build_scenario_4(const ArrayGeometry &geom, double theta_k, double gamma, KFactorPair k, double delta,
                          double exponent)
{
    require_pair_size(geom);
    if (!(gamma > 0.0))
        throw ParameterError("build_scenario_4: gamma must be positive");
    const double target = std::sin(theta_k) + gamma / std::pow(static_cast<double>(geom.antennas), exponent);
    if (std::abs(target) > 1.0)
        throw InfeasibleAngleError("build_scenario_4: sin(theta_k) + gamma/M^c lies outside [-1, 1]");
    const double theta_l = std::asin(target);

    UserProfile user_k = one_ring_user(geom, delta, theta_k, k.first, ula_los(geom, theta_k));
    UserProfile user_l = one_ring_user(geom, delta, theta_l, k.second, ula_los(geom, theta_l));
    return {std::move(user_k), std::move(user_l)};
}

double scenario_4_limit(double gamma, double spacing_wavelengths, KFactorPair k)
{
    if (gamma < 0.0 || !std::isfinite(gamma))
        throw ParameterError("scenario_4_limit: gamma must be >= 0");
    if (!(spacing_wavelengths > 0.0))
        throw ParameterError("scenario_4_limit: spacing must be positive");
    const double w = k.los_weight();
    if (gamma == 0.0)
        return w;
    const double x = 2.0 * kPi * gamma * spacing_wavelengths;
    return w * std::norm(std::polar(1.0, x) - 1.0) / (x * x);
}

double dirichlet_metric(std::size_t m, double spacing_wavelengths, double delta_sin)
{
    const double psi = kPi * spacing_wavelengths * delta_sin;
    const double den = static_cast<double>(m) * std::sin(psi);
    if (std::abs(den) < 1e-300)
        return 1.0;
    const double ratio = std::sin(static_cast<double>(m) * psi) / den;
    return ratio * ratio;
}

} // namespace favprop
