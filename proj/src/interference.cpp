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

#include "favprop/interference.hpp"
#include "favprop/errors.hpp"
#include "favprop/parallel.hpp"

#include <cmath>
#include <limits>

namespace favprop
{

namespace
{

// h^H R h, real for Hermitian R.
double quadratic_form(const ComplexVector &h, const ComplexMatrix &r)
{
    return std::max(0.0, h.dot(r * h).real());
}

void require_same_length(Eigen::Index a, Eigen::Index b, const char *what)
{
    if (a != b)
        throw DimensionError(std::string(what) + ": length mismatch");
}

void require_psd_eigenvalues(const RealVector &values, const char *what)
{
    const double top = std::max(values(0), 0.0);
    if (values.minCoeff() < -kPsdTolerance * top || (top == 0.0 && values.minCoeff() < 0.0))
        throw NotPsdError(std::string(what) + ": covariance is not positive semidefinite");
}

} // namespace

InterferenceBreakdown mean_interference(const UserProfile &user_k, const UserProfile &user_l)
{
    require_same_length(user_k.los().size(), user_l.los().size(), "mean_interference");

    const double los_k = los_fraction(user_k.k_factor());
    const double los_l = los_fraction(user_l.k_factor());
    const double dif_k = diffuse_fraction(user_k.k_factor());
    const double dif_l = diffuse_fraction(user_l.k_factor());

    InterferenceBreakdown out;
    out.term1 = los_l * dif_k * quadratic_form(user_l.los(), user_k.covariance());
    out.term2 = dif_k * dif_l * std::max(0.0, trace_of_product(user_l.covariance(), user_k.covariance()).real());
    out.term3 = los_k * los_l * std::norm(user_l.los().dot(user_k.los()));
    out.term4 = los_k * dif_l * quadratic_form(user_k.los(), user_l.covariance());
    out.total = out.term1 + out.term2 + out.term3 + out.term4;
    return out;
}

double instantaneous_interference(const ComplexVector &g_k, const ComplexVector &g_l)
{
    require_same_length(g_k.size(), g_l.size(), "instantaneous_interference");
    return std::norm(g_k.dot(g_l));
}

RitzBounds ritz_bounds(const ComplexVector &h_bar, const ComplexMatrix &r)
{
    require_square(r, "ritz_bounds");
    require_same_length(h_bar.size(), r.rows(), "ritz_bounds");
    const EigenSystem eig = hermitian_eig(r);
    require_psd_eigenvalues(eig.values, "ritz_bounds");
    const double m = static_cast<double>(h_bar.size());
    return {std::max(eig.values(eig.values.size() - 1), 0.0) / m, eig.values(0) / m};
}

double AlignmentProfile::weighted_energy() const
{
    const double m = static_cast<double>(betas.size());
    return (betas.cwiseAbs2().array() * eigenvalues.array()).sum() / m;
}

AlignmentProfile alignment_profile(const ComplexVector &h_bar, const ComplexMatrix &r)
{
    require_square(r, "alignment_profile");
    require_same_length(h_bar.size(), r.rows(), "alignment_profile");
    const EigenSystem eig = hermitian_eig(r);
    require_psd_eigenvalues(eig.values, "alignment_profile");
    const double m = static_cast<double>(h_bar.size());
    return {eig.vectors.adjoint() * (h_bar / std::sqrt(m)), eig.values};
}

TraceProductBound trace_product_bound(const ComplexMatrix &r_l, const ComplexMatrix &r_k)
{
    require_square(r_l, "trace_product_bound");
    require_square(r_k, "trace_product_bound");
    require_same_length(r_l.rows(), r_k.rows(), "trace_product_bound");
    const double m = static_cast<double>(r_l.rows());
    const double value = std::max(0.0, trace_of_product(r_l, r_k).real()) / (m * m);
    const EigenSystem eig = hermitian_eig(r_l);
    return {value, eig.values(0) / m};
}

FavorabilityMetrics favorability_metrics(const UserProfile &user_k, const UserProfile &user_l)
{
    require_same_length(user_k.los().size(), user_l.los().size(), "favorability_metrics");
    const double m = static_cast<double>(user_k.antennas());
    const double m2 = m * m;
    return {quadratic_form(user_l.los(), user_k.covariance()) / m2,
            std::max(0.0, trace_of_product(user_l.covariance(), user_k.covariance()).real()) / m2,
            std::norm(user_l.los().dot(user_k.los())) / m2};
}

std::string_view to_string(ScalingClass c)
{
    switch (c)
    {
    case ScalingClass::Vanishing:
        return "vanishing";
    case ScalingClass::NonVanishing:
        return "non-vanishing";
    case ScalingClass::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

ScalingClass classify_slope(double slope)
{
    if (slope <= -0.5)
        return ScalingClass::Vanishing;
    if (slope > -0.1)
        return ScalingClass::NonVanishing;
    return ScalingClass::Inconclusive;
}

std::array<ScalingClass, 3> ScalingReport::classification() const
{
    return {classify_slope(fitted_slopes[0]), classify_slope(fitted_slopes[1]), classify_slope(fitted_slopes[2])};
}

double fit_log_log_slope(const std::vector<std::size_t> &x, const std::vector<double> &y)
{
    if (x.size() != y.size())
        throw DimensionError("fit_log_log_slope: length mismatch");
    const std::size_t n = x.size();
    const std::size_t first = n / 2; // keeps the last ceil(n/2) points

    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = first; i < n; ++i)
    {
        if (y[i] > 0.0)
        {
            lx.push_back(std::log(static_cast<double>(x[i])));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2)
        return -std::numeric_limits<double>::infinity();

    const double count = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        mx += lx[i];
        my += ly[i];
    }
    mx /= count;
    my /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i)
    {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    return sxy / sxx;
}

ScalingReport scaling_report(const UserPairFactory &factory, const std::vector<std::size_t> &m_values,
                             unsigned threads)
{
    if (m_values.size() < 2)
        throw ParameterError("scaling_report: need at least two antenna counts");
    for (std::size_t i = 1; i < m_values.size(); ++i)
        if (m_values[i] <= m_values[i - 1])
            throw ParameterError("scaling_report: antenna counts must be strictly increasing");

    std::vector<FavorabilityMetrics> metrics(m_values.size());
    parallel_for(m_values.size(), threads, [&](std::size_t i) {
        const auto [user_k, user_l] = factory(m_values[i]);
        if (user_k.antennas() != m_values[i] || user_l.antennas() != m_values[i])
            throw DimensionError("scaling_report: factory returned users with the wrong antenna count");
        metrics[i] = favorability_metrics(user_k, user_l);
    });

    ScalingReport report;
    report.m_values = m_values;
    for (const auto &m : metrics)
    {
        report.c1_metric.push_back(m.c1);
        report.c2_metric.push_back(m.c2);
        report.c3_metric.push_back(m.c3);
    }
    report.fitted_slopes = {fit_log_log_slope(m_values, report.c1_metric),
                            fit_log_log_slope(m_values, report.c2_metric),
                            fit_log_log_slope(m_values, report.c3_metric)};
    return report;
}

} // namespace favprop
