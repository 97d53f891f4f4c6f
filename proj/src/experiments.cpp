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

#include "favprop/experiments.hpp"
#include "favprop/errors.hpp"
#include "favprop/parallel.hpp"
#include "favprop/scheduler.hpp"

#include <algorithm>
#include <cmath>

namespace favprop
{

namespace
{

constexpr std::size_t kTermBlock = 256;
constexpr int kMaxAngleRedraws = 64;

// Trial t at grid index i.
std::uint64_t grid_stream(std::size_t grid_index, std::size_t trial)
{
    return (static_cast<std::uint64_t>(grid_index) << 32) | static_cast<std::uint64_t>(trial);
}

struct MeanStd
{
    double mean = 0.0;
    double std_dev = 0.0;
};

// Two-pass, fixed order.
MeanStd mean_std(std::span<const double> v)
{
    MeanStd out;
    if (v.empty())
        return out;
    for (double x : v)
        out.mean += x;
    out.mean /= static_cast<double>(v.size());
    if (v.size() < 2)
        return out;
    double ss = 0.0;
    for (double x : v)
        ss += (x - out.mean) * (x - out.mean);
    out.std_dev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return out;
}

double draw_k_factor(const KFactorSpec &spec, RngStream &rng)
{
    switch (spec.mode)
    {
    case KFactorMode::Zero:
        return 0.0;
    case KFactorMode::Fixed:
        return spec.value;
    case KFactorMode::Uniform:
        return rng.uniform(spec.min, spec.max);
    }
    return 0.0;
}

std::vector<double> gains_of(std::span<const UserProfile> users)
{
    std::vector<double> d;
    d.reserve(users.size());
    for (const auto &u : users)
        d.push_back(u.large_scale());
    return d;
}

template <typename T>
std::vector<T> pick(const std::vector<T> &all, const std::vector<std::size_t> &indices)
{
    std::vector<T> out;
    out.reserve(indices.size());
    for (std::size_t i : indices)
        out.push_back(all[i]);
    return out;
}

} // namespace

std::vector<CdfPoint> estimate_cdf(std::span<const double> values)
{
    if (values.empty())
        throw ParameterError("estimate_cdf: need at least one value");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    std::vector<CdfPoint> cdf;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i])
            continue;
        cdf.push_back({sorted[i], static_cast<double>(i + 1) / n});
    }
    return cdf;
}

double TrialEnsemble::quantile(double p) const
{
    if (cdf.empty())
        throw ParameterError("quantile: empty ensemble");
    for (const auto &pt : cdf)
        if (pt.prob >= p)
            return pt.value;
    return cdf.back().value;
}

TrialEnsemble make_ensemble(std::vector<double> values)
{
    for (double v : values)
        if (!std::isfinite(v))
            throw NumericalError("non-finite per-trial value");
    TrialEnsemble e;
    e.cdf = estimate_cdf(values);
    const MeanStd ms = mean_std(values);
    e.mean = ms.mean;
    e.std_dev = ms.std_dev;
    e.std_error = ms.std_dev / std::sqrt(static_cast<double>(values.size()));
    e.per_trial_values = std::move(values);
    return e;
}

std::vector<UserProfile> draw_users(const ExperimentConfig &config, std::size_t m, RngStream &rng)
{
    const ArrayGeometry geom = config.geometry(m);
    std::vector<double> angles(config.l);
    for (auto &a : angles)
        a = rng.uniform(0.0, 2.0 * kPi);
    std::vector<double> k_factors(config.l);
    for (auto &k : k_factors)
        k = draw_k_factor(config.k_factor, rng);

    std::vector<UserProfile> users;
    users.reserve(config.l);
    for (std::size_t k = 0; k < config.l; ++k)
    {
        const ComplexVector los = ula_los(geom, angles[k]);
        if (config.covariance == CovarianceModel::Identity)
            users.push_back(identity_user(k_factors[k], los, config.large_scale_for(k)));
        else
            users.push_back(
                one_ring_user(geom, config.delta_rad(k), angles[k], k_factors[k], los, config.large_scale_for(k)));
    }
    return users;
}

UserPair draw_scenario_pair(const ScenarioSpec &spec, const ArrayGeometry &geom, RngStream &rng)
{
    validate(spec);
    double theta = rng.uniform(0.0, 2.0 * kPi);
    const double theta_2 = spec.theta_2.value_or(rng.uniform(0.0, 2.0 * kPi));
    if (spec.theta)
        theta = *spec.theta;

    switch (spec.kind)
    {
    case ScenarioKind::EigenAligned:
        return build_scenario_1(geom, spec.delta, theta, spec.k_factors);
    case ScenarioKind::SharedSpikedCovariance:
        return build_scenario_2(geom, spec.k_factors, theta, theta_2);
    case ScenarioKind::LosAligned:
        return build_scenario_3(geom, theta, spec.alpha_phase, spec.k_factors, spec.delta);
    case ScenarioKind::LosNearAligned: {
        const double shift = *spec.gamma / std::pow(static_cast<double>(geom.antennas), spec.exponent);
        for (int attempt = 0; !spec.theta && std::abs(std::sin(theta) + shift) > 1.0; ++attempt)
        {
            if (attempt == kMaxAngleRedraws)
                throw InfeasibleAngleError("draw_scenario_pair: no feasible direction found");
            theta = rng.uniform(0.0, 2.0 * kPi);
        }
        return build_scenario_4(geom, theta, *spec.gamma, spec.k_factors, spec.delta, spec.exponent);
    }
    case ScenarioKind::Iid:
        return {identity_user(0.0, ula_los(geom, theta)), identity_user(0.0, ula_los(geom, theta_2))};
    }
    throw ParameterError("draw_scenario_pair: unknown scenario kind");
}

CdfResult run_cdf_experiment(const ExperimentConfig &config, unsigned threads)
{
    if (config.experiment != ExperimentKind::Cdf)
        throw ConfigError("experiment", "expected cdf");
    validate(config);
    const std::size_t m = config.m.front();

    std::vector<double> values(config.trials);
    std::vector<double> baseline(config.paired_baseline ? config.trials : 0);
    parallel_for(config.trials, threads, [&](std::size_t t) {
        RngStream rng(config.seed, t);
        const std::vector<UserProfile> users = draw_users(config, m, rng);

        std::vector<std::size_t> retained(users.size());
        for (std::size_t i = 0; i < retained.size(); ++i)
            retained[i] = i;
        if (config.drop_count > 0)
            retained = drop_users(users, config.drop_count, config.drop).retained;

        const std::vector<UserProfile> served = pick(users, retained);
        const ComplexMatrix g = build_channel_matrix(served, rng);
        values[t] = capacity_per_user(g, gains_of(served), config.p_u);

        if (config.paired_baseline)
        {
            std::vector<UserProfile> reference;
            reference.reserve(served.size());
            for (const auto &u : served)
                reference.push_back(identity_user(u.k_factor(), u.los(), u.large_scale()));
            const ComplexMatrix gb = build_channel_matrix(reference, rng);
            baseline[t] = capacity_per_user(gb, gains_of(reference), config.p_u);
        }
    });

    CdfResult out{make_ensemble(std::move(values)), std::nullopt};
    if (config.paired_baseline)
        out.baseline = make_ensemble(std::move(baseline));
    return out;
}

std::vector<SaturationRow> run_saturation_sweep(const ExperimentConfig &config, unsigned threads)
{
    if (config.experiment != ExperimentKind::Saturation)
        throw ConfigError("experiment", "expected saturation");
    validate(config);
    const ScenarioSpec &spec = *config.scenario;
    const std::size_t trials = config.trials;

    std::vector<double> se(config.m.size() * trials);
    parallel_for(se.size(), threads, [&](std::size_t job) {
        const std::size_t i = job / trials;
        const std::size_t t = job % trials;
        RngStream rng(config.seed, grid_stream(i, t));
        auto [u1, u2] = draw_scenario_pair(spec, config.geometry(config.m[i]), rng);
        const std::vector<UserProfile> users{u1.with_large_scale(config.large_scale_for(0)),
                                             u2.with_large_scale(config.large_scale_for(1))};
        const ComplexMatrix g = build_channel_matrix(users, rng);
        const std::vector<double> per_user = mrc_se_per_user(g, gains_of(users), config.p_u);
        se[job] = 0.5 * (per_user[0] + per_user[1]);
    });

    std::vector<SaturationRow> rows;
    for (std::size_t i = 0; i < config.m.size(); ++i)
    {
        const std::span<const double> slice(se.data() + i * trials, trials);
        for (double v : slice)
            if (!std::isfinite(v))
                throw NumericalError("run_saturation_sweep: non-finite spectral efficiency");
        const MeanStd ms = mean_std(slice);
        rows.push_back({config.m[i], ms.mean, ms.std_dev / std::sqrt(static_cast<double>(trials))});
    }
    return rows;
}

TermReport validate_terms(std::span<const UserProfile> users, std::size_t trials, std::uint64_t seed,
                          unsigned threads)
{
    if (users.size() < 2)
        throw ParameterError("validate_terms: need at least two users");
    if (trials < 2)
        throw ParameterError("validate_terms: need at least two trials");
    common_antennas(users);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < users.size(); ++k)
        for (std::size_t l = k + 1; l < users.size(); ++l)
            pairs.emplace_back(k, l);

    std::vector<std::vector<double>> samples(pairs.size(), std::vector<double>(trials));
    const std::size_t blocks = (trials + kTermBlock - 1) / kTermBlock;
    parallel_for(blocks, threads, [&](std::size_t blk) {
        const std::size_t first = blk * kTermBlock;
        const std::size_t count = std::min(kTermBlock, trials - first);
        std::vector<RngStream> streams;
        streams.reserve(count);
        for (std::size_t t = 0; t < count; ++t)
            streams.emplace_back(seed, first + t);
        const std::vector<ComplexMatrix> g = sample_channel_block(users, streams);
        for (std::size_t p = 0; p < pairs.size(); ++p)
        {
            const auto inner = g[pairs[p].first].cwiseProduct(g[pairs[p].second].conjugate()).colwise().sum();
            for (std::size_t t = 0; t < count; ++t)
                samples[p][first + t] = std::norm(inner(static_cast<Eigen::Index>(t)));
        }
    });

    TermReport report;
    for (std::size_t p = 0; p < pairs.size(); ++p)
    {
        TermRow row;
        row.k = pairs[p].first;
        row.l = pairs[p].second;
        row.terms = mean_interference(users[row.k], users[row.l]);
        const MeanStd ms = mean_std(samples[p]);
        row.mc_mean = ms.mean;
        row.mc_se = ms.std_dev / std::sqrt(static_cast<double>(trials));
        if (!std::isfinite(row.mc_mean) || !std::isfinite(row.terms.total))
            throw NumericalError("validate_terms: non-finite result");
        if (row.mc_se > 0.0)
            row.z = (row.mc_mean - row.terms.total) / row.mc_se;
        else
            row.z = row.mc_mean == row.terms.total ? 0.0 : std::copysign(INFINITY, row.mc_mean - row.terms.total);
        report.pass = report.pass && std::abs(row.z) <= kTermZLimit;
        report.rows.push_back(row);
    }
    return report;
}

TermReport run_term_validation(const ExperimentConfig &config, unsigned threads)
{
    if (config.experiment != ExperimentKind::Terms)
        throw ConfigError("experiment", "expected terms");
    validate(config);
    const std::size_t m = config.m.front();
    RngStream geometry(config.seed, kGeometryStream);
    std::vector<UserProfile> users;
    if (config.scenario)
    {
        auto [a, b] = draw_scenario_pair(*config.scenario, config.geometry(m), geometry);
        users = {std::move(a), std::move(b)};
    }
    else
    {
        users = draw_users(config, m, geometry);
    }
    return validate_terms(users, config.trials, config.seed, threads);
}

ScalingReport run_scaling_experiment(const ExperimentConfig &config, unsigned threads)
{
    if (config.experiment != ExperimentKind::Scaling)
        throw ConfigError("experiment", "expected scaling");
    validate(config);
    const ScenarioSpec spec = config.scenario.value_or(ScenarioSpec{});
    const UserPairFactory factory = [&](std::size_t m) {
        RngStream rng(config.seed, kGeometryStream);
        return draw_scenario_pair(spec, config.geometry(m), rng);
    };
    return scaling_report(factory, config.m, threads);
}

std::vector<GramDeviation> run_gram_experiment(const ExperimentConfig &config, unsigned threads)
{
    if (config.experiment != ExperimentKind::Gram)
        throw ConfigError("experiment", "expected gram");
    validate(config);
    std::vector<GramDeviation> rows;
    for (std::size_t i = 0; i < config.m.size(); ++i)
    {
        const std::size_t m = config.m[i];
        RngStream geometry(config.seed, kGeometryStream + i);
        std::vector<UserProfile> users;
        if (config.scenario)
        {
            auto [a, b] = draw_scenario_pair(*config.scenario, config.geometry(m), geometry);
            users = {std::move(a), std::move(b)};
        }
        else
        {
            users = draw_users(config, m, geometry);
        }
        GramDeviation dev = gram_deviation(users, config.trials, config.seed, grid_stream(i, 0), threads);
        if (!std::isfinite(dev.max_entry_msd))
            throw NumericalError("run_gram_experiment: non-finite deviation");
        rows.push_back(dev);
    }
    return rows;
}

} // namespace favprop
