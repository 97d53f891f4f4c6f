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

#include "favprop/scheduler.hpp"
#include "favprop/errors.hpp"
#include "favprop/interference.hpp"

#include <algorithm>
#include <cmath>

namespace favprop
{

namespace
{

// Relative slack under which two scores count as tied.
constexpr double kTieTolerance = 1e-12;

std::vector<double> scores_over(const Eigen::MatrixXd &pairs, const std::vector<std::size_t> &active, DropRule rule)
{
    std::vector<double> scores(active.size(), 0.0);
    for (std::size_t a = 0; a < active.size(); ++a)
    {
        for (std::size_t b = 0; b < active.size(); ++b)
        {
            if (a == b)
                continue;
            const double v = pairs(static_cast<Eigen::Index>(active[a]), static_cast<Eigen::Index>(active[b]));
            scores[a] = rule == DropRule::RowSum ? scores[a] + v : std::max(scores[a], v);
        }
    }
    return scores;
}

} // namespace

std::string_view to_string(DropMetric metric)
{
    return metric == DropMetric::Term2 ? "term2" : "total";
}

std::string_view to_string(DropRule rule)
{
    return rule == DropRule::RowSum ? "row_sum" : "pairwise_max";
}

std::optional<DropMetric> drop_metric_from_string(std::string_view name)
{
    if (name == "term2")
        return DropMetric::Term2;
    if (name == "total")
        return DropMetric::Total;
    return std::nullopt;
}

std::optional<DropRule> drop_rule_from_string(std::string_view name)
{
    if (name == "row_sum")
        return DropRule::RowSum;
    if (name == "pairwise_max")
        return DropRule::PairwiseMax;
    return std::nullopt;
}

Eigen::MatrixXd pairwise_interference(std::span<const UserProfile> users, DropMetric metric)
{
    common_antennas(users);
    const auto l = static_cast<Eigen::Index>(users.size());
    Eigen::MatrixXd pairs = Eigen::MatrixXd::Zero(l, l);
    for (Eigen::Index k = 0; k < l; ++k)
    {
        for (Eigen::Index j = k + 1; j < l; ++j)
        {
            const InterferenceBreakdown b =
                mean_interference(users[static_cast<std::size_t>(k)], users[static_cast<std::size_t>(j)]);
            pairs(k, j) = pairs(j, k) = metric == DropMetric::Term2 ? b.term2 : b.total;
        }
    }
    return pairs;
}

std::vector<double> rank_users_by_term2(std::span<const UserProfile> users)
{
    if (users.size() < 2)
        throw ParameterError("rank_users_by_term2: need at least two users");
    std::vector<std::size_t> all(users.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    return scores_over(pairwise_interference(users, DropMetric::Term2), all, DropRule::RowSum);
}

DropDecision drop_users(std::span<const UserProfile> users, std::size_t n_drop, const DropOptions &options)
{
    if (n_drop >= users.size())
        throw ParameterError("drop_users: must retain at least one user");

    DropDecision out;
    out.retained.resize(users.size());
    for (std::size_t i = 0; i < users.size(); ++i)
        out.retained[i] = i;
    if (users.size() < 2)
    {
        out.scores.assign(users.size(), 0.0);
        return out;
    }

    const Eigen::MatrixXd pairs = pairwise_interference(users, options.metric);
    out.scores = scores_over(pairs, out.retained, options.rule);

    for (std::size_t round = 0; round < n_drop; ++round)
    {
        const std::vector<double> scores = scores_over(pairs, out.retained, options.rule);
        std::size_t pick = 0;
        for (std::size_t a = 1; a < scores.size(); ++a)
        {
            const double slack = kTieTolerance * std::max(std::abs(scores[pick]), std::abs(scores[a]));
            if (scores[a] > scores[pick] + slack)
                pick = a;
        }
        out.dropped.push_back(out.retained[pick]);
        out.retained.erase(out.retained.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

} // namespace favprop
