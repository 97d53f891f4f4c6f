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

#ifndef FAVPROP_SCHEDULER_HPP
#define FAVPROP_SCHEDULER_HPP

#include "favprop/channel.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace favprop
{

// Pairwise quantity the scheduler ranks users by.
enum class DropMetric
{
    Term2, // tr(R_k R_l) / ((K_k+1)(K_l+1))
    Total, // full mean interference E|g_k^H g_l|^2
};

// How a user's score is formed from its pairwise row.
enum class DropRule
{
    RowSum,      // sum over the other retained users
    PairwiseMax, // largest single pair
};

std::string_view to_string(DropMetric metric);
std::string_view to_string(DropRule rule);
std::optional<DropMetric> drop_metric_from_string(std::string_view name);
std::optional<DropRule> drop_rule_from_string(std::string_view name);

struct DropOptions
{
    DropMetric metric = DropMetric::Term2;
    DropRule rule = DropRule::RowSum;
};

struct DropDecision
{
    std::vector<std::size_t> dropped;  // in removal order
    std::vector<std::size_t> retained; // ascending
    std::vector<double> scores;        // initial per-user scores over the full set
};

// Symmetric L x L matrix of pairwise interference (zero diagonal).
Eigen::MatrixXd pairwise_interference(std::span<const UserProfile> users, DropMetric metric);

/// score_k = sum_{l != k} term2(k, l). Throws ParameterError when fewer than two users.
std::vector<double> rank_users_by_term2(std::span<const UserProfile> users);

/// Greedy removal: n_drop times, rescore the retained set and drop the highest-scoring user
/// (lowest index on ties). Deterministic.
DropDecision drop_users(std::span<const UserProfile> users, std::size_t n_drop, const DropOptions &options = {});

} // namespace favprop

#endif
