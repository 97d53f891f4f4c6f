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

#ifndef FAVPROP_PERFORMANCE_HPP
#define FAVPROP_PERFORMANCE_HPP

#include "favprop/channel.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace favprop
{

/// Sum capacity normalized per user, (1/L) log2 det(I_L + p_u B^H B) with B = G D^{1/2}.
/// The log-determinant comes from a Cholesky factorization of the L x L matrix.
double capacity_per_user(const ComplexMatrix &g, std::span<const double> large_scale, double p_u);

/// Per-user MRC spectral efficiency log2(1 + SINR_k),
///   SINR_k = p_u ||b_k||^4 / (p_u sum_{l != k} |b_k^H b_l|^2 + ||b_k||^2)
/// with unit noise power. A zero column yields SE 0.
std::vector<double> mrc_se_per_user(const ComplexMatrix &g, std::span<const double> large_scale, double p_u);

/// (1/M) E[G^H G] in closed form.
ComplexMatrix expected_gram(std::span<const UserProfile> users);

struct GramDeviation
{
    std::size_t m = 0;
    // max over (k, l) of E|[(1/M) G^H G]_{kl} - [(1/M) E G^H G]_{kl}|^2, Monte-Carlo estimate
    double max_entry_msd = 0.0;
    double max_entry_stderr = 0.0;
    // the same estimate for the (0, 1) entry alone
    double pair_msd = 0.0;
    double pair_msd_stderr = 0.0;
    // closed-form E|S_1|^2, E|S_2|^2, E|S_3|^2 for the pair (0, 1); their sum is the exact
    // mean-square deviation of the (0, 1) entry
    double s1_var = 0.0;
    double s2_var = 0.0;
    double s3_var = 0.0;
};

/// Mean-square convergence check of the normalized Gram matrix. Trial t draws from
/// RngStream(seed, stream_base + t); results do not depend on `threads`.
GramDeviation gram_deviation(std::span<const UserProfile> users, std::size_t trials, std::uint64_t seed,
                             std::uint64_t stream_base = 0, unsigned threads = 1);

} // namespace favprop

#endif
