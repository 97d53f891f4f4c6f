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

#include "favprop/performance.hpp"
#include "favprop/errors.hpp"
#include "favprop/parallel.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace favprop
{

namespace
{

constexpr std::size_t kTrialBlock = 64;

ComplexMatrix scaled_columns(const ComplexMatrix &g, std::span<const double> large_scale, double p_u,
                             const char *what)
{
    if (static_cast<Eigen::Index>(large_scale.size()) != g.cols())
        throw DimensionError(std::string(what) + ": need one large-scale coefficient per column");
    if (!(p_u >= 0.0) || !std::isfinite(p_u))
        throw ParameterError(std::string(what) + ": transmit power must be >= 0 and finite");
    ComplexMatrix b = g;
    for (std::size_t k = 0; k < large_scale.size(); ++k)
    {
        if (!(large_scale[k] > 0.0) || !std::isfinite(large_scale[k]))
            throw ParameterError(std::string(what) + ": large-scale coefficients must be positive");
        b.col(static_cast<Eigen::Index>(k)) *= std::sqrt(large_scale[k]);
    }
    return b;
}

} // namespace

double capacity_per_user(const ComplexMatrix &g, std::span<const double> large_scale, double p_u)
{
    const ComplexMatrix b = scaled_columns(g, large_scale, p_u, "capacity_per_user");
    const Eigen::Index l = b.cols();
    ComplexMatrix a = ComplexMatrix::Identity(l, l);
    a.noalias() += p_u * (b.adjoint() * b);

    Eigen::LLT<ComplexMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw NumericalError("capacity_per_user: Cholesky factorization failed");
    const ComplexMatrix &factor = llt.matrixLLT();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < l; ++i)
        logdet += 2.0 * std::log2(factor(i, i).real());
    if (!std::isfinite(logdet))
        throw NumericalError("capacity_per_user: log-determinant is not finite");
    return std::max(0.0, logdet / static_cast<double>(l));
}

std::vector<double> mrc_se_per_user(const ComplexMatrix &g, std::span<const double> large_scale, double p_u)
{
    const ComplexMatrix b = scaled_columns(g, large_scale, p_u, "mrc_se_per_user");
    const ComplexMatrix gram = b.adjoint() * b;
    const Eigen::Index l = b.cols();
    std::vector<double> se(static_cast<std::size_t>(l), 0.0);
    for (Eigen::Index k = 0; k < l; ++k)
    {
        const double power = gram(k, k).real();
        if (power <= 0.0)
            continue;
        double interference = 0.0;
        for (Eigen::Index j = 0; j < l; ++j)
            if (j != k)
                interference += std::norm(gram(k, j));
        const double sinr = p_u * power * power / (p_u * interference + power);
        se[static_cast<std::size_t>(k)] = std::log2(1.0 + sinr);
    }
    return se;
}

ComplexMatrix expected_gram(std::span<const UserProfile> users)
{
    const double m = static_cast<double>(common_antennas(users));
    const auto l = static_cast<Eigen::Index>(users.size());
    ComplexMatrix e(l, l);
    for (Eigen::Index k = 0; k < l; ++k)
    {
        const auto &uk = users[static_cast<std::size_t>(k)];
        const double trace = uk.covariance().trace().real();
        e(k, k) = (los_fraction(uk.k_factor()) * m + diffuse_fraction(uk.k_factor()) * trace) / m;
        for (Eigen::Index j = k + 1; j < l; ++j)
        {
            const auto &uj = users[static_cast<std::size_t>(j)];
            const double w = std::sqrt(los_fraction(uk.k_factor()) * los_fraction(uj.k_factor()));
            e(k, j) = w * uk.los().dot(uj.los()) / m;
            e(j, k) = std::conj(e(k, j));
        }
    }
    return e;
}

GramDeviation gram_deviation(std::span<const UserProfile> users, std::size_t trials, std::uint64_t seed,
                             std::uint64_t stream_base, unsigned threads)
{
    if (trials < 100)
        throw ParameterError("gram_deviation: need at least 100 trials");
    const std::size_t m = common_antennas(users);
    const double md = static_cast<double>(m);
    const auto l = static_cast<Eigen::Index>(users.size());
    const ComplexMatrix mean = expected_gram(users);

    // squared deviations, one L x L matrix per trial
    std::vector<Eigen::MatrixXd> sq(trials);
    const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    parallel_for(blocks, threads, [&](std::size_t blk) {
        const std::size_t first = blk * kTrialBlock;
        const std::size_t count = std::min(kTrialBlock, trials - first);
        std::vector<RngStream> streams;
        streams.reserve(count);
        for (std::size_t t = 0; t < count; ++t)
            streams.emplace_back(seed, stream_base + first + t);
        const std::vector<ComplexMatrix> g = sample_channel_block(users, streams);
        for (std::size_t t = 0; t < count; ++t)
        {
            Eigen::MatrixXd dev(l, l);
            const auto ti = static_cast<Eigen::Index>(t);
            for (Eigen::Index k = 0; k < l; ++k)
                for (Eigen::Index j = 0; j < l; ++j)
                {
                    const Complex entry = g[static_cast<std::size_t>(k)].col(ti).dot(
                                              g[static_cast<std::size_t>(j)].col(ti)) /
                                          md;
                    dev(k, j) = std::norm(entry - mean(k, j));
                }
            sq[first + t] = std::move(dev);
        }
    });

    const double n = static_cast<double>(trials);
    Eigen::MatrixXd msd = Eigen::MatrixXd::Zero(l, l);
    for (const auto &d : sq)
        msd += d;
    msd /= n;
    Eigen::MatrixXd var = Eigen::MatrixXd::Zero(l, l);
    for (const auto &d : sq)
        var += (d - msd).cwiseAbs2();
    var /= (n - 1.0);

    GramDeviation out;
    out.m = m;
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    out.max_entry_msd = msd.maxCoeff(&row, &col);
    out.max_entry_stderr = std::sqrt(var(row, col) / n);
    if (l >= 2)
    {
        out.pair_msd = msd(0, 1);
        out.pair_msd_stderr = std::sqrt(var(0, 1) / n);

        const auto &uk = users[0];
        const auto &ul = users[1];
        const double m2 = md * md;
        out.s1_var = los_fraction(uk.k_factor()) * diffuse_fraction(ul.k_factor()) *
                     std::max(0.0, uk.los().dot(ul.covariance() * uk.los()).real()) / m2;
        out.s2_var = diffuse_fraction(uk.k_factor()) * los_fraction(ul.k_factor()) *
                     std::max(0.0, ul.los().dot(uk.covariance() * ul.los()).real()) / m2;
        out.s3_var = diffuse_fraction(uk.k_factor()) * diffuse_fraction(ul.k_factor()) *
                     std::max(0.0, trace_of_product(ul.covariance(), uk.covariance()).real()) / m2;
    }
    return out;
}

} // namespace favprop
