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

#include "favprop/channel.hpp"
#include "favprop/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <mutex>
#include <string>

namespace favprop
{

namespace
{

struct QuadratureRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Boost stores the non-negative half of the symmetric rule.
template <unsigned Order>
QuadratureRule expand_rule()
{
    using Rule = boost::math::quadrature::gauss<double, Order>;
    QuadratureRule rule;
    const auto &x = Rule::abscissa();
    const auto &w = Rule::weights();
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        rule.nodes.push_back(x[i]);
        rule.weights.push_back(w[i]);
        if (x[i] != 0.0)
        {
            rule.nodes.push_back(-x[i]);
            rule.weights.push_back(w[i]);
        }
    }
    return rule;
}

const QuadratureRule &gauss_legendre(int order)
{
    static const QuadratureRule r65 = expand_rule<65>();
    static const QuadratureRule r129 = expand_rule<129>();
    static const QuadratureRule r257 = expand_rule<257>();
    switch (order)
    {
    case 65:
        return r65;
    case 129:
        return r129;
    case 257:
        return r257;
    default:
        throw ParameterError("one_ring_covariance: unsupported quadrature order " + std::to_string(order) +
                             " (supported: 65, 129, 257)");
    }
}

void require_geometry(const ArrayGeometry &geom)
{
    if (geom.antennas == 0)
        throw ParameterError("array geometry: antenna count must be positive");
    if (!(geom.spacing_wavelengths > 0.0) || !std::isfinite(geom.spacing_wavelengths))
        throw ParameterError("array geometry: spacing must be positive and finite");
}

// Unprojected Hermitian Toeplitz matrix from the quadrature.
ComplexMatrix one_ring_raw(const ArrayGeometry &geom, double delta, double phi0, int order)
{
    require_geometry(geom);
    if (!(delta > 0.0) || delta > kPi)
        throw ParameterError("one_ring_covariance: angular spread must lie in (0, pi]");
    if (!std::isfinite(phi0))
        throw ParameterError("one_ring_covariance: nominal angle must be finite");

    const QuadratureRule &rule = gauss_legendre(order);
    const auto m = static_cast<Eigen::Index>(geom.antennas);

    std::vector<double> sin_phi(rule.nodes.size());
    for (std::size_t n = 0; n < rule.nodes.size(); ++n)
        sin_phi[n] = std::sin(phi0 + delta * rule.nodes[n]);

    // (1/(2 delta)) * delta * sum w f = 0.5 * sum w f
    ComplexVector lag(m);
    lag(0) = 1.0;
    const double k = 2.0 * kPi * geom.spacing_wavelengths;
    for (Eigen::Index d = 1; d < m; ++d)
    {
        Complex acc = 0.0;
        for (std::size_t n = 0; n < rule.nodes.size(); ++n)
            acc += rule.weights[n] * std::polar(1.0, k * static_cast<double>(d) * sin_phi[n]);
        lag(d) = 0.5 * acc;
    }

    ComplexMatrix r(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
    {
        r(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < m; ++j)
        {
            r(i, j) = lag(j - i);
            r(j, i) = std::conj(lag(j - i));
        }
    }
    return r;
}

// Clips negative eigenvalues in place and reassembles. The clipped spectrum keeps the same
// eigenvectors, so `eig` stays an exact decomposition of the result.
ComplexMatrix clip_negative(EigenSystem &eig)
{
    eig.values = eig.values.cwiseMax(0.0);
    return hermitian_part(eig.reconstruct());
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), normal_(0.0, std::sqrt(0.5)), unit_(0.0, 1.0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform(double lo, double hi)
{
    return lo + (hi - lo) * unit_(engine_);
}

Complex RngStream::complex_normal()
{
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {re, im};
}

void RngStream::fill_complex_normal(Eigen::Ref<ComplexVector> out)
{
    for (Eigen::Index i = 0; i < out.size(); ++i)
        out(i) = complex_normal();
}

double los_fraction(double k_factor)
{
    if (std::isinf(k_factor))
        return 1.0;
    return k_factor / (k_factor + 1.0);
}

double diffuse_fraction(double k_factor)
{
    if (std::isinf(k_factor))
        return 0.0;
    return 1.0 / (k_factor + 1.0);
}

struct UserProfile::SqrtCache
{
    std::once_flag once;
    ComplexMatrix value;
    std::exception_ptr error;
};

UserProfile::UserProfile(double k_factor, ComplexVector los, ComplexMatrix covariance, double large_scale)
    : k_factor_(k_factor), los_(std::move(los)), covariance_(std::move(covariance)), large_scale_(large_scale),
      sqrt_(std::make_shared<SqrtCache>())
{
    if (!(k_factor >= 0.0))
        throw ParameterError("UserProfile: K-factor must be >= 0");
    if (!(large_scale > 0.0) || !std::isfinite(large_scale))
        throw ParameterError("UserProfile: large-scale coefficient must be positive and finite");

    const auto m = los_.size();
    if (m == 0)
        throw DimensionError("UserProfile: empty LoS vector");
    if (covariance_.rows() != m || covariance_.cols() != m)
        throw DimensionError("UserProfile: covariance must be " + std::to_string(m) + "x" + std::to_string(m));
    if (!los_.allFinite())
        throw DomainError("UserProfile: LoS vector contains non-finite entries");
    require_finite(covariance_, "UserProfile");

    const double md = static_cast<double>(m);
    if (std::abs(los_.squaredNorm() - md) > 1e-9 * md)
        throw DomainError("UserProfile: ||los||^2 must equal M");
    const Complex tr = covariance_.trace();
    if (std::abs(tr.real() - md) > 1e-6 * md || std::abs(tr.imag()) > 1e-6 * md)
        throw DomainError("UserProfile: tr(R) must equal M");
    if ((covariance_ - covariance_.adjoint()).norm() > 1e-10 * std::max(covariance_.norm(), 1.0))
        throw DomainError("UserProfile: covariance is not Hermitian");
}

UserProfile::UserProfile(double k_factor, ComplexVector los, ComplexMatrix covariance,
                         ComplexMatrix covariance_sqrt, double large_scale)
    : UserProfile(k_factor, std::move(los), std::move(covariance), large_scale)
{
    if (covariance_sqrt.rows() != covariance_.rows() || covariance_sqrt.cols() != covariance_.cols())
        throw DimensionError("UserProfile: covariance square root has the wrong shape");
    std::call_once(sqrt_->once, [&] { sqrt_->value = std::move(covariance_sqrt); });
}

const ComplexMatrix &UserProfile::covariance_sqrt() const
{
    std::call_once(sqrt_->once, [this] {
        try
        {
            sqrt_->value = psd_sqrt(covariance_);
        }
        catch (...)
        {
            sqrt_->error = std::current_exception();
        }
    });
    if (sqrt_->error)
        std::rethrow_exception(sqrt_->error);
    return sqrt_->value;
}

UserProfile UserProfile::with_large_scale(double large_scale) const
{
    UserProfile copy = *this;
    if (!(large_scale > 0.0) || !std::isfinite(large_scale))
        throw ParameterError("UserProfile: large-scale coefficient must be positive and finite");
    copy.large_scale_ = large_scale;
    return copy;
}

ComplexVector ula_los(const ArrayGeometry &geom, double theta)
{
    require_geometry(geom);
    const auto m = static_cast<Eigen::Index>(geom.antennas);
    const double phase = -2.0 * kPi * geom.spacing_wavelengths * std::sin(theta);
    ComplexVector h(m);
    for (Eigen::Index i = 0; i < m; ++i)
        h(i) = std::polar(1.0, phase * static_cast<double>(i));
    return h;
}

ComplexMatrix one_ring_covariance(const ArrayGeometry &geom, double delta, double phi0, int order)
{
    ComplexMatrix raw = one_ring_raw(geom, delta, phi0, order);
    EigenSystem eig = hermitian_eig(raw);
    if (eig.values.minCoeff() >= 0.0)
        return raw;
    return clip_negative(eig);
}

OneRingDecomposition one_ring_decomposition(const ArrayGeometry &geom, double delta, double phi0)
{
    OneRingDecomposition out;
    out.covariance = one_ring_raw(geom, delta, phi0, kOneRingQuadratureOrder);
    out.eig = hermitian_eig(out.covariance);
    if (out.eig.values.minCoeff() < 0.0)
    {
        out.covariance = clip_negative(out.eig);
    }
    return out;
}

UserProfile one_ring_user(const ArrayGeometry &geom, double delta, double phi0, double k_factor,
                          const ComplexVector &los, double large_scale)
{
    OneRingDecomposition ring = one_ring_decomposition(geom, delta, phi0);
    ComplexMatrix s = psd_sqrt(ring.eig);
    return UserProfile(k_factor, los, std::move(ring.covariance), std::move(s), large_scale);
}

UserProfile identity_user(double k_factor, const ComplexVector &los, double large_scale)
{
    const auto m = los.size();
    return UserProfile(k_factor, los, ComplexMatrix::Identity(m, m), ComplexMatrix::Identity(m, m), large_scale);
}

ComplexVector sample_channel(const UserProfile &user, RngStream &rng)
{
    ComplexVector noise(user.los().size());
    rng.fill_complex_normal(noise);
    const double a = std::sqrt(los_fraction(user.k_factor()));
    const double b = std::sqrt(diffuse_fraction(user.k_factor()));
    ComplexVector g = a * user.los();
    if (b > 0.0)
        g.noalias() += b * (user.covariance_sqrt() * noise);
    return g;
}

std::size_t common_antennas(std::span<const UserProfile> users)
{
    if (users.empty())
        throw DimensionError("expected at least one user");
    const std::size_t m = users.front().antennas();
    for (const auto &u : users)
        if (u.antennas() != m)
            throw DimensionError("users have mismatched antenna counts");
    return m;
}

ComplexMatrix build_channel_matrix(std::span<const UserProfile> users, RngStream &rng)
{
    const auto m = static_cast<Eigen::Index>(common_antennas(users));
    ComplexMatrix g(m, static_cast<Eigen::Index>(users.size()));
    for (std::size_t k = 0; k < users.size(); ++k)
        g.col(static_cast<Eigen::Index>(k)) = sample_channel(users[k], rng);
    return g;
}

std::vector<ComplexMatrix> sample_channel_block(std::span<const UserProfile> users, std::span<RngStream> streams)
{
    const auto m = static_cast<Eigen::Index>(common_antennas(users));
    const auto t = static_cast<Eigen::Index>(streams.size());

    std::vector<ComplexMatrix> noise(users.size(), ComplexMatrix(m, t));
    for (Eigen::Index col = 0; col < t; ++col)
        for (std::size_t k = 0; k < users.size(); ++k)
            streams[static_cast<std::size_t>(col)].fill_complex_normal(noise[k].col(col));

    std::vector<ComplexMatrix> out;
    out.reserve(users.size());
    for (std::size_t k = 0; k < users.size(); ++k)
    {
        const double a = std::sqrt(los_fraction(users[k].k_factor()));
        const double b = std::sqrt(diffuse_fraction(users[k].k_factor()));
        ComplexMatrix block = (a * users[k].los()).replicate(1, t);
        if (b > 0.0)
            block.noalias() += b * (users[k].covariance_sqrt() * noise[k]);
        out.push_back(std::move(block));
    }
    return out;
}

} // namespace favprop
