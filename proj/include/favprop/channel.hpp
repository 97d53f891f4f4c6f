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

#ifndef FAVPROP_CHANNEL_HPP
#define FAVPROP_CHANNEL_HPP

#include "favprop/linalg.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace favprop
{

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

// Uniform linear array: `antennas` elements spaced `spacing_wavelengths` (d / lambda) apart.
struct ArrayGeometry
{
    std::size_t antennas = 0;
    double spacing_wavelengths = 0.5;
};

// Seeded random stream. A stream is identified by (seed, stream_id); the harness gives every
// trial its own id so trials can run in any order or thread and still draw identical samples.
class RngStream
{
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    // Uniform on [lo, hi).
    double uniform(double lo = 0.0, double hi = 1.0);

    // Circularly-symmetric CN(0, 1): real and imaginary parts N(0, 1/2) each.
    Complex complex_normal();

    // Fills `out` with i.i.d. CN(0, 1) samples, in index order.
    void fill_complex_normal(Eigen::Ref<ComplexVector> out);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
    std::uniform_real_distribution<double> unit_;
};

// Fraction of average power carried by the line-of-sight path, K / (K + 1). K = +inf gives 1.
double los_fraction(double k_factor);

// 1 / (K + 1). K = +inf gives 0.
double diffuse_fraction(double k_factor);

// One user's propagation state: Ricean K-factor, LoS response (||los||^2 = M), spatial
// covariance (Hermitian PSD, trace M) and its large-scale gain. Immutable; copies share the
// lazily computed covariance square root, which is safe to request from several threads.
class UserProfile
{
public:
    UserProfile(double k_factor, ComplexVector los, ComplexMatrix covariance, double large_scale = 1.0);

    // As above with a precomputed square root of the covariance (e.g. diagonal covariances).
    UserProfile(double k_factor, ComplexVector los, ComplexMatrix covariance,
                ComplexMatrix covariance_sqrt, double large_scale);

    double k_factor() const noexcept { return k_factor_; }
    const ComplexVector &los() const noexcept { return los_; }
    const ComplexMatrix &covariance() const noexcept { return covariance_; }
    double large_scale() const noexcept { return large_scale_; }
    std::size_t antennas() const noexcept { return static_cast<std::size_t>(los_.size()); }

    // R^{1/2}. Throws NotPsdError the first time if the covariance is not PSD.
    const ComplexMatrix &covariance_sqrt() const;

    UserProfile with_large_scale(double large_scale) const;

private:
    struct SqrtCache;

    double k_factor_;
    ComplexVector los_;
    ComplexMatrix covariance_;
    double large_scale_;
    std::shared_ptr<SqrtCache> sqrt_;
};

/// ULA steering vector: entry m is exp(-j 2 pi (d/lambda) m sin(theta)).
ComplexVector ula_los(const ArrayGeometry &geom, double theta);

// Gauss-Legendre order used for the one-ring integral.
inline constexpr int kOneRingQuadratureOrder = 129;

/// One-ring spatial covariance for scatterers spread uniformly over
/// [phi0 - delta, phi0 + delta]. Entry (i, j) is
///   1/(2 delta) * integral exp(+j 2 pi (d/lambda) (j - i) sin(phi)) dphi
/// i.e. E[g_i conj(g_j)] for the steering vector above, so a vanishing spread gives ula_los * ula_los^H.
/// Evaluated with `order`-point Gauss-Legendre quadrature. Unit diagonal (trace M); when round-off
/// produces negative eigenvalues they are clipped to 0, which moves the diagonal by ~1e-13.
ComplexMatrix one_ring_covariance(const ArrayGeometry &geom, double delta, double phi0,
                                  int order = kOneRingQuadratureOrder);

// One-ring covariance together with its eigen-decomposition (post projection).
struct OneRingDecomposition
{
    ComplexMatrix covariance;
    EigenSystem eig;
};

OneRingDecomposition one_ring_decomposition(const ArrayGeometry &geom, double delta, double phi0);

/// Same as one_ring_covariance, returned as a UserProfile with the square root computed from
/// one shared eigen-decomposition.
UserProfile one_ring_user(const ArrayGeometry &geom, double delta, double phi0, double k_factor,
                          const ComplexVector &los, double large_scale = 1.0);

// User with R = I (uncorrelated diffuse part).
UserProfile identity_user(double k_factor, const ComplexVector &los, double large_scale = 1.0);

/// One draw of g = sqrt(K/(K+1)) h_bar + sqrt(1/(K+1)) R^{1/2} h_tilde.
ComplexVector sample_channel(const UserProfile &user, RngStream &rng);

/// M x L channel matrix; column k is sample_channel(users[k], rng), drawn in user order.
ComplexMatrix build_channel_matrix(std::span<const UserProfile> users, RngStream &rng);

/// Batched draw for Monte-Carlo loops. Returns one M x T matrix per user; column t equals
/// column k of build_channel_matrix(users, streams[t]) up to floating-point summation order.
std::vector<ComplexMatrix> sample_channel_block(std::span<const UserProfile> users,
                                                std::span<RngStream> streams);

// Throws DimensionError unless all users have the same antenna count. Returns that count.
std::size_t common_antennas(std::span<const UserProfile> users);

} // namespace favprop

#endif
