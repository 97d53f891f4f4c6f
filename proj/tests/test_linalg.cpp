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

#include "catch_amalgamated.hpp"

#include "favprop/channel.hpp"
#include "favprop/errors.hpp"
#include "favprop/linalg.hpp"

#include <cmath>
#include <limits>

using namespace favprop;
using Catch::Matchers::WithinAbs;

namespace
{

ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t stream)
{
    RngStream rng(11, stream);
    ComplexMatrix a(n, n);
    for (Eigen::Index c = 0; c < n; ++c)
        rng.fill_complex_normal(a.col(c));
    return hermitian_part(a);
}

double unitarity_error(const ComplexMatrix &u)
{
    return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

} // namespace

TEST_CASE("Linalg - hermitian_eig identity and diagonal", "[linalg]")
{
    const EigenSystem id = hermitian_eig(ComplexMatrix::Identity(4, 4));
    for (int i = 0; i < 4; ++i)
        CHECK_THAT(id.values(i), WithinAbs(1.0, 1e-14));
    CHECK(unitarity_error(id.vectors) < 1e-12);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = 2.0;
    const EigenSystem e = hermitian_eig(d);
    CHECK_THAT(e.values(0), WithinAbs(2.0, 1e-14));
    CHECK_THAT(e.values(1), WithinAbs(1.0, 1e-14));
    // phase convention makes the eigenvectors exactly e2, e1
    CHECK(std::abs(e.vectors(1, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(e.vectors(0, 1) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(e.vectors(0, 0)) < 1e-14);
}

TEST_CASE("Linalg - hermitian_eig reconstruction oracle", "[linalg]")
{
    for (std::uint64_t s = 0; s < 5; ++s)
    {
        const ComplexMatrix h = random_hermitian(8, s);
        const EigenSystem e = hermitian_eig(h);
        CHECK(relative_frobenius_error(e.reconstruct(), h) <= 1e-10);
        CHECK(unitarity_error(e.vectors) <= 1e-10);
        for (Eigen::Index i = 0; i + 1 < e.values.size(); ++i)
            CHECK(e.values(i) >= e.values(i + 1));
        // eigenvalue sum equals the trace
        CHECK_THAT(e.values.sum(), WithinAbs(h.trace().real(), 1e-10 * std::max(1.0, h.norm())));
    }
}

TEST_CASE("Linalg - hermitian_eig phase convention is deterministic", "[linalg]")
{
    const ComplexMatrix h = random_hermitian(6, 42);
    const EigenSystem a = hermitian_eig(h);
    const EigenSystem b = hermitian_eig(h);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
    for (Eigen::Index c = 0; c < a.vectors.cols(); ++c)
    {
        Eigen::Index pivot = 0;
        a.vectors.col(c).cwiseAbs().maxCoeff(&pivot);
        CHECK(a.vectors(pivot, c).imag() == 0.0);
        CHECK(a.vectors(pivot, c).real() > 0.0);
    }
}

TEST_CASE("Linalg - hermitian_eig errors", "[linalg]")
{
    CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(hermitian_eig(bad), DomainError);
}

TEST_CASE("Linalg - psd_sqrt", "[linalg]")
{
    CHECK(relative_frobenius_error(psd_sqrt(ComplexMatrix::Identity(5, 5)), ComplexMatrix::Identity(5, 5)) < 1e-14);

    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    const ComplexMatrix s = psd_sqrt(d);
    CHECK_THAT(s(0, 0).real(), WithinAbs(2.0, 1e-14));
    CHECK_THAT(s(1, 1).real(), WithinAbs(1.0, 1e-14));
    CHECK(std::abs(s(0, 1)) < 1e-14);

    // multiply-back on a one-ring covariance
    const ComplexMatrix r = one_ring_covariance({16, 0.5}, deg_to_rad(10.0), 0.4);
    const ComplexMatrix sr = psd_sqrt(r);
    CHECK(relative_frobenius_error(sr * sr, r) <= 1e-9);
    CHECK(relative_frobenius_error(sr, sr.adjoint()) <= 1e-14);
    CHECK((sr * r - r * sr).norm() <= 1e-9 * r.norm());
}

TEST_CASE("Linalg - psd_sqrt rejects indefinite input", "[linalg]")
{
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = -3.0;
    CHECK_THROWS_AS(psd_sqrt(d), NotPsdError);

    // round-off sized negatives are clipped
    d(1, 1) = -1e-14;
    CHECK_NOTHROW(psd_sqrt(d));
}

TEST_CASE("Linalg - psd_project", "[linalg]")
{
    ComplexMatrix d = ComplexMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    d(1, 1) = -1e-14;
    ComplexMatrix p = psd_project(d);
    CHECK_THAT(p(0, 0).real(), WithinAbs(1.0, 1e-15));
    CHECK_THAT(p(1, 1).real(), WithinAbs(0.0, 1e-15));

    d(1, 1) = -3.0;
    d(0, 0) = 2.0;
    p = psd_project(d);
    CHECK_THAT(p(0, 0).real(), WithinAbs(2.0, 1e-14));
    CHECK_THAT(p(1, 1).real(), WithinAbs(0.0, 1e-14));

    // idempotent on PSD input
    const ComplexMatrix h = random_hermitian(6, 3);
    const ComplexMatrix psd = h * h;
    CHECK(relative_frobenius_error(psd_project(psd), psd) <= 1e-12);
    const ComplexMatrix once = psd_project(h);
    CHECK(relative_frobenius_error(psd_project(once), once) <= 1e-12);
}

TEST_CASE("Linalg - trace_of_product", "[linalg]")
{
    const ComplexMatrix a = random_hermitian(5, 7);
    const ComplexMatrix b = random_hermitian(5, 8);
    CHECK(std::abs(trace_of_product(a, b) - (a * b).trace()) < 1e-12);
    CHECK_THROWS_AS(trace_of_product(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), DimensionError);
}
