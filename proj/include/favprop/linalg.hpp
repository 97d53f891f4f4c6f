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

#ifndef FAVPROP_LINALG_HPP
#define FAVPROP_LINALG_HPP

#include <Eigen/Dense>

#include <complex>

namespace favprop
{

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigen-decomposition of a Hermitian matrix.
// `values` are sorted descending; column i of `vectors` is the unit-norm eigenvector for values(i),
// rotated so that its largest-magnitude entry is real and positive (lowest index wins ties).
struct EigenSystem
{
    RealVector values;
    ComplexMatrix vectors;

    ComplexMatrix reconstruct() const;
};

// Throws DomainError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix &m, const char *what);

// Throws DimensionError if `m` is not square (or empty).
void require_square(const ComplexMatrix &m, const char *what);

// (H + H^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix &h);

// Relative Frobenius distance ||a - b|| / max(||b||, 1).
double relative_frobenius_error(const ComplexMatrix &a, const ComplexMatrix &b);

// tr(A B) without forming the product.
Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b);

/// Eigen-decomposition of a Hermitian matrix. The input is symmetrized first, so
/// round-off asymmetry is tolerated. Output is deterministic for a fixed input.
EigenSystem hermitian_eig(const ComplexMatrix &h);

/// Hermitian PSD square root S with S*S = R. Eigenvalues in [-1e-10*lambda_1, 0) are
/// treated as round-off and clipped; anything more negative raises NotPsdError.
ComplexMatrix psd_sqrt(const ComplexMatrix &r);

/// Same as psd_sqrt but reuses an existing decomposition of R.
ComplexMatrix psd_sqrt(const EigenSystem &eig);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues clipped to zero.
ComplexMatrix psd_project(const ComplexMatrix &h);

// Relative tolerance used to accept tiny negative eigenvalues as round-off.
inline constexpr double kPsdTolerance = 1e-10;

} // namespace favprop

#endif
