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

#include "favprop/linalg.hpp"
#include "favprop/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace favprop
{

void require_finite(const ComplexMatrix &m, const char *what)
{
    if (!m.allFinite())
        throw DomainError(std::string(what) + ": matrix contains non-finite entries");
}

void require_square(const ComplexMatrix &m, const char *what)
{
    if (m.rows() == 0 || m.rows() != m.cols())
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

ComplexMatrix hermitian_part(const ComplexMatrix &h)
{
    return (h + h.adjoint()) * 0.5;
}

double relative_frobenius_error(const ComplexMatrix &a, const ComplexMatrix &b)
{
    return (a - b).norm() / std::max(b.norm(), 1.0);
}

Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b)
{
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw DimensionError("trace_of_product: incompatible shapes");
    return a.cwiseProduct(b.transpose()).sum();
}

ComplexMatrix EigenSystem::reconstruct() const
{
    return vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint();
}

EigenSystem hermitian_eig(const ComplexMatrix &h)
{
    require_square(h, "hermitian_eig");
    require_finite(h, "hermitian_eig");

    // LAPACK divide and conquer; ascending on return.
    ComplexMatrix a = hermitian_part(h);
    const Eigen::Index n = h.rows();
    RealVector w(n);
    const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                                           reinterpret_cast<lapack_complex_double *>(a.data()),
                                           static_cast<lapack_int>(n), w.data());
    if (info != 0)
        throw NumericalError("hermitian_eig: zheevd failed, info = " + std::to_string(info));

    EigenSystem out;
    out.values = w.reverse();
    out.vectors = a.rowwise().reverse();

    for (Eigen::Index c = 0; c < n; ++c)
    {
        auto col = out.vectors.col(c);
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < n; ++r)
        {
            const double mag = std::abs(col(r));
            if (mag > best)
            {
                best = mag;
                pivot = r;
            }
        }
        const Complex phase = col(pivot) / best;
        col *= std::conj(phase);
        col(pivot) = Complex(col(pivot).real(), 0.0);
    }
    return out;
}

ComplexMatrix psd_sqrt(const EigenSystem &eig)
{
    const Eigen::Index n = eig.values.size();
    const double top = n > 0 ? eig.values(0) : 0.0;
    const double floor = -kPsdTolerance * std::max(top, 0.0);
    RealVector root(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double v = eig.values(i);
        if (v < floor || (top <= 0.0 && v < 0.0))
            throw NotPsdError("psd_sqrt: eigenvalue " + std::to_string(v) + " below tolerance");
        root(i) = std::sqrt(std::max(v, 0.0));
    }
    ComplexMatrix s = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    return hermitian_part(s);
}

ComplexMatrix psd_sqrt(const ComplexMatrix &r)
{
    return psd_sqrt(hermitian_eig(r));
}

ComplexMatrix psd_project(const ComplexMatrix &h)
{
    EigenSystem eig = hermitian_eig(h);
    if (eig.values.minCoeff() >= 0.0)
        return hermitian_part(h);
    eig.values = eig.values.cwiseMax(0.0);
    return hermitian_part(eig.reconstruct());
}

} // namespace favprop
