// Copyright 2026 The kicktop Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
///
/// Exact one-period propagator of the kicked top, quasienergy
/// extraction, and the one-period Heisenberg map for operators.

#include <algorithm>
#include <cmath>
#include <vector>

#include "kicktop/spin_algebra.hpp"

namespace kicktop {

/// Kicked-top parameters. The drive period is fixed at T = 1 and the
/// drive frequency at omega = 2*pi; alpha is the torsion strength and
/// beta the kick rotation angle about x.
struct TopParams {
    double alpha = 0.0;
    double beta = 0.0;
    double j = 0.0;

    static constexpr double period = 1.0;
    static constexpr double omega = 2.0 * kPi;

    void validate() const {
        if (!is_half_integer(j)) {
            throw std::invalid_argument("TopParams: j must be a positive half-integer");
        }
    }
};

enum class SpectrumSource {
    ExactFloquet,     ///< eigenphases of the one-period propagator
    EffectiveFolded,  ///< static effective eigenvalues folded to the zone
};

/// A sorted multiset of 2j+1 angles on (-pi, pi], radians per period.
struct QuasiSpectrum {
    std::vector<double> angles;
    SpectrumSource source = SpectrumSource::ExactFloquet;
};

/// Maps an angle to the branch (-pi, pi].
inline double wrap_angle(double x) {
    double y = std::fmod(x + kPi, 2.0 * kPi);
    if (y <= 0.0) y += 2.0 * kPi;
    return y - kPi;
}

/// Circular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
    const double d = std::abs(wrap_angle(a - b));
    return std::min(d, 2.0 * kPi - d);
}

/// One-period propagator exp(-i beta Jx) exp(-i alpha Jz^2 / (2 j T)).
/// The torsion factor is assembled directly as a diagonal with entries
/// exp(-i alpha m^2 / (2 j)), m = j .. -j.
inline ComplexMatrix build_floquet(const SpinAlgebra& alg, const TopParams& p) {
    p.validate();
    if (alg.j != p.j) {
        throw std::invalid_argument("build_floquet: algebra spin does not match parameters");
    }
    const ComplexMatrix kick = hermitian_exp(alg.jx, p.beta);
    ComplexVector torsion(alg.dim);
    for (int k = 0; k < alg.dim; ++k) {
        const double m = alg.m_of(k);
        torsion(k) = std::exp(Complex(0.0, -p.alpha * m * m / (2.0 * p.j * TopParams::period)));
    }
    return kick * torsion.asDiagonal();
}

inline ComplexMatrix build_floquet(const TopParams& p) {
    return build_floquet(build_spin_operators(p.j), p);
}

/// Eigenphases of a unitary matrix: phi_r = -arg(lambda_r) mapped to
/// (-pi, pi] and sorted ascending. The input is checked unitary to 1e-8.
inline QuasiSpectrum quasienergies(const ComplexMatrix& f) {
    if (f.rows() != f.cols()) {
        throw std::invalid_argument("quasienergies: matrix must be square");
    }
    if (unitarity_residual(f) > 1e-8) {
        throw std::invalid_argument("quasienergies: matrix is not unitary within 1e-8");
    }
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(f, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("quasienergies: eigendecomposition failed");
    }
    QuasiSpectrum spectrum;
    spectrum.source = SpectrumSource::ExactFloquet;
    spectrum.angles.resize(static_cast<std::size_t>(f.rows()));
    for (Eigen::Index r = 0; r < f.rows(); ++r) {
        double phi = -std::arg(solver.eigenvalues()(r));
        if (phi <= -kPi) phi += 2.0 * kPi;  // land exactly on (-pi, pi]
        spectrum.angles[static_cast<std::size_t>(r)] = phi;
    }
    std::sort(spectrum.angles.begin(), spectrum.angles.end());
    return spectrum;
}

/// One period of Heisenberg evolution, O -> F^dag O F.
inline ComplexMatrix heisenberg_step(const ComplexMatrix& f, const ComplexMatrix& op) {
    if (f.rows() != op.rows() || f.cols() != op.cols()) {
        throw std::invalid_argument("heisenberg_step: dimension mismatch");
    }
    return f.adjoint() * op * f;
}

}  // namespace kicktop
