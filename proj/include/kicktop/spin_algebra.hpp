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
/// Exact finite-dimensional angular momentum operators, commutators,
/// Hermitian matrix exponentials and spin coherent states. Everything
/// else in the library sits on top of these.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kicktop {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

/// True if 2j is a positive integer (j = 1/2, 1, 3/2, ...).
inline bool is_half_integer(double j) {
    if (!(j > 0.0)) return false;
    const double twoj = 2.0 * j;
    return std::abs(twoj - std::round(twoj)) < 1e-9;
}

/// Largest absolute entry of a matrix.
inline double max_abs(const ComplexMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

/// Max-norm Hermiticity residual ||H - H^dag||_max.
inline double hermiticity_residual(const ComplexMatrix& h) {
    return max_abs(ComplexMatrix(h - h.adjoint()));
}

/// Max-norm unitarity residual ||U^dag U - 1||_max.
inline double unitarity_residual(const ComplexMatrix& u) {
    return max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())));
}

/// The three angular momentum matrices for a fixed spin quantum number j.
///
/// Basis order: row/column k corresponds to the Jz eigenvalue
/// m = j - k, i.e. m runs from +j (first) down to -j (last). All
/// eigenvector-dependent output in the library is stated against this
/// order. Matrices are dimensionless (hbar = 1).
struct SpinAlgebra {
    double j = 0.0;
    int dim = 0;
    ComplexMatrix jx, jy, jz;

    /// Jz eigenvalue attached to basis index k.
    double m_of(int k) const { return j - static_cast<double>(k); }
};

/// Builds Jx, Jy, Jz from the ladder operators J+- with matrix elements
/// sqrt(j(j+1) - m(m+-1)). Throws std::invalid_argument unless 2j is a
/// positive integer.
inline SpinAlgebra build_spin_operators(double j) {
    if (!is_half_integer(j)) {
        throw std::invalid_argument("build_spin_operators: j must be a positive half-integer, got " +
                                    std::to_string(j));
    }
    SpinAlgebra alg;
    alg.j = j;
    alg.dim = static_cast<int>(std::lround(2.0 * j)) + 1;

    ComplexMatrix jplus = ComplexMatrix::Zero(alg.dim, alg.dim);
    for (int k = 1; k < alg.dim; ++k) {
        // J+ |j, m> = sqrt(j(j+1) - m(m+1)) |j, m+1>, with m = j - k.
        const double m = alg.m_of(k);
        jplus(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jminus = jplus.adjoint();

    alg.jx = 0.5 * (jplus + jminus);
    alg.jy = Complex(0.0, -0.5) * (jplus - jminus);
    alg.jz = ComplexMatrix::Zero(alg.dim, alg.dim);
    for (int k = 0; k < alg.dim; ++k) alg.jz(k, k) = alg.m_of(k);
    return alg;
}

/// AB - BA. Throws on dimension mismatch.
inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("commutator: operands must be square matrices of equal dimension");
    }
    return a * b - b * a;
}

/// AB + BA. Throws on dimension mismatch.
inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
        throw std::invalid_argument("anticommutator: operands must be square matrices of equal dimension");
    }
    return a * b + b * a;
}

/// exp(-i s H) for Hermitian H, via eigendecomposition. The input is
/// checked Hermitian to 1e-10 (relative to its largest entry); the
/// result is unitary up to roundoff.
inline ComplexMatrix hermitian_exp(const ComplexMatrix& h, double s) {
    if (h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_exp: matrix must be square");
    }
    const double scale = std::max(1.0, max_abs(h));
    if (hermiticity_residual(h) > 1e-10 * scale) {
        throw std::invalid_argument("hermitian_exp: matrix is not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_exp: eigendecomposition failed");
    }
    const auto& evals = solver.eigenvalues();
    ComplexVector phases(h.rows());
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        phases(r) = std::exp(Complex(0.0, -s * evals(r)));
    }
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Minimal-uncertainty spin state localized at the sphere point
/// (sin theta cos psi, sin theta sin psi, cos theta).
struct CoherentState {
    double theta = 0.0;
    double psi = 0.0;
    ComplexVector amplitudes;
};

/// Rotates the highest-weight state |j, j> to polar angle theta and
/// azimuth psi, so that <J>/j is the corresponding unit vector. Phase
/// convention: only first moments are contractual. theta must lie in
/// [0, pi].
inline CoherentState spin_coherent_state(const SpinAlgebra& alg, double theta, double psi) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("spin_coherent_state: theta must lie in [0, pi]");
    }
    // Rotation by theta about the axis (-sin psi, cos psi, 0) carries the
    // north pole to (sin theta cos psi, sin theta sin psi, cos theta).
    const ComplexMatrix generator = -std::sin(psi) * alg.jx + std::cos(psi) * alg.jy;
    const ComplexMatrix rot = hermitian_exp(generator, theta);
    CoherentState state;
    state.theta = theta;
    state.psi = psi;
    state.amplitudes = rot.col(0);  // |j, j> is the first basis vector
    return state;
}

/// <state| op |state>.
inline Complex expectation(const ComplexMatrix& op, const ComplexVector& state) {
    if (op.rows() != state.size()) {
        throw std::invalid_argument("expectation: dimension mismatch");
    }
    return (state.adjoint() * op * state)(0, 0);
}

}  // namespace kicktop
