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
/// Spectrum post-processing on the quasienergy circle: Brillouin-zone
/// folding, circular spectrum matching, density-of-states estimators,
/// peak detection, adjacent-gap scans and the smoothness probe at the
/// parameter loci where the operator-exponential-merging construction
/// diverges.

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "kicktop/effective_model.hpp"
#include "kicktop/floquet.hpp"

namespace kicktop {

/// Folds real eigenvalues into the first Brillouin zone,
/// eps -> ((eps T + pi) mod 2pi) - pi, sorted ascending.
inline QuasiSpectrum fold_to_brillouin(const std::vector<double>& values, double period,
                                       SpectrumSource tag = SpectrumSource::EffectiveFolded) {
    if (!(period > 0.0)) {
        throw std::invalid_argument("fold_to_brillouin: period must be positive");
    }
    QuasiSpectrum out;
    out.source = tag;
    out.angles.reserve(values.size());
    for (double v : values) out.angles.push_back(wrap_angle(v * period));
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

/// Best cyclic alignment of two equal-size sorted angle multisets.
struct SpectrumMatch {
    int offset = 0;               ///< a[i] pairs with b[(i + offset) mod n]
    std::vector<int> pairing;     ///< index into b for each index of a
    double max_dist = 0.0;
    double mean_dist = 0.0;
};

/// Minimal-sum pairing between two spectra of equal length. Both lists
/// are sorted; on the circle the optimal pairing of sorted multisets is
/// a cyclic shift, so all shifts are evaluated and the one minimizing
/// the total circular distance is reported.
inline SpectrumMatch match_spectra(const QuasiSpectrum& a, const QuasiSpectrum& b) {
    const std::size_t n = a.angles.size();
    if (n != b.angles.size()) {
        throw std::invalid_argument("match_spectra: spectra must have equal length");
    }
    if (n == 0) {
        throw std::invalid_argument("match_spectra: spectra must be nonempty");
    }
    std::vector<double> sa = a.angles, sb = b.angles;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    int best_offset = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += circular_distance(sa[i], sb[(i + k) % n]);
        }
        if (sum < best_sum) {
            best_sum = sum;
            best_offset = static_cast<int>(k);
        }
    }

    SpectrumMatch match;
    match.offset = best_offset;
    match.pairing.resize(n);
    double max_d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bi = (i + static_cast<std::size_t>(best_offset)) % n;
        match.pairing[i] = static_cast<int>(bi);
        max_d = std::max(max_d, circular_distance(sa[i], sb[bi]));
    }
    match.max_dist = max_d;
    match.mean_dist = best_sum / static_cast<double>(n);
    return match;
}

enum class DosEstimator { Gaussian, Fourier };

/// Smoothed density of states on the quasienergy circle. The grid is
/// uniform over (-pi, pi]; the periodic trapezoidal integral of the
/// values is 1.
struct DosCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double sigma = 0.0;
    DosEstimator estimator = DosEstimator::Gaussian;
    int n_terms = 0;
};

/// Periodic trapezoidal integral over the full circle.
inline double dos_integral(const DosCurve& c) {
    double sum = 0.0;
    for (double v : c.values) sum += v;
    return sum * 2.0 * kPi / static_cast<double>(c.values.size());
}

namespace detail {

inline std::vector<double> circle_grid(int grid_size) {
    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    const double h = 2.0 * kPi / grid_size;
    for (int i = 0; i < grid_size; ++i) grid[static_cast<std::size_t>(i)] = -kPi + (i + 1) * h;
    return grid;
}

}  // namespace detail

/// rho(E) = (1/N) sum_r G(E - E_r; sigma) with wrapped (periodized)
/// normal densities; sigma = sigma_frac * mean spacing 2pi/N.
inline DosCurve dos_gaussian(const QuasiSpectrum& s, double sigma_frac = 0.1, int grid_size = 1024) {
    if (!(sigma_frac > 0.0)) {
        throw std::invalid_argument("dos_gaussian: sigma_frac must be positive");
    }
    if (grid_size < 256) {
        throw std::invalid_argument("dos_gaussian: grid_size must be >= 256");
    }
    const std::size_t n_levels = s.angles.size();
    if (n_levels == 0) {
        throw std::invalid_argument("dos_gaussian: empty spectrum");
    }
    const double sigma = sigma_frac * 2.0 * kPi / static_cast<double>(n_levels);
    // Enough periodic images that the farthest discarded one is < 1e-16.
    const int n_images = static_cast<int>(std::ceil((8.6 * sigma + kPi) / (2.0 * kPi)));
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));

    DosCurve curve;
    curve.grid = detail::circle_grid(grid_size);
    curve.values.assign(curve.grid.size(), 0.0);
    curve.sigma = sigma;
    curve.estimator = DosEstimator::Gaussian;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        double acc = 0.0;
        for (double level : s.angles) {
            const double d = curve.grid[i] - level;
            for (int k = -n_images; k <= n_images; ++k) {
                const double x = d + 2.0 * kPi * k;
                acc += norm * std::exp(-0.5 * x * x / (sigma * sigma));
            }
        }
        curve.values[i] = acc / static_cast<double>(n_levels);
    }
    return curve;
}

/// rho(E) = 1/2pi + (1/(pi N)) Re sum_n xi_n e^{i n E} e^{-n^2 sigma^2/2}
/// with xi_n = sum_r e^{-i n E_r}. The Gaussian damping makes the
/// truncation convergent; with matching sigma this reproduces the
/// wrapped-Gaussian estimator.
inline DosCurve dos_fourier(const QuasiSpectrum& s, int n_terms, double sigma, int grid_size = 1024) {
    if (n_terms < 0) {
        throw std::invalid_argument("dos_fourier: n_terms must be >= 0");
    }
    const std::size_t n_levels = s.angles.size();
    if (n_levels == 0) {
        throw std::invalid_argument("dos_fourier: empty spectrum");
    }

    // xi_n by iterated phase multiplication per level.
    std::vector<Complex> xi(static_cast<std::size_t>(n_terms) + 1, Complex(0.0, 0.0));
    for (double level : s.angles) {
        const Complex step = std::exp(Complex(0.0, -level));
        Complex phase(1.0, 0.0);
        for (int n = 1; n <= n_terms; ++n) {
            phase *= step;
            xi[static_cast<std::size_t>(n)] += phase;
        }
    }

    DosCurve curve;
    curve.grid = detail::circle_grid(grid_size);
    curve.values.assign(curve.grid.size(), 0.0);
    curve.sigma = sigma;
    curve.estimator = DosEstimator::Fourier;
    curve.n_terms = n_terms;
    const double prefactor = 1.0 / (kPi * static_cast<double>(n_levels));
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        const Complex step = std::exp(Complex(0.0, curve.grid[i]));
        Complex phase(1.0, 0.0);
        double acc = 0.0;
        for (int n = 1; n <= n_terms; ++n) {
            phase *= step;
            acc += (xi[static_cast<std::size_t>(n)] * phase).real() *
                   std::exp(-0.5 * static_cast<double>(n) * n * sigma * sigma);
        }
        curve.values[i] = 1.0 / (2.0 * kPi) + prefactor * acc;
    }
    return curve;
}

struct DosPeak {
    double location = 0.0;
    double height = 0.0;
};

/// Local maxima (circular neighbor comparison) above
/// prominence_ratio / 2pi, sorted by height descending.
inline std::vector<DosPeak> find_dos_peaks(const DosCurve& c, double prominence_ratio = 1.5) {
    if (!(prominence_ratio > 1.0)) {
        throw std::invalid_argument("find_dos_peaks: prominence_ratio must exceed 1");
    }
    const std::size_t n = c.values.size();
    std::vector<DosPeak> peaks;
    const double floor = prominence_ratio / (2.0 * kPi);
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = c.values[(i + n - 1) % n];
        const double next = c.values[(i + 1) % n];
        if (c.values[i] > prev && c.values[i] > next && c.values[i] > floor) {
            peaks.push_back({c.grid[i], c.values[i]});
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [](const DosPeak& a, const DosPeak& b) { return a.height > b.height; });
    return peaks;
}

/// Smallest gap between circularly adjacent sorted angles.
inline double min_circular_gap(const std::vector<double>& sorted_angles) {
    const std::size_t n = sorted_angles.size();
    if (n < 2) return 2.0 * kPi;
    double gap = 2.0 * kPi - (sorted_angles[n - 1] - sorted_angles[0]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        gap = std::min(gap, sorted_angles[i + 1] - sorted_angles[i]);
    }
    return gap;
}

struct GapScanRow {
    double alpha = 0.0;
    double min_gap_exact = 0.0;
    double min_gap_effective = 0.0;
};

/// Minimal adjacent gap of the exact quasienergy spectrum and of the
/// folded effective spectrum, per grid value of alpha.
inline std::vector<GapScanRow> gap_scan(const TopParams& base, const std::vector<double>& alpha_grid) {
    base.validate();
    const SpinAlgebra alg = build_spin_operators(base.j);
    std::vector<GapScanRow> rows;
    rows.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const TopParams p{alpha, base.beta, base.j};
        const QuasiSpectrum exact = quasienergies(build_floquet(alg, p));
        const QuasiSpectrum effective =
            fold_to_brillouin(effective_spectrum(kicked_top_effective(alg, p)), TopParams::period);
        rows.push_back({alpha, min_circular_gap(exact.angles), min_circular_gap(effective.angles)});
    }
    return rows;
}

/// Crossing/avoided thresholds are tunables, not constants baked into
/// results files.
struct GapClassification {
    double crossing_threshold = 1e-8;
    double avoided_threshold = 1e-6;
};

enum class GapKind { Crossing, Avoided, Unresolved };

inline GapKind classify_gap(double gap, const GapClassification& cfg = {}) {
    if (gap < cfg.crossing_threshold) return GapKind::Crossing;
    if (gap > cfg.avoided_threshold) return GapKind::Avoided;
    return GapKind::Unresolved;
}

/// Ternary search for the minimum of the folded effective spectrum's
/// adjacent gap over alpha in [a_lo, a_hi]. The gap is piecewise smooth
/// with a V-shaped zero at a level crossing, which the search resolves
/// to the bracket width tolerance.
inline std::pair<double, double> refine_effective_gap_minimum(const TopParams& base, double a_lo,
                                                              double a_hi, double tol = 1e-12) {
    const SpinAlgebra alg = build_spin_operators(base.j);
    const auto gap_at = [&](double alpha) {
        const TopParams p{alpha, base.beta, base.j};
        return min_circular_gap(
            fold_to_brillouin(effective_spectrum(kicked_top_effective(alg, p)), TopParams::period)
                .angles);
    };
    double lo = a_lo, hi = a_hi;
    while (hi - lo > tol) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (gap_at(m1) < gap_at(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const double alpha = 0.5 * (lo + hi);
    return {alpha, gap_at(alpha)};
}

/// Torsion strength at which the operator-exponential-merging route
/// diverges: alpha* = 4 j l pi / (2m + 1).
inline double cbh_alpha_star(double j, int m, int l) {
    if (l < 1) {
        throw std::invalid_argument("cbh_alpha_star: l must be >= 1");
    }
    if (m < 0) {
        throw std::invalid_argument("cbh_alpha_star: m must be >= 0");
    }
    return 4.0 * j * l * kPi / (2.0 * m + 1.0);
}

/// Effective eigenvalues on an alpha window with their finite-difference
/// alpha-derivatives (sorted-branch slopes; central differences inside,
/// one-sided at the window ends).
struct DerivativeScan {
    std::vector<double> alpha;
    std::vector<std::vector<double>> energies;  ///< energies[i][r], sorted per row
    std::vector<double> max_abs_derivative;     ///< per grid point, max over levels
    double overall_max_abs_derivative = 0.0;
};

inline DerivativeScan effective_derivative_scan(double j, double beta, double center, double window,
                                                int n_points) {
    if (n_points < 3) {
        throw std::invalid_argument("effective_derivative_scan: need at least 3 grid points");
    }
    const SpinAlgebra alg = build_spin_operators(j);
    DerivativeScan scan;
    scan.alpha.resize(static_cast<std::size_t>(n_points));
    scan.energies.resize(static_cast<std::size_t>(n_points));
    const double h = 2.0 * window / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double alpha = center - window + i * h;
        scan.alpha[static_cast<std::size_t>(i)] = alpha;
        scan.energies[static_cast<std::size_t>(i)] =
            effective_spectrum(kicked_top_effective(alg, TopParams{alpha, beta, j}));
    }
    const std::size_t dim = scan.energies.front().size();
    scan.max_abs_derivative.assign(static_cast<std::size_t>(n_points), 0.0);
    for (int i = 0; i < n_points; ++i) {
        const int lo = std::max(0, i - 1);
        const int hi = std::min(n_points - 1, i + 1);
        const double dalpha = scan.alpha[static_cast<std::size_t>(hi)] -
                              scan.alpha[static_cast<std::size_t>(lo)];
        double worst = 0.0;
        for (std::size_t r = 0; r < dim; ++r) {
            const double d = (scan.energies[static_cast<std::size_t>(hi)][r] -
                              scan.energies[static_cast<std::size_t>(lo)][r]) /
                             dalpha;
            worst = std::max(worst, std::abs(d));
        }
        scan.max_abs_derivative[static_cast<std::size_t>(i)] = worst;
        scan.overall_max_abs_derivative = std::max(scan.overall_max_abs_derivative, worst);
    }
    return scan;
}

/// Sweeps the effective spectrum across the window centered on the
/// divergence locus alpha* of the operator-exponential-merging
/// construction. The effective spectrum stays finite with bounded
/// derivatives there; the scan provides the evidence.
inline DerivativeScan cbh_singularity_probe(double j, int m, int l, double beta, double window,
                                            int n_points) {
    if (n_points < 11) {
        throw std::invalid_argument("cbh_singularity_probe: n_points must be >= 11");
    }
    const double alpha_star = cbh_alpha_star(j, m, l);
    return effective_derivative_scan(j, beta, alpha_star, window, n_points);
}

}  // namespace kicktop
