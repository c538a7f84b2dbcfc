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
/// Classical limit of the kicked top: the stroboscopic map on the unit
/// sphere, the effective integrable Hamiltonian H_cl with its canonical
/// flow, and phase-portrait generation for map-vs-flow comparison.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kicktop {

/// Rescaled angular momentum on the unit sphere.
struct ClassicalState {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm_sq() const { return x * x + y * y + z * z; }
};

/// Canonical pair: Z = cos(theta) and the azimuth psi.
struct CanonicalState {
    double z = 1.0;
    double psi = 0.0;
};

inline ClassicalState to_cartesian(const CanonicalState& s) {
    const double r = std::sqrt(std::max(0.0, 1.0 - s.z * s.z));
    return {r * std::cos(s.psi), r * std::sin(s.psi), s.z};
}

inline CanonicalState to_canonical(const ClassicalState& s) {
    CanonicalState out;
    out.z = std::max(-1.0, std::min(1.0, s.z));
    out.psi = std::atan2(s.y, s.x);
    return out;
}

/// One kick period of the classical map: rotation about x by beta,
/// then torsion about z by the angle alpha * Z. Both factors are
/// rotations, so the sphere norm is preserved exactly; no
/// renormalization is applied. The arithmetic runs in extended
/// precision so that roundoff stays below 1e-12 even over 1e6 kicks.
inline ClassicalState kicked_top_map(const ClassicalState& s, double alpha, double beta) {
    if (std::abs(s.norm_sq() - 1.0) > 1e-9) {
        throw std::invalid_argument("kicked_top_map: state is off the unit sphere");
    }
    const long double xt = s.x;
    const long double yt = static_cast<long double>(s.y) * std::cos(static_cast<long double>(beta)) -
                           static_cast<long double>(s.z) * std::sin(static_cast<long double>(beta));
    const long double zt = static_cast<long double>(s.y) * std::sin(static_cast<long double>(beta)) +
                           static_cast<long double>(s.z) * std::cos(static_cast<long double>(beta));
    const long double phi = static_cast<long double>(alpha) * zt;
    return {static_cast<double>(xt * std::cos(phi) - yt * std::sin(phi)),
            static_cast<double>(xt * std::sin(phi) + yt * std::cos(phi)),
            static_cast<double>(zt)};
}

/// Classical effective energy:
///
///   H_cl = alpha Z^2/2 + beta sqrt(1-Z^2) cos(psi)
///        + (alpha beta^2/24) sin^2(psi)
///        - (alpha beta^2/24) (1 + sin^2(psi)) Z^2
inline double hcl_energy(const CanonicalState& s, double alpha, double beta) {
    if (std::abs(s.z) > 1.0) {
        throw std::invalid_argument("hcl_energy: |Z| must not exceed 1");
    }
    const double sp = std::sin(s.psi);
    const double ab2 = alpha * beta * beta / 24.0;
    return 0.5 * alpha * s.z * s.z + beta * std::sqrt(1.0 - s.z * s.z) * std::cos(s.psi) +
           ab2 * sp * sp - ab2 * (1.0 + sp * sp) * s.z * s.z;
}

inline double hcl_energy_cartesian(const ClassicalState& s, double alpha, double beta) {
    return 0.5 * alpha * s.z * s.z + beta * s.x -
           (alpha * beta * beta / 24.0) * (s.z * s.z - s.y * s.y);
}

namespace detail {

/// Hamilton's equations for (Z, psi). The sqrt denominator in psi-dot is
/// singular at the poles; callers switch charts before reaching them and
/// the guards below only keep intermediate Runge-Kutta stages finite.
inline CanonicalState canonical_derivative(const CanonicalState& s, double alpha, double beta) {
    const double s2 = std::max(0.0, 1.0 - s.z * s.z);
    const double root = std::sqrt(s2);
    const double sp = std::sin(s.psi);
    CanonicalState d;
    d.z = beta * root * sp - (alpha * beta * beta / 24.0) * s2 * std::sin(2.0 * s.psi);
    d.psi = alpha * s.z - beta * s.z * std::cos(s.psi) / std::max(root, 1e-12) -
            (alpha * beta * beta / 12.0) * s.z * (1.0 + sp * sp);
    return d;
}

/// The same flow in Cartesian variables; regular at the poles, and the
/// generator satisfies X X' + Y Y' + Z Z' = 0 identically.
inline ClassicalState cartesian_derivative(const ClassicalState& s, double alpha, double beta) {
    const double ab2_6 = alpha * beta * beta / 6.0;
    const double ab2_12 = alpha * beta * beta / 12.0;
    ClassicalState d;
    d.x = -(alpha - ab2_6) * s.y * s.z;
    d.y = (alpha - ab2_12) * s.x * s.z - beta * s.z;
    d.z = beta * s.y - ab2_12 * s.x * s.y;
    return d;
}

inline CanonicalState rk4_step(const CanonicalState& s, double alpha, double beta, double dt) {
    const auto k1 = canonical_derivative(s, alpha, beta);
    const auto k2 = canonical_derivative({s.z + 0.5 * dt * k1.z, s.psi + 0.5 * dt * k1.psi}, alpha, beta);
    const auto k3 = canonical_derivative({s.z + 0.5 * dt * k2.z, s.psi + 0.5 * dt * k2.psi}, alpha, beta);
    const auto k4 = canonical_derivative({s.z + dt * k3.z, s.psi + dt * k3.psi}, alpha, beta);
    return {s.z + dt * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z) / 6.0,
            s.psi + dt * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi) / 6.0};
}

inline ClassicalState rk4_step(const ClassicalState& s, double alpha, double beta, double dt) {
    const auto add = [](const ClassicalState& a, const ClassicalState& b, double w) {
        return ClassicalState{a.x + w * b.x, a.y + w * b.y, a.z + w * b.z};
    };
    const auto k1 = cartesian_derivative(s, alpha, beta);
    const auto k2 = cartesian_derivative(add(s, k1, 0.5 * dt), alpha, beta);
    const auto k3 = cartesian_derivative(add(s, k2, 0.5 * dt), alpha, beta);
    const auto k4 = cartesian_derivative(add(s, k3, dt), alpha, beta);
    return {s.x + dt * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x) / 6.0,
            s.y + dt * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y) / 6.0,
            s.z + dt * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z) / 6.0};
}

/// Integrator state carrying whichever chart is currently active.
/// Canonical (Z, psi) is the default; within 1e-6 of a pole the step is
/// taken in Cartesian form, with a hysteresis band so the chart does
/// not chatter at the boundary.
struct FlowWalker {
    bool cartesian = false;
    CanonicalState canonical;
    ClassicalState cart;
    double psi_offset = 0.0;  // whole turns accumulated before a chart switch

    static constexpr double enter_pole = 1.0 - 1e-6;
    static constexpr double exit_pole = 1.0 - 2e-6;

    explicit FlowWalker(const CanonicalState& s0) : canonical(s0) {
        if (std::abs(s0.z) > enter_pole) {
            cartesian = true;
            cart = to_cartesian(s0);
        }
    }

    CanonicalState state() const {
        if (!cartesian) return canonical;
        CanonicalState s = to_canonical(cart);
        // keep the azimuth on the same winding branch as before the switch
        s.psi += 2.0 * std::numbers::pi *
                 std::round((psi_offset - s.psi) / (2.0 * std::numbers::pi));
        return s;
    }

    void step(double alpha, double beta, double dt) {
        if (!cartesian && std::abs(canonical.z) > enter_pole) {
            cartesian = true;
            psi_offset = canonical.psi;
            cart = to_cartesian(canonical);
        } else if (cartesian && std::abs(cart.z) < exit_pole) {
            canonical = state();
            cartesian = false;
        }
        if (cartesian) {
            cart = rk4_step(cart, alpha, beta, dt);
            if (!std::isfinite(cart.x) || !std::isfinite(cart.y) || !std::isfinite(cart.z)) {
                throw std::runtime_error("integrate_flow: non-finite Cartesian state");
            }
        } else {
            canonical = rk4_step(canonical, alpha, beta, dt);
            if (!std::isfinite(canonical.z) || !std::isfinite(canonical.psi)) {
                throw std::runtime_error("integrate_flow: non-finite canonical state");
            }
        }
    }
};

}  // namespace detail

struct FlowSample {
    double t = 0.0;
    CanonicalState state;
};

/// Fixed-step fourth-order Runge-Kutta integration of the canonical
/// flow, sampling every step. dt is adjusted to the nearest divisor of
/// t_end so the final sample lands exactly on t_end.
inline std::vector<FlowSample> integrate_flow(const CanonicalState& s0, double alpha, double beta,
                                              double dt, double t_end) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw std::invalid_argument("integrate_flow: dt and t_end must be positive");
    }
    const long n_steps = std::max(1L, std::lround(t_end / dt));
    const double h = t_end / static_cast<double>(n_steps);

    std::vector<FlowSample> trajectory;
    trajectory.reserve(static_cast<std::size_t>(n_steps) + 1);
    detail::FlowWalker walker(s0);
    trajectory.push_back({0.0, walker.state()});
    for (long k = 1; k <= n_steps; ++k) {
        walker.step(alpha, beta, h);
        trajectory.push_back({static_cast<double>(k) * h, walker.state()});
    }
    return trajectory;
}

/// Same flow integrated entirely in Cartesian variables (pole-regular
/// everywhere); used to exercise the norm identity of the Cartesian
/// generator.
inline std::vector<std::pair<double, ClassicalState>> integrate_flow_cartesian(
    const ClassicalState& s0, double alpha, double beta, double dt, double t_end) {
    if (!(dt > 0.0) || !(t_end > 0.0)) {
        throw std::invalid_argument("integrate_flow_cartesian: dt and t_end must be positive");
    }
    const long n_steps = std::max(1L, std::lround(t_end / dt));
    const double h = t_end / static_cast<double>(n_steps);
    std::vector<std::pair<double, ClassicalState>> trajectory;
    trajectory.reserve(static_cast<std::size_t>(n_steps) + 1);
    ClassicalState s = s0;
    trajectory.emplace_back(0.0, s);
    for (long k = 1; k <= n_steps; ++k) {
        s = detail::rk4_step(s, alpha, beta, h);
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.z)) {
            throw std::runtime_error("integrate_flow_cartesian: non-finite state at t=" +
                                     std::to_string(static_cast<double>(k) * h));
        }
        trajectory.emplace_back(static_cast<double>(k) * h, s);
    }
    return trajectory;
}

struct PhasePortrait {
    std::vector<std::vector<CanonicalState>> map_orbits;
    std::vector<std::vector<CanonicalState>> flow_orbits;
};

/// For each initial condition, n_kicks iterations of the stroboscopic
/// map and the flow sampled at t = 1, 2, ..., n_kicks. Both start from
/// the identical sphere point.
inline PhasePortrait phase_portrait(double alpha, double beta,
                                    const std::vector<CanonicalState>& ic_grid, int n_kicks,
                                    double dt) {
    if (n_kicks < 1) {
        throw std::invalid_argument("phase_portrait: n_kicks must be >= 1");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("phase_portrait: dt must be positive");
    }
    const long steps_per_kick = std::max(1L, std::lround(1.0 / dt));
    const double h = 1.0 / static_cast<double>(steps_per_kick);

    PhasePortrait portrait;
    portrait.map_orbits.reserve(ic_grid.size());
    portrait.flow_orbits.reserve(ic_grid.size());
    for (const CanonicalState& ic : ic_grid) {
        std::vector<CanonicalState> map_orbit;
        map_orbit.reserve(static_cast<std::size_t>(n_kicks));
        ClassicalState s = to_cartesian(ic);
        for (int k = 0; k < n_kicks; ++k) {
            s = kicked_top_map(s, alpha, beta);
            map_orbit.push_back(to_canonical(s));
        }
        portrait.map_orbits.push_back(std::move(map_orbit));

        std::vector<CanonicalState> flow_orbit;
        flow_orbit.reserve(static_cast<std::size_t>(n_kicks));
        detail::FlowWalker walker(ic);
        for (int k = 0; k < n_kicks; ++k) {
            for (long i = 0; i < steps_per_kick; ++i) walker.step(alpha, beta, h);
            flow_orbit.push_back(walker.state());
        }
        portrait.flow_orbits.push_back(std::move(flow_orbit));
    }
    return portrait;
}

struct OrbitComparison {
    double hausdorff = 0.0;
    double hcl_var_a = 0.0;
    double hcl_var_b = 0.0;
};

namespace detail {

inline double orbit_point_distance(const CanonicalState& a, const CanonicalState& b) {
    double dpsi = std::fmod(a.psi - b.psi + std::numbers::pi, 2.0 * std::numbers::pi);
    if (dpsi <= 0.0) dpsi += 2.0 * std::numbers::pi;
    dpsi -= std::numbers::pi;
    const double dz = a.z - b.z;
    return std::sqrt(dpsi * dpsi + dz * dz);
}

inline double directed_hausdorff(const std::vector<CanonicalState>& a,
                                 const std::vector<CanonicalState>& b) {
    double worst = 0.0;
    for (const auto& p : a) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : b) {
            best = std::min(best, orbit_point_distance(p, q));
            if (best == 0.0) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

inline double hcl_variance(const std::vector<CanonicalState>& orbit, double alpha, double beta) {
    double mean = 0.0;
    for (const auto& s : orbit) mean += hcl_energy(s, alpha, beta);
    mean /= static_cast<double>(orbit.size());
    double var = 0.0;
    for (const auto& s : orbit) {
        const double d = hcl_energy(s, alpha, beta) - mean;
        var += d * d;
    }
    return var / static_cast<double>(orbit.size());
}

}  // namespace detail

/// Hausdorff distance between two orbits in (psi, Z), with psi treated
/// circularly, plus the variance of H_cl along each orbit.
inline OrbitComparison compare_orbits(const std::vector<CanonicalState>& a,
                                      const std::vector<CanonicalState>& b, double alpha,
                                      double beta) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("compare_orbits: orbits must be nonempty");
    }
    OrbitComparison cmp;
    cmp.hausdorff = std::max(detail::directed_hausdorff(a, b), detail::directed_hausdorff(b, a));
    cmp.hcl_var_a = detail::hcl_variance(a, alpha, beta);
    cmp.hcl_var_b = detail::hcl_variance(b, alpha, beta);
    return cmp;
}

}  // namespace kicktop
