#pragma once

#include "lqso/cdf_dynamics.hpp"
#include "lqso/execution.hpp"

#include <span>
#include <vector>

namespace lqso {

/// Orbit values sampled on a set of points.
struct OrbitGrid {
    std::vector<double> x;
    std::vector<double> g;     // g^(n)(x)
    std::vector<double> f;     // f^(n)(x)
    std::vector<double> log_f; // log f^(n)(x)
};

/// `count` equally spaced points on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Evaluates cdf_at/density_at at every point; each point is independent,
/// so the parallel path splits points across OpenMP threads. Output is
/// bitwise identical to the serial reference.
OrbitGrid evaluate_orbit_grid(const DensityOrbit& orbit, std::span<const double> xs,
                              Execution exec = Execution::parallel);

namespace reference {

OrbitGrid evaluate_orbit_grid(const DensityOrbit& orbit, std::span<const double> xs);

} // namespace reference

} // namespace lqso
