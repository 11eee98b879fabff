#pragma once

#include "lqso/cdf_measure.hpp"
#include "lqso/kernel.hpp"
#include "lqso/quadrature.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace lqso {

// Continuous dynamics act on CDFs through G(x) = x (x + 2q (1 - x)). In
// terms of the kernel this is the operator in which the LARGER parent is
// inherited with probability p, i.e. the atomic rule with p and q
// exchanged. See continuous_particle_kernel() in particles.hpp.

/// G(x) = x (x + 2q (1 - x)); increasing, fixes 0 and 1.
double cdf_map(const KernelParams& k, double x);

/// 1 - G(1 - v) = v (v + 2p (1 - v)): G acting on survival values.
double survival_map(const KernelParams& k, double v);

/// f(x) = 2p x + 2q (1 - x) = G'(x).
double density_factor(const KernelParams& k, double x);

/// Orbit of a continuous initial measure. Index n follows the recursion
/// g^(1) = g_lambda, g^(i+1) = G(g^(i)); f^(n) = prod_{i=1..n} f(g^(i)) is
/// the density of V^n lambda with respect to lambda, whose CDF is g^(n+1).
class DensityOrbit {
public:
    DensityOrbit(KernelParams params, CdfMeasure base, std::size_t n);

    const KernelParams& params() const noexcept { return params_; }
    const CdfMeasure& base() const noexcept { return base_; }
    std::size_t n() const noexcept { return n_; }

    DensityOrbit at_step(std::size_t n) const { return DensityOrbit(params_, base_, n); }

private:
    KernelParams params_;
    CdfMeasure base_;
    std::size_t n_;
};

/// g^(n)(x): G applied n - 1 times to g_lambda(x).
double cdf_at(const DensityOrbit& orbit, double x);

/// 1 - g^(n)(x), iterated in survival form.
double survival_at(const DensityOrbit& orbit, double x);

/// g^(n+1)(x) = (V^n lambda)([0, x)).
double measure_cdf_at(const DensityOrbit& orbit, double x);

struct DensityValue {
    double value; // may be +inf when the product overflows binary64
    double log;   // -inf iff some factor is exactly zero
};

/// f^(n)(x), accumulated as a scaled mantissa/exponent pair so that it
/// neither overflows nor loses relative precision.
DensityValue density_at(const DensityOrbit& orbit, double x);

/// (V lambda)([a, b]) = L (L + 2p g(a) + 2q (1 - g(b))), L = g(b) - g(a).
double pushforward_interval(const KernelParams& k, const CdfMeasure& measure, double a, double b);

/// Integral over [a, b] of f^(n)(x) g'(x) dx, i.e. (V^n lambda)([a, b]).
/// Requires a base measure with a density.
QuadratureResult integrate_density(const DensityOrbit& orbit, double a, double b, double tol);

/// Breakpoints a = t_0 < ... < t_m = b at quantiles of the mass that the
/// nondecreasing `cdf` puts on [a, b]: sixteen equal shares plus shares of
/// 2^-k toward both ends. Used to seed adaptive quadrature when the mass
/// sits in a region far narrower than [a, b].
std::vector<double> quantile_breakpoints(const std::function<double(double)>& cdf, double a, double b);

void require_closed_unit(double x, const char* what);

} // namespace lqso
