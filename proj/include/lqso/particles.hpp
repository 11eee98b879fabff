#pragma once

#include "lqso/execution.hpp"
#include "lqso/kernel.hpp"
#include "lqso/initial_measure.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lqso {

/// Empirical measure of N particles in [0,1). Points are kept sorted.
struct ParticleEnsemble {
    std::vector<double> points;
    std::uint64_t seed;
    std::size_t generation;

    std::size_t size() const noexcept { return points.size(); }
};

/// Children are generated in blocks of this size; each block draws from its
/// own stream derived from (seed, generation, block index).
inline constexpr std::size_t particle_block_size = 4096;

/// Atomic descriptors place particles on atoms by categorical draws;
/// continuous ones invert the CDF by bisection to 1e-12.
ParticleEnsemble sample_initial(const InitialMeasure& initial, std::size_t n, std::uint64_t seed);

/// One synchronous generation: each child draws two parents uniformly with
/// replacement and keeps min(x, y) with probability p, max(x, y) otherwise.
/// The result is the same for every thread count.
ParticleEnsemble step_generation(const KernelParams& k, const ParticleEnsemble& ensemble,
                                 Execution exec = Execution::parallel);

namespace reference {

/// Single-threaded generation step drawing the same streams.
ParticleEnsemble step_generation(const KernelParams& k, const ParticleEnsemble& ensemble);

} // namespace reference

/// Kernel whose particle rule realizes the continuous CDF dynamics at `k`:
/// the CDF map G gives p to the larger parent, so the particle rule must
/// run with p and q exchanged.
inline KernelParams continuous_particle_kernel(const KernelParams& k)
{
    return k.swapped();
}

/// sup_x |F_N(x) - F(x)| for a continuous F, handling tied points.
double kolmogorov_distance(const ParticleEnsemble& ensemble, const std::function<double(double)>& cdf);

/// Fraction of particles sitting exactly on each atom.
std::vector<double> empirical_weights(const ParticleEnsemble& ensemble, std::span<const double> atoms);

/// mean |x_i - target|.
double empirical_w1(const ParticleEnsemble& ensemble, double target);

} // namespace lqso
