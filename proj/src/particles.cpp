#include "lqso/particles.hpp"

#include "lqso/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqso {

namespace {

constexpr std::uint64_t initial_stream_tag = 0xfffffffffffffff1ULL;

std::size_t block_count(std::size_t n)
{
    return (n + particle_block_size - 1) / particle_block_size;
}

double invert_cdf(const CdfMeasure& measure, double u)
{
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (measure.cdf(mid) <= u)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

template <class Fill>
void fill_blocks(std::vector<double>& out, Execution exec, Fill&& fill)
{
    const std::size_t blocks = block_count(out.size());
    detail::for_each_index(blocks, exec, [&](std::size_t b) {
        const std::size_t begin = b * particle_block_size;
        const std::size_t end = std::min(out.size(), begin + particle_block_size);
        fill(b, begin, end);
    });
}

ParticleEnsemble step_impl(const KernelParams& k, const ParticleEnsemble& ensemble, Execution exec)
{
    const std::vector<double>& parents = ensemble.points;
    const std::size_t n = parents.size();
    if (n == 0)
        throw std::invalid_argument("ensemble is empty");
    const std::size_t generation = ensemble.generation + 1;
    const double p = k.p();

    std::vector<double> children(n);
    fill_blocks(children, exec, [&](std::size_t block, std::size_t begin, std::size_t end) {
        SplitMix64 rng(derive_seed(ensemble.seed, generation, block));
        for (std::size_t i = begin; i < end; ++i) {
            const double x = parents[rng.below(n)];
            const double y = parents[rng.below(n)];
            const double u = rng.uniform();
            children[i] = u < p ? std::min(x, y) : std::max(x, y);
        }
    });
    std::sort(children.begin(), children.end());
    return {std::move(children), ensemble.seed, generation};
}

} // namespace

ParticleEnsemble sample_initial(const InitialMeasure& initial, std::size_t n, std::uint64_t seed)
{
    if (n == 0)
        throw std::invalid_argument("particle count must be >= 1");
    std::vector<double> points(n);

    if (initial.is_atomic()) {
        const AtomicMeasure& m = initial.atomic();
        std::vector<double> cumulative(m.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
            cumulative[i] = (acc += m.weights()[i]);
        fill_blocks(points, Execution::serial, [&](std::size_t block, std::size_t begin, std::size_t end) {
            SplitMix64 rng(derive_seed(seed, initial_stream_tag, block));
            for (std::size_t i = begin; i < end; ++i) {
                const double u = rng.uniform() * acc;
                auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
                if (it == cumulative.end())
                    --it;
                points[i] = m.atoms()[std::size_t(it - cumulative.begin())];
            }
        });
    } else {
        const CdfMeasure& m = initial.continuous();
        fill_blocks(points, Execution::serial, [&](std::size_t block, std::size_t begin, std::size_t end) {
            SplitMix64 rng(derive_seed(seed, initial_stream_tag, block));
            for (std::size_t i = begin; i < end; ++i)
                points[i] = invert_cdf(m, rng.uniform());
        });
    }
    std::sort(points.begin(), points.end());
    return {std::move(points), seed, 0};
}

ParticleEnsemble step_generation(const KernelParams& k, const ParticleEnsemble& ensemble, Execution exec)
{
    return step_impl(k, ensemble, exec);
}

namespace reference {

ParticleEnsemble step_generation(const KernelParams& k, const ParticleEnsemble& ensemble)
{
    const std::vector<double>& parents = ensemble.points;
    const std::size_t n = parents.size();
    if (n == 0)
        throw std::invalid_argument("ensemble is empty");
    const std::size_t generation = ensemble.generation + 1;
    std::vector<double> children;
    children.reserve(n);
    for (std::size_t block = 0; block * particle_block_size < n; ++block) {
        SplitMix64 rng(derive_seed(ensemble.seed, generation, block));
        const std::size_t end = std::min(n, (block + 1) * particle_block_size);
        for (std::size_t i = block * particle_block_size; i < end; ++i) {
            const double x = parents[rng.below(n)];
            const double y = parents[rng.below(n)];
            const bool keep_min = rng.uniform() < k.p();
            if (x == y)
                children.push_back(x);
            else if ((x < y) == keep_min)
                children.push_back(x);
            else
                children.push_back(y);
        }
    }
    std::sort(children.begin(), children.end());
    return {std::move(children), ensemble.seed, generation};
}

} // namespace reference

double kolmogorov_distance(const ParticleEnsemble& ensemble, const std::function<double(double)>& cdf)
{
    const std::vector<double>& xs = ensemble.points;
    const double n = double(xs.size());
    double worst = 0.0;
    std::size_t i = 0;
    while (i < xs.size()) {
        std::size_t j = i;
        while (j < xs.size() && xs[j] == xs[i])
            ++j;
        const double f = cdf(xs[i]);
        worst = std::max({worst, std::abs(double(i) / n - f), std::abs(double(j) / n - f)});
        i = j;
    }
    return worst;
}

std::vector<double> empirical_weights(const ParticleEnsemble& ensemble, std::span<const double> atoms)
{
    std::vector<double> out;
    out.reserve(atoms.size());
    for (double a : atoms) {
        const auto [lo, hi] = std::equal_range(ensemble.points.begin(), ensemble.points.end(), a);
        out.push_back(double(hi - lo) / double(ensemble.size()));
    }
    return out;
}

double empirical_w1(const ParticleEnsemble& ensemble, double target)
{
    double sum = 0.0;
    for (double x : ensemble.points)
        sum += std::abs(x - target);
    return sum / double(ensemble.size());
}

} // namespace lqso
