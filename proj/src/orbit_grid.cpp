#include "lqso/orbit_grid.hpp"

#include <stdexcept>

namespace lqso {

std::vector<double> linspace(double lo, double hi, std::size_t count)
{
    if (count < 2)
        throw std::invalid_argument("grid needs at least two points");
    std::vector<double> xs(count);
    const double step = (hi - lo) / double(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        xs[i] = lo + step * double(i);
    xs.back() = hi;
    return xs;
}

OrbitGrid evaluate_orbit_grid(const DensityOrbit& orbit, std::span<const double> xs, Execution exec)
{
    for (double x : xs)
        require_closed_unit(x, "grid point"); // nothing may throw inside the parallel loop
    const std::size_t n = xs.size();
    OrbitGrid out{{xs.begin(), xs.end()}, std::vector<double>(n), std::vector<double>(n),
                  std::vector<double>(n)};
    detail::for_each_index(n, exec, [&](std::size_t i) {
        out.g[i] = cdf_at(orbit, xs[i]);
        const DensityValue d = density_at(orbit, xs[i]);
        out.f[i] = d.value;
        out.log_f[i] = d.log;
    });
    return out;
}

namespace reference {

OrbitGrid evaluate_orbit_grid(const DensityOrbit& orbit, std::span<const double> xs)
{
    OrbitGrid out;
    for (double x : xs) {
        out.x.push_back(x);
        out.g.push_back(cdf_at(orbit, x));
        const DensityValue d = density_at(orbit, x);
        out.f.push_back(d.value);
        out.log_f.push_back(d.log);
    }
    return out;
}

} // namespace reference

} // namespace lqso
