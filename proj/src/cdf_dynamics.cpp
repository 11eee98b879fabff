#include "lqso/cdf_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace lqso {

void require_closed_unit(double x, const char* what)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1]");
}

double cdf_map(const KernelParams& k, double x)
{
    require_closed_unit(x, "x");
    return x * (x + 2.0 * k.q() * (1.0 - x));
}

double survival_map(const KernelParams& k, double v)
{
    require_closed_unit(v, "v");
    return v * (v + 2.0 * k.p() * (1.0 - v));
}

double density_factor(const KernelParams& k, double x)
{
    require_closed_unit(x, "x");
    return 2.0 * k.p() * x + 2.0 * k.q() * (1.0 - x);
}

DensityOrbit::DensityOrbit(KernelParams params, CdfMeasure base, std::size_t n)
    : params_(params), base_(std::move(base)), n_(n)
{
    if (n == 0)
        throw std::invalid_argument("density orbit index must be >= 1");
}

namespace {

// g and 1 - g cannot both be accurate near an endpoint: the one close to 1
// carries only absolute precision. The orbit is therefore tracked through
// whichever of the two is at most 1/2; switching at 1/2 is exact (Sterbenz).
struct SplitValue {
    double small; // min(g, 1 - g)
    bool upper;   // true when small = 1 - g

    double cdf() const { return upper ? 1.0 - small : small; }
    double survival() const { return upper ? small : 1.0 - small; }
};

SplitValue split_start(const CdfMeasure& base, double x)
{
    const double g = base.cdf(x);
    return g > 0.5 ? SplitValue{base.survival(x), true} : SplitValue{g, false};
}

void split_step(const KernelParams& k, SplitValue& s)
{
    s.small = s.upper ? survival_map(k, s.small) : cdf_map(k, s.small);
    if (s.small > 0.5) {
        s.small = 1.0 - s.small;
        s.upper = !s.upper;
    }
}

SplitValue split_orbit(const DensityOrbit& orbit, double x, std::size_t steps)
{
    SplitValue s = split_start(orbit.base(), x);
    for (std::size_t i = 0; i < steps; ++i)
        split_step(orbit.params(), s);
    return s;
}

} // namespace

double cdf_at(const DensityOrbit& orbit, double x)
{
    require_closed_unit(x, "x");
    return split_orbit(orbit, x, orbit.n() - 1).cdf();
}

double survival_at(const DensityOrbit& orbit, double x)
{
    require_closed_unit(x, "x");
    return split_orbit(orbit, x, orbit.n() - 1).survival();
}

double measure_cdf_at(const DensityOrbit& orbit, double x)
{
    require_closed_unit(x, "x");
    return split_orbit(orbit, x, orbit.n()).cdf();
}

DensityValue density_at(const DensityOrbit& orbit, double x)
{
    require_closed_unit(x, "x");
    const KernelParams& k = orbit.params();
    SplitValue s = split_start(orbit.base(), x);
    double mantissa = 1.0;
    long exponent = 0;
    for (std::size_t i = 0; i < orbit.n(); ++i) {
        // f = 2p g + 2q (1 - g), written in the tracked variable.
        const double factor = s.upper ? 2.0 * k.p() * (1.0 - s.small) + 2.0 * k.q() * s.small
                                      : density_factor(k, s.small);
        if (factor == 0.0)
            return {0.0, -std::numeric_limits<double>::infinity()};
        int e = 0;
        mantissa = std::frexp(mantissa * factor, &e);
        exponent += e;
        split_step(k, s);
    }
    const double log_value = std::log(mantissa) + double(exponent) * std::numbers::ln2;
    double value;
    if (exponent > std::numeric_limits<double>::max_exponent)
        value = std::numeric_limits<double>::infinity();
    else if (exponent < std::numeric_limits<double>::min_exponent - 60)
        value = 0.0;
    else
        value = std::ldexp(mantissa, int(exponent));
    return {value, log_value};
}

double pushforward_interval(const KernelParams& k, const CdfMeasure& measure, double a, double b)
{
    require_closed_unit(a, "a");
    require_closed_unit(b, "b");
    if (a > b)
        throw std::invalid_argument("interval endpoints must satisfy a <= b");
    const double ga = measure.cdf(a);
    const double gb = measure.cdf(b);
    const double len = gb - ga;
    return len * (len + 2.0 * k.p() * ga + 2.0 * k.q() * measure.survival(b));
}

std::vector<double> quantile_breakpoints(const std::function<double(double)>& cdf, double a, double b)
{
    // 16 equal shares of the mass, refined geometrically (2^-k) toward both
    // ends so that no panel hides its share in a sliver.
    std::vector<double> levels;
    for (int j = 1; j < 16; ++j)
        levels.push_back(j / 16.0);
    for (int e = 5; e <= 52; ++e) {
        levels.push_back(std::ldexp(1.0, -e));
        levels.push_back(1.0 - std::ldexp(1.0, -e));
    }
    std::sort(levels.begin(), levels.end());

    const double ma = cdf(a);
    const double mb = cdf(b);
    std::vector<double> breaks{a};
    for (double share : levels) {
        const double level = ma + (mb - ma) * share;
        double lo = breaks.back(), hi = b;
        for (int it = 0; it < 64; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            (cdf(mid) < level ? lo : hi) = mid;
        }
        if (hi > breaks.back() && hi < b)
            breaks.push_back(hi);
    }
    breaks.push_back(b);
    return breaks;
}

QuadratureResult integrate_density(const DensityOrbit& orbit, double a, double b, double tol)
{
    require_closed_unit(a, "a");
    require_closed_unit(b, "b");
    if (a > b)
        throw std::invalid_argument("interval endpoints must satisfy a <= b");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (!orbit.base().has_density())
        throw std::invalid_argument("integrate_density needs a base measure with a density");
    if (a == b)
        return {};
    const auto integrand = [&orbit](double x) {
        return density_at(orbit, x).value * orbit.base().density(x);
    };

    const std::vector<double> breaks =
        quantile_breakpoints([&orbit](double x) { return measure_cdf_at(orbit, x); }, a, b);
    return integrate_adaptive(integrand, breaks, tol);
}

} // namespace lqso
