#include "lqso/kernel.hpp"

#include "lqso/atomic_measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lqso {

KernelParams::KernelParams(double p) : p_(p)
{
    if (!std::isfinite(p))
        throw std::invalid_argument("p must be finite");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("p must lie in [0,1]");
}

void require_unit_point(double x, const char* what)
{
    if (!(x >= 0.0 && x < 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1), got " + std::to_string(x));
}

AtomicMeasure kernel_measure(const KernelParams& k, double x, double y)
{
    require_unit_point(x, "x");
    require_unit_point(y, "y");
    if (x == y)
        return AtomicMeasure::dirac(x);
    const double lo = x < y ? x : y;
    const double hi = x < y ? y : x;
    return AtomicMeasure({lo, hi}, {k.p(), k.q()});
}

double identity_kernel_measure(double x, double y, const Interval& a)
{
    require_unit_point(x, "x");
    require_unit_point(y, "y");
    if (a.lo < 0.0 || a.hi > 1.0 || a.lo > a.hi)
        throw std::domain_error("interval must be a subinterval of [0,1)");
    const int inside = int(a.contains(x)) + int(a.contains(y));
    return inside == 2 ? 1.0 : inside == 1 ? 0.5 : 0.0;
}

double kernel_probability(const KernelVariant& kernel, double x, double y, const Interval& a)
{
    if (std::holds_alternative<IdentityKernel>(kernel))
        return identity_kernel_measure(x, y, a);
    const AtomicMeasure m = kernel_measure(std::get<KernelParams>(kernel), x, y);
    double mass = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        if (a.contains(m.atoms()[i]))
            mass += m.weights()[i];
    return mass;
}

} // namespace lqso
