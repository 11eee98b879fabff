#include "lqso/bounds.hpp"

#include "lqso/cdf_dynamics.hpp"
#include "lqso/orbit_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lqso {

namespace {

constexpr double lowest = -std::numeric_limits<double>::infinity();

struct Reduced {
    long double beta;
    long double end; // B_n of the (possibly reflected) system
};

Reduced reduced_constants(double dominant, double minor, std::size_t n)
{
    const long double pd = dominant;
    const long double root = std::exp(std::log(16.0L * pd * pd * pd * pd) / (long double)(n - 1));
    const long double beta = (1.0L - 1.0L / (long double)n) / root;
    const long double two_minor = 2.0L * (long double)minor;
    return {beta, (beta - two_minor) / (1.0L - two_minor)};
}

// Per-point violations on the certified domain.
struct PointViolations {
    bool in_domain = false;
    double linear = lowest;
    double geometric = lowest;
    double density = lowest;
    double link1 = lowest;
    double link2 = lowest;
};

} // namespace

BoundCertificate certificate(const KernelParams& k, std::size_t n)
{
    if (k.is_identity())
        throw std::invalid_argument("no bound certificate exists for p = 1/2");
    if (n < 2)
        throw std::invalid_argument("certificate needs n >= 2");

    BoundCertificate cert{k, n, 0.0, std::nullopt, 0.0, false};
    const double dominant = cert.dominant();
    const double minor = cert.mirrored() ? k.p() : k.q();
    const Reduced r = reduced_constants(dominant, minor, n);

    cert.beta_n = double(r.beta);
    cert.valid = r.beta > 2.0L * (long double)minor;
    if (cert.valid)
        cert.domain_end = cert.mirrored() ? double(1.0L - r.end) : double(r.end);
    cert.bound = double(std::pow(1.0L / (2.0L * (long double)dominant), (long double)n));
    return cert;
}

std::size_t min_valid_n(const KernelParams& k)
{
    constexpr std::size_t scan_limit = 100'000'000;
    for (std::size_t n = 2; n < scan_limit; ++n)
        if (certificate(k, n).valid)
            return n;
    throw std::runtime_error("no valid certificate below the scan limit; p is too close to 1/2");
}

bool BoundsReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.max_violation <= tolerance; });
}

namespace {

const CheckResult& find_named(const std::vector<CheckResult>& list, const std::string& name)
{
    for (const auto& c : list)
        if (c.name == name)
            return c;
    throw std::out_of_range("no check named " + name);
}

} // namespace

const CheckResult& BoundsReport::check(const std::string& name) const
{
    return find_named(checks, name);
}

const CheckResult& BoundsReport::diagnostic(const std::string& name) const
{
    return find_named(diagnostics, name);
}

BoundsReport verify_bounds(const KernelParams& k, const CdfMeasure& measure, std::size_t n,
                           std::size_t grid, Execution exec)
{
    const BoundCertificate cert = certificate(k, n);
    if (!cert.valid)
        throw std::invalid_argument("certificate is not valid at this n (beta_n <= 2 min(p,q))");
    if (grid < 2)
        throw std::invalid_argument("grid needs at least two points");

    const bool mirrored = cert.mirrored();
    const double dominant = cert.dominant();
    const double minor = mirrored ? k.p() : k.q();
    const Reduced r = reduced_constants(dominant, minor, n);
    const double beta = double(r.beta);
    const double end = double(r.end);
    const double half_power = std::pow(beta, 0.5 * double(n - 1)); // sqrt(beta^(n-1))
    const double nn = double(n);

    // Distance to the attracting endpoint is tracked in "reduced" form: CDF
    // values when p > 1/2, survival values when p < 1/2. The reduced map is
    // G itself or G acting on survival values.
    const auto reduced_map = [&](double s) {
        return mirrored ? survival_map(k, s) : cdf_map(k, s);
    };
    const auto reduced_base = [&](double x) {
        return mirrored ? measure.survival(x) : measure.cdf(x);
    };

    const std::vector<double> xs =
        mirrored ? linspace(*cert.domain_end, 1.0, grid) : linspace(0.0, *cert.domain_end, grid);
    const DensityOrbit orbit(k, measure, n);

    std::vector<PointViolations> points(xs.size());
    detail::for_each_index(xs.size(), exec, [&](std::size_t i) {
        const double x = xs[i];
        const double s = mirrored ? 1.0 - x : x;
        const double s1 = reduced_base(x);
        PointViolations& v = points[i];
        // A_n = 1 - B_n is rounded, so allow one ulp of 1 at the endpoint.
        if (s1 > end + std::numeric_limits<double>::epsilon())
            return;
        v.in_domain = true;
        v.linear = reduced_map(s) - beta * s;

        double si = s1;
        double beta_pow = 1.0;
        for (std::size_t step = 2; step <= n; ++step) {
            si = reduced_map(si);
            beta_pow *= beta;
            v.geometric = std::max(v.geometric, si - beta_pow * s1);
        }

        const double density = density_at(orbit, x).value;
        v.density = density - cert.bound;

        const double first_factor = density_factor(k, measure.cdf(x));
        const double chained = std::pow(half_power * first_factor, nn);
        v.link1 = density - chained;
        v.link2 = chained - std::pow(2.0 * dominant * half_power, nn);
    });

    // Monotonicity of f^(n) on the whole of [0,1].
    const std::vector<double> full = linspace(0.0, 1.0, grid);
    const OrbitGrid values = evaluate_orbit_grid(orbit, full, exec);
    double monotone = lowest;
    for (std::size_t i = 0; i + 1 < full.size(); ++i) {
        const double drop = mirrored ? values.f[i + 1] - values.f[i] : values.f[i] - values.f[i + 1];
        monotone = std::max(monotone, drop);
    }

    BoundsReport report{cert, grid, 0, {}, {}};
    PointViolations worst;
    for (const auto& v : points) {
        if (!v.in_domain)
            continue;
        ++report.domain_samples;
        worst.linear = std::max(worst.linear, v.linear);
        worst.geometric = std::max(worst.geometric, v.geometric);
        worst.density = std::max(worst.density, v.density);
        worst.link1 = std::max(worst.link1, v.link1);
        worst.link2 = std::max(worst.link2, v.link2);
    }
    const std::size_t m = report.domain_samples;
    report.checks = {
        {"linear_bound", worst.linear, m},
        {"orbit_geometric", worst.geometric, m},
        {"density_bound", worst.density, m},
        {"density_monotone", monotone, full.size()},
    };

    const double image = reduced_map(end);
    const double chain_lhs = 2.0 * dominant * half_power;
    report.diagnostics = {
        {"image_endpoint", std::abs(image - beta * end), 1},
        {"image_inside", beta * end - end, 1},
        {"constant_chain", chain_lhs - 1.0 / (2.0 * dominant), 1},
        {"proof_chain_link1", worst.link1, m},
        {"proof_chain_link2", worst.link2, m},
        {"proof_chain_link3", std::pow(chain_lhs, nn) - cert.bound, 1},
    };
    return report;
}

} // namespace lqso
