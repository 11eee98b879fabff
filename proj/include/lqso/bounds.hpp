#pragma once

#include "lqso/cdf_measure.hpp"
#include "lqso/execution.hpp"
#include "lqso/kernel.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace lqso {

/// Decay certificate for the density away from the attracting endpoint.
///
/// For p > 1/2: beta_n = (1 - 1/n) (16 p^4)^(-1/(n-1)),
/// B_n = (beta_n - 2q) / (1 - 2q), certified domain [0, B_n], bound (1/2p)^n.
/// For p < 1/2 the same constants are computed for the reflected system
/// (p and q exchanged, x -> 1 - x): domain [A_n, 1] with A_n = 1 - B_n of
/// the reflection, bound (1/2q)^n.
struct BoundCertificate {
    KernelParams params;
    std::size_t n;
    double beta_n;
    std::optional<double> domain_end; // B_n or A_n; empty when !valid
    double bound;
    bool valid; // beta_n > 2 min(p, q)

    /// True when p < 1/2, i.e. the domain is [A_n, 1].
    bool mirrored() const noexcept { return params.p() < 0.5; }
    /// max(p, q): the parameter the constants are built from.
    double dominant() const noexcept { return mirrored() ? params.q() : params.p(); }
};

/// Throws std::invalid_argument for p = 1/2 or n < 2.
BoundCertificate certificate(const KernelParams& k, std::size_t n);

/// Smallest n >= 2 with a valid certificate.
std::size_t min_valid_n(const KernelParams& k);

struct CheckResult {
    std::string name;
    double max_violation; // max of (lhs - rhs); <= 0 means the inequality holds
    std::size_t samples;
};

struct BoundsReport {
    BoundCertificate cert;
    std::size_t grid;
    std::size_t domain_samples;
    std::vector<CheckResult> checks;      // linear_bound, orbit_geometric, density_bound, density_monotone
    std::vector<CheckResult> diagnostics; // image_endpoint, image_inside, constant_chain, proof_chain_link{1,2,3}

    static constexpr double tolerance = 1e-12;

    bool passed() const;
    const CheckResult& check(const std::string& name) const;
    const CheckResult& diagnostic(const std::string& name) const;
};

/// Samples `grid` points of the certified domain (and of [0,1] for the
/// monotonicity check) and reports the largest violation of each bound.
/// Throws std::invalid_argument for an invalid certificate.
BoundsReport verify_bounds(const KernelParams& k, const CdfMeasure& measure, std::size_t n,
                           std::size_t grid, Execution exec = Execution::parallel);

} // namespace lqso
