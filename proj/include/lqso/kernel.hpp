#pragma once

#include <variant>

namespace lqso {

class AtomicMeasure;

/// Inheritance probabilities of the kernel family. The smaller parent is
/// passed on with probability p, the larger one with q = 1 - p.
class KernelParams {
public:
    explicit KernelParams(double p);

    double p() const noexcept { return p_; }
    double q() const noexcept { return 1.0 - p_; }

    /// The parameter pair with the roles of p and q exchanged.
    KernelParams swapped() const { return KernelParams(q()); }

    bool is_identity() const noexcept { return p_ == 0.5; }

    friend bool operator==(const KernelParams&, const KernelParams&) = default;

private:
    double p_;
};

/// Kernel used by the example whose operator is the identity.
struct IdentityKernel {};

using KernelVariant = std::variant<KernelParams, IdentityKernel>;

/// Subinterval of [0,1): [lo, hi) or [lo, hi] when `closed` is set.
struct Interval {
    double lo;
    double hi;
    bool closed = false;

    bool contains(double x) const noexcept
    {
        return x >= lo && (closed ? x <= hi : x < hi);
    }

    static Interval point(double a) { return {a, a, true}; }
};

/// P(x, y, .) as a measure on {x, y}. Throws std::domain_error when a
/// point lies outside [0,1).
AtomicMeasure kernel_measure(const KernelParams& k, double x, double y);

/// P(x, y, A) for the identity kernel: 1, 1/2 or 0 depending on how many
/// of the two points fall in A.
double identity_kernel_measure(double x, double y, const Interval& a);

/// P(x, y, A) for either kernel family.
double kernel_probability(const KernelVariant& kernel, double x, double y, const Interval& a);

void require_unit_point(double x, const char* what);

} // namespace lqso
