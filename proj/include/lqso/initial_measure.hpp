#pragma once

#include "lqso/atomic_measure.hpp"
#include "lqso/cdf_measure.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace lqso {

/// Initial measure together with the descriptor it was parsed from.
struct InitialMeasure {
    std::string descriptor;
    std::variant<AtomicMeasure, CdfMeasure> measure;

    bool is_atomic() const noexcept { return std::holds_alternative<AtomicMeasure>(measure); }
    const AtomicMeasure& atomic() const { return std::get<AtomicMeasure>(measure); }
    const CdfMeasure& continuous() const { return std::get<CdfMeasure>(measure); }
};

/// Weight sums accepted by the descriptor parser before renormalizing.
inline constexpr double descriptor_sum_tolerance = 1e-9;

/// Parses `uniform`, `pow:<k>`, `atoms <a1>:<w1>,<a2>:<w2>,...` or
/// `grid:<path>`. Atoms must be listed in increasing order. Throws
/// std::invalid_argument with a message naming the problem.
InitialMeasure parse_measure(std::string_view descriptor);

/// Reads a CSV whose first two columns are x and g (an optional header row
/// is skipped).
CdfMeasure read_grid_cdf(const std::string& path);

} // namespace lqso
