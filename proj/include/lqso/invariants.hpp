#pragma once

#include "lqso/execution.hpp"

#include <string>
#include <vector>

namespace lqso {

struct InvariantResult {
    std::string module;
    std::string name;
    bool passed;
    std::string detail;
};

/// Self-check over every module, sized to finish in a few seconds. Used by
/// the `verify` CLI verb.
std::vector<InvariantResult> run_invariant_suite(Execution exec = Execution::serial);

} // namespace lqso
