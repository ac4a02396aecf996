#pragma once

#include <string>
#include <vector>

namespace csl {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Quick oracle-equivalence suite behind `cslnoise validate`: closed form
/// against quadrature, slab formula, point limits, scaled Bessel functions
/// against the standard library, and a short oscillator simulation.
std::vector<CheckResult> run_self_checks(int threads = 1);

}  // namespace csl
