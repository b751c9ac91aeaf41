#ifndef COFIL_ACCEPTANCE_HPP
#define COFIL_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cofil {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string details;
};

// The full verification matrix: dimension formulas, antipode degrees, the
// regular-piece identity, cofinite types, socles of Lang quotients, the
// proper-mock dichotomy, exhaustive oracle agreement, the property suites,
// hom-vanishing stabilization, growth degrees, and the oracle-decided
// constants.  Every tolerance is exact and pinned here.
std::vector<CriterionResult> run_acceptance(uint64_t seed = 2026);

}  // namespace cofil

#endif
