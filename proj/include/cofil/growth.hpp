#ifndef COFIL_GROWTH_HPP
#define COFIL_GROWTH_HPP

#include <string>
#include <vector>

#include "cofil/families.hpp"
#include "cofil/rational.hpp"

namespace cofil {

enum class GrowthKind {
    Polynomial,       // eventually polynomial, period 1
    QuasiPolynomial,  // eventually polynomial on residue classes of the period
    Subpolynomial,    // increments become rarer and rarer (logarithmic style)
    Superpolynomial,  // increments themselves grow without a polynomial bound
    Inconclusive,     // ambiguous window; reported, never guessed
};

std::string growth_kind_name(GrowthKind k);

struct GrowthProfile {
    std::vector<std::pair<uint32_t, uint64_t>> dims;
    GrowthKind kind = GrowthKind::Inconclusive;
    uint32_t degree = 0;      // valid for (quasi)polynomial fits
    Rational leading;         // exact rational leading coefficient
    uint32_t period = 1;
    size_t window = 0;        // tail length the stabilization was certified on
    std::string note;
};

// exact filtration dimensions d -> dim M_{<= d}
std::vector<std::pair<uint32_t, uint64_t>> dimension_sequence(const ModuleFamily& family,
                                                              uint32_t dmax);
std::vector<std::pair<uint32_t, uint64_t>> dimension_sequence(const Comodule& m, uint32_t dmax);

// exact finite-difference fit of the cofinite type (e, c); quasi-polynomial
// sequences are fitted per residue class for periods 1..12 and all classes
// must agree on the leading pair
GrowthProfile fit_cofinite_type(const std::vector<std::pair<uint32_t, uint64_t>>& dims);

struct CofiniteRecord {
    uint32_t d = 0;
    bool cofinite = false;
    std::vector<uint64_t> dims_at_caps;
};

// dim filtration_piece(piece(cap), d) across a window of growing caps; the
// piece is declared cofinite at d when the dimensions agree across the window
std::vector<CofiniteRecord> cofinite_check(const ModuleFamily& family, uint32_t dmax,
                                           const std::vector<uint32_t>& caps);

}  // namespace cofil

#endif
