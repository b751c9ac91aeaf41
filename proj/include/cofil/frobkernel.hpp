#ifndef COFIL_FROBKERNEL_HPP
#define COFIL_FROBKERNEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "cofil/comodule.hpp"

namespace cofil {

// Restriction of a comodule to the Frobenius kernel G_{(r)}: the actions of
// the distribution-algebra generators (duals of t^{p^i} for G_a, of
// y_{s,t}^{p^i} for U_N).  algebra_dim is the dimension of the measuring
// algebra, p^r resp. p^{N' r}.
struct KernelModule {
    Field field{2};
    uint32_t r = 1;
    uint64_t algebra_dim = 1;
    std::vector<Matrix> ops;

    size_t dim() const { return ops.empty() ? dim_hint : ops[0].rows(); }
    size_t dim_hint = 0;  // used when ops is empty (zero-dimensional corner)
    void validate() const;  // p-nilpotency of every generator
};

struct FreenessReport {
    bool free = false;
    uint64_t top_dim = 0;   // minimal generator count dim M / rad M
    int64_t defect = 0;     // dim - top_dim * algebra_dim
};

// Module over the group algebra of (Z/p)^r given by the commuting actions of
// the generators g_i = 1 + u_{i-1}.
struct ElementaryAbelianModule {
    Field field{2};
    uint32_t r = 1;
    std::vector<Matrix> gops;

    size_t dim() const { return gops.empty() ? 0 : gops[0].rows(); }
    void validate() const;  // g_i^p = 1, pairwise commuting
};

KernelModule restrict_to_kernel(const Comodule& m, uint32_t r);
FreenessReport is_free(const KernelModule& m);

ElementaryAbelianModule to_elementary_abelian(const KernelModule& m);
KernelModule from_elementary_abelian(const ElementaryAbelianModule& m);

// alpha defines A = sum alpha_i u_i over the extension K; the pulled back
// K[t]/t^p-module is free iff rank(A) = dim (p-1)/p
struct PiPointResult {
    bool free = false;
    uint64_t rank = 0;
};
PiPointResult pi_point_test(const ElementaryAbelianModule& m, const Field& ext,
                            const std::vector<FVal>& alpha);

// exact support-emptiness (freeness over the group algebra) with pi-point
// sampling as a cross-check.  A sampled non-free point while the exact test
// says free is an implementation bug and raises CrossCheckFailure.
struct SupportProbe {
    bool empty = false;
    FreenessReport freeness;
    std::vector<std::vector<FVal>> witnesses;  // non-free pi-points found
};
SupportProbe support_probe(const ElementaryAbelianModule& m, uint64_t seed,
                           size_t samples_per_field = 20);
bool support_empty(const ElementaryAbelianModule& m, uint64_t seed = 11);

struct HeightRecord {
    uint32_t r = 1;
    uint32_t cap = 0;       // filtration cap used for the restriction
    bool free = false;
    uint64_t top_dim = 0;
    int64_t defect = 0;
    std::vector<std::vector<FVal>> witnesses;
};

struct SupportReport {
    uint32_t rmax = 0;
    std::vector<HeightRecord> per_height;
    bool all_empty = false;        // mock injective up to rmax
    uint32_t first_failing_r = 0;  // 0 when none
};

class ModuleFamily;  // families.hpp

// freeness of the restriction to G_{(r)} for every r <= rmax, computed on
// block-complete truncations at two sizes to confirm the verdict is stable
SupportReport mock_injectivity_verdict(const ModuleFamily& family, uint32_t rmax,
                                       uint64_t seed = 11);

struct InjectivityVerdict {
    uint32_t rmax = 0;
    bool injective = false;
    uint32_t witness_r = 0;  // first r with nonempty support, 0 when none
    std::vector<HeightRecord> per_height;
};

// Pi-point injectivity detection for G_a modules: the pieces M_{<= p^r - 1}
// viewed as (Z/p)^r-modules must all have empty support
InjectivityVerdict ga_injectivity_verdict(const ModuleFamily& family, uint32_t rmax,
                                          uint64_t seed = 11);

}  // namespace cofil

#endif
