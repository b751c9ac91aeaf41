#ifndef COFIL_COALGEBRA_HPP
#define COFIL_COALGEBRA_HPP

#include <memory>
#include <tuple>
#include <vector>

#include "cofil/hopf.hpp"

namespace cofil {

// A finite dimensional coalgebra presented by structure constants:
//   Delta(c_i) = sum_{j,k} delta[i](j,k,coeff) c_j (x) c_k,
//   counit(c_i) = counit[i].
// basis[] keeps the labels as Hopf elements when the coalgebra came from a
// model; for abstract coalgebras it may be empty.
struct FiniteCoalgebra {
    Field field{2};
    std::vector<HopfElement> basis;
    std::vector<uint32_t> basis_degree;
    std::vector<std::vector<std::tuple<uint32_t, uint32_t, FVal>>> delta;
    std::vector<FVal> counit;

    size_t dim() const { return delta.size(); }
    // exact coassociativity and counit identities; throws CrossCheckFailure
    void verify() const;
    // coefficient matrix of Delta(v) for a coordinate vector v: T[j][k]
    Matrix delta_matrix(const Vec& v) const;
    bool is_delta_closed(const Subspace& w) const;
};

// the subcoalgebra O(G)_{<= d, phi} with structure constants from the model
FiniteCoalgebra filtration_coalgebra(const FilteredHopfModel& model, uint32_t d);

// coordinate coalgebra of the Frobenius kernel G_{(r)} for G_a and U_N:
// monomial basis with all exponents < p^r, coproduct truncated termwise
FiniteCoalgebra frobenius_kernel_coalgebra(const FilteredHopfModel& model, uint32_t r);

// smallest subspace of the ambient coalgebra containing X that is closed
// under both Sweedler slots; it is the smallest subcoalgebra containing X
Subspace generated_subcoalgebra(const FiniteCoalgebra& ambient, const Subspace& x);

// image coalgebra along a coalgebra map restriction phi: D -> target given by
// the images of D's basis vectors in target coordinates.  Checks that phi
// intertwines the coproducts on the basis, forms the image span, and returns
// it with re-indexed structure constants (coassociativity re-verified).
struct ImageCoalgebra {
    FiniteCoalgebra coalgebra;
    Subspace image;  // inside the target's coordinates
};
ImageCoalgebra image_coalgebra(const FiniteCoalgebra& d, const std::vector<Vec>& phi,
                               const FiniteCoalgebra& target);

}  // namespace cofil

#endif
