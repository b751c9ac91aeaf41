#ifndef COFIL_COMODULE_HPP
#define COFIL_COMODULE_HPP

#include <map>
#include <memory>
#include <vector>

#include "cofil/coalgebra.hpp"
#include "cofil/hopf.hpp"
#include "cofil/matrix.hpp"

namespace cofil {

using ModelPtr = std::shared_ptr<const FilteredHopfModel>;

// A G_a-module presented by its commuting p-nilpotent operators psi_0..psi_{s-1}.
struct GaOperatorModule {
    Field field{2};
    std::vector<Matrix> psi;

    GaOperatorModule(Field f, size_t dim, std::vector<Matrix> ops);
    size_t dim() const { return dim_; }

private:
    size_t dim_;
};

// Finite dimensional right comodule over a filtration piece O(G)_{<= D}:
//   Delta(m_a) = sum rho[a](b, j, c) m_b (x) c_j
// with c_j the model's basis of O(G)_{<= D}.
class Comodule {
public:
    Comodule(ModelPtr model, uint32_t dim, uint32_t ambient_degree);

    const ModelPtr& model() const { return model_; }
    uint32_t dim() const { return dim_; }
    uint32_t ambient_degree() const { return ambient_degree_; }
    const Field& field() const { return model_->field(); }

    void add_entry(uint32_t a, uint32_t b, uint32_t j, FVal c);
    void finalize();  // collect, drop zeros, sort

    // operator of the functional dual to basis element j
    const Matrix& op(uint32_t j) const;
    const std::map<uint32_t, Matrix>& ops() const { return ops_; }
    std::vector<uint32_t> active() const;
    const std::vector<std::tuple<uint32_t, uint32_t, uint32_t, FVal>>& entries() const {
        return rho_;
    }

    // exact counit and coassociativity identities; throws CrossCheckFailure
    void verify() const;

    bool operator==(const Comodule& o) const;

private:
    ModelPtr model_;
    uint32_t dim_, ambient_degree_;
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t, FVal>> rho_;  // (a,b,j,c)
    std::map<uint32_t, Matrix> ops_;
    bool finalized_ = false;
};

// A subcomodule, held as an echelonized subspace of the parent's coordinates.
struct Submodule {
    Subspace space;
};

// --- constructions -------------------------------------------------------

// O(G)_{<= D} with the right regular coaction Delta itself
Comodule regular_comodule(ModelPtr model, uint32_t d);
// O(G)_{<= D} with the left regular coaction f -> sum f_2 (x) sigma(f_1)
Comodule left_regular_comodule(ModelPtr model, uint32_t d);
// trivial comodule of the given rank
Comodule trivial_comodule(ModelPtr model, uint32_t rank);

// divided-power dictionary between operator modules and G_a-comodules
Comodule comodule_from_operators(ModelPtr model, const GaOperatorModule& m, uint32_t cap_d);
GaOperatorModule operators_from_comodule(const Comodule& m);

// --- the largest-subcomodule machinery ------------------------------------

// largest subcomodule of M whose coaction lands in M (x) X; X lives in the
// coordinates of O(G)_{<= dx}
Submodule largest_subcomodule(const Comodule& m, const Subspace& x, uint32_t dx);
// largest subcomodule of M contained in the subspace W of M
Submodule largest_subcomodule_within(const Comodule& m, const Subspace& w);
// filtration piece M_{<= d}: X = O(G)_{<= d} inside O(G)_{<= D}
Submodule filtration_piece(const Comodule& m, uint32_t d);
// socle = invariants for unipotent models; refuses GL_N
Submodule socle_invariants(const Comodule& m);
// smallest coaction-stable subspace containing the given vectors
Submodule generated_subcomodule(const Comodule& m, const std::vector<Vec>& vectors);

// --- category operations ---------------------------------------------------

Comodule tensor(const Comodule& m, const Comodule& n);
Comodule frobenius_twist(const Comodule& m, uint32_t r);
Comodule direct_sum(const Comodule& m, const Comodule& n);
// comodule structure on a coaction-stable subspace, in the subspace basis
Comodule sub_comodule(const Comodule& m, const Submodule& s);
// comodule maps f: M -> N as matrices (rows = N coords, cols = M coords)
std::vector<Matrix> hom_space(const Comodule& m, const Comodule& n);

struct QuotientComodule {
    Comodule comodule;
    std::vector<size_t> complement;  // parent coordinates representing the quotient basis
    // project a parent coordinate vector onto quotient coordinates
    Vec project(const Subspace& sub, const Vec& v) const;
};
QuotientComodule quotient(const Comodule& m, const Submodule& s);

// basis change: rows of p are the new basis in old coordinates
Comodule change_basis(const Comodule& m, const Matrix& p);

}  // namespace cofil

#endif
