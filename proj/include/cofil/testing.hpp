#ifndef COFIL_TESTING_HPP
#define COFIL_TESTING_HPP

#include <random>

#include "cofil/coalgebra.hpp"
#include "cofil/comodule.hpp"

// Exhaustive reference computations and randomized generators used by the
// test and verification suites.  Everything here is deliberately independent
// of the production algorithms it cross-checks: subspaces are enumerated,
// closures are scanned, freeness is witnessed by an explicit basis.
namespace cofil::testing {

// all subspaces of F_2^n via reduced echelon normal forms (n <= ~14)
std::vector<Subspace> enumerate_subspaces_f2(size_t n);

// all delta-closed subspaces of a coalgebra over F_2
std::vector<Subspace> all_delta_closed_subspaces(const FiniteCoalgebra& c);

// smallest delta-closed subspace containing x, by scanning the closed list
Subspace minimal_closed_containing(const std::vector<Subspace>& closed, const Subspace& x);

// largest subspace V with Delta(V) inside V (x) X, by scanning all subspaces
Subspace max_stable_subspace(const Comodule& m, const Subspace& x_padded,
                             const std::vector<Subspace>& all);

// explicit freeness witness over k[u_0..u_{s-1}]/(u_i^p): choose a complement
// basis of rad M and check that its translates under all p-ary monomials in
// the operators form a basis
bool free_by_basis_witness(const Field& k, const std::vector<Matrix>& ops, size_t dim);

// random commuting p-nilpotent operator families (valid G_a-modules)
GaOperatorModule random_operator_module(const Field& f, size_t dim, size_t num_ops,
                                        std::mt19937_64& rng);
// random subspace of codimension <= maxcodim in k^n
Subspace random_subspace_of_codim(const Field& f, size_t n, size_t maxcodim,
                                  std::mt19937_64& rng);
// random coaction-stable subspace of a comodule (closure of random vectors)
Submodule random_subcomodule(const Comodule& m, std::mt19937_64& rng);

}  // namespace cofil::testing

#endif
