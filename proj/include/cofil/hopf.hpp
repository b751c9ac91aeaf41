#ifndef COFIL_HOPF_HPP
#define COFIL_HOPF_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "cofil/matrix.hpp"

namespace cofil {

enum class ModelKind { Ga, UN, GLN };

std::string kind_name(ModelKind k);

// Monomial in the coordinate algebra of one of the three models.
//   Ga : variable 0 is t.
//   UN : variable i*N+j (0-based) is y_{i+1,j+1}, only i < j occurs.
//   GLN: variable i*N+j is x_{i+1,j+1}; det_neg e >= 0 stands for det^{-e}.
// Exponents are kept sorted by variable id with no zero entries, so equal
// monomials are representationally equal.
struct Monomial {
    std::vector<std::pair<uint16_t, uint32_t>> exps;
    uint32_t det_neg = 0;

    uint32_t degree_sum() const;           // total degree of the polynomial part
    uint32_t exp_of(uint16_t var) const;
    Monomial times(const Monomial& o) const;
    Monomial power(uint32_t k) const;
    bool is_one() const { return exps.empty() && det_neg == 0; }
    bool divides(const Monomial& o) const;  // polynomial part only, ignores det
    Monomial quotient_by(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return det_neg == o.det_neg && exps == o.exps; }
    bool operator<(const Monomial& o) const;  // graded order; ties by det then lex
};

// Element of O(G): finitely many monomials with nonzero coefficients.  For
// GL_N the canonical form keeps every term at one common det power with the
// numerator not divisible by det.
struct HopfElement {
    std::map<Monomial, FVal> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const HopfElement& o) const { return terms == o.terms; }
};

using TensorTerm = std::pair<Monomial, Monomial>;
using TensorPoly = std::map<TensorTerm, FVal>;

// A coordinate Hopf algebra of G_a, U_N or GL_N over a finite field, with the
// degree filtration induced by the standard closed embedding into GL_N, a
// tracked filtration cap, ordered bases of every filtration piece, and exact
// coordinates of elements in those bases.
class FilteredHopfModel {
public:
    FilteredHopfModel(ModelKind kind, Field field, uint32_t cap, uint32_t N = 0);
    ~FilteredHopfModel();

    ModelKind kind() const { return kind_; }
    uint32_t N() const { return n_; }
    const Field& field() const { return field_; }
    uint32_t cap() const { return cap_; }
    uint32_t var_count() const { return var_count_; }
    std::string var_name(uint16_t var) const;
    uint16_t var_by_name(const std::string& name) const;

    // --- element construction -------------------------------------------
    HopfElement zero() const { return {}; }
    HopfElement one() const;
    HopfElement monomial(const Monomial& m, FVal c = 1) const;
    HopfElement generator(uint16_t var) const;   // t, y_{i,j} or x_{i,j}
    HopfElement t_power(uint32_t n) const;       // Ga convenience
    HopfElement det_inverse() const;             // GLN only
    HopfElement det_polynomial() const;          // GLN only, expanded det
    HopfElement add(const HopfElement& f, const HopfElement& g) const;
    HopfElement scale(const HopfElement& f, FVal c) const;
    HopfElement canonicalize(HopfElement f) const;

    // --- Hopf structure ---------------------------------------------------
    uint32_t degree(const HopfElement& f) const;  // throws ValidationError on 0
    uint32_t monomial_degree(const Monomial& m) const;
    HopfElement product(const HopfElement& f, const HopfElement& g) const;
    TensorPoly coproduct_tensor(const HopfElement& f) const;
    std::vector<std::pair<HopfElement, HopfElement>> coproduct(const HopfElement& f) const;
    HopfElement antipode(const HopfElement& f) const;
    FVal counit(const HopfElement& f) const;

    // image in O(G_{(r)}): drop every term with a variable exponent >= p^r
    HopfElement frobenius_quotient(uint32_t r, const HopfElement& f) const;
    // pullback along the Lang map g -> F^r(g) g^{-1}, mu o (F^r* (x) sigma) o Delta
    HopfElement lang_pullback(uint32_t r, const HopfElement& f) const;
    // algebra endomorphism raising every coordinate to the p^r power
    HopfElement frobenius_star(uint32_t r, const HopfElement& f) const;

    // --- filtration bases -------------------------------------------------
    size_t basis_size(uint32_t d) const;
    HopfElement basis_element(uint32_t d, size_t idx) const;
    uint32_t basis_elt_degree(size_t idx) const;   // degree of global basis element idx
    // coordinates of f in the basis of O(G)_{<= d}; throws if f is not in it
    Vec coords(const HopfElement& f, uint32_t d) const;
    // Ga/UN fast path: basis elements are monomials
    size_t monomial_index(const Monomial& m) const;
    const Monomial& indexed_monomial(size_t idx) const;

private:
    struct GlCache;
    void ensure_basis(uint32_t d) const;
    void ensure_monomials(uint32_t d) const;
    void ensure_gl_basis(uint32_t d) const;
    TensorPoly coproduct_generator(uint16_t var) const;
    HopfElement antipode_generator(uint16_t var) const;
    HopfElement expand_det_power(uint32_t k) const;
    // exact division attempt of a det_neg-free polynomial by det
    bool try_divide_by_det(const HopfElement& f, HopfElement& quotient) const;
    Vec gl_numerator_coords(const HopfElement& f) const;

    ModelKind kind_;
    uint32_t n_;  // N for UN/GLN, 0 for Ga
    Field field_;
    uint32_t cap_;
    uint32_t var_count_;
    std::vector<uint16_t> vars_;  // active variable ids in order

    mutable std::recursive_mutex mu_;
    // monomial tables for Ga/UN (and GLN numerators)
    mutable std::vector<Monomial> monomials_;             // ordered by degree, then enumeration order
    mutable std::map<Monomial, size_t> monomial_index_;
    mutable std::vector<size_t> monomial_counts_;          // #monomials of degree <= d
    mutable uint32_t monomials_built_ = 0;
    mutable bool monomials_any_ = false;
    mutable std::unique_ptr<GlCache> gl_;
    mutable std::vector<HopfElement> sigma_gen_;           // cached antipodes of generators
    mutable std::vector<HopfElement> det_pow_;             // cached det^k expansions
};

std::string to_string(const FilteredHopfModel& model, const HopfElement& f);

// number of monomials of total degree <= d in N^2 matrix coordinates,
// i.e. dim O(M_{N,N})_{<= d}, computed by explicit enumeration
uint64_t matrix_bialgebra_dim(uint32_t N, uint32_t d);

}  // namespace cofil

#endif
