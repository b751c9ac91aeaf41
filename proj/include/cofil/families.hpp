#ifndef COFIL_FAMILIES_HPP
#define COFIL_FAMILIES_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cofil/comodule.hpp"

namespace cofil {

// A filtered module given by a generator rule: piece(d) materializes the
// degree-<= d filtration piece as a comodule, with bases nested across caps.
class ModuleFamily {
public:
    virtual ~ModuleFamily() = default;
    virtual std::string name() const = 0;
    virtual ModelPtr model() const = 0;
    virtual Comodule piece(uint32_t cap) const = 0;
    // dim of piece(cap); families override this when the count is available
    // without materializing the coaction
    virtual uint64_t piece_dim(uint32_t cap) const { return piece(cap).dim(); }
    // cap whose piece has exactly multiple * p^r generators, so that the
    // restriction to G_{(r)} is a direct summand of the full restriction
    virtual uint32_t block_complete_cap(uint32_t r, uint32_t multiple) const;
    // basis-inclusion matrix piece(cap_small) -> piece(cap_big); the default
    // assumes nested bases with the smaller a prefix of the larger
    virtual Matrix inclusion(uint32_t cap_small, uint32_t cap_big) const;
    // basis of piece(cap) as coordinate vectors inside the regular module
    // O(G)_{<= cap}; only families presented inside the regular module have one
    virtual std::vector<Vec> parent_vectors(uint32_t cap) const;
};

// O(G)_{<= d} with the right regular coaction (G_a and U_N)
class RegularFamily : public ModuleFamily {
public:
    explicit RegularFamily(ModelPtr model);
    std::string name() const override;
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override;
    uint32_t block_complete_cap(uint32_t r, uint32_t multiple) const override;
    std::vector<Vec> parent_vectors(uint32_t cap) const override;

private:
    ModelPtr model_;
};

// the Lang-map image over G_a: pieces spanned by (t^{p^d} - t)^k, k p^d <= cap
class LangGaFamily : public ModuleFamily {
public:
    LangGaFamily(ModelPtr model, uint32_t d);
    std::string name() const override;
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override;
    uint32_t block_complete_cap(uint32_t r, uint32_t multiple) const override;
    std::vector<Vec> parent_vectors(uint32_t cap) const override;
    uint32_t q() const { return q_; }
    uint32_t d() const { return d_; }
    // the generator (t^q - t)^k expanded in t
    HopfElement basis_polynomial(uint32_t k) const;

private:
    ModelPtr model_;
    uint32_t d_, q_;
    mutable std::vector<HopfElement> powers_;  // cached w^k
    const HopfElement& wpow(uint32_t k) const;
};

// the Lang-map image over U_N (N = 3 at desk scale): pieces are the images of
// lang_pullback on O(U_N)_{<= d} for the largest d with (p^r + N - 1) d <= cap,
// saturated to the largest subcomodule of the left regular piece they contain
class LangUnFamily : public ModuleFamily {
public:
    LangUnFamily(ModelPtr model, uint32_t r);
    std::string name() const override;
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;  // materializes; small caps only
    uint64_t piece_dim(uint32_t cap) const override;
    uint32_t degree_for_cap(uint32_t cap) const;
    // saturated image span inside O(U_N)_{<= cap} coordinates
    const Subspace& span_for_degree(uint32_t d, uint32_t coord_degree) const;
    uint32_t stretch() const { return stretch_; }

private:
    uint32_t r_;
    ModelPtr model_;
    uint32_t stretch_;  // p^r + N - 1
    mutable std::map<std::pair<uint32_t, uint32_t>, Subspace> spans_;
};

// quotient of the regular family by a subfamily contained in it
class QuotientFamily : public ModuleFamily {
public:
    QuotientFamily(std::shared_ptr<RegularFamily> parent, std::shared_ptr<ModuleFamily> sub);
    std::string name() const override;
    ModelPtr model() const override;
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override;
    Matrix inclusion(uint32_t cap_small, uint32_t cap_big) const override;
    // the quotient with its projection data, for socle-basis questions
    QuotientComodule quotient_at(uint32_t cap) const;
    Submodule sub_space_at(uint32_t cap) const;
    const ModuleFamily& sub() const { return *sub_; }
    const RegularFamily& parent() const { return *parent_; }

private:
    std::shared_ptr<RegularFamily> parent_;
    std::shared_ptr<ModuleFamily> sub_;
};

// the primitives submodule of k[t]: span{1, t^{p^i}}
class PrimitivesFamily : public ModuleFamily {
public:
    explicit PrimitivesFamily(ModelPtr model);
    std::string name() const override { return "primitives"; }
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override;
    // parent-coordinate vectors of the basis inside O(G_a)_{<= cap}
    std::vector<Vec> parent_vectors(uint32_t cap) const override;

private:
    ModelPtr model_;
};

// trivial modules whose rank grows with the cap (not cofinite)
class TrivialConstantFamily : public ModuleFamily {
public:
    explicit TrivialConstantFamily(ModelPtr model);
    std::string name() const override { return "trivial_constant"; }
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override { return cap + 1; }

private:
    ModelPtr model_;
};

// quotient of the primitives module by its socle: growing trivial module
class PrimitivesModSocleFamily : public ModuleFamily {
public:
    explicit PrimitivesModSocleFamily(ModelPtr model);
    std::string name() const override { return "primitives_mod_socle"; }
    ModelPtr model() const override { return model_; }
    Comodule piece(uint32_t cap) const override;
    uint64_t piece_dim(uint32_t cap) const override;

private:
    ModelPtr model_;
};

// largest subspace of the given one whose left-regular coaction components
// stay inside it, computed symbolically from coproducts (no materialized
// coaction); vectors live in the coordinates of O(G)_{<= coord_degree}
Subspace saturate_left_subcomodule(const FilteredHopfModel& model, Subspace w,
                                   uint32_t coord_degree);

// adapter presenting one finite comodule as a (constant beyond its ambient
// degree) filtered family, so verdict and growth commands accept explicit
// module files
class FixedComoduleFamily : public ModuleFamily {
public:
    explicit FixedComoduleFamily(Comodule m) : m_(std::move(m)) {}
    std::string name() const override { return "module"; }
    ModelPtr model() const override { return m_.model(); }
    Comodule piece(uint32_t cap) const override {
        if (cap >= m_.ambient_degree()) return m_;
        return sub_comodule(m_, filtration_piece(m_, cap));
    }
    uint32_t block_complete_cap(uint32_t, uint32_t) const override {
        return m_.ambient_degree();  // the whole module is its own truncation
    }

private:
    Comodule m_;
};

// Hom(J_{<= cap}, M) for each cap together with the restriction maps between
// consecutive caps; stabilized = dimension of the image of the composite from
// the largest cap into the smallest
struct HomProbeReport {
    std::vector<uint32_t> caps;
    std::vector<uint64_t> hom_dims;
    uint64_t stabilized_image_dim = 0;
    bool vanished = false;
};
HomProbeReport hom_vanishing_probe(const ModuleFamily& j, const Comodule& m,
                                   std::vector<uint32_t> caps);

}  // namespace cofil

#endif
