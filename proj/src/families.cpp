#include "cofil/families.hpp"

#include <algorithm>

#include "cofil/errors.hpp"

namespace cofil {

uint32_t ModuleFamily::block_complete_cap(uint32_t r, uint32_t multiple) const {
    // generator count multiple * p^r for the regular-style cap rule; families
    // with a different generator bookkeeping override this
    if (model()->kind() != ModelKind::Ga)
        throw ValidationError("family '" + name() + "' has no block-complete cap rule");
    uint32_t q = 1;
    for (uint32_t i = 0; i < r; ++i) q *= model()->field().p();
    return multiple * q - 1;
}

Matrix ModuleFamily::inclusion(uint32_t cap_small, uint32_t cap_big) const {
    if (cap_small > cap_big) throw ValidationError("inclusion caps out of order");
    uint64_t ds = piece_dim(cap_small), db = piece_dim(cap_big);
    Matrix m(model()->field(), db, ds);
    for (uint64_t i = 0; i < ds; ++i) m.at(i, i) = model()->field().one();
    return m;
}

std::vector<Vec> ModuleFamily::parent_vectors(uint32_t) const {
    throw ValidationError("family '" + name() + "' is not presented inside the regular module");
}

// --- regular ---------------------------------------------------------------

RegularFamily::RegularFamily(ModelPtr model) : model_(std::move(model)) {
    if (model_->kind() == ModelKind::GLN)
        throw ValidationError("regular family is built for G_a and U_N");
}

std::string RegularFamily::name() const {
    return std::string("regular_") + kind_name(model_->kind());
}

Comodule RegularFamily::piece(uint32_t cap) const { return regular_comodule(model_, cap); }

uint64_t RegularFamily::piece_dim(uint32_t cap) const { return model_->basis_size(cap); }

uint32_t RegularFamily::block_complete_cap(uint32_t r, uint32_t multiple) const {
    if (model_->kind() != ModelKind::Ga)
        throw ValidationError("block-complete caps implemented for G_a only");
    uint32_t q = 1;
    for (uint32_t i = 0; i < r; ++i) q *= model_->field().p();
    return multiple * q - 1;
}

std::vector<Vec> RegularFamily::parent_vectors(uint32_t cap) const {
    std::vector<Vec> out;
    for (size_t i = 0; i < model_->basis_size(cap); ++i) {
        Vec e(model_->basis_size(cap), 0);
        e[i] = model_->field().one();
        out.push_back(std::move(e));
    }
    return out;
}

// --- Lang image over G_a ----------------------------------------------------

LangGaFamily::LangGaFamily(ModelPtr model, uint32_t d) : model_(std::move(model)), d_(d) {
    if (model_->kind() != ModelKind::Ga) throw ValidationError("Lang G_a family needs G_a");
    if (d_ < 1) throw ValidationError("Lang family needs d >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < d_; ++i) q *= model_->field().p();
    if (q > model_->cap()) throw CapOverflow("cap smaller than p^d");
    q_ = (uint32_t)q;
}

std::string LangGaFamily::name() const { return "lang_ga"; }

const HopfElement& LangGaFamily::wpow(uint32_t k) const {
    if (powers_.empty()) {
        powers_.push_back(model_->one());
        // w = t^q - t
        HopfElement w = model_->add(model_->t_power(q_),
                                    model_->scale(model_->t_power(1), model_->field().neg(1)));
        powers_.push_back(w);
    }
    while (powers_.size() <= k) powers_.push_back(model_->product(powers_.back(), powers_[1]));
    return powers_[k];
}

HopfElement LangGaFamily::basis_polynomial(uint32_t k) const { return wpow(k); }

Comodule LangGaFamily::piece(uint32_t cap) const {
    if (cap > model_->cap()) throw CapOverflow("piece cap beyond model cap");
    uint32_t kmax = cap / q_;
    Comodule m(model_, kmax + 1, cap);
    const Field& f = model_->field();
    // Delta((t^q - t)^k) = sum binom(k, i) w^i (x) w^{k-i}, w primitive
    for (uint32_t k = 0; k <= kmax; ++k)
        for (uint32_t i = 0; i <= k; ++i) {
            uint32_t b = lucas_binom(k, i, f.p());
            if (!b) continue;
            FVal bc = f.from_int(b);
            for (const auto& [mono, c] : wpow(k - i).terms)
                m.add_entry(k, i, (uint32_t)model_->monomial_index(mono), f.mul(bc, c));
        }
    m.finalize();
    return m;
}

uint64_t LangGaFamily::piece_dim(uint32_t cap) const { return cap / q_ + 1; }

uint32_t LangGaFamily::block_complete_cap(uint32_t r, uint32_t multiple) const {
    uint32_t pr = 1;
    for (uint32_t i = 0; i < r; ++i) pr *= model_->field().p();
    return (multiple * pr - 1) * q_;
}

std::vector<Vec> LangGaFamily::parent_vectors(uint32_t cap) const {
    std::vector<Vec> out;
    uint32_t kmax = cap / q_;
    for (uint32_t k = 0; k <= kmax; ++k) out.push_back(model_->coords(wpow(k), cap));
    return out;
}

// --- Lang image over U_N ----------------------------------------------------

namespace {

// module-slot components of the left coaction of v, keyed by the first
// Sweedler slot of the plain coproduct; the spanned subspace equals the
// component span of tau (sigma (x) id) Delta(v) because sigma is injective
std::map<Monomial, HopfElement> left_component_polys(const FilteredHopfModel& model,
                                                     const HopfElement& v) {
    std::map<Monomial, HopfElement> grouped;
    for (const auto& [t, c] : model.coproduct_tensor(v)) {
        HopfElement& acc = grouped[t.first];
        acc = model.add(acc, model.monomial(t.second, c));
    }
    for (auto it = grouped.begin(); it != grouped.end();)
        it = it->second.is_zero() ? grouped.erase(it) : std::next(it);
    return grouped;
}

}  // namespace

LangUnFamily::LangUnFamily(ModelPtr model, uint32_t r) : r_(r), model_(std::move(model)) {
    if (model_->kind() != ModelKind::UN || model_->N() != 3)
        throw ValidationError("the Lang U_N family is built for U_3");
    if (r_ < 1) throw ValidationError("Lang family needs r >= 1");
    uint32_t q = 1;
    for (uint32_t i = 0; i < r_; ++i) q *= model_->field().p();
    stretch_ = q + model_->N() - 1;
}

std::string LangUnFamily::name() const { return "lang_un"; }

uint32_t LangUnFamily::degree_for_cap(uint32_t cap) const { return cap / stretch_; }

Subspace saturate_left_subcomodule(const FilteredHopfModel& model, Subspace w,
                                   uint32_t coord_degree) {
    const Field& k = model.field();
    size_t nc = model.basis_size(coord_degree);
    if (w.ambient_dim() != nc) throw ValidationError("subspace does not match the window");
    while (true) {
        auto basis = w.basis();
        bool stable = true;
        // residuals of the components mod w, keyed by the first Sweedler slot
        // so that constraints line up across basis vectors
        std::map<Monomial, std::map<size_t, Vec>> resid_by_slot;
        for (size_t i = 0; i < basis.size(); ++i) {
            HopfElement v;
            for (size_t c = 0; c < nc; ++c)
                if (basis[i][c])
                    v = model.add(
                        v, model.scale(model.basis_element(coord_degree, c), basis[i][c]));
            for (const auto& [slot, poly] : left_component_polys(model, v)) {
                Vec resid = w.reduce(model.coords(poly, coord_degree));
                bool nz = false;
                for (FVal t : resid)
                    if (t) { nz = true; break; }
                if (nz) {
                    stable = false;
                    resid_by_slot[slot].emplace(i, std::move(resid));
                }
            }
        }
        if (stable) break;
        // shrink: a combination sum alpha_i v_i survives iff for every slot
        // the combined residual vanishes
        EchelonSolver cons(k, basis.size());
        for (const auto& [slot, rows] : resid_by_slot) {
            for (size_t col = 0; col < nc; ++col) {
                Vec row(basis.size(), 0);
                bool nz = false;
                for (const auto& [i, resid] : rows) {
                    if (resid[col]) {
                        row[i] = resid[col];
                        nz = true;
                    }
                }
                if (nz) cons.insert(row);
                if (cons.dim() == basis.size()) break;
            }
            if (cons.dim() == basis.size()) break;
        }
        Matrix cmat(k, cons.dim(), basis.size());
        for (size_t r = 0; r < cons.dim(); ++r) {
            Vec row = cons.row(r);
            for (size_t c = 0; c < basis.size(); ++c) cmat.at(r, c) = row[c];
        }
        Subspace next(k, nc);
        for (const auto& al : kernel_basis(cmat)) {
            Vec v(nc, 0);
            for (size_t i = 0; i < basis.size(); ++i)
                if (al[i])
                    for (size_t t = 0; t < nc; ++t) v[t] = k.add(v[t], k.mul(al[i], basis[i][t]));
            next.add_vector(v);
        }
        if (next.dim() == w.dim()) break;
        w = next;
    }
    return w;
}

const Subspace& LangUnFamily::span_for_degree(uint32_t d, uint32_t coord_degree) const {
    auto key = std::make_pair(d, coord_degree);
    auto it = spans_.find(key);
    if (it != spans_.end()) return it->second;
    const Field& k = model_->field();
    size_t nc = model_->basis_size(coord_degree);
    // image of the Lang pullback on O(U_N)_{<= d}, then the largest
    // subcomodule of the left regular piece contained in it
    Subspace w(k, nc);
    for (size_t i = 0; i < model_->basis_size(d); ++i) {
        HopfElement g = model_->lang_pullback(r_, model_->basis_element(d, i));
        if (!g.is_zero()) w.add_vector(model_->coords(g, coord_degree));
    }
    w = saturate_left_subcomodule(*model_, std::move(w), coord_degree);
    return spans_.emplace(key, std::move(w)).first->second;
}

uint64_t LangUnFamily::piece_dim(uint32_t cap) const {
    return span_for_degree(degree_for_cap(cap), cap).dim();
}

Comodule LangUnFamily::piece(uint32_t cap) const {
    const Field& k = model_->field();
    uint32_t amb = (model_->N() - 1) * cap;
    if (amb > model_->cap()) throw CapOverflow("left coaction needs a larger model cap");
    const Subspace& w = span_for_degree(degree_for_cap(cap), cap);
    auto basis = w.basis();
    EchelonSolver coordsolver(k, w.ambient_dim());
    for (const auto& b : basis) coordsolver.insert(b);
    Comodule m(model_, (uint32_t)basis.size(), amb);
    for (size_t a = 0; a < basis.size(); ++a) {
        HopfElement v;
        for (size_t c = 0; c < w.ambient_dim(); ++c)
            if (basis[a][c]) v = model_->add(v, model_->scale(model_->basis_element(cap, c), basis[a][c]));
        // left coaction components grouped over the coalgebra monomial basis
        std::map<Monomial, HopfElement> by_cmono;
        for (const auto& [t, c] : model_->coproduct_tensor(v)) {
            HopfElement sig = model_->antipode(model_->monomial(t.first, c));
            for (const auto& [mc, cc] : sig.terms) {
                HopfElement& acc = by_cmono[mc];
                acc = model_->add(acc, model_->monomial(t.second, cc));
            }
        }
        for (const auto& [mc, poly] : by_cmono) {
            if (poly.is_zero()) continue;
            auto coeffs = coordsolver.coordinates(model_->coords(poly, cap));
            if (!coeffs)
                throw CrossCheckFailure("left coaction component escapes the saturated span");
            uint32_t j = (uint32_t)model_->monomial_index(mc);
            for (size_t b = 0; b < coeffs->size(); ++b)
                if ((*coeffs)[b]) m.add_entry((uint32_t)a, (uint32_t)b, j, (*coeffs)[b]);
        }
    }
    m.finalize();
    return m;
}

// --- quotient families -------------------------------------------------------

QuotientFamily::QuotientFamily(std::shared_ptr<RegularFamily> parent,
                               std::shared_ptr<ModuleFamily> sub)
    : parent_(std::move(parent)), sub_(std::move(sub)) {
    if (parent_->model() != sub_->model())
        throw ValidationError("quotient family needs a shared model");
}

std::string QuotientFamily::name() const { return parent_->name() + "_mod_" + sub_->name(); }

ModelPtr QuotientFamily::model() const { return parent_->model(); }

Submodule QuotientFamily::sub_space_at(uint32_t cap) const {
    auto vectors = sub_->parent_vectors(cap);
    Subspace s(model()->field(), parent_->piece_dim(cap));
    for (const auto& v : vectors) {
        if (v.size() != s.ambient_dim())
            throw ValidationError("subfamily is not contained in the regular piece");
        s.add_vector(v);
    }
    return Submodule{s};
}

QuotientComodule QuotientFamily::quotient_at(uint32_t cap) const {
    Comodule parent_piece = parent_->piece(cap);
    return quotient(parent_piece, sub_space_at(cap));
}

Comodule QuotientFamily::piece(uint32_t cap) const { return quotient_at(cap).comodule; }

uint64_t QuotientFamily::piece_dim(uint32_t cap) const {
    return parent_->piece_dim(cap) - sub_->piece_dim(cap);
}

Matrix QuotientFamily::inclusion(uint32_t cap_small, uint32_t cap_big) const {
    const Field& k = model()->field();
    auto qs = quotient_at(cap_small);
    auto qb = quotient_at(cap_big);
    Submodule ss = sub_space_at(cap_big);
    Matrix m(k, qb.comodule.dim(), qs.comodule.dim());
    for (size_t c = 0; c < qs.complement.size(); ++c) {
        Vec e(parent_->piece_dim(cap_big), 0);
        e[qs.complement[c]] = k.one();  // parent bases are nested prefixes
        Vec img = qb.project(ss.space, e);
        for (size_t r = 0; r < img.size(); ++r) m.at(r, c) = img[r];
    }
    return m;
}

// --- primitives and degenerate families --------------------------------------

PrimitivesFamily::PrimitivesFamily(ModelPtr model) : model_(std::move(model)) {
    if (model_->kind() != ModelKind::Ga) throw ValidationError("primitives live in k[t]");
}

uint64_t PrimitivesFamily::piece_dim(uint32_t cap) const {
    uint64_t n = 1, pi = 1;
    while (pi <= cap) {
        ++n;
        pi *= model_->field().p();
    }
    return n;
}

Comodule PrimitivesFamily::piece(uint32_t cap) const {
    const Field& k = model_->field();
    uint64_t n = piece_dim(cap);
    Comodule m(model_, (uint32_t)n, cap);
    m.add_entry(0, 0, 0, k.one());
    uint64_t pi = 1;
    for (uint32_t a = 1; a < n; ++a) {
        // Delta(t^{p^i}) = t^{p^i} (x) 1 + 1 (x) t^{p^i}
        m.add_entry(a, a, 0, k.one());
        m.add_entry(a, 0, (uint32_t)pi, k.one());
        pi *= k.p();
    }
    m.finalize();
    return m;
}

std::vector<Vec> PrimitivesFamily::parent_vectors(uint32_t cap) const {
    size_t nc = model_->basis_size(cap);
    std::vector<Vec> out;
    Vec one(nc, 0);
    one[0] = model_->field().one();
    out.push_back(one);
    uint64_t pi = 1;
    while (pi <= cap) {
        Vec v(nc, 0);
        v[pi] = model_->field().one();
        out.push_back(v);
        pi *= model_->field().p();
    }
    return out;
}

TrivialConstantFamily::TrivialConstantFamily(ModelPtr model) : model_(std::move(model)) {}

Comodule TrivialConstantFamily::piece(uint32_t cap) const {
    return trivial_comodule(model_, cap + 1);
}

PrimitivesModSocleFamily::PrimitivesModSocleFamily(ModelPtr model)
    : model_(std::move(model)) {
    if (model_->kind() != ModelKind::Ga) throw ValidationError("primitives live in k[t]");
}

uint64_t PrimitivesModSocleFamily::piece_dim(uint32_t cap) const {
    return PrimitivesFamily(model_).piece_dim(cap) - 1;
}

Comodule PrimitivesModSocleFamily::piece(uint32_t cap) const {
    Comodule p = PrimitivesFamily(model_).piece(cap);
    Submodule soc = socle_invariants(p);
    return quotient(p, soc).comodule;
}

// --- hom probe ---------------------------------------------------------------

HomProbeReport hom_vanishing_probe(const ModuleFamily& j, const Comodule& m,
                                   std::vector<uint32_t> caps) {
    if (caps.size() < 2) throw ValidationError("hom probe needs at least two caps");
    std::sort(caps.begin(), caps.end());
    const Field& k = m.field();
    HomProbeReport rep;
    rep.caps = caps;
    std::vector<std::vector<Matrix>> homs;
    for (uint32_t c : caps) {
        homs.push_back(hom_space(j.piece(c), m));
        rep.hom_dims.push_back(homs.back().size());
    }
    // restrict the top as far down as possible and measure the surviving span
    Matrix incl = j.inclusion(caps.front(), caps.back());
    EchelonSolver image(k, m.dim() * (size_t)j.piece_dim(caps.front()));
    for (const auto& f : homs.back()) {
        Matrix restricted = f.mul(incl);
        Vec flat;
        flat.reserve(restricted.rows() * restricted.cols());
        for (size_t r = 0; r < restricted.rows(); ++r)
            for (size_t c = 0; c < restricted.cols(); ++c) flat.push_back(restricted.at(r, c));
        image.insert(flat);
    }
    rep.stabilized_image_dim = image.dim();
    rep.vanished = rep.stabilized_image_dim == 0;
    return rep;
}

}  // namespace cofil
