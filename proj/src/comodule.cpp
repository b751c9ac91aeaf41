#include "cofil/comodule.hpp"

#include <algorithm>

#include "cofil/errors.hpp"

namespace cofil {

GaOperatorModule::GaOperatorModule(Field f, size_t dim, std::vector<Matrix> ops)
    : field(std::move(f)), psi(std::move(ops)), dim_(dim) {
    size_t n = dim_;
    for (const auto& m : psi) {
        if (m.rows() != n || m.cols() != n) throw ValidationError("operator shape mismatch");
        if (!m.pow(field.p()).is_zero()) throw ValidationError("operator is not p-nilpotent");
    }
    for (size_t i = 0; i < psi.size(); ++i)
        for (size_t j = i + 1; j < psi.size(); ++j)
            if (!(psi[i].mul(psi[j]) == psi[j].mul(psi[i])))
                throw ValidationError("operators do not commute");
}

Comodule::Comodule(ModelPtr model, uint32_t dim, uint32_t ambient_degree)
    : model_(std::move(model)), dim_(dim), ambient_degree_(ambient_degree) {
    if (!model_) throw ValidationError("comodule needs a model");
    if (ambient_degree_ > model_->cap()) throw CapOverflow("ambient degree beyond model cap");
}

void Comodule::add_entry(uint32_t a, uint32_t b, uint32_t j, FVal c) {
    if (finalized_) throw ValidationError("comodule already finalized");
    if (a >= dim_ || b >= dim_) throw ValidationError("comodule index out of range");
    if (c) rho_.emplace_back(a, b, j, c);
}

void Comodule::finalize() {
    const Field& k = field();
    std::sort(rho_.begin(), rho_.end(), [](const auto& x, const auto& y) {
        return std::tie(std::get<0>(x), std::get<2>(x), std::get<1>(x)) <
               std::tie(std::get<0>(y), std::get<2>(y), std::get<1>(y));
    });
    std::vector<std::tuple<uint32_t, uint32_t, uint32_t, FVal>> merged;
    for (const auto& e : rho_) {
        if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(e) &&
            std::get<1>(merged.back()) == std::get<1>(e) &&
            std::get<2>(merged.back()) == std::get<2>(e)) {
            std::get<3>(merged.back()) = k.add(std::get<3>(merged.back()), std::get<3>(e));
        } else {
            merged.push_back(e);
        }
    }
    rho_.clear();
    for (auto& e : merged)
        if (std::get<3>(e)) rho_.push_back(e);
    ops_.clear();
    for (const auto& [a, b, j, c] : rho_) {
        auto it = ops_.find(j);
        if (it == ops_.end()) it = ops_.emplace(j, Matrix(k, dim_, dim_)).first;
        it->second.at(b, a) = k.add(it->second.at(b, a), c);
    }
    finalized_ = true;
}

const Matrix& Comodule::op(uint32_t j) const {
    auto it = ops_.find(j);
    if (it != ops_.end()) return it->second;
    throw ValidationError("no operator stored for that basis index");
}

std::vector<uint32_t> Comodule::active() const {
    std::vector<uint32_t> out;
    for (const auto& [j, m] : ops_) out.push_back(j);
    return out;
}

bool Comodule::operator==(const Comodule& o) const {
    return dim_ == o.dim_ && ambient_degree_ == o.ambient_degree_ && rho_ == o.rho_;
}

void Comodule::verify() const {
    const Field& k = field();
    // counit identity: sum_j eps(c_j) R_j = id
    Matrix acc(k, dim_, dim_);
    for (const auto& [j, r] : ops_) {
        FVal e = model_->counit(model_->basis_element(ambient_degree_, j));
        if (e) acc = acc.add(r.scale(e));
    }
    if (!(acc == Matrix::identity(k, dim_)))
        throw CrossCheckFailure("comodule counit identity fails");
    // coassociativity: compare (Delta_M (x) id)Delta_M with (id (x) Delta)Delta_M
    // as exact (b, j, i) coefficient tensors
    for (uint32_t a = 0; a < dim_; ++a) {
        std::map<std::tuple<uint32_t, uint32_t, uint32_t>, FVal> lhs, rhs;
        for (const auto& [a1, b1, i1, c1] : rho_) {
            if (a1 != a) continue;
            for (const auto& [a2, b2, j2, c2] : rho_) {
                if (a2 != b1) continue;
                auto key = std::make_tuple(b2, j2, i1);
                FVal v = k.mul(c1, c2);
                auto it = lhs.find(key);
                if (it == lhs.end()) lhs.emplace(key, v);
                else {
                    it->second = k.add(it->second, v);
                    if (!it->second) lhs.erase(it);
                }
            }
        }
        for (const auto& [a1, b1, i1, c1] : rho_) {
            if (a1 != a) continue;
            HopfElement ci = model_->basis_element(ambient_degree_, i1);
            for (const auto& [t, tc] : model_->coproduct_tensor(ci)) {
                Vec lc = model_->coords(model_->monomial(t.first), ambient_degree_);
                Vec rc = model_->coords(model_->monomial(t.second), ambient_degree_);
                for (uint32_t j = 0; j < lc.size(); ++j) {
                    if (!lc[j]) continue;
                    for (uint32_t i2 = 0; i2 < rc.size(); ++i2) {
                        if (!rc[i2]) continue;
                        auto key = std::make_tuple(b1, j, i2);
                        FVal v = k.mul(c1, k.mul(tc, k.mul(lc[j], rc[i2])));
                        if (!v) continue;
                        auto it = rhs.find(key);
                        if (it == rhs.end()) rhs.emplace(key, v);
                        else {
                            it->second = k.add(it->second, v);
                            if (!it->second) rhs.erase(it);
                        }
                    }
                }
            }
        }
        if (lhs != rhs) throw CrossCheckFailure("comodule coassociativity fails");
    }
}

Comodule regular_comodule(ModelPtr model, uint32_t d) {
    size_t n = model->basis_size(d);
    Comodule m(model, (uint32_t)n, d);
    for (uint32_t a = 0; a < n; ++a) {
        HopfElement e = model->basis_element(d, a);
        for (const auto& [t, c] : model->coproduct_tensor(e)) {
            Vec bc = model->coords(model->monomial(t.first), d);
            Vec jc = model->coords(model->monomial(t.second), d);
            for (uint32_t b = 0; b < bc.size(); ++b) {
                if (!bc[b]) continue;
                for (uint32_t j = 0; j < jc.size(); ++j) {
                    if (!jc[j]) continue;
                    m.add_entry(a, b, j, model->field().mul(c, model->field().mul(bc[b], jc[j])));
                }
            }
        }
    }
    m.finalize();
    return m;
}

Comodule left_regular_comodule(ModelPtr model, uint32_t d) {
    uint32_t amb;
    switch (model->kind()) {
        case ModelKind::Ga: amb = d; break;
        case ModelKind::UN: amb = (model->N() - 1) * d; break;
        case ModelKind::GLN: amb = (2 * model->N() - 1) * d; break;
        default: amb = d;
    }
    if (amb > model->cap()) throw CapOverflow("left regular ambient degree beyond cap");
    size_t n = model->basis_size(d);
    Comodule m(model, (uint32_t)n, amb);
    const Field& k = model->field();
    for (uint32_t a = 0; a < n; ++a) {
        HopfElement e = model->basis_element(d, a);
        for (const auto& [t, c] : model->coproduct_tensor(e)) {
            // module slot f_2, coalgebra slot sigma(f_1)
            Vec bc = model->coords(model->monomial(t.second), d);
            HopfElement sig = model->antipode(model->monomial(t.first));
            if (sig.is_zero()) continue;
            Vec jc = model->coords(sig, amb);
            for (uint32_t b = 0; b < bc.size(); ++b) {
                if (!bc[b]) continue;
                for (uint32_t j = 0; j < jc.size(); ++j) {
                    if (!jc[j]) continue;
                    m.add_entry(a, b, j, k.mul(c, k.mul(bc[b], jc[j])));
                }
            }
        }
    }
    m.finalize();
    return m;
}

Comodule trivial_comodule(ModelPtr model, uint32_t rank) {
    Comodule m(model, rank, 0);
    for (uint32_t a = 0; a < rank; ++a) m.add_entry(a, a, 0, model->field().one());
    m.finalize();
    return m;
}

Comodule comodule_from_operators(ModelPtr model, const GaOperatorModule& gm, uint32_t cap_d) {
    if (model->kind() != ModelKind::Ga)
        throw ValidationError("operator modules live over the G_a model");
    const Field& k = model->field();
    if (!(k == gm.field)) throw ValidationError("field mismatch");
    uint32_t p = k.p();
    size_t s = gm.psi.size();
    size_t n = gm.dim();
    // R_n = prod psi_i^{n_i} / prod n_i! over the p-adic digits of n
    uint64_t total = 1;
    for (size_t i = 0; i < s; ++i) {
        total *= p;
        if (total > (1u << 24)) throw ValidationError("too many operators");
    }
    Comodule m(model, (uint32_t)n, cap_d);
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t rest = idx;
        Matrix r = Matrix::identity(k, n);
        uint64_t degree = 0;
        uint64_t power = 1;
        FVal denom = k.one();
        for (size_t i = 0; i < s; ++i) {
            uint32_t digit = (uint32_t)(rest % p);
            rest /= p;
            if (digit) {
                r = r.mul(gm.psi[i].pow(digit));
                degree += (uint64_t)digit * power;
                FVal fact = k.one();
                for (uint32_t t = 2; t <= digit; ++t) fact = k.mul(fact, k.from_int(t));
                denom = k.mul(denom, fact);
            }
            power *= p;
        }
        if (r.is_zero()) continue;
        if (degree > cap_d)
            throw ValidationError("cap too small to hold all coaction terms");
        r = r.scale(k.inv(denom));
        for (uint32_t a = 0; a < n; ++a)
            for (uint32_t b = 0; b < n; ++b)
                if (r.at(b, a)) m.add_entry(a, b, (uint32_t)degree, r.at(b, a));
    }
    m.finalize();
    return m;
}

GaOperatorModule operators_from_comodule(const Comodule& m) {
    if (m.model()->kind() != ModelKind::Ga)
        throw ValidationError("operator extraction is a G_a operation");
    const Field& k = m.field();
    uint32_t p = k.p();
    std::vector<Matrix> psi;
    uint64_t pi = 1;
    while (pi <= m.ambient_degree()) {
        auto it = m.ops().find((uint32_t)pi);
        psi.push_back(it == m.ops().end() ? Matrix(k, m.dim(), m.dim()) : it->second);
        pi *= p;
    }
    // drop trailing zero operators
    while (!psi.empty() && psi.back().is_zero()) psi.pop_back();
    GaOperatorModule gm(k, m.dim(), psi);  // validates nilpotency and commutation
    // the divided-power formula must reconstruct the coaction exactly
    Comodule rebuilt = comodule_from_operators(m.model(), gm, m.ambient_degree());
    if (!(rebuilt == m))
        throw ValidationError("coaction is not of divided-power form (malformed comodule)");
    return gm;
}

namespace {

// vector of all module-slot slices: slice[b][j] over active j, flattened
// constraint machinery shared by the fixed-point iterations
struct CoactionSlices {
    // for basis vector v of the iteration space: w_b(v)[j] = sum_a v[a] rho[a][b][j]
    static std::vector<std::map<uint32_t, Vec>> module_slices(const Comodule& m,
                                                              const std::vector<Vec>& vs) {
        const Field& k = m.field();
        std::vector<std::map<uint32_t, Vec>> out(vs.size());
        for (const auto& [a, b, j, c] : m.entries()) {
            for (size_t i = 0; i < vs.size(); ++i) {
                FVal va = vs[i][a];
                if (!va) continue;
                auto& slice = out[i];
                auto it = slice.find(b);
                if (it == slice.end())
                    it = slice.emplace(b, Vec(m.model()->basis_size(m.ambient_degree()), 0)).first;
                it->second[j] = k.add(it->second[j], k.mul(va, c));
            }
        }
        return out;
    }
};

}  // namespace

Submodule largest_subcomodule(const Comodule& m, const Subspace& x, uint32_t dx) {
    const Field& k = m.field();
    size_t nc = m.model()->basis_size(m.ambient_degree());
    if (x.ambient_dim() != m.model()->basis_size(dx))
        throw ValidationError("X does not live in O(G)_{<= dx}");
    // re-express X inside the coaction's coordinate window
    Subspace xin(k, nc);
    if (dx <= m.ambient_degree()) {
        for (auto v : x.basis()) {
            v.resize(nc, 0);
            xin.add_vector(v);
        }
    } else {
        // keep only the part of X inside O(G)_{<= D}: vectors of X whose
        // coordinates beyond the window vanish
        size_t big = x.ambient_dim();
        std::vector<Vec> xb = x.basis();
        Matrix coeffs(k, big - nc, xb.size());
        for (size_t c = 0; c < xb.size(); ++c)
            for (size_t r = 0; r + nc < big; ++r) coeffs.at(r, c) = xb[c][nc + r];
        for (const auto& al : kernel_basis(coeffs)) {
            Vec v(nc, 0);
            for (size_t c = 0; c < xb.size(); ++c)
                if (al[c])
                    for (size_t t = 0; t < nc; ++t) v[t] = k.add(v[t], k.mul(al[c], xb[c][t]));
            xin.add_vector(v);
        }
    }

    // step 1: V1 = {v : Delta(v) in M (x) X}
    std::vector<Vec> vs;
    for (uint32_t i = 0; i < m.dim(); ++i) {
        Vec e(m.dim(), 0);
        e[i] = k.one();
        vs.push_back(e);
    }
    auto slices = CoactionSlices::module_slices(m, vs);
    EchelonSolver constraints(k, m.dim());
    for (uint32_t b = 0; b < m.dim(); ++b) {
        // rows over alpha: residual coordinates of w_b(e_i) mod X
        std::vector<Vec> residuals(m.dim());
        bool any = false;
        for (size_t i = 0; i < vs.size(); ++i) {
            auto it = slices[i].find(b);
            if (it == slices[i].end()) residuals[i] = Vec(nc, 0);
            else {
                residuals[i] = xin.reduce(it->second);
                for (FVal t : residuals[i])
                    if (t) { any = true; break; }
            }
        }
        if (!any) continue;
        for (size_t col = 0; col < nc; ++col) {
            Vec row(m.dim(), 0);
            bool nz = false;
            for (size_t i = 0; i < m.dim(); ++i) {
                row[i] = residuals[i].empty() ? 0 : residuals[i][col];
                if (row[i]) nz = true;
            }
            if (nz) constraints.insert(row);
            if (constraints.dim() == m.dim()) break;
        }
        if (constraints.dim() == m.dim()) break;
    }
    Matrix cm(k, constraints.dim(), m.dim());
    for (size_t r = 0; r < constraints.dim(); ++r) {
        Vec row = constraints.row(r);
        for (size_t c = 0; c < m.dim(); ++c) cm.at(r, c) = row[c];
    }
    Subspace v1 = Subspace::span(k, m.dim(), kernel_basis(cm));

    // step 2: shrink to the largest coaction-stable subspace inside V1
    Subspace v = v1;
    while (true) {
        std::vector<Vec> basis = v.basis();
        if (basis.empty()) break;
        auto sl = CoactionSlices::module_slices(m, basis);
        // constraints on alpha: for each active j, R_j (sum alpha_i v_i) in V
        // equivalently each module-slot component of Delta(v) lies in V
        EchelonSolver cons(k, basis.size());
        // collect R_j v_i as columns grouped by j: easier via ops
        for (uint32_t j : m.active()) {
            const Matrix& rj = m.op(j);
            std::vector<Vec> resid(basis.size());
            bool any = false;
            for (size_t i = 0; i < basis.size(); ++i) {
                resid[i] = v.reduce(rj.apply(basis[i]));
                for (FVal t : resid[i])
                    if (t) { any = true; break; }
            }
            if (!any) continue;
            for (size_t col = 0; col < m.dim(); ++col) {
                Vec row(basis.size(), 0);
                bool nz = false;
                for (size_t i = 0; i < basis.size(); ++i) {
                    row[i] = resid[i][col];
                    if (row[i]) nz = true;
                }
                if (nz) cons.insert(row);
                if (cons.dim() == basis.size()) break;
            }
            if (cons.dim() == basis.size()) break;
        }
        if (cons.dim() == 0) break;  // stable
        Matrix cmat(k, cons.dim(), basis.size());
        for (size_t r = 0; r < cons.dim(); ++r) {
            Vec row = cons.row(r);
            for (size_t c = 0; c < basis.size(); ++c) cmat.at(r, c) = row[c];
        }
        Subspace next(k, m.dim());
        for (const auto& al : kernel_basis(cmat)) {
            Vec w(m.dim(), 0);
            for (size_t i = 0; i < basis.size(); ++i)
                if (al[i])
                    for (size_t t = 0; t < m.dim(); ++t)
                        w[t] = k.add(w[t], k.mul(al[i], basis[i][t]));
            next.add_vector(w);
        }
        if (next.dim() == v.dim()) break;
        v = next;
    }
    return Submodule{v};
}

Submodule largest_subcomodule_within(const Comodule& m, const Subspace& w) {
    const Field& k = m.field();
    if (w.ambient_dim() != m.dim()) throw ValidationError("subspace dimension mismatch");
    Subspace v = w;
    while (true) {
        std::vector<Vec> basis = v.basis();
        if (basis.empty()) break;
        EchelonSolver cons(k, basis.size());
        for (uint32_t j : m.active()) {
            const Matrix& rj = m.op(j);
            std::vector<Vec> resid(basis.size());
            bool any = false;
            for (size_t i = 0; i < basis.size(); ++i) {
                resid[i] = v.reduce(rj.apply(basis[i]));
                for (FVal t : resid[i])
                    if (t) { any = true; break; }
            }
            if (!any) continue;
            for (size_t col = 0; col < m.dim(); ++col) {
                Vec row(basis.size(), 0);
                bool nz = false;
                for (size_t i = 0; i < basis.size(); ++i) {
                    row[i] = resid[i][col];
                    if (row[i]) nz = true;
                }
                if (nz) cons.insert(row);
                if (cons.dim() == basis.size()) break;
            }
            if (cons.dim() == basis.size()) break;
        }
        if (cons.dim() == 0) break;
        Matrix cmat(k, cons.dim(), basis.size());
        for (size_t r = 0; r < cons.dim(); ++r) {
            Vec row = cons.row(r);
            for (size_t c = 0; c < basis.size(); ++c) cmat.at(r, c) = row[c];
        }
        Subspace next(k, m.dim());
        for (const auto& al : kernel_basis(cmat)) {
            Vec x(m.dim(), 0);
            for (size_t i = 0; i < basis.size(); ++i)
                if (al[i])
                    for (size_t t = 0; t < m.dim(); ++t)
                        x[t] = k.add(x[t], k.mul(al[i], basis[i][t]));
            next.add_vector(x);
        }
        if (next.dim() == v.dim()) break;
        v = next;
    }
    return Submodule{v};
}

Submodule filtration_piece(const Comodule& m, uint32_t d) {
    const Field& k = m.field();
    if (d >= m.ambient_degree()) {
        // exhaustion: the whole module
        return Submodule{Subspace::full(k, m.dim())};
    }
    size_t keep = m.model()->basis_size(d);
    // X is the coordinate prefix spanned by basis elements of degree <= d;
    // since it is a subcoalgebra one elimination step suffices, but we run
    // the generic fixed point anyway and let it stabilize immediately.
    Subspace x(k, keep);
    for (size_t i = 0; i < keep; ++i) {
        Vec e(keep, 0);
        e[i] = k.one();
        x.add_vector(e);
    }
    return largest_subcomodule(m, x, d);
}

Submodule socle_invariants(const Comodule& m) {
    if (m.model()->kind() == ModelKind::GLN)
        throw ValidationError("socle equals invariants only for unipotent models");
    return filtration_piece(m, 0);
}

Submodule generated_subcomodule(const Comodule& m, const std::vector<Vec>& vectors) {
    Subspace v(m.field(), m.dim());
    for (const auto& x : vectors) v.add_vector(x);
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& b : v.basis())
            for (uint32_t j : m.active())
                if (v.add_vector(m.op(j).apply(b))) grew = true;
    }
    return Submodule{v};
}

Comodule tensor(const Comodule& m, const Comodule& n) {
    if (m.model() != n.model()) throw ValidationError("tensor requires a shared model");
    const auto& model = *m.model();
    const Field& k = m.field();
    uint32_t d = m.ambient_degree() + n.ambient_degree();
    if (d > model.cap()) throw CapOverflow("tensor ambient degree beyond cap");
    Comodule t(m.model(), m.dim() * n.dim(), d);
    bool monomial_model = model.kind() != ModelKind::GLN;
    for (const auto& [a1, b1, j1, c1] : m.entries()) {
        HopfElement cj1 = model.basis_element(m.ambient_degree(), j1);
        for (const auto& [a2, b2, j2, c2] : n.entries()) {
            FVal c = k.mul(c1, c2);
            if (!c) continue;
            uint32_t a = a1 * n.dim() + a2;
            uint32_t b = b1 * n.dim() + b2;
            if (monomial_model) {
                const Monomial& x = model.indexed_monomial(j1);
                const Monomial& y = model.indexed_monomial(j2);
                t.add_entry(a, b, (uint32_t)model.monomial_index(x.times(y)), c);
            } else {
                HopfElement prod = model.product(cj1, model.basis_element(n.ambient_degree(), j2));
                Vec coords = model.coords(prod, d);
                for (uint32_t j = 0; j < coords.size(); ++j)
                    if (coords[j]) t.add_entry(a, b, j, k.mul(c, coords[j]));
            }
        }
    }
    t.finalize();
    return t;
}

Comodule frobenius_twist(const Comodule& m, uint32_t r) {
    const auto& model = *m.model();
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) q *= model.field().p();
    uint64_t d = q * m.ambient_degree();
    if (d > model.cap()) throw CapOverflow("twist ambient degree beyond cap");
    Comodule t(m.model(), m.dim(), (uint32_t)d);
    for (const auto& [a, b, j, c] : m.entries()) {
        HopfElement img = model.frobenius_star(r, model.basis_element(m.ambient_degree(), j));
        Vec coords = model.coords(img, (uint32_t)d);
        for (uint32_t jj = 0; jj < coords.size(); ++jj)
            if (coords[jj]) t.add_entry(a, b, jj, model.field().mul(c, coords[jj]));
    }
    t.finalize();
    return t;
}

Comodule direct_sum(const Comodule& m, const Comodule& n) {
    if (m.model() != n.model()) throw ValidationError("direct sum requires a shared model");
    uint32_t d = std::max(m.ambient_degree(), n.ambient_degree());
    Comodule t(m.model(), m.dim() + n.dim(), d);
    for (const auto& [a, b, j, c] : m.entries()) t.add_entry(a, b, j, c);
    for (const auto& [a, b, j, c] : n.entries())
        t.add_entry(m.dim() + a, m.dim() + b, j, c);
    t.finalize();
    return t;
}

Comodule sub_comodule(const Comodule& m, const Submodule& s) {
    const Field& k = m.field();
    auto basis = s.space.basis();
    // coaction stability check and restriction in the subspace basis
    Comodule out(m.model(), (uint32_t)basis.size(), m.ambient_degree());
    for (size_t i = 0; i < basis.size(); ++i) {
        for (uint32_t j : m.active()) {
            Vec w = m.op(j).apply(basis[i]);
            auto coords = [&]() -> Vec {
                // express w over the subspace basis
                Vec resid = s.space.reduce(w);
                for (FVal t : resid)
                    if (t) throw ValidationError("subspace is not coaction-stable");
                Vec c(basis.size(), 0);
                Vec tmp = w;
                const auto& piv = s.space.pivots();
                for (size_t bi = 0; bi < basis.size(); ++bi) {
                    FVal cc = tmp[piv[bi]];
                    if (!cc) continue;
                    c[bi] = cc;
                    for (size_t t = 0; t < tmp.size(); ++t)
                        tmp[t] = k.sub(tmp[t], k.mul(cc, basis[bi][t]));
                }
                return c;
            }();
            for (size_t b = 0; b < coords.size(); ++b)
                if (coords[b]) out.add_entry((uint32_t)i, (uint32_t)b, j, coords[b]);
        }
    }
    out.finalize();
    return out;
}

std::vector<Matrix> hom_space(const Comodule& m, const Comodule& n) {
    if (m.model() != n.model()) throw ValidationError("hom requires a shared model");
    const Field& k = m.field();
    size_t rows = n.dim(), cols = m.dim();
    // unknowns f[r][c]; constraints f R^M_j - R^N_j f = 0 for all j
    std::vector<uint32_t> js;
    for (uint32_t j : m.active()) js.push_back(j);
    for (uint32_t j : n.active())
        if (std::find(js.begin(), js.end(), j) == js.end()) js.push_back(j);
    std::sort(js.begin(), js.end());
    EchelonSolver cons(k, rows * cols);
    Matrix zm(k, m.dim(), m.dim()), zn(k, n.dim(), n.dim());
    for (uint32_t j : js) {
        const Matrix& rm = m.ops().count(j) ? m.op(j) : zm;
        const Matrix& rn = n.ops().count(j) ? n.op(j) : zn;
        // entry (r, c) of f R^M_j - R^N_j f as linear form in f
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) {
                Vec row(rows * cols, 0);
                bool nz = false;
                for (size_t t = 0; t < cols; ++t) {
                    FVal v = rm.at(t, c);
                    if (v) { row[r * cols + t] = k.add(row[r * cols + t], v); nz = true; }
                }
                for (size_t t = 0; t < rows; ++t) {
                    FVal v = rn.at(r, t);
                    if (v) {
                        row[t * cols + c] = k.sub(row[t * cols + c], v);
                        nz = true;
                    }
                }
                if (nz) cons.insert(row);
            }
    }
    Matrix cmat(k, cons.dim(), rows * cols);
    for (size_t r = 0; r < cons.dim(); ++r) {
        Vec row = cons.row(r);
        for (size_t c = 0; c < rows * cols; ++c) cmat.at(r, c) = row[c];
    }
    std::vector<Matrix> out;
    for (const auto& v : kernel_basis(cmat)) {
        Matrix f(k, rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) f.at(r, c) = v[r * cols + c];
        out.push_back(std::move(f));
    }
    return out;
}

Vec QuotientComodule::project(const Subspace& sub, const Vec& v) const {
    Vec r = sub.reduce(v);
    Vec out(complement.size(), 0);
    for (size_t i = 0; i < complement.size(); ++i) out[i] = r[complement[i]];
    return out;
}

QuotientComodule quotient(const Comodule& m, const Submodule& s) {
    const Field& k = m.field();
    if (s.space.ambient_dim() != m.dim()) throw ValidationError("submodule dimension mismatch");
    // genuine subcomodule check
    for (const auto& b : s.space.basis())
        for (uint32_t j : m.active())
            if (!s.space.contains(m.op(j).apply(b)))
                throw ValidationError("subspace is not coaction-stable");
    // complement = standard vectors at non-pivot coordinates
    std::vector<bool> is_pivot(m.dim(), false);
    for (size_t p : s.space.pivots()) is_pivot[p] = true;
    std::vector<size_t> comp;
    for (size_t i = 0; i < m.dim(); ++i)
        if (!is_pivot[i]) comp.push_back(i);
    Comodule q(m.model(), (uint32_t)comp.size(), m.ambient_degree());
    for (size_t a = 0; a < comp.size(); ++a) {
        Vec ea(m.dim(), 0);
        ea[comp[a]] = k.one();
        for (uint32_t j : m.active()) {
            Vec w = s.space.reduce(m.op(j).apply(ea));
            for (size_t b = 0; b < comp.size(); ++b)
                if (w[comp[b]]) q.add_entry((uint32_t)a, (uint32_t)b, j, w[comp[b]]);
        }
    }
    q.finalize();
    QuotientComodule out{std::move(q), std::move(comp)};
    return out;
}

Comodule change_basis(const Comodule& m, const Matrix& p) {
    const Field& k = m.field();
    if (p.rows() != m.dim() || p.cols() != m.dim()) throw ValidationError("basis matrix shape");
    // rows of p are the new basis vectors in old coordinates; need p invertible
    EchelonSolver chk(k, m.dim());
    for (size_t i = 0; i < p.rows(); ++i) chk.insert(p.row(i));
    if (chk.dim() != m.dim()) throw ValidationError("basis matrix not invertible");
    Comodule out(m.model(), m.dim(), m.ambient_degree());
    for (uint32_t j : m.active()) {
        // R'_j = C(p R_j^T ...) cleanest by explicit columns: new basis v_a = p.row(a)
        for (uint32_t a = 0; a < m.dim(); ++a) {
            Vec w = m.op(j).apply(p.row(a));
            // express w in the new basis by solving the square system
            Matrix sys(k, m.dim(), m.dim() + 1);
            for (size_t r = 0; r < m.dim(); ++r) {
                for (size_t cc = 0; cc < m.dim(); ++cc) sys.at(r, cc) = p.at(cc, r);
                sys.at(r, m.dim()) = w[r];
            }
            // gaussian solve
            EchelonSolver es(k, m.dim() + 1);
            for (size_t r = 0; r < m.dim(); ++r) es.insert(sys.row(r));
            // back-substitute from rref rows
            auto rows = es.rows();
            Vec sol(m.dim(), 0);
            for (size_t r = 0; r < rows.size(); ++r) {
                size_t piv = es.pivots()[r];
                if (piv == m.dim()) throw ValidationError("inconsistent basis change");
                sol[piv] = rows[r][m.dim()];
            }
            for (uint32_t b = 0; b < m.dim(); ++b)
                if (sol[b]) out.add_entry(a, b, j, sol[b]);
        }
    }
    out.finalize();
    return out;
}

}  // namespace cofil
