#include "cofil/coalgebra.hpp"

#include <map>

#include "cofil/errors.hpp"

namespace cofil {

void FiniteCoalgebra::verify() const {
    const Field& k = field;
    size_t n = dim();
    if (counit.size() != n) throw CrossCheckFailure("counit vector length mismatch");
    // counit laws: sum_j eps(c_j) mu[i][j][k] = delta_{ik} and symmetrically
    for (size_t i = 0; i < n; ++i) {
        Vec left(n, 0), right(n, 0);
        for (const auto& [j, kk, c] : delta[i]) {
            left[kk] = k.add(left[kk], k.mul(counit[j], c));
            right[j] = k.add(right[j], k.mul(counit[kk], c));
        }
        for (size_t t = 0; t < n; ++t) {
            FVal want = (t == i) ? k.one() : k.zero();
            if (left[t] != want || right[t] != want)
                throw CrossCheckFailure("counit identity fails at basis element " + std::to_string(i));
        }
    }
    // coassociativity as exact 3-tensor equality
    for (size_t i = 0; i < n; ++i) {
        std::map<std::tuple<uint32_t, uint32_t, uint32_t>, FVal> lhs, rhs;
        for (const auto& [j, kk, c] : delta[i])
            for (const auto& [a, b, c2] : delta[j]) {
                auto key = std::make_tuple(a, b, kk);
                FVal v = k.mul(c, c2);
                auto it = lhs.find(key);
                if (it == lhs.end()) lhs.emplace(key, v);
                else {
                    it->second = k.add(it->second, v);
                    if (!it->second) lhs.erase(it);
                }
            }
        for (const auto& [j, kk, c] : delta[i])
            for (const auto& [a, b, c2] : delta[kk]) {
                auto key = std::make_tuple(j, a, b);
                FVal v = k.mul(c, c2);
                auto it = rhs.find(key);
                if (it == rhs.end()) rhs.emplace(key, v);
                else {
                    it->second = k.add(it->second, v);
                    if (!it->second) rhs.erase(it);
                }
            }
        if (lhs != rhs)
            throw CrossCheckFailure("coassociativity fails at basis element " + std::to_string(i));
    }
}

Matrix FiniteCoalgebra::delta_matrix(const Vec& v) const {
    size_t n = dim();
    Matrix t(field, n, n);
    for (size_t i = 0; i < n; ++i) {
        if (!v[i]) continue;
        for (const auto& [j, k2, c] : delta[i])
            t.at(j, k2) = field.add(t.at(j, k2), field.mul(v[i], c));
    }
    return t;
}

bool FiniteCoalgebra::is_delta_closed(const Subspace& w) const {
    // Delta(w) must lie in w (x) w; equivalently every Sweedler slot of every
    // basis vector stays inside w
    for (const auto& v : w.basis()) {
        Matrix t = delta_matrix(v);
        for (size_t col = 0; col < dim(); ++col) {
            Vec colv(dim(), 0);
            for (size_t row = 0; row < dim(); ++row) colv[row] = t.at(row, col);
            if (!w.contains(colv)) return false;
        }
        for (size_t row = 0; row < dim(); ++row) {
            if (!w.contains(t.row(row))) return false;
        }
    }
    return true;
}

FiniteCoalgebra filtration_coalgebra(const FilteredHopfModel& model, uint32_t d) {
    if (d > model.cap()) throw CapOverflow("filtration degree beyond model cap");
    FiniteCoalgebra c;
    c.field = model.field();
    size_t n = model.basis_size(d);
    c.basis.reserve(n);
    c.delta.resize(n);
    c.counit.resize(n);
    for (size_t i = 0; i < n; ++i) {
        HopfElement e = model.basis_element(d, i);
        c.basis.push_back(e);
        c.basis_degree.push_back(model.basis_elt_degree(i));
        c.counit[i] = model.counit(e);
        std::map<std::pair<uint32_t, uint32_t>, FVal> acc;
        for (const auto& [t, coeff] : model.coproduct_tensor(e)) {
            Vec lc = model.coords(model.monomial(t.first), d);
            Vec rc = model.coords(model.monomial(t.second), d);
            for (uint32_t j = 0; j < lc.size(); ++j) {
                if (!lc[j]) continue;
                for (uint32_t k2 = 0; k2 < rc.size(); ++k2) {
                    if (!rc[k2]) continue;
                    FVal v = model.field().mul(coeff, model.field().mul(lc[j], rc[k2]));
                    if (!v) continue;
                    auto key = std::make_pair(j, k2);
                    auto it = acc.find(key);
                    if (it == acc.end()) acc.emplace(key, v);
                    else {
                        it->second = model.field().add(it->second, v);
                        if (!it->second) acc.erase(it);
                    }
                }
            }
        }
        for (const auto& [jk, v] : acc) c.delta[i].emplace_back(jk.first, jk.second, v);
    }
    return c;
}

FiniteCoalgebra frobenius_kernel_coalgebra(const FilteredHopfModel& model, uint32_t r) {
    if (model.kind() == ModelKind::GLN)
        throw ValidationError("GL_N Frobenius kernels are not supported");
    if (r < 1) throw ValidationError("kernel height must be >= 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) q *= model.field().p();
    // all exponent tuples < p^r have degree <= (p^r - 1) * #vars
    uint32_t dmax = (uint32_t)((q - 1) * model.var_count());
    if (dmax > model.cap())
        throw CapOverflow("model cap too small to hold the kernel coalgebra");
    FiniteCoalgebra full = filtration_coalgebra(model, dmax);
    // keep the monomials with all exponents < p^r; the coproduct of such a
    // monomial only involves such monomials, so this span is delta-closed
    std::vector<uint32_t> keep(full.dim(), UINT32_MAX);
    std::vector<size_t> sel;
    for (size_t i = 0; i < full.dim(); ++i) {
        const Monomial& m = model.indexed_monomial(i);
        bool ok = true;
        for (const auto& [v, e] : m.exps)
            if (e >= q) { ok = false; break; }
        if (ok) {
            keep[i] = (uint32_t)sel.size();
            sel.push_back(i);
        }
    }
    FiniteCoalgebra out;
    out.field = full.field;
    out.delta.resize(sel.size());
    out.counit.resize(sel.size());
    for (size_t a = 0; a < sel.size(); ++a) {
        size_t i = sel[a];
        out.basis.push_back(full.basis[i]);
        out.basis_degree.push_back(full.basis_degree[i]);
        out.counit[a] = full.counit[i];
        for (const auto& [j, k2, c] : full.delta[i]) {
            if (keep[j] == UINT32_MAX || keep[k2] == UINT32_MAX)
                throw CrossCheckFailure("kernel monomial span is not delta-closed");
            out.delta[a].emplace_back(keep[j], keep[k2], c);
        }
    }
    out.verify();
    return out;
}

Subspace generated_subcoalgebra(const FiniteCoalgebra& ambient, const Subspace& x) {
    if (x.ambient_dim() != ambient.dim())
        throw ValidationError("subspace does not live in the ambient coalgebra");
    Subspace w = x;
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& v : w.basis()) {
            Matrix t = ambient.delta_matrix(v);
            for (size_t row = 0; row < ambient.dim(); ++row)
                if (w.add_vector(t.row(row))) grew = true;
            for (size_t col = 0; col < ambient.dim(); ++col) {
                Vec cv(ambient.dim(), 0);
                for (size_t row = 0; row < ambient.dim(); ++row) cv[row] = t.at(row, col);
                if (w.add_vector(cv)) grew = true;
            }
        }
    }
    return w;
}

ImageCoalgebra image_coalgebra(const FiniteCoalgebra& d, const std::vector<Vec>& phi,
                               const FiniteCoalgebra& target) {
    const Field& k = d.field;
    if (phi.size() != d.dim()) throw ValidationError("phi must map every basis element");
    for (const auto& v : phi)
        if (v.size() != target.dim()) throw ValidationError("phi image dimension mismatch");
    // compatibility: (phi (x) phi) Delta_D(c_i) == Delta_target(phi(c_i))
    for (size_t i = 0; i < d.dim(); ++i) {
        Matrix lhs(k, target.dim(), target.dim());
        for (const auto& [j, k2, c] : d.delta[i])
            for (size_t a = 0; a < target.dim(); ++a) {
                if (!phi[j][a]) continue;
                for (size_t b = 0; b < target.dim(); ++b) {
                    if (!phi[k2][b]) continue;
                    lhs.at(a, b) = k.add(lhs.at(a, b), k.mul(c, k.mul(phi[j][a], phi[k2][b])));
                }
            }
        Matrix rhs = target.delta_matrix(phi[i]);
        if (!(lhs == rhs))
            throw ValidationError("phi is not compatible with the coproducts");
    }
    Subspace image = Subspace::span(k, target.dim(), phi);
    if (!target.is_delta_closed(image))
        throw CrossCheckFailure("image of a coalgebra map is not delta-closed");
    // re-index structure constants on the image basis
    auto rows = image.basis();
    FiniteCoalgebra out;
    out.field = k;
    out.delta.resize(rows.size());
    out.counit.resize(rows.size());
    EchelonSolver coordsolver(k, target.dim());
    for (const auto& r : rows) coordsolver.insert(r);
    for (size_t i = 0; i < rows.size(); ++i) {
        Matrix t = target.delta_matrix(rows[i]);
        // expand Delta(row_i) over image (x) image
        // first express the columns over the image, then each partial row
        std::map<std::pair<uint32_t, uint32_t>, FVal> acc;
        // T = sum_{j,k} T[j][k] e_j (x) e_k; rewrite both slots via coordinates
        // of the standard vectors is wasteful: instead reduce slotwise.
        // slot 1: for each target index j express row T[j][*] contribution.
        // We use: T = sum_a u_a (x) w_a with u_a the image basis, w_a =
        // coordinates of slot-2 after eliminating slot-1 against the image.
        Matrix rem = t;
        for (size_t a = 0; a < rows.size(); ++a) {
            // coefficient of image basis vector a in slot 1: pivot column
            size_t piv = image.pivots()[a];
            Vec w(target.dim(), 0);
            for (size_t col = 0; col < target.dim(); ++col) w[col] = rem.at(piv, col);
            // subtract u_a (x) w
            for (size_t rr = 0; rr < target.dim(); ++rr) {
                if (!rows[a][rr]) continue;
                for (size_t col = 0; col < target.dim(); ++col)
                    rem.at(rr, col) = k.sub(rem.at(rr, col), k.mul(rows[a][rr], w[col]));
            }
            auto wc = coordsolver.coordinates(w);
            if (!wc) throw CrossCheckFailure("slot-2 component escapes the image");
            for (size_t b = 0; b < wc->size(); ++b) {
                if (!(*wc)[b]) continue;
                auto key = std::make_pair((uint32_t)a, (uint32_t)b);
                auto it = acc.find(key);
                if (it == acc.end()) acc.emplace(key, (*wc)[b]);
                else it->second = k.add(it->second, (*wc)[b]);
            }
        }
        if (!rem.is_zero()) throw CrossCheckFailure("slot-1 component escapes the image");
        for (const auto& [jk, v] : acc)
            if (v) out.delta[i].emplace_back(jk.first, jk.second, v);
        // counit on the image: express row_i over phi and pull back? the
        // counit of the target restricts directly.
        FVal eps = 0;
        for (size_t j = 0; j < target.dim(); ++j)
            if (rows[i][j]) eps = k.add(eps, k.mul(rows[i][j], target.counit[j]));
        out.counit[i] = eps;
    }
    out.verify();
    return {std::move(out), std::move(image)};
}

}  // namespace cofil
