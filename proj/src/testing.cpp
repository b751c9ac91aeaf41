#include "cofil/testing.hpp"

#include <algorithm>

#include "cofil/errors.hpp"

namespace cofil::testing {

std::vector<Subspace> enumerate_subspaces_f2(size_t n) {
    Field f2(2);
    std::vector<Subspace> out;
    out.push_back(Subspace(f2, n));  // zero space
    // pivot sets, then all assignments of the free rref entries
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<size_t> pivots;
        for (size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) pivots.push_back(i);
        size_t k = pivots.size();
        // free positions: row i, column j with j > pivots[i] and j not a pivot
        std::vector<std::pair<size_t, size_t>> free_pos;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = pivots[i] + 1; j < n; ++j)
                if (!(mask & (1u << j))) free_pos.emplace_back(i, j);
        if (free_pos.size() > 24) throw ValidationError("subspace enumeration too large");
        for (uint64_t bits = 0; bits < (1ull << free_pos.size()); ++bits) {
            std::vector<Vec> rows(k, Vec(n, 0));
            for (size_t i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
            for (size_t t = 0; t < free_pos.size(); ++t)
                if (bits & (1ull << t)) rows[free_pos[t].first][free_pos[t].second] = 1;
            out.push_back(Subspace::span(f2, n, rows));
        }
    }
    return out;
}

std::vector<Subspace> all_delta_closed_subspaces(const FiniteCoalgebra& c) {
    if (c.field.q() != 2) throw ValidationError("exhaustive scan is F_2 only");
    std::vector<Subspace> out;
    for (auto& s : enumerate_subspaces_f2(c.dim()))
        if (c.is_delta_closed(s)) out.push_back(std::move(s));
    return out;
}

Subspace minimal_closed_containing(const std::vector<Subspace>& closed, const Subspace& x) {
    const Subspace* best = nullptr;
    for (const auto& w : closed) {
        if (!w.contains(x)) continue;
        if (!best || w.dim() < best->dim()) best = &w;
    }
    if (!best) throw ValidationError("no closed subspace contains x");
    // the minimum is unique: it must embed in every closed superspace of x
    for (const auto& w : closed)
        if (w.contains(x) && !w.contains(*best))
            throw CrossCheckFailure("closed superspaces have no unique minimum");
    return *best;
}

Subspace max_stable_subspace(const Comodule& m, const Subspace& x_padded,
                             const std::vector<Subspace>& all) {
    const Field& k = m.field();
    size_t nc = m.model()->basis_size(m.ambient_degree());
    if (x_padded.ambient_dim() != nc) throw ValidationError("X must be padded to the window");
    auto valid = [&](const Subspace& v) {
        for (const auto& vec : v.basis()) {
            // pair matrix of Delta(vec): rows = module coords, cols = coalgebra coords
            Matrix w(k, m.dim(), nc);
            for (const auto& [a, b, j, c] : m.entries()) {
                if (!vec[a]) continue;
                w.at(b, j) = k.add(w.at(b, j), k.mul(vec[a], c));
            }
            for (size_t row = 0; row < m.dim(); ++row)
                if (!x_padded.contains(w.row(row))) return false;
            for (size_t col = 0; col < nc; ++col) {
                Vec cv(m.dim(), 0);
                for (size_t row = 0; row < m.dim(); ++row) cv[row] = w.at(row, col);
                if (!v.contains(cv)) return false;
            }
        }
        return true;
    };
    const Subspace* best = nullptr;
    for (const auto& v : all) {
        if (!valid(v)) continue;
        if (!best || v.dim() > best->dim()) best = &v;
    }
    if (!best) throw CrossCheckFailure("not even the zero subspace is stable");
    for (const auto& v : all)
        if (valid(v) && !best->contains(v))
            throw CrossCheckFailure("stable subspaces have no unique maximum");
    return *best;
}

bool free_by_basis_witness(const Field& k, const std::vector<Matrix>& ops, size_t dim) {
    if (dim == 0) return true;
    uint32_t p = k.p();
    // radical image: span of all op * e_a
    Subspace rad(k, dim);
    for (const auto& u : ops)
        for (size_t a = 0; a < dim; ++a) {
            Vec e(dim, 0);
            e[a] = k.one();
            rad.add_vector(u.apply(e));
        }
    // complement generators at non-pivot coordinates
    std::vector<bool> is_pivot(dim, false);
    for (size_t piv : rad.pivots()) is_pivot[piv] = true;
    std::vector<Vec> gens;
    for (size_t i = 0; i < dim; ++i) {
        if (is_pivot[i]) continue;
        Vec e(dim, 0);
        e[i] = k.one();
        gens.push_back(e);
    }
    // all monomials u_0^{a_0} ... u_{s-1}^{a_{s-1}} with digits < p
    uint64_t total = 1;
    for (size_t i = 0; i < ops.size(); ++i) {
        total *= p;
        if (total > (1u << 22)) throw ValidationError("witness search too large");
    }
    EchelonSolver span(k, dim);
    size_t count = 0;
    for (const auto& g : gens)
        for (uint64_t idx = 0; idx < total; ++idx) {
            Vec v = g;
            uint64_t rest = idx;
            for (size_t i = 0; i < ops.size(); ++i) {
                uint32_t digit = (uint32_t)(rest % p);
                rest /= p;
                for (uint32_t t = 0; t < digit; ++t) v = ops[i].apply(v);
            }
            span.insert(v);
            ++count;
        }
    return count == dim && span.dim() == dim;
}

GaOperatorModule random_operator_module(const Field& f, size_t dim, size_t num_ops,
                                        std::mt19937_64& rng) {
    uint32_t p = f.p();
    // build blockwise from truncated regular pieces, then conjugate by a
    // random invertible matrix; this stays inside valid commuting p-nilpotent
    // families while producing a decent variety of isomorphism types
    std::vector<Matrix> ops(num_ops, Matrix(f, dim, dim));
    size_t at = 0;
    while (at < dim) {
        size_t remaining = dim - at;
        size_t block = 1 + rng() % std::min<size_t>(remaining, p == 2 ? 4 : p);
        // on this block: divided-power shifts of a regular piece O(G_a)_{<= block-1}
        // psi_i maps t^a to binom(a, p^i) t^{a - p^i}
        for (size_t i = 0; i < num_ops; ++i) {
            uint64_t pi = 1;
            for (size_t t = 0; t < i; ++t) pi *= p;
            if (rng() % 3 == 0) continue;  // occasionally drop an operator on the block
            for (size_t a = 0; a < block; ++a) {
                if (a < pi) continue;
                uint32_t c = lucas_binom(a, pi, p);
                if (c) ops[i].at(at + a - pi, at + a) = f.from_int(c);
            }
        }
        at += block;
    }
    // random invertible conjugation
    std::uniform_int_distribution<uint64_t> pick(0, f.q() - 1);
    Matrix g(f, dim, dim);
    while (true) {
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) g.at(i, j) = (FVal)pick(rng);
        if (rank(g) == dim) break;
    }
    // inverse by solving g X = I
    Matrix inv(f, dim, dim);
    {
        EchelonSolver es(f, 2 * dim);
        for (size_t r = 0; r < dim; ++r) {
            Vec row(2 * dim, 0);
            for (size_t c = 0; c < dim; ++c) row[c] = g.at(r, c);
            row[dim + r] = f.one();
            es.insert(row);
        }
        auto rows = es.rows();
        for (size_t r = 0; r < dim; ++r) {
            size_t piv = es.pivots()[r];
            for (size_t c = 0; c < dim; ++c) inv.at(piv, c) = rows[r][dim + c];
        }
    }
    for (auto& u : ops) u = g.mul(u).mul(inv);
    return GaOperatorModule(f, dim, ops);
}

Subspace random_subspace_of_codim(const Field& f, size_t n, size_t maxcodim,
                                  std::mt19937_64& rng) {
    std::uniform_int_distribution<uint64_t> pick(0, f.q() - 1);
    size_t codim = rng() % (maxcodim + 1);
    // kernel of a random (codim x n) matrix of full rank
    while (true) {
        Matrix a(f, codim, n);
        for (size_t i = 0; i < codim; ++i)
            for (size_t j = 0; j < n; ++j) a.at(i, j) = (FVal)pick(rng);
        if (rank(a) != codim) continue;
        return Subspace::span(f, n, kernel_basis(a));
    }
}

Submodule random_subcomodule(const Comodule& m, std::mt19937_64& rng) {
    std::uniform_int_distribution<uint64_t> pick(0, m.field().q() - 1);
    std::vector<Vec> seeds;
    size_t count = 1 + rng() % 2;
    for (size_t s = 0; s < count; ++s) {
        Vec v(m.dim(), 0);
        for (auto& x : v) x = (FVal)pick(rng);
        seeds.push_back(v);
    }
    return generated_subcomodule(m, seeds);
}

}  // namespace cofil::testing
