#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>

#include "cofil/coalgebra.hpp"
#include "cofil/testing.hpp"
#include "doctest.h"

using namespace cofil;

namespace {

std::shared_ptr<FilteredHopfModel> ga(uint32_t p, uint32_t cap) {
    return std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(p), cap);
}
std::shared_ptr<FilteredHopfModel> un(uint32_t n, uint32_t p, uint32_t cap) {
    return std::make_shared<FilteredHopfModel>(ModelKind::UN, Field(p), cap, n);
}
std::shared_ptr<FilteredHopfModel> gl(uint32_t n, uint32_t p, uint32_t cap) {
    return std::make_shared<FilteredHopfModel>(ModelKind::GLN, Field(p), cap, n);
}

Subspace unit_span(const FiniteCoalgebra& c) {
    Vec e(c.dim(), 0);
    e[0] = 1;
    return Subspace::span(c.field, c.dim(), {e});
}

}  // namespace

TEST_CASE("filtration coalgebra basics") {
    auto m = ga(2, 6);
    FiniteCoalgebra c0 = filtration_coalgebra(*m, 0);
    CHECK(c0.dim() == 1);
    // group-like unit: Delta(1) = 1 (x) 1, eps(1) = 1
    REQUIRE(c0.delta[0].size() == 1);
    CHECK(c0.delta[0][0] == std::make_tuple(0u, 0u, (FVal)1));
    CHECK(c0.counit[0] == 1);
    c0.verify();

    FiniteCoalgebra u = filtration_coalgebra(*un(3, 2, 3), 2);
    CHECK(u.dim() == 10);
    u.verify();

    FiniteCoalgebra g = filtration_coalgebra(*gl(2, 2, 3), 2);
    CHECK(g.dim() == 16);
    g.verify();
}

TEST_CASE("G_a filtration piece at p^r - 1 is the kernel coalgebra on the nose") {
    for (uint32_t p : {2u, 3u}) {
        for (uint32_t r : {1u, 2u}) {
            uint32_t d = 1;
            for (uint32_t i = 0; i < r; ++i) d *= p;
            --d;
            auto m = ga(p, d + 1);
            FiniteCoalgebra piece = filtration_coalgebra(*m, d);
            FiniteCoalgebra kernel = frobenius_kernel_coalgebra(*m, r);
            CHECK(piece.dim() == kernel.dim());
            CHECK(piece.delta == kernel.delta);
            CHECK(piece.counit == kernel.counit);
        }
    }
}

TEST_CASE("generated subcoalgebra examples") {
    auto m = ga(2, 3);
    FiniteCoalgebra c = filtration_coalgebra(*m, 3);
    // X = span{1} is already a subcoalgebra
    Subspace one = unit_span(c);
    CHECK(generated_subcoalgebra(c, one) == one);

    // X = span{t} forces 1 in
    Vec t(c.dim(), 0);
    t[1] = 1;
    Subspace xt = Subspace::span(c.field, c.dim(), {t});
    Subspace closed = generated_subcoalgebra(c, xt);
    CHECK(closed.dim() == 2);
    Vec e0(c.dim(), 0);
    e0[0] = 1;
    CHECK(closed.contains(e0));
    CHECK(closed.contains(t));

    // GL_2 ambient at degree 1, X = span{x_{1,1}}
    auto g = gl(2, 2, 2);
    FiniteCoalgebra cg = filtration_coalgebra(*g, 1);
    REQUIRE(cg.dim() == 5);
    Vec x11 = g->coords(g->generator(g->var_by_name("x_1_1")), 1);
    Subspace closure = generated_subcoalgebra(cg, Subspace::span(cg.field, 5, {x11}));
    CHECK(closure.dim() == 4);
    for (const char* name : {"x_1_1", "x_1_2", "x_2_1", "x_2_2"})
        CHECK(closure.contains(g->coords(g->generator(g->var_by_name(name)), 1)));
    CHECK_FALSE(closure.contains(g->coords(g->one(), 1)));
}

TEST_CASE("generated subcoalgebra is idempotent and monotone") {
    auto m = un(3, 2, 3);
    FiniteCoalgebra c = filtration_coalgebra(*m, 2);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 25; ++it) {
        auto x = testing::random_subspace_of_codim(c.field, c.dim(), 6, rng);
        Subspace w = generated_subcoalgebra(c, x);
        CHECK(generated_subcoalgebra(c, w) == w);
        CHECK(w.contains(x));
        Subspace bigger = w.sum(testing::random_subspace_of_codim(c.field, c.dim(), 8, rng));
        CHECK(generated_subcoalgebra(c, bigger).contains(w));
    }
}

TEST_CASE("generated subcoalgebra agrees with exhaustive scan on small ambients") {
    // every F_2 ambient of dimension <= 6 our models produce, all X
    std::vector<FiniteCoalgebra> ambients;
    for (uint32_t d = 0; d <= 5; ++d) ambients.push_back(filtration_coalgebra(*ga(2, 6), d));
    ambients.push_back(filtration_coalgebra(*un(3, 2, 2), 1));   // dim 4
    ambients.push_back(filtration_coalgebra(*gl(2, 2, 2), 1));   // dim 5
    for (const auto& c : ambients) {
        auto all = testing::enumerate_subspaces_f2(c.dim());
        auto closed = testing::all_delta_closed_subspaces(c);
        for (const auto& x : all) {
            Subspace got = generated_subcoalgebra(c, x);
            Subspace want = testing::minimal_closed_containing(closed, x);
            CHECK(got == want);
        }
    }
}

TEST_CASE("filtration coalgebras embed compatibly along d <= e") {
    auto m = un(3, 2, 4);
    for (uint32_t d = 0; d + 1 <= 4; ++d) {
        FiniteCoalgebra small = filtration_coalgebra(*m, d);
        FiniteCoalgebra big = filtration_coalgebra(*m, d + 1);
        // basis prefixes agree and so do the structure constants
        for (size_t i = 0; i < small.dim(); ++i) {
            CHECK(small.basis[i] == big.basis[i]);
            CHECK(small.delta[i] == big.delta[i]);
            CHECK(small.counit[i] == big.counit[i]);
        }
    }
}

TEST_CASE("multiplication lands in the degree-sum piece") {
    auto m = gl(2, 3, 6);
    for (uint32_t d = 0; d <= 2; ++d)
        for (uint32_t e = 0; e <= 2; ++e) {
            for (size_t i = 0; i < m->basis_size(d); ++i)
                for (size_t j = 0; j < m->basis_size(e); ++j) {
                    HopfElement prod =
                        m->product(m->basis_element(d, i), m->basis_element(e, j));
                    if (prod.is_zero()) continue;
                    CHECK(m->degree(prod) <= d + e);
                    CHECK_NOTHROW(m->coords(prod, d + e));
                }
        }
}

TEST_CASE("image coalgebra: identity map") {
    auto m = ga(2, 4);
    FiniteCoalgebra c = filtration_coalgebra(*m, 3);
    std::vector<Vec> id;
    for (size_t i = 0; i < c.dim(); ++i) {
        Vec e(c.dim(), 0);
        e[i] = 1;
        id.push_back(e);
    }
    auto img = image_coalgebra(c, id, c);
    CHECK(img.coalgebra.dim() == c.dim());
    CHECK(img.coalgebra.delta == c.delta);
}

TEST_CASE("image coalgebra: phi* from GL_2 onto U_2 reproduces the filtration") {
    auto g = gl(2, 2, 3);
    auto u = un(2, 2, 3);
    for (uint32_t d = 1; d <= 3; ++d) {
        FiniteCoalgebra cg = filtration_coalgebra(*g, d);
        FiniteCoalgebra cu = filtration_coalgebra(*u, d);
        // phi*: x_{1,2} -> y_{1,2}, x_{i,i} -> 1, x_{2,1} -> 0, det -> 1
        uint16_t y = u->var_by_name("y_1_2");
        auto apply_phi = [&](const HopfElement& f) {
            HopfElement out;
            for (const auto& [mon, c] : f.terms) {
                if (mon.exp_of((uint16_t)(1 * 2 + 0)) > 0) continue;  // x_2_1 -> 0
                Monomial img;
                uint32_t e12 = mon.exp_of((uint16_t)(0 * 2 + 1));
                if (e12) img.exps.emplace_back(y, e12);
                out = u->add(out, u->monomial(img, c));
            }
            return out;
        };
        std::vector<Vec> phi;
        for (size_t i = 0; i < cg.dim(); ++i) phi.push_back(u->coords(apply_phi(cg.basis[i]), d));
        auto img = image_coalgebra(cg, phi, cu);
        CHECK(img.coalgebra.dim() == cu.dim());
        CHECK(img.coalgebra.delta == cu.delta);
        CHECK(img.coalgebra.counit == cu.counit);
    }
}

TEST_CASE("image coalgebra: quotient onto the first Frobenius kernel") {
    for (uint32_t p : {2u, 3u}) {
        auto m = ga(p, p);
        FiniteCoalgebra piece = filtration_coalgebra(*m, p - 1);
        FiniteCoalgebra kernel = frobenius_kernel_coalgebra(*m, 1);
        std::vector<Vec> phi;
        for (size_t i = 0; i < piece.dim(); ++i) {
            HopfElement img = m->frobenius_quotient(1, piece.basis[i]);
            Vec v(kernel.dim(), 0);
            for (const auto& [mon, c] : img.terms) v[m->monomial_index(mon)] = c;
            phi.push_back(v);
        }
        auto img = image_coalgebra(piece, phi, kernel);
        CHECK(img.coalgebra.dim() == p);  // full image, dimension count p
    }
}

TEST_CASE("image coalgebra rejects incompatible maps") {
    auto m = ga(2, 3);
    FiniteCoalgebra c = filtration_coalgebra(*m, 2);
    // swap 1 and t: not a coalgebra map
    std::vector<Vec> bad;
    for (size_t i = 0; i < c.dim(); ++i) {
        Vec e(c.dim(), 0);
        e[i == 0 ? 1 : (i == 1 ? 0 : i)] = 1;
        bad.push_back(e);
    }
    CHECK_THROWS_AS(image_coalgebra(c, bad, c), ValidationError);
}
