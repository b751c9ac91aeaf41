#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <random>

#include "cofil/comodule.hpp"
#include "cofil/testing.hpp"
#include "doctest.h"

using namespace cofil;

namespace {

ModelPtr ga(uint32_t p, uint32_t cap) {
    return std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(p), cap);
}
ModelPtr un(uint32_t n, uint32_t p, uint32_t cap) {
    return std::make_shared<FilteredHopfModel>(ModelKind::UN, Field(p), cap, n);
}

Matrix jordan_block(const Field& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i + 1 < n; ++i) m.at(i, i + 1) = f.one();
    return m;
}

Vec unit(size_t n, size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace

TEST_CASE("comodule_from_operators examples") {
    auto m = ga(2, 6);
    Field f2(2);
    // all psi zero: trivial coaction
    GaOperatorModule zerops(f2, 2, {Matrix(f2, 2, 2)});
    Comodule triv = comodule_from_operators(m, zerops, 4);
    triv.verify();
    CHECK(triv.entries().size() == 2);
    CHECK(filtration_piece(triv, 0).space.dim() == 2);

    // single Jordan block: Delta(e2) = e2 (x) 1 + e1 (x) t
    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 4);
    cj.verify();
    // entry (a=1, b=0, j=1): psi maps e_2 (index 1) to e_1 (index 0)
    bool found = false;
    for (const auto& [a, b, j, c] : cj.entries())
        if (a == 1 && b == 0 && j == 1 && c == 1) found = true;
    CHECK(found);

    // regular nilpotent on p elements is the regular piece in disguise
    for (uint32_t p : {2u, 3u}) {
        auto mp = ga(p, 6);
        Field fp(p);
        Matrix reg(fp, p, p);
        for (size_t i = 0; i + 1 < p; ++i) reg.at(i, i + 1) = fp.one();
        Comodule from_ops = comodule_from_operators(mp, GaOperatorModule(fp, p, {reg}), p - 1);
        from_ops.verify();
        Comodule regular = regular_comodule(mp, p - 1);
        auto homs = hom_space(from_ops, regular);
        bool iso = false;
        for (const auto& h : homs)
            if (rank(h) == p) iso = true;
        // also try sums of two hom basis elements before giving up
        for (size_t i = 0; i < homs.size() && !iso; ++i)
            for (size_t j = i + 1; j < homs.size() && !iso; ++j)
                if (rank(homs[i].add(homs[j])) == p) iso = true;
        CHECK(iso);
    }
}

TEST_CASE("operator extraction round-trips and validates") {
    auto m = ga(2, 8);
    Field f2(2);
    std::mt19937_64 rng(4);
    for (int it = 0; it < 30; ++it) {
        auto ops = testing::random_operator_module(f2, 2 + rng() % 4, 1 + rng() % 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        c.verify();
        GaOperatorModule back = operators_from_comodule(c);
        Comodule again = comodule_from_operators(m, back, 7);
        CHECK(again == c);
    }
    // malformed coaction: not of divided-power shape
    Comodule bad(m, 1, 3);
    bad.add_entry(0, 0, 0, 1);
    bad.add_entry(0, 0, 3, 1);  // t^3 component without the matching t, t^2 data
    bad.finalize();
    CHECK_THROWS_AS(operators_from_comodule(bad), ValidationError);
}

TEST_CASE("largest subcomodule examples") {
    auto m = ga(2, 6);
    Field f2(2);
    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 4);

    // X = span{1}: invariants; for the Jordan block that is ker psi_0 = e1
    Subspace x0 = Subspace::span(f2, 1, {Vec{1}});
    Submodule inv = largest_subcomodule(cj, x0, 0);
    CHECK(inv.space.dim() == 1);
    CHECK(inv.space.contains(unit(2, 0)));

    // X = the full ambient piece: everything
    Submodule all = largest_subcomodule(cj, Subspace::full(f2, 5), 4);
    CHECK(all.space.dim() == 2);
}

TEST_CASE("largest subcomodule agrees with the exhaustive oracle") {
    auto m = ga(2, 8);
    Field f2(2);
    std::mt19937_64 rng(99);
    auto all4 = testing::enumerate_subspaces_f2(4);
    int ran = 0;
    while (ran < 60) {
        size_t dim = 2 + rng() % 3;
        auto ops = testing::random_operator_module(f2, dim, 1 + rng() % 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        size_t nc = c.model()->basis_size(c.ambient_degree());
        Subspace x = testing::random_subspace_of_codim(f2, nc, 2, rng);
        Submodule got = largest_subcomodule(c, x, c.ambient_degree());
        auto all = dim == 4 ? all4 : testing::enumerate_subspaces_f2(dim);
        Subspace want = testing::max_stable_subspace(c, x, all);
        CHECK(got.space == want);
        ++ran;
    }
}

TEST_CASE("filtration piece examples") {
    // G_a: the piece at p^r - 1 kills the operators psi_i, i >= r
    auto m = ga(2, 8);
    Field f2(2);
    Matrix psi0(f2, 3, 3), psi1(f2, 3, 3);
    psi0.at(0, 1) = 1;           // e2 -> e1
    psi1.at(0, 2) = 1;           // e3 -> e1 at height 1
    GaOperatorModule ops(f2, 3, {psi0, psi1});
    Comodule c = comodule_from_operators(m, ops, 4);
    Submodule piece1 = filtration_piece(c, 1);  // p^1 - 1 = 1
    CHECK(piece1.space.dim() == 2);             // e1, e2 (psi_1 kills them)
    CHECK(piece1.space.contains(unit(3, 0)));
    CHECK(piece1.space.contains(unit(3, 1)));

    // regular pieces: dim M_{<= d} = d + 1
    Comodule reg = regular_comodule(m, 6);
    for (uint32_t d = 0; d <= 6; ++d) CHECK(filtration_piece(reg, d).space.dim() == d + 1);

    // d beyond every coaction degree: the whole module
    CHECK(filtration_piece(c, 4).space.dim() == 3);
}

TEST_CASE("regular piece identity for U_3") {
    auto u = un(3, 2, 6);
    Comodule reg = regular_comodule(u, 6);
    reg.verify();
    for (uint32_t d = 0; d <= 6; ++d)
        CHECK(filtration_piece(reg, d).space.dim() == u->basis_size(d));
}

TEST_CASE("socle examples") {
    auto m = ga(2, 8);
    Comodule triv = trivial_comodule(m, 3);
    CHECK(socle_invariants(triv).space.dim() == 3);

    // free piece O(G_{a(1)}): 1-dimensional socle; the invariant line is the
    // image of the top power under the full divided-power string, i.e. the
    // constants
    Comodule reg = regular_comodule(m, 1);
    Submodule soc = socle_invariants(reg);
    CHECK(soc.space.dim() == 1);
    CHECK(soc.space.contains(unit(2, 0)));

    // the primitives module has socle k
    Field f2(2);
    Comodule prim(m, 3, 4);  // 1, t, t^2 with Delta(t^{2^i}) = prim
    prim.add_entry(0, 0, 0, 1);
    prim.add_entry(1, 1, 0, 1);
    prim.add_entry(1, 0, 1, 1);
    prim.add_entry(2, 2, 0, 1);
    prim.add_entry(2, 0, 2, 1);
    prim.finalize();
    prim.verify();
    CHECK(socle_invariants(prim).space.dim() == 1);
}

TEST_CASE("tensor examples") {
    auto m = ga(2, 12);
    Field f2(2);
    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 4);
    Comodule triv = trivial_comodule(m, 1);

    Comodule t = tensor(cj, triv);
    t.verify();
    CHECK(t.dim() == 2);
    GaOperatorModule tops = operators_from_comodule(t);
    CHECK(tops.psi.size() == 1);
    CHECK(tops.psi[0] == jordan_block(f2, 2));

    // psi_0 on a tensor of two Jordan blocks acts by the Leibniz rule
    Comodule tt = tensor(cj, cj);
    tt.verify();
    GaOperatorModule ttops = operators_from_comodule(tt);
    Matrix expect(f2, 4, 4);
    // basis e1(x)e1, e1(x)e2, e2(x)e1, e2(x)e2
    expect.at(0, 1) = 1;
    expect.at(0, 2) = 1;
    expect.at(1, 3) = 1;
    expect.at(2, 3) = 1;
    CHECK(ttops.psi[0] == expect);
}

TEST_CASE("tensor filtration containment on random pairs") {
    auto m = ga(2, 16);
    Field f2(2);
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        auto r1 = testing::random_operator_module(f2, 2 + rng() % 3, 1 + rng() % 2, rng);
        auto r2 = testing::random_operator_module(f2, 2 + rng() % 3, 1 + rng() % 2, rng);
        Comodule a = comodule_from_operators(m, r1, 7);
        Comodule b = comodule_from_operators(m, r2, 7);
        Comodule t = tensor(a, b);
        for (uint32_t d = 0; d <= 3; ++d)
            for (uint32_t e = 0; e <= 3; ++e) {
                Subspace pa = filtration_piece(a, d).space;
                Subspace pb = filtration_piece(b, e).space;
                Subspace pt = filtration_piece(t, d + e).space;
                // span of pure tensors of the two pieces
                for (const auto& va : pa.basis())
                    for (const auto& vb : pb.basis()) {
                        Vec v(t.dim(), 0);
                        for (size_t i = 0; i < a.dim(); ++i)
                            for (size_t j = 0; j < b.dim(); ++j)
                                v[i * b.dim() + j] = f2.mul(va[i], vb[j]);
                        CHECK(pt.contains(v));
                    }
            }
    }
}

TEST_CASE("frobenius twist examples") {
    auto m = ga(2, 16);
    Field f2(2);
    Comodule triv = trivial_comodule(m, 2);
    Comodule tw = frobenius_twist(triv, 1);
    CHECK(tw.entries() == triv.entries());

    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 4);
    Comodule cj1 = frobenius_twist(cj, 1);
    cj1.verify();
    GaOperatorModule shifted = operators_from_comodule(cj1);
    REQUIRE(shifted.psi.size() == 2);
    CHECK(shifted.psi[0].is_zero());
    CHECK(shifted.psi[1] == jordan_block(f2, 2));
}

TEST_CASE("twist scaling identity on random modules") {
    auto m = ga(2, 32);
    Field f2(2);
    std::mt19937_64 rng(77);
    for (int it = 0; it < 40; ++it) {
        auto ops = testing::random_operator_module(f2, 2 + rng() % 3, 1 + rng() % 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        for (uint32_t r : {1u, 2u}) {
            uint32_t pr = 1u << r;
            Comodule tw = frobenius_twist(c, r);
            for (uint32_t d = 0; d <= 7; ++d) {
                Subspace lhs = filtration_piece(c, d).space;
                Subspace rhs = filtration_piece(tw, pr * d).space;
                CHECK(lhs == rhs);
                if (d >= 1) {
                    // strictly between p^r d and p^r (d+1) nothing new appears
                    Subspace mid = filtration_piece(tw, pr * d + pr - 1).space;
                    CHECK(mid == rhs);
                }
            }
        }
    }
}

TEST_CASE("hom space examples") {
    auto m = ga(2, 8);
    Field f2(2);
    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 4);
    // Hom(M, M) contains the identity
    bool has_id = false;
    for (const auto& h : hom_space(cj, cj))
        if (h == Matrix::identity(f2, 2)) has_id = true;
    CHECK(has_id);

    Comodule triv1 = trivial_comodule(m, 1);
    CHECK(hom_space(triv1, triv1).size() == 1);

    // Hom(free piece, trivial) is 1-dimensional
    for (uint32_t p : {2u, 3u}) {
        auto mp = ga(p, 8);
        Comodule reg = regular_comodule(mp, p - 1);
        Comodule tr = trivial_comodule(mp, 1);
        CHECK(hom_space(reg, tr).size() == 1);
    }
}

TEST_CASE("hom functoriality: maps respect filtration pieces") {
    auto m = ga(2, 8);
    Field f2(2);
    std::mt19937_64 rng(13);
    for (int it = 0; it < 25; ++it) {
        auto o1 = testing::random_operator_module(f2, 2 + rng() % 3, 2, rng);
        auto o2 = testing::random_operator_module(f2, 2 + rng() % 3, 2, rng);
        Comodule a = comodule_from_operators(m, o1, 7);
        Comodule b = comodule_from_operators(m, o2, 7);
        auto homs = hom_space(a, b);
        for (const auto& f : homs)
            for (uint32_t d = 0; d <= 4; ++d) {
                Subspace pa = filtration_piece(a, d).space;
                Subspace pb = filtration_piece(b, d).space;
                for (const auto& v : pa.basis()) CHECK(pb.contains(f.apply(v)));
            }
    }
}

TEST_CASE("left exactness witness on random submodule pairs") {
    auto m = ga(2, 8);
    Field f2(2);
    std::mt19937_64 rng(41);
    for (int it = 0; it < 40; ++it) {
        auto ops = testing::random_operator_module(f2, 3 + rng() % 2, 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        Submodule s = testing::random_subcomodule(c, rng);
        if (s.space.dim() == 0) continue;
        Comodule sc = sub_comodule(c, s);
        for (uint32_t d = 0; d <= 4; ++d) {
            Subspace lhs_in_sub = filtration_piece(sc, d).space;
            // transport to the parent coordinates
            Subspace lhs(f2, c.dim());
            auto sbasis = s.space.basis();
            for (const auto& v : lhs_in_sub.basis()) {
                Vec w(c.dim(), 0);
                for (size_t i = 0; i < sbasis.size(); ++i)
                    if (v[i])
                        for (size_t t = 0; t < c.dim(); ++t)
                            w[t] = f2.add(w[t], f2.mul(v[i], sbasis[i][t]));
                lhs.add_vector(w);
            }
            Subspace rhs = intersect(s.space, filtration_piece(c, d).space);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("quotient examples") {
    auto m = ga(3, 8);
    Field f3(3);
    GaOperatorModule jb(f3, 3, {jordan_block(f3, 3)});
    Comodule c = comodule_from_operators(m, jb, 4);

    Submodule zero{Subspace(f3, 3)};
    auto q0 = quotient(c, zero);
    CHECK(q0.comodule.dim() == 3);
    CHECK(q0.comodule == c);

    Submodule whole{Subspace::full(f3, 3)};
    CHECK(quotient(c, whole).comodule.dim() == 0);

    // a non-stable subspace is rejected
    Submodule bad{Subspace::span(f3, 3, {unit(3, 2)})};
    CHECK_THROWS_AS(quotient(c, bad), ValidationError);
}

TEST_CASE("fixed point shortcut: subcoalgebra X needs one step") {
    auto m = ga(2, 8);
    Field f2(2);
    std::mt19937_64 rng(55);
    for (int it = 0; it < 20; ++it) {
        auto ops = testing::random_operator_module(f2, 2 + rng() % 3, 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        for (uint32_t d = 0; d <= 3; ++d) {
            // prefix X is a subcoalgebra: one-step condition equals the fixed point
            size_t keep = c.model()->basis_size(d);
            size_t nc = c.model()->basis_size(c.ambient_degree());
            Subspace onestep(f2, c.dim());
            // {v : all coaction components with deg c_j > d vanish}
            Matrix constraints(f2, (nc - keep) * c.dim(), c.dim());
            size_t row = 0;
            for (uint32_t j = (uint32_t)keep; j < nc; ++j) {
                if (!c.ops().count(j)) continue;
                const Matrix& rj = c.op(j);
                for (size_t b = 0; b < c.dim(); ++b) {
                    for (size_t a = 0; a < c.dim(); ++a) constraints.at(row, a) = rj.at(b, a);
                    ++row;
                }
            }
            Matrix trimmed(f2, row, c.dim());
            for (size_t r = 0; r < row; ++r)
                for (size_t a = 0; a < c.dim(); ++a) trimmed.at(r, a) = constraints.at(r, a);
            for (const auto& v : kernel_basis(trimmed)) onestep.add_vector(v);
            CHECK(filtration_piece(c, d).space == onestep);
        }
    }
}

TEST_CASE("exhaustion: the piece at the ambient degree is everything") {
    auto m = ga(3, 9);
    Field f3(3);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 10; ++it) {
        auto ops = testing::random_operator_module(f3, 2 + rng() % 3, 1, rng);
        Comodule c = comodule_from_operators(m, ops, 8);
        CHECK(filtration_piece(c, c.ambient_degree()).space.dim() == c.dim());
    }
}

TEST_CASE("operator modules validate nilpotency and commutation") {
    Field f2(2);
    // a 3-step shift is not 2-nilpotent
    Matrix shift3(f2, 3, 3);
    shift3.at(0, 1) = 1;
    shift3.at(1, 2) = 1;
    CHECK_THROWS_AS(GaOperatorModule(f2, 3, {shift3}), ValidationError);
    // two nilpotents that do not commute
    Matrix a(f2, 2, 2), b(f2, 2, 2);
    a.at(0, 1) = 1;
    b.at(1, 0) = 1;
    CHECK_THROWS_AS(GaOperatorModule(f2, 2, {a, b}), ValidationError);
    // shape mismatch
    CHECK_THROWS_AS(GaOperatorModule(f2, 3, {a}), ValidationError);
}

TEST_CASE("left regular comodules verify and have the expected pieces") {
    auto m = ga(3, 12);
    Comodule lg = left_regular_comodule(m, 6);
    lg.verify();
    for (uint32_t d = 0; d <= 6; ++d)
        CHECK(filtration_piece(lg, d).space.dim() == d + 1);

    auto u3 = un(3, 2, 9);
    Comodule lu = left_regular_comodule(u3, 4);
    lu.verify();
    CHECK(lu.ambient_degree() == 8);
    // exhaustion at the ambient degree
    CHECK(filtration_piece(lu, 8).space.dim() == lu.dim());
}

TEST_CASE("largest subcomodule accepts X above the coaction window") {
    auto m = ga(2, 8);
    Field f2(2);
    GaOperatorModule jb(f2, 2, {jordan_block(f2, 2)});
    Comodule cj = comodule_from_operators(m, jb, 2);
    // X = span{1, t^3} given inside O(G_a)_{<= 4}: only the part of X inside
    // the coaction window matters, so this computes the invariants
    Subspace x(f2, m->basis_size(4));
    Vec v1(m->basis_size(4), 0);
    v1[0] = 1;
    Vec v3(m->basis_size(4), 0);
    v3[3] = 1;
    x.add_vector(v1);
    x.add_vector(v3);
    Submodule got = largest_subcomodule(cj, x, 4);
    CHECK(got.space.dim() == 1);
    CHECK(got.space.contains(unit(2, 0)));
}

TEST_CASE("frobenius twist over U_3") {
    auto u3 = un(3, 2, 8);
    Comodule reg = regular_comodule(u3, 2);
    Comodule tw = frobenius_twist(reg, 1);
    tw.verify();
    CHECK(tw.ambient_degree() == 4);
    for (uint32_t d = 0; d <= 2; ++d)
        CHECK(filtration_piece(reg, d).space == filtration_piece(tw, 2 * d).space);
}
