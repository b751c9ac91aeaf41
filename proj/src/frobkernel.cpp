#include "cofil/frobkernel.hpp"

#include <algorithm>
#include <random>

#include "cofil/errors.hpp"
#include "cofil/families.hpp"

namespace cofil {

void KernelModule::validate() const {
    for (const auto& u : ops) {
        if (u.rows() != dim() || u.cols() != dim()) throw ValidationError("operator shape");
        if (!u.pow(field.p()).is_zero())
            throw ValidationError("kernel generator is not p-nilpotent");
    }
}

void ElementaryAbelianModule::validate() const {
    size_t n = dim();
    Matrix id = Matrix::identity(field, n);
    for (const auto& g : gops) {
        if (g.rows() != n || g.cols() != n) throw ValidationError("group generator shape");
        if (!(g.pow(field.p()) == id)) throw ValidationError("generator order is not p");
    }
    for (size_t i = 0; i < gops.size(); ++i)
        for (size_t j = i + 1; j < gops.size(); ++j)
            if (!(gops[i].mul(gops[j]) == gops[j].mul(gops[i])))
                throw ValidationError("group generators do not commute");
}

KernelModule restrict_to_kernel(const Comodule& m, uint32_t r) {
    if (r < 1) throw ValidationError("kernel height must be >= 1");
    const auto& model = *m.model();
    const Field& k = m.field();
    if (model.kind() == ModelKind::GLN)
        throw ValidationError("GL_N kernel restriction is out of scope");
    if (model.kind() == ModelKind::UN && model.N() > 3)
        throw ValidationError("U_N kernel restriction implemented for N <= 3");
    KernelModule out;
    out.field = k;
    out.r = r;
    out.dim_hint = m.dim();
    auto op_for = [&](const Monomial& mono) {
        // action of the functional dual to the given basis monomial
        if (model.monomial_degree(mono) > m.ambient_degree()) return Matrix(k, m.dim(), m.dim());
        size_t idx = model.monomial_index(mono);
        auto it = m.ops().find((uint32_t)idx);
        return it == m.ops().end() ? Matrix(k, m.dim(), m.dim()) : it->second;
    };
    if (model.kind() == ModelKind::Ga) {
        uint64_t pi = 1;
        for (uint32_t i = 0; i < r; ++i) {
            Monomial mono;
            mono.exps.emplace_back((uint16_t)0, (uint32_t)pi);
            out.ops.push_back(op_for(mono));
            pi *= k.p();
        }
        out.algebra_dim = 1;
        for (uint32_t i = 0; i < r; ++i) out.algebra_dim *= k.p();
    } else {
        uint32_t n = model.N();
        for (uint32_t i = 0; i < r; ++i) {
            uint64_t pi = 1;
            for (uint32_t t = 0; t < i; ++t) pi *= k.p();
            for (uint32_t a = 0; a < n; ++a)
                for (uint32_t b = a + 1; b < n; ++b) {
                    Monomial mono;
                    mono.exps.emplace_back((uint16_t)(a * n + b), (uint32_t)pi);
                    out.ops.push_back(op_for(mono));
                }
        }
        uint32_t nprime = n * (n - 1) / 2;
        out.algebra_dim = 1;
        for (uint32_t i = 0; i < r * nprime; ++i) out.algebra_dim *= k.p();
    }
    out.validate();
    return out;
}

FreenessReport is_free(const KernelModule& m) {
    const Field& k = m.field;
    size_t n = m.dim();
    Subspace radical(k, n);
    for (const auto& u : m.ops)
        for (size_t a = 0; a < n; ++a) {
            Vec e(n, 0);
            e[a] = k.one();
            radical.add_vector(u.apply(e));
        }
    FreenessReport rep;
    rep.top_dim = n - radical.dim();
    rep.defect = (int64_t)n - (int64_t)(rep.top_dim * m.algebra_dim);
    rep.free = rep.defect == 0;
    return rep;
}

ElementaryAbelianModule to_elementary_abelian(const KernelModule& m) {
    uint64_t expect = 1;
    for (size_t i = 0; i < m.ops.size(); ++i) expect *= m.field.p();
    if (expect != m.algebra_dim)
        throw ValidationError("kernel module is not of elementary abelian shape");
    for (size_t i = 0; i < m.ops.size(); ++i)
        for (size_t j = i + 1; j < m.ops.size(); ++j)
            if (!(m.ops[i].mul(m.ops[j]) == m.ops[j].mul(m.ops[i])))
                throw ValidationError("kernel operators do not commute");
    ElementaryAbelianModule out;
    out.field = m.field;
    out.r = (uint32_t)m.ops.size();
    Matrix id = Matrix::identity(m.field, m.dim());
    for (const auto& u : m.ops) out.gops.push_back(id.add(u));
    out.validate();
    return out;
}

KernelModule from_elementary_abelian(const ElementaryAbelianModule& m) {
    KernelModule out;
    out.field = m.field;
    out.r = m.r;
    out.dim_hint = m.dim();
    out.algebra_dim = 1;
    for (uint32_t i = 0; i < m.r; ++i) out.algebra_dim *= m.field.p();
    Matrix id = Matrix::identity(m.field, m.dim());
    for (const auto& g : m.gops) out.ops.push_back(g.sub(id));
    out.validate();
    return out;
}

PiPointResult pi_point_test(const ElementaryAbelianModule& m, const Field& ext,
                            const std::vector<FVal>& alpha) {
    const Field& base = m.field;
    if (alpha.size() != m.gops.size()) throw ValidationError("alpha length mismatch");
    bool nonzero = false;
    for (FVal a : alpha)
        if (a) nonzero = true;
    if (!nonzero) throw ValidationError("alpha must be nonzero");
    if (ext.p() != base.p()) throw ValidationError("pi-point field has wrong characteristic");
    if (!base.is_prime_field() && !(ext == base))
        throw ValidationError("extension of a non-prime module field is unsupported");
    size_t n = m.dim();
    PiPointResult res;
    if (n % base.p() != 0) {
        // dimension is not a multiple of p: structurally not free
        res.free = false;
        res.rank = 0;
        return res;
    }
    Matrix a(ext, n, n);
    for (size_t i = 0; i < m.gops.size(); ++i) {
        if (!alpha[i]) continue;
        // u_i = g_i - 1 lifted entrywise along the prime subfield
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                FVal v = m.gops[i].at(r, c);
                if (r == c) v = base.sub(v, base.one());
                if (!v) continue;
                FVal lifted = base.is_prime_field() ? ext.embed_prime(v) : v;
                a.at(r, c) = ext.add(a.at(r, c), ext.mul(alpha[i], lifted));
            }
    }
    res.rank = rank(a);
    res.free = res.rank == (uint64_t)n / base.p() * (base.p() - 1);
    return res;
}

SupportProbe support_probe(const ElementaryAbelianModule& m, uint64_t seed,
                           size_t samples_per_field) {
    SupportProbe probe;
    probe.freeness = is_free(from_elementary_abelian(m));
    probe.empty = probe.freeness.free;
    if (m.dim() == 0) {
        probe.empty = true;
        probe.freeness.free = true;
        return probe;
    }
    std::mt19937_64 rng(seed);
    for (uint32_t extdeg = 1; extdeg <= 3; ++extdeg) {
        if (!m.field.is_prime_field() && extdeg > 1) break;
        Field ext = extdeg == 1 ? m.field : Field(m.field.p(), extdeg);
        std::uniform_int_distribution<uint64_t> pick(0, ext.q() - 1);
        for (size_t s = 0; s < samples_per_field; ++s) {
            std::vector<FVal> alpha(m.gops.size(), 0);
            bool nz = false;
            for (auto& x : alpha) {
                x = (FVal)pick(rng);
                if (x) nz = true;
            }
            if (!nz) alpha[0] = ext.one();
            auto res = pi_point_test(m, ext, alpha);
            if (!res.free) {
                if (probe.empty)
                    throw CrossCheckFailure(
                        "sampled pi-point is non-free on a module the exact test calls free");
                if (probe.witnesses.size() < 5 &&
                    std::find(probe.witnesses.begin(), probe.witnesses.end(), alpha) ==
                        probe.witnesses.end())
                    probe.witnesses.push_back(alpha);
            }
        }
    }
    return probe;
}

bool support_empty(const ElementaryAbelianModule& m, uint64_t seed) {
    return support_probe(m, seed).empty;
}

SupportReport mock_injectivity_verdict(const ModuleFamily& family, uint32_t rmax,
                                       uint64_t seed) {
    SupportReport rep;
    rep.rmax = rmax;
    rep.all_empty = true;
    for (uint32_t r = 1; r <= rmax; ++r) {
        uint32_t cap1 = family.block_complete_cap(r, 1);
        uint32_t cap2 = family.block_complete_cap(r, 2);
        KernelModule k1 = restrict_to_kernel(family.piece(cap1), r);
        KernelModule k2 = restrict_to_kernel(family.piece(cap2), r);
        FreenessReport f1 = is_free(k1);
        FreenessReport f2 = is_free(k2);
        if (f1.free != f2.free)
            throw CapOverflow("restriction verdict does not stabilize between caps " +
                              std::to_string(cap1) + " and " + std::to_string(cap2));
        HeightRecord rec;
        rec.r = r;
        rec.cap = cap2;
        rec.free = f2.free;
        rec.top_dim = f2.top_dim;
        rec.defect = f2.defect;
        if (family.model()->kind() == ModelKind::Ga) {
            auto probe = support_probe(to_elementary_abelian(k2), seed + r);
            rec.witnesses = probe.witnesses;
            if (probe.empty != f2.free) throw CrossCheckFailure("probe and freeness disagree");
        }
        if (!rec.free && rep.first_failing_r == 0) {
            rep.first_failing_r = r;
            rep.all_empty = false;
        }
        rep.per_height.push_back(std::move(rec));
    }
    return rep;
}

InjectivityVerdict ga_injectivity_verdict(const ModuleFamily& family, uint32_t rmax,
                                          uint64_t seed) {
    if (family.model()->kind() != ModelKind::Ga)
        throw ValidationError("pi-point injectivity detection is a G_a operation");
    InjectivityVerdict v;
    v.rmax = rmax;
    v.injective = true;
    uint32_t p = family.model()->field().p();
    for (uint32_t r = 1; r <= rmax; ++r) {
        uint32_t d = 1;
        for (uint32_t i = 0; i < r; ++i) d *= p;
        --d;
        Comodule piece = family.piece(d);
        KernelModule km = restrict_to_kernel(piece, r);
        auto probe = support_probe(to_elementary_abelian(km), seed + 100 + r);
        HeightRecord rec;
        rec.r = r;
        rec.cap = d;
        rec.free = probe.empty;
        rec.top_dim = probe.freeness.top_dim;
        rec.defect = probe.freeness.defect;
        rec.witnesses = probe.witnesses;
        if (!probe.empty && v.witness_r == 0) {
            v.witness_r = r;
            v.injective = false;
        }
        v.per_height.push_back(std::move(rec));
    }
    return v;
}

}  // namespace cofil
