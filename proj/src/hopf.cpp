#include "cofil/hopf.hpp"

#include <algorithm>
#include <sstream>

#include "cofil/errors.hpp"

namespace cofil {

std::string kind_name(ModelKind k) {
    switch (k) {
        case ModelKind::Ga: return "ga";
        case ModelKind::UN: return "un";
        case ModelKind::GLN: return "gln";
    }
    return "?";
}

uint32_t Monomial::degree_sum() const {
    uint32_t d = 0;
    for (const auto& [v, e] : exps) d += e;
    return d;
}

uint32_t Monomial::exp_of(uint16_t var) const {
    for (const auto& [v, e] : exps)
        if (v == var) return e;
    return 0;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    r.det_neg = det_neg + o.det_neg;
    size_t i = 0, j = 0;
    while (i < exps.size() && j < o.exps.size()) {
        if (exps[i].first < o.exps[j].first) r.exps.push_back(exps[i++]);
        else if (exps[i].first > o.exps[j].first) r.exps.push_back(o.exps[j++]);
        else {
            r.exps.emplace_back(exps[i].first, exps[i].second + o.exps[j].second);
            ++i; ++j;
        }
    }
    r.exps.insert(r.exps.end(), exps.begin() + i, exps.end());
    r.exps.insert(r.exps.end(), o.exps.begin() + j, o.exps.end());
    return r;
}

Monomial Monomial::power(uint32_t k) const {
    Monomial r;
    if (k == 0) return r;
    r = *this;
    r.det_neg = det_neg * k;
    for (auto& [v, e] : r.exps) e *= k;
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    for (const auto& [v, e] : exps)
        if (o.exp_of(v) < e) return false;
    return true;
}

Monomial Monomial::quotient_by(const Monomial& o) const {
    Monomial r;
    r.det_neg = det_neg;  // caller handles det bookkeeping
    size_t j = 0;
    for (const auto& [v, e] : exps) {
        uint32_t sub = 0;
        while (j < o.exps.size() && o.exps[j].first < v) ++j;
        if (j < o.exps.size() && o.exps[j].first == v) sub = o.exps[j].second;
        if (sub > e) throw ValidationError("monomial quotient not defined");
        if (e > sub) r.exps.emplace_back(v, e - sub);
    }
    return r;
}

bool Monomial::operator<(const Monomial& o) const {
    // graded lexicographic; the lex leg must be multiplicative so that exact
    // division by a polynomial can trust leading terms
    uint32_t da = degree_sum(), db = o.degree_sum();
    if (da != db) return da < db;
    if (det_neg != o.det_neg) return det_neg < o.det_neg;
    size_t i = 0, j = 0;
    while (i < exps.size() || j < o.exps.size()) {
        uint16_t va = i < exps.size() ? exps[i].first : UINT16_MAX;
        uint16_t vb = j < o.exps.size() ? o.exps[j].first : UINT16_MAX;
        if (va == vb) {
            if (exps[i].second != o.exps[j].second) return exps[i].second < o.exps[j].second;
            ++i;
            ++j;
        } else if (va < vb) {
            // this monomial has positive exponent at an earlier variable
            return false;
        } else {
            return true;
        }
    }
    return false;
}

namespace {

// leading term under the graded order (largest monomial)
std::map<Monomial, FVal>::const_reverse_iterator leading(const HopfElement& f) {
    return f.terms.rbegin();
}

void add_term(std::map<Monomial, FVal>& terms, const Monomial& m, FVal c, const Field& k) {
    if (!c) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second = k.add(it->second, c);
        if (!it->second) terms.erase(it);
    }
}

TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b, const Field& k) {
    TensorPoly r;
    for (const auto& [ta, ca] : a)
        for (const auto& [tb, cb] : b) {
            FVal c = k.mul(ca, cb);
            if (!c) continue;
            TensorTerm t{ta.first.times(tb.first), ta.second.times(tb.second)};
            auto it = r.find(t);
            if (it == r.end()) r.emplace(std::move(t), c);
            else {
                it->second = k.add(it->second, c);
                if (!it->second) r.erase(it);
            }
        }
    return r;
}

TensorPoly tensor_pow(const TensorPoly& a, uint32_t e, const Field& k) {
    TensorPoly r;
    r.emplace(TensorTerm{Monomial{}, Monomial{}}, k.one());
    TensorPoly b = a;
    while (e) {
        if (e & 1) r = tensor_mul(r, b, k);
        e >>= 1;
        if (e) b = tensor_mul(b, b, k);
    }
    return r;
}

void enumerate_monomials_of_degree(const std::vector<uint16_t>& vars, uint32_t deg,
                                   std::vector<Monomial>& out) {
    // exponent tuples of total degree == deg, first variable major, descending
    if (vars.empty()) {
        if (deg == 0) out.push_back(Monomial{});
        return;
    }
    std::vector<uint32_t> exp(vars.size(), 0);
    struct Rec {
        const std::vector<uint16_t>& vars;
        std::vector<uint32_t>& exp;
        std::vector<Monomial>& out;
        void go(size_t i, uint32_t rem) {
            if (i + 1 == exp.size()) {
                exp[i] = rem;
                Monomial m;
                for (size_t j = 0; j < exp.size(); ++j)
                    if (exp[j]) m.exps.emplace_back(vars[j], exp[j]);
                out.push_back(std::move(m));
                return;
            }
            for (uint32_t e = rem + 1; e-- > 0;) {
                exp[i] = e;
                go(i + 1, rem - e);
            }
        }
    } rec{vars, exp, out};
    rec.go(0, deg);
}

uint64_t count_monomials(uint32_t nvars, uint32_t d) {
    // exponent tuples of total degree exactly k, built one variable at a time
    std::vector<uint64_t> exact(d + 1, 0);
    exact[0] = 1;
    for (uint32_t v = 0; v < nvars; ++v) {
        std::vector<uint64_t> next(d + 1, 0);
        for (uint32_t k = 0; k <= d; ++k) {
            uint64_t s = 0;
            for (uint32_t e = 0; e <= k; ++e) s += exact[k - e];
            next[k] = s;
        }
        exact = std::move(next);
    }
    uint64_t total = 0;
    for (auto x : exact) total += x;
    return total;
}

}  // namespace

uint64_t matrix_bialgebra_dim(uint32_t N, uint32_t d) {
    std::vector<uint16_t> vars;
    for (uint32_t i = 0; i < N * N; ++i) vars.push_back((uint16_t)i);
    uint64_t total = 0;
    for (uint32_t k = 0; k <= d; ++k) {
        std::vector<Monomial> ms;
        enumerate_monomials_of_degree(vars, k, ms);
        total += ms.size();
    }
    return total;
}

struct FilteredHopfModel::GlCache {
    GlCache(const Field& f, size_t cols) : solver(f, cols, /*back_eliminate=*/false) {}
    uint32_t E = 0;
    uint32_t num_deg = 0;
    std::vector<Monomial> num_monomials;
    std::map<Monomial, size_t> num_index;
    EchelonSolver solver;
    std::vector<HopfElement> basis;
    std::vector<uint32_t> stage;
    std::unordered_map<size_t, size_t> pivot2idx;
    std::vector<size_t> size_at_degree;  // size_at_degree[d] = basis_size(d)
    int built = -1;
};

FilteredHopfModel::FilteredHopfModel(ModelKind kind, Field field, uint32_t cap, uint32_t N)
    : kind_(kind), n_(N), field_(std::move(field)), cap_(cap) {
    switch (kind_) {
        case ModelKind::Ga:
            n_ = 0;
            var_count_ = 1;
            vars_ = {0};
            break;
        case ModelKind::UN:
            if (n_ < 2) throw ValidationError("U_N requires N >= 2");
            for (uint32_t i = 0; i < n_; ++i)
                for (uint32_t j = i + 1; j < n_; ++j) vars_.push_back((uint16_t)(i * n_ + j));
            var_count_ = (uint32_t)vars_.size();
            if (count_monomials(var_count_, cap_) > 5000000)
                throw ValidationError("cap too large for memory budget");
            break;
        case ModelKind::GLN: {
            if (n_ < 2) throw ValidationError("GL_N requires N >= 2");
            for (uint32_t i = 0; i < n_; ++i)
                for (uint32_t j = 0; j < n_; ++j) vars_.push_back((uint16_t)(i * n_ + j));
            var_count_ = (uint32_t)vars_.size();
            uint32_t e = cap_ / n_;
            if (count_monomials(var_count_, cap_ + e * n_) > 600000)
                throw ValidationError("cap too large for memory budget");
            break;
        }
    }
}

FilteredHopfModel::~FilteredHopfModel() = default;

std::string FilteredHopfModel::var_name(uint16_t var) const {
    if (kind_ == ModelKind::Ga) return "t";
    uint32_t i = var / n_ + 1, j = var % n_ + 1;
    std::string prefix = kind_ == ModelKind::UN ? "y_" : "x_";
    return prefix + std::to_string(i) + "_" + std::to_string(j);
}

uint16_t FilteredHopfModel::var_by_name(const std::string& name) const {
    if (kind_ == ModelKind::Ga) {
        if (name == "t") return 0;
        throw ValidationError("unknown variable '" + name + "'");
    }
    char want = kind_ == ModelKind::UN ? 'y' : 'x';
    if (name.size() < 5 || name[0] != want || name[1] != '_')
        throw ValidationError("unknown variable '" + name + "'");
    size_t us = name.find('_', 2);
    if (us == std::string::npos) throw ValidationError("unknown variable '" + name + "'");
    uint32_t i = (uint32_t)std::stoul(name.substr(2, us - 2));
    uint32_t j = (uint32_t)std::stoul(name.substr(us + 1));
    if (i < 1 || j < 1 || i > n_ || j > n_) throw ValidationError("variable out of range");
    uint16_t var = (uint16_t)((i - 1) * n_ + (j - 1));
    if (std::find(vars_.begin(), vars_.end(), var) == vars_.end())
        throw ValidationError("variable not present in this model");
    return var;
}

HopfElement FilteredHopfModel::one() const {
    HopfElement f;
    f.terms.emplace(Monomial{}, field_.one());
    return f;
}

HopfElement FilteredHopfModel::monomial(const Monomial& m, FVal c) const {
    HopfElement f;
    if (c) f.terms.emplace(m, c);
    return f;
}

HopfElement FilteredHopfModel::generator(uint16_t var) const {
    if (std::find(vars_.begin(), vars_.end(), var) == vars_.end())
        throw ValidationError("variable not present in this model");
    Monomial m;
    m.exps.emplace_back(var, 1);
    return monomial(m);
}

HopfElement FilteredHopfModel::t_power(uint32_t n) const {
    if (kind_ != ModelKind::Ga) throw ValidationError("t_power is a G_a operation");
    Monomial m;
    if (n) m.exps.emplace_back((uint16_t)0, n);
    return monomial(m);
}

HopfElement FilteredHopfModel::det_inverse() const {
    if (kind_ != ModelKind::GLN) throw ValidationError("det_inverse is a GL_N operation");
    Monomial m;
    m.det_neg = 1;
    return monomial(m);
}

HopfElement FilteredHopfModel::det_polynomial() const {
    if (kind_ != ModelKind::GLN) throw ValidationError("det_polynomial is a GL_N operation");
    // sum over permutations with sign
    HopfElement det;
    std::vector<uint32_t> perm(n_);
    for (uint32_t i = 0; i < n_; ++i) perm[i] = i;
    do {
        uint32_t inversions = 0;
        for (uint32_t a = 0; a < n_; ++a)
            for (uint32_t b = a + 1; b < n_; ++b)
                if (perm[a] > perm[b]) ++inversions;
        Monomial m;
        for (uint32_t i = 0; i < n_; ++i) {
            Monomial g;
            g.exps.emplace_back((uint16_t)(i * n_ + perm[i]), 1);
            m = m.times(g);
        }
        FVal c = (inversions % 2 == 0) ? field_.one() : field_.neg(field_.one());
        add_term(det.terms, m, c, field_);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

HopfElement FilteredHopfModel::add(const HopfElement& f, const HopfElement& g) const {
    HopfElement r = f;
    for (const auto& [m, c] : g.terms) add_term(r.terms, m, c, field_);
    if (kind_ == ModelKind::GLN) {
        // adding may mix det powers; restore the common-denominator form
        uint32_t e0 = r.terms.empty() ? 0 : r.terms.begin()->first.det_neg;
        for (const auto& [m, c] : r.terms)
            if (m.det_neg != e0) return canonicalize(std::move(r));
    }
    return r;
}

HopfElement FilteredHopfModel::scale(const HopfElement& f, FVal c) const {
    HopfElement r;
    if (!c) return r;
    for (const auto& [m, cf] : f.terms) {
        FVal x = field_.mul(cf, c);
        if (x) r.terms.emplace(m, x);
    }
    return r;
}

HopfElement FilteredHopfModel::expand_det_power(uint32_t k) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (det_pow_.empty()) det_pow_.push_back(one());
    while (det_pow_.size() <= k) {
        const HopfElement& prev = det_pow_.back();
        HopfElement det = det_polynomial();
        HopfElement next;
        for (const auto& [m1, c1] : prev.terms)
            for (const auto& [m2, c2] : det.terms)
                add_term(next.terms, m1.times(m2), field_.mul(c1, c2), field_);
        det_pow_.push_back(std::move(next));
    }
    return det_pow_[k];
}

bool FilteredHopfModel::try_divide_by_det(const HopfElement& f, HopfElement& quotient) const {
    // exact multivariate long division by the determinant polynomial
    HopfElement det = det_polynomial();
    Monomial lt_det = leading(det)->first;
    FVal lt_det_c = leading(det)->second;
    HopfElement rem = f;
    HopfElement q;
    while (!rem.is_zero()) {
        const Monomial& lt = leading(rem)->first;
        FVal lc = leading(rem)->second;
        if (!lt_det.divides(lt)) return false;
        Monomial step = lt.quotient_by(lt_det);
        FVal sc = field_.mul(lc, field_.inv(lt_det_c));
        add_term(q.terms, step, sc, field_);
        for (const auto& [m, c] : det.terms)
            add_term(rem.terms, step.times(m), field_.neg(field_.mul(sc, c)), field_);
    }
    quotient = std::move(q);
    return true;
}

HopfElement FilteredHopfModel::canonicalize(HopfElement f) const {
    for (auto it = f.terms.begin(); it != f.terms.end();)
        it = it->second == 0 ? f.terms.erase(it) : std::next(it);
    if (kind_ != ModelKind::GLN || f.is_zero()) return f;
    uint32_t e_max = 0;
    for (const auto& [m, c] : f.terms) e_max = std::max(e_max, m.det_neg);
    // put everything over det^{-e_max}
    HopfElement num;
    for (const auto& [m, c] : f.terms) {
        Monomial bare = m;
        bare.det_neg = 0;
        if (m.det_neg == e_max) {
            add_term(num.terms, bare, c, field_);
        } else {
            HopfElement dp = expand_det_power(e_max - m.det_neg);
            for (const auto& [dm, dc] : dp.terms)
                add_term(num.terms, bare.times(dm), field_.mul(c, dc), field_);
        }
    }
    // strip det factors while possible
    while (e_max > 0 && !num.is_zero()) {
        HopfElement q;
        if (!try_divide_by_det(num, q)) break;
        num = std::move(q);
        --e_max;
    }
    HopfElement out;
    for (const auto& [m, c] : num.terms) {
        Monomial withdet = m;
        withdet.det_neg = e_max;
        out.terms.emplace(withdet, c);
    }
    return out;
}

uint32_t FilteredHopfModel::monomial_degree(const Monomial& m) const {
    return m.degree_sum() + (kind_ == ModelKind::GLN ? m.det_neg * n_ : 0);
}

uint32_t FilteredHopfModel::degree(const HopfElement& f) const {
    HopfElement g = kind_ == ModelKind::GLN ? canonicalize(f) : f;
    uint32_t d = 0;
    bool any = false;
    for (const auto& [m, c] : g.terms) {
        if (!c) continue;
        any = true;
        d = std::max(d, monomial_degree(m));
    }
    if (!any) throw ValidationError("the zero element has no degree");
    return d;
}

HopfElement FilteredHopfModel::product(const HopfElement& f, const HopfElement& g) const {
    if (f.is_zero() || g.is_zero()) return zero();
    if (degree(f) + degree(g) > cap_)
        throw CapOverflow("product degree " + std::to_string(degree(f) + degree(g)) +
                          " exceeds cap " + std::to_string(cap_));
    HopfElement r;
    for (const auto& [m1, c1] : f.terms)
        for (const auto& [m2, c2] : g.terms)
            add_term(r.terms, m1.times(m2), field_.mul(c1, c2), field_);
    return canonicalize(std::move(r));
}

TensorPoly FilteredHopfModel::coproduct_generator(uint16_t var) const {
    const Field& k = field_;
    TensorPoly d;
    Monomial unit;
    Monomial g;
    g.exps.emplace_back(var, 1);
    switch (kind_) {
        case ModelKind::Ga:
            d.emplace(TensorTerm{g, unit}, k.one());
            d.emplace(TensorTerm{unit, g}, k.one());
            break;
        case ModelKind::UN: {
            uint32_t i = var / n_, j = var % n_;
            d.emplace(TensorTerm{g, unit}, k.one());
            d.emplace(TensorTerm{unit, g}, k.one());
            for (uint32_t s = i + 1; s < j; ++s) {
                Monomial a, b;
                a.exps.emplace_back((uint16_t)(i * n_ + s), 1);
                b.exps.emplace_back((uint16_t)(s * n_ + j), 1);
                d.emplace(TensorTerm{a, b}, k.one());
            }
            break;
        }
        case ModelKind::GLN: {
            uint32_t i = var / n_, j = var % n_;
            for (uint32_t s = 0; s < n_; ++s) {
                Monomial a, b;
                a.exps.emplace_back((uint16_t)(i * n_ + s), 1);
                b.exps.emplace_back((uint16_t)(s * n_ + j), 1);
                d.emplace(TensorTerm{a, b}, k.one());
            }
            break;
        }
    }
    return d;
}

TensorPoly FilteredHopfModel::coproduct_tensor(const HopfElement& f) const {
    const Field& k = field_;
    TensorPoly out;
    for (const auto& [m, c] : f.terms) {
        TensorPoly acc;
        if (kind_ == ModelKind::Ga) {
            // Delta(t^n) = sum binom(n, i) t^i (x) t^{n-i}, binomials via Lucas
            uint32_t n = m.exp_of(0);
            for (uint32_t i = 0; i <= n; ++i) {
                uint32_t b = lucas_binom(n, i, k.p());
                if (!b) continue;
                Monomial a, bm;
                if (i) a.exps.emplace_back((uint16_t)0, i);
                if (n - i) bm.exps.emplace_back((uint16_t)0, n - i);
                acc.emplace(TensorTerm{a, bm}, k.from_int(b));
            }
        } else {
            acc.emplace(TensorTerm{Monomial{}, Monomial{}}, k.one());
            for (const auto& [var, e] : m.exps)
                acc = tensor_mul(acc, tensor_pow(coproduct_generator(var), e, k), k);
            if (m.det_neg) {
                // det is group-like, so det^{-e} is too
                Monomial dn;
                dn.det_neg = m.det_neg;
                TensorPoly dd;
                dd.emplace(TensorTerm{dn, dn}, k.one());
                acc = tensor_mul(acc, dd, k);
            }
        }
        for (const auto& [t, tc] : acc) {
            FVal v = k.mul(tc, c);
            if (!v) continue;
            auto it = out.find(t);
            if (it == out.end()) out.emplace(t, v);
            else {
                it->second = k.add(it->second, v);
                if (!it->second) out.erase(it);
            }
        }
    }
    return out;
}

std::vector<std::pair<HopfElement, HopfElement>> FilteredHopfModel::coproduct(
    const HopfElement& f) const {
    if (!f.is_zero() && degree(f) > cap_)
        throw CapOverflow("coproduct input degree exceeds cap");
    std::vector<std::pair<HopfElement, HopfElement>> out;
    for (const auto& [t, c] : coproduct_tensor(f))
        out.emplace_back(monomial(t.first, c), monomial(t.second, field_.one()));
    return out;
}

HopfElement FilteredHopfModel::antipode_generator(uint16_t var) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (sigma_gen_.empty()) sigma_gen_.resize(n_ ? (size_t)n_ * n_ : 1);
    size_t slot = var;
    if (!sigma_gen_[slot].is_zero()) return sigma_gen_[slot];
    const Field& k = field_;
    HopfElement result;
    switch (kind_) {
        case ModelKind::Ga: {
            Monomial t;
            t.exps.emplace_back((uint16_t)0, 1);
            result = monomial(t, k.neg(k.one()));
            break;
        }
        case ModelKind::UN: {
            // inverse of a unitriangular matrix: walk over increasing paths
            // sigma(y_{ij}) = sum over i=s_0<s_1<...<s_l=j of (-1)^l prod y_{s_a,s_{a+1}}
            uint32_t i = var / n_, j = var % n_;
            struct Walker {
                const FilteredHopfModel& model;
                HopfElement& acc;
                uint32_t target;
                Monomial path;
                uint32_t len = 0;
                void go(uint32_t at) {
                    if (at == target) {
                        FVal c = (len % 2) ? model.field_.neg(model.field_.one()) : model.field_.one();
                        add_term(acc.terms, path, c, model.field_);
                        return;
                    }
                    for (uint32_t s = at + 1; s <= target; ++s) {
                        Monomial saved = path;
                        Monomial edge;
                        edge.exps.emplace_back((uint16_t)(at * model.n_ + s), 1);
                        path = path.times(edge);
                        ++len;
                        go(s);
                        path = saved;
                        --len;
                    }
                }
            } w{*this, result, j, Monomial{}};
            w.go(i);
            break;
        }
        case ModelKind::GLN: {
            // Cramer: sigma(x_{ij}) = (-1)^{i+j} det(minor_{j,i}) det^{-1}
            uint32_t i = var / n_, j = var % n_;
            std::vector<uint32_t> rows, cols;
            for (uint32_t a = 0; a < n_; ++a)
                if (a != j) rows.push_back(a);
            for (uint32_t b = 0; b < n_; ++b)
                if (b != i) cols.push_back(b);
            HopfElement minor;
            std::vector<uint32_t> perm(rows.size());
            for (uint32_t a = 0; a < rows.size(); ++a) perm[a] = a;
            if (rows.empty()) {
                minor = one();
            } else {
                do {
                    uint32_t inv = 0;
                    for (uint32_t a = 0; a < perm.size(); ++a)
                        for (uint32_t b = a + 1; b < perm.size(); ++b)
                            if (perm[a] > perm[b]) ++inv;
                    Monomial m;
                    for (uint32_t a = 0; a < rows.size(); ++a) {
                        Monomial g;
                        g.exps.emplace_back((uint16_t)(rows[a] * n_ + cols[perm[a]]), 1);
                        m = m.times(g);
                    }
                    add_term(minor.terms, m, (inv % 2) ? k.neg(k.one()) : k.one(), k);
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
            FVal sign = ((i + j) % 2) ? k.neg(k.one()) : k.one();
            HopfElement r;
            for (const auto& [m, c] : minor.terms) {
                Monomial md = m;
                md.det_neg += 1;
                r.terms.emplace(md, k.mul(c, sign));
            }
            result = canonicalize(std::move(r));
            break;
        }
    }
    sigma_gen_[slot] = result;
    return result;
}

HopfElement FilteredHopfModel::antipode(const HopfElement& f) const {
    const Field& k = field_;
    HopfElement out;
    for (const auto& [m, c] : f.terms) {
        HopfElement acc = one();
        for (const auto& [var, e] : m.exps) {
            HopfElement s = antipode_generator(var);
            // binary power with term collection
            HopfElement powr = one(), base = s;
            uint32_t ee = e;
            while (ee) {
                auto mul_raw = [&](const HopfElement& a, const HopfElement& b) {
                    HopfElement r;
                    for (const auto& [m1, c1] : a.terms)
                        for (const auto& [m2, c2] : b.terms)
                            add_term(r.terms, m1.times(m2), k.mul(c1, c2), k);
                    return r;
                };
                if (ee & 1) powr = mul_raw(powr, base);
                ee >>= 1;
                if (ee) base = mul_raw(base, base);
            }
            HopfElement next;
            for (const auto& [m1, c1] : acc.terms)
                for (const auto& [m2, c2] : powr.terms)
                    add_term(next.terms, m1.times(m2), k.mul(c1, c2), k);
            acc = std::move(next);
        }
        if (m.det_neg) {
            // sigma(det^{-e}) = det^{e}
            HopfElement dp = expand_det_power(m.det_neg);
            HopfElement next;
            for (const auto& [m1, c1] : acc.terms)
                for (const auto& [m2, c2] : dp.terms)
                    add_term(next.terms, m1.times(m2), k.mul(c1, c2), k);
            acc = std::move(next);
        }
        for (const auto& [ma, ca] : acc.terms) add_term(out.terms, ma, k.mul(ca, c), k);
    }
    out = canonicalize(std::move(out));
    if (!out.is_zero() && degree(out) > cap_) {
        // The canonical-form degree can overshoot the true filtration degree
        // when det-multiples cancel between summands; fall back to an honest
        // membership test before rejecting.
        bool inside = false;
        if (kind_ == ModelKind::GLN) {
            try {
                coords(out, cap_);
                inside = true;
            } catch (const ValidationError&) {
                inside = false;
            }
        }
        if (!inside) throw CapOverflow("antipode result exceeds cap");
    }
    return out;
}

FVal FilteredHopfModel::counit(const HopfElement& f) const {
    const Field& k = field_;
    FVal r = 0;
    for (const auto& [m, c] : f.terms) {
        bool diagonal = true;
        for (const auto& [var, e] : m.exps) {
            if (kind_ == ModelKind::GLN) {
                if (var / n_ != var % n_) { diagonal = false; break; }
            } else {
                diagonal = false;  // t and y_{i,j} vanish at the identity
                break;
            }
        }
        if (diagonal) r = k.add(r, c);
    }
    return r;
}

HopfElement FilteredHopfModel::frobenius_quotient(uint32_t r, const HopfElement& f) const {
    if (kind_ == ModelKind::GLN)
        throw ValidationError("frobenius_quotient: GL_N kernels are not supported");
    if (r < 1) throw ValidationError("frobenius_quotient: r must be >= 1");
    uint64_t bound = 1;
    for (uint32_t i = 0; i < r; ++i) bound *= field_.p();
    HopfElement out;
    for (const auto& [m, c] : f.terms) {
        bool keep = true;
        for (const auto& [var, e] : m.exps)
            if (e >= bound) { keep = false; break; }
        if (keep) out.terms.emplace(m, c);
    }
    return out;
}

HopfElement FilteredHopfModel::frobenius_star(uint32_t r, const HopfElement& f) const {
    uint64_t q = 1;
    for (uint32_t i = 0; i < r; ++i) q *= field_.p();
    HopfElement out;
    for (const auto& [m, c] : f.terms) {
        Monomial mm = m;
        mm.det_neg = (uint32_t)(mm.det_neg * q);
        for (auto& [v, e] : mm.exps) e = (uint32_t)(e * q);
        out.terms.emplace(std::move(mm), c);
    }
    if (!out.is_zero() && degree(out) > cap_)
        throw CapOverflow("frobenius twist exceeds cap");
    return out;
}

HopfElement FilteredHopfModel::lang_pullback(uint32_t r, const HopfElement& f) const {
    if (kind_ == ModelKind::GLN)
        throw ValidationError("lang_pullback: GL_N is out of scope");
    if (r < 1) throw ValidationError("lang_pullback: r must be >= 1");
    // pullback of g -> F^r(g) g^{-1}: the Frobenius power hits the first
    // Sweedler slot and the antipode the second.  The two orders agree for
    // cocommutative G_a but only this one lands in the F_q-fixed functions
    // for U_N.
    HopfElement out;
    for (const auto& [t, c] : coproduct_tensor(f)) {
        HopfElement left = frobenius_star(r, monomial(t.first, c));
        HopfElement right = antipode(monomial(t.second, field_.one()));
        out = add(out, product(left, right));
    }
    return out;
}

void FilteredHopfModel::ensure_monomials(uint32_t d) const {
    if (monomials_any_ && monomials_built_ >= d) return;
    uint32_t from = monomials_any_ ? monomials_built_ + 1 : 0;
    for (uint32_t k = from; k <= d; ++k) {
        std::vector<Monomial> ms;
        enumerate_monomials_of_degree(vars_, k, ms);
        for (auto& m : ms) {
            monomial_index_.emplace(m, monomials_.size());
            monomials_.push_back(std::move(m));
        }
        monomial_counts_.push_back(monomials_.size());
    }
    monomials_built_ = d;
    monomials_any_ = true;
}

Vec FilteredHopfModel::gl_numerator_coords(const HopfElement& f) const {
    // f must be canonical; expand to the common denominator det^{-E}
    const GlCache& g = *gl_;
    uint32_t e = f.is_zero() ? 0 : f.terms.begin()->first.det_neg;
    Vec v(g.num_monomials.size(), 0);
    for (const auto& [m, c] : f.terms) {
        if (m.det_neg != e) throw ValidationError("non-canonical GL element");
        Monomial bare = m;
        bare.det_neg = 0;
        if (g.E < e) throw ValidationError("det power beyond cache");
        if (g.E == e) {
            auto it = g.num_index.find(bare);
            if (it == g.num_index.end()) throw CapOverflow("element outside coordinate window");
            v[it->second] = field_.add(v[it->second], c);
        } else {
            HopfElement dp = expand_det_power(g.E - e);
            for (const auto& [dm, dc] : dp.terms) {
                Monomial prod = bare.times(dm);
                auto it = g.num_index.find(prod);
                if (it == g.num_index.end()) throw CapOverflow("element outside coordinate window");
                v[it->second] = field_.add(v[it->second], field_.mul(c, dc));
            }
        }
    }
    return v;
}

void FilteredHopfModel::ensure_gl_basis(uint32_t d) const {
    if (d > cap_) throw CapOverflow("degree beyond cap");
    if (!gl_) {
        uint32_t E = cap_ / n_;
        uint32_t num_deg = cap_ + E * n_;
        std::vector<Monomial> table;
        for (uint32_t k = 0; k <= num_deg; ++k) enumerate_monomials_of_degree(vars_, k, table);
        auto g = std::make_unique<GlCache>(field_, table.size());
        g->E = E;
        g->num_deg = num_deg;
        for (size_t i = 0; i < table.size(); ++i) g->num_index.emplace(table[i], i);
        g->num_monomials = std::move(table);
        gl_ = std::move(g);
    }
    GlCache& g = *gl_;
    for (int stage = g.built + 1; stage <= (int)d; ++stage) {
        // generators m * det^{-e} with deg(m) + e*N == stage
        for (uint32_t e = 0; e * n_ <= (uint32_t)stage; ++e) {
            uint32_t md = (uint32_t)stage - e * n_;
            std::vector<Monomial> ms;
            enumerate_monomials_of_degree(vars_, md, ms);
            for (auto& m : ms) {
                Monomial withdet = m;
                withdet.det_neg = e;
                HopfElement gen = monomial(withdet);
                Vec coords = gl_numerator_coords(gen);
                size_t before = g.solver.dim();
                if (!g.solver.insert(coords)) continue;
                // identify the new pivot column
                const auto& piv = g.solver.pivots();
                size_t newp = 0;
                if (g.solver.dim() == before + 1) {
                    for (size_t col : piv)
                        if (!g.pivot2idx.count(col)) { newp = col; break; }
                }
                size_t row_idx = (size_t)(std::lower_bound(piv.begin(), piv.end(), newp) - piv.begin());
                Vec row = g.solver.row(row_idx);
                // decode the stored reduced row back into a canonical element
                HopfElement num;
                for (size_t c = 0; c < row.size(); ++c)
                    if (row[c]) num.terms.emplace(g.num_monomials[c], row[c]);
                HopfElement elt;
                uint32_t e_left = g.E;
                while (e_left > 0 && !num.is_zero()) {
                    HopfElement q;
                    if (!try_divide_by_det(num, q)) break;
                    num = std::move(q);
                    --e_left;
                }
                for (const auto& [mm, cc] : num.terms) {
                    Monomial md2 = mm;
                    md2.det_neg = e_left;
                    elt.terms.emplace(md2, cc);
                }
                g.pivot2idx.emplace(newp, g.basis.size());
                g.basis.push_back(std::move(elt));
                g.stage.push_back((uint32_t)stage);
            }
        }
        g.size_at_degree.push_back(g.basis.size());
        g.built = stage;
    }
}

void FilteredHopfModel::ensure_basis(uint32_t d) const {
    if (d > cap_) throw CapOverflow("degree " + std::to_string(d) + " beyond cap " + std::to_string(cap_));
    if (kind_ == ModelKind::GLN) ensure_gl_basis(d);
    else ensure_monomials(d);
}

size_t FilteredHopfModel::basis_size(uint32_t d) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    ensure_basis(d);
    if (kind_ == ModelKind::GLN) return gl_->size_at_degree[d];
    return monomial_counts_[d];
}

HopfElement FilteredHopfModel::basis_element(uint32_t d, size_t idx) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    ensure_basis(d);
    if (kind_ == ModelKind::GLN) {
        if (idx >= gl_->size_at_degree[d]) throw ValidationError("basis index out of range");
        return gl_->basis[idx];
    }
    if (idx >= monomials_.size() || monomials_[idx].degree_sum() > d)
        throw ValidationError("basis index out of range");
    return monomial(monomials_[idx]);
}

uint32_t FilteredHopfModel::basis_elt_degree(size_t idx) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (kind_ == ModelKind::GLN) {
        if (!gl_ || idx >= gl_->basis.size()) throw ValidationError("basis index out of range");
        return gl_->stage[idx];
    }
    if (idx >= monomials_.size()) throw ValidationError("basis index out of range");
    return monomials_[idx].degree_sum();
}

size_t FilteredHopfModel::monomial_index(const Monomial& m) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (kind_ == ModelKind::GLN) throw ValidationError("monomial_index: not a monomial-basis model");
    ensure_monomials(m.degree_sum());
    auto it = monomial_index_.find(m);
    if (it == monomial_index_.end()) throw ValidationError("monomial not indexed");
    return it->second;
}

const Monomial& FilteredHopfModel::indexed_monomial(size_t idx) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    if (kind_ == ModelKind::GLN) throw ValidationError("indexed_monomial: not a monomial-basis model");
    if (idx >= monomials_.size()) throw ValidationError("monomial index out of range");
    return monomials_[idx];
}

Vec FilteredHopfModel::coords(const HopfElement& f, uint32_t d) const {
    std::lock_guard<std::recursive_mutex> lk(mu_);
    ensure_basis(d);
    if (kind_ == ModelKind::GLN) {
        const GlCache& g = *gl_;
        Vec out(g.size_at_degree[d], 0);
        if (f.is_zero()) return out;
        HopfElement cf = canonicalize(f);
        if (cf.is_zero()) return out;
        Vec num = gl_numerator_coords(cf);
        auto coeffs = g.solver.coordinates(num);
        if (!coeffs) throw ValidationError("element not in the filtration span");
        const auto& piv = g.solver.pivots();
        for (size_t k = 0; k < piv.size(); ++k) {
            if (!(*coeffs)[k]) continue;
            size_t idx = g.pivot2idx.at(piv[k]);
            if (idx >= out.size())
                throw ValidationError("element has degree above " + std::to_string(d));
            out[idx] = (*coeffs)[k];
        }
        return out;
    }
    Vec out(monomial_counts_[d], 0);
    for (const auto& [m, c] : f.terms) {
        if (!c) continue;
        if (m.degree_sum() > d)
            throw ValidationError("element has degree above " + std::to_string(d));
        out[monomial_index_.at(m)] = c;
    }
    return out;
}

std::string to_string(const FilteredHopfModel& model, const HopfElement& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : f.terms) {
        if (!first) os << " + ";
        first = false;
        bool printed = false;
        if (c != 1 || m.is_one()) {
            os << c;
            printed = true;
        }
        for (const auto& [v, e] : m.exps) {
            if (printed) os << "*";
            os << model.var_name(v);
            if (e > 1) os << "^" << e;
            printed = true;
        }
        if (m.det_neg) {
            if (printed) os << "*";
            os << "det^-" << m.det_neg;
        }
    }
    return os.str();
}

}  // namespace cofil
