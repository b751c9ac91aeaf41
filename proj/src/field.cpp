#include "cofil/field.hpp"

#include <algorithm>
#include <map>

namespace cofil {

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<uint32_t>;  // dense coefficients mod p, c_0..c_deg

int degree_of(const Poly& f) {
    for (int i = (int)f.size() - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

uint32_t mod_inv(uint32_t a, uint32_t p) {
    // p is prime and a != 0
    uint32_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = (uint64_t)r * b % p;
        b = (uint64_t)b * b % p;
        e >>= 1;
    }
    return r;
}

Poly poly_mul(const Poly& a, const Poly& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + (uint64_t)a[i] * b[j]) % p;
    }
    return c;
}

// remainder of a mod b, b monic-ish (leading coeff inverted here)
Poly poly_rem(Poly a, const Poly& b, uint32_t p) {
    int db = degree_of(b);
    uint32_t lead_inv = mod_inv(b[db], p);
    int da = degree_of(a);
    while (da >= db) {
        uint32_t f = (uint64_t)a[da] * lead_inv % p;
        if (f) {
            for (int i = 0; i <= db; ++i) {
                uint32_t s = (uint64_t)f * b[i] % p;
                uint32_t& t = a[da - db + i];
                t = (t + p - s) % p;
            }
        }
        --da;
        while (da >= 0 && a[da] == 0) --da;
    }
    a.resize(da + 1);
    return a;
}

bool poly_divides(const Poly& d, const Poly& f, uint32_t p) {
    return degree_of(poly_rem(f, d, p)) < 0;
}

bool is_irreducible(const Poly& f, uint32_t p) {
    int d = degree_of(f);
    if (d <= 0) return false;
    if (d == 1) return true;
    // trial division by all monic polynomials of degree 1..d/2
    for (int e = 1; 2 * e <= d; ++e) {
        uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            Poly g(e + 1, 0);
            uint64_t v = idx;
            for (int i = 0; i < e; ++i) { g[i] = v % p; v /= p; }
            g[e] = 1;
            if (poly_divides(g, f, p)) return false;
        }
    }
    return true;
}

// default irreducible moduli for small extensions, coefficients c_0..c_m
const std::map<std::pair<uint32_t, uint32_t>, Poly> kDefaultModuli = {
    {{2, 2}, {1, 1, 1}},          // x^2+x+1
    {{2, 3}, {1, 1, 0, 1}},       // x^3+x+1
    {{2, 4}, {1, 1, 0, 0, 1}},    // x^4+x+1
    {{3, 2}, {1, 0, 1}},          // x^2+1
    {{3, 3}, {1, 2, 0, 1}},       // x^3+2x+1
    {{3, 4}, {2, 1, 0, 0, 1}},    // x^4+x+2
    {{5, 2}, {2, 0, 1}},          // x^2+2
    {{5, 3}, {1, 1, 0, 1}},       // x^3+x+1
    {{5, 4}, {2, 0, 0, 0, 1}},    // x^4+2
    {{7, 2}, {1, 0, 1}},          // x^2+1
    {{7, 3}, {2, 0, 0, 1}},       // x^3+2
    {{7, 4}, {1, 1, 0, 0, 1}},    // x^4+x+1
};

}  // namespace

Field::Field(uint32_t p) : p_(p), m_(1) { init(); }

Field::Field(uint32_t p, uint32_t m) : p_(p), m_(m) {
    if (m_ > 1) {
        auto it = kDefaultModuli.find({p, m});
        if (it == kDefaultModuli.end())
            throw ValidationError("no built-in modulus for F_{" + std::to_string(p) + "^" +
                                  std::to_string(m) + "}; supply one explicitly");
        modulus_ = it->second;
    }
    init();
}

Field::Field(uint32_t p, uint32_t m, std::vector<uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    init();
}

void Field::init() {
    if (!is_prime(p_)) throw ValidationError("characteristic must be prime");
    if (m_ < 1) throw ValidationError("extension degree must be >= 1");
    if (m_ == 1) {
        modulus_.clear();
    } else {
        for (auto& c : modulus_) c %= p_;
        if (degree_of(modulus_) != (int)m_ || modulus_[m_] != 1)
            throw ValidationError("modulus must be monic of degree m");
        if (!is_irreducible(modulus_, p_))
            throw ValidationError("modulus is reducible over F_p");
    }
    q_ = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        q_ *= p_;
        if (q_ > (1u << 20))
            throw ValidationError("field too large for dense inverse table");
    }
    auto table = std::make_shared<std::vector<FVal>>(q_, 0);
    for (uint64_t a = 1; a < q_; ++a) {
        if ((*table)[a]) continue;
        // brute scan; fields stay tiny at desk scale
        for (uint64_t b = a; b < q_; ++b) {
            if (mul_slow((FVal)a, (FVal)b) == 1) {
                (*table)[a] = (FVal)b;
                (*table)[b] = (FVal)a;
                break;
            }
        }
        if (!(*table)[a]) throw ValidationError("element without inverse; modulus not irreducible?");
    }
    inv_table_ = std::move(table);
}

FVal Field::from_int(int64_t n) const {
    int64_t r = n % (int64_t)p_;
    if (r < 0) r += p_;
    return (FVal)r;
}

FVal Field::add(FVal a, FVal b) const {
    if (m_ == 1) {
        uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    FVal r = 0, mult = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        uint32_t d = (a % p_ + b % p_) % p_;
        r += d * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

FVal Field::neg(FVal a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    FVal r = 0, mult = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        uint32_t d = a % p_;
        r += (d ? p_ - d : 0) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

FVal Field::sub(FVal a, FVal b) const { return add(a, neg(b)); }

FVal Field::mul_slow(FVal a, FVal b) const {
    if (m_ == 1) return (uint64_t)a * b % p_;
    Poly pa(m_, 0), pb(m_, 0);
    for (uint32_t i = 0; i < m_; ++i) { pa[i] = a % p_; a /= p_; }
    for (uint32_t i = 0; i < m_; ++i) { pb[i] = b % p_; b /= p_; }
    Poly pc = poly_rem(poly_mul(pa, pb, p_), modulus_, p_);
    FVal r = 0, mult = 1;
    for (uint32_t i = 0; i < m_; ++i) {
        if (i < pc.size()) r += pc[i] * mult;
        mult *= p_;
    }
    return r;
}

FVal Field::mul(FVal a, FVal b) const {
    if (a == 0 || b == 0) return 0;
    if (a == 1) return b;
    if (b == 1) return a;
    return mul_slow(a, b);
}

FVal Field::inv(FVal a) const {
    if (a == 0) throw ValidationError("division by zero");
    return (*inv_table_)[a];
}

FVal Field::pow(FVal a, uint64_t e) const {
    FVal r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint32_t lucas_binom(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    uint64_t r = 1;
    while (k > 0 || n > 0) {
        uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        // small binomial mod p
        uint64_t num = 1, den = 1;
        for (uint64_t i = 0; i < ki; ++i) {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        r = r * num % p * mod_inv((uint32_t)den, p) % p;
        n /= p;
        k /= p;
    }
    return (uint32_t)r;
}

}  // namespace cofil
