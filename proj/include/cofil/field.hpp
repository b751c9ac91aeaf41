#ifndef COFIL_FIELD_HPP
#define COFIL_FIELD_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "cofil/errors.hpp"

namespace cofil {

// An element of F_{p^m} is packed into a uint32_t as the base-p digit string
// of its polynomial representative: value = sum c_i * p^i with 0 <= c_i < p.
// For m = 1 this is just the residue in [0, p).
using FVal = uint32_t;

// F_{p^m} given by an irreducible monic modulus of degree m over F_p.
// All operations are pure; Field is cheap to copy (the inverse table is
// shared).  Construction verifies primality of p and irreducibility of the
// modulus by trial factorization.
class Field {
public:
    explicit Field(uint32_t p);                   // prime field
    Field(uint32_t p, uint32_t m);                // built-in modulus (p <= 7, m <= 4)
    Field(uint32_t p, uint32_t m, std::vector<uint32_t> modulus);  // c_0..c_m, monic

    uint32_t p() const { return p_; }
    uint32_t ext_degree() const { return m_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    bool is_prime_field() const { return m_ == 1; }

    FVal zero() const { return 0; }
    FVal one() const { return 1; }
    // reduce an integer (possibly negative) into the prime subfield
    FVal from_int(int64_t n) const;
    // prime-subfield value (0..p-1) viewed in this field
    FVal embed_prime(FVal a) const { return a % p_; }

    FVal add(FVal a, FVal b) const;
    FVal sub(FVal a, FVal b) const;
    FVal neg(FVal a) const;
    FVal mul(FVal a, FVal b) const;
    FVal inv(FVal a) const;
    FVal pow(FVal a, uint64_t e) const;

    bool operator==(const Field& o) const {
        return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    void init();
    FVal mul_slow(FVal a, FVal b) const;

    uint32_t p_ = 0, m_ = 1;
    uint64_t q_ = 0;
    std::vector<uint32_t> modulus_;  // empty for m == 1
    std::shared_ptr<const std::vector<FVal>> inv_table_;
};

// binomial(n, k) mod p via Lucas' theorem
uint32_t lucas_binom(uint64_t n, uint64_t k, uint32_t p);

}  // namespace cofil

#endif
