#ifndef COFIL_RATIONAL_HPP
#define COFIL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "cofil/errors.hpp"

namespace cofil {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with positive denominator and coprime numerator/denominator.
// Carries the leading coefficients of growth fits, where exactness is the
// whole point.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    Rational operator+(const Rational& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
    Rational operator-(const Rational& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
    Rational operator*(const Rational& o) const { return {num_ * o.num_, den_ * o.den_}; }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw ValidationError("rational division by zero");
        return {num_ * o.den_, den_ * o.num_};
    }
    Rational operator-() const { return {-num_, den_}; }
    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

private:
    void normalize() {
        if (den_ == 0) throw ValidationError("zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    BigInt num_, den_;
};

}  // namespace cofil

#endif
