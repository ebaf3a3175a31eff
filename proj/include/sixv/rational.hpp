#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "sixv/errors.hpp"

namespace sixv {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.  Thin value wrapper around GMP's mpq_class so that all
/// arithmetic in the library returns plain values (no expression templates
/// leaking into templated code).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) { normalize_(); }
    explicit Rat(const mpq_class& v) : v_(v) { normalize_(); }
    explicit Rat(const mpz_class& n) : v_(n) {}

    /// Parses "num/den" or "num" (base 10).  Throws DomainError on a zero
    /// denominator or malformed input.
    static Rat parse(const std::string& text);

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    std::string num_str() const { return v_.get_num().get_str(); }
    std::string den_str() const { return v_.get_den().get_str(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw PoleError("rational division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    Rat inv() const {
        if (is_zero()) throw PoleError("inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    /// Integer power with exact handling of negative exponents.
    Rat pow(long e) const;

    /// True when the value is the square of a rational; if so *root is set
    /// to the nonnegative square root.
    bool perfect_square_root(Rat* root) const;

    /// "num/den", or just "num" when the denominator is one.
    std::string str() const;

    /// Decimal rendering with the given number of significant digits.
    /// Only used for human-readable reports; all computation stays exact.
    std::string decimal(unsigned digits = 20) const;

    double to_double() const { return v_.get_d(); }

private:
    void normalize_() {
        if (v_.get_den() == 0) throw DomainError("zero denominator");
        v_.canonicalize();
    }

    mpq_class v_;
};

inline Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    if (is_zero()) {
        if (e < 0) throw PoleError("zero to a negative power");
        return Rat(0);
    }
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
    mpq_class r(n, d);
    r.canonicalize();
    if (neg) r = 1 / r;
    return Rat(r);
}

inline bool Rat::perfect_square_root(Rat* root) const {
    if (sign() < 0) return false;
    mpz_class n = v_.get_num(), d = v_.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return false;
    if (root) {
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        *root = Rat(mpq_class(rn, rd));
    }
    return true;
}

} // namespace sixv
