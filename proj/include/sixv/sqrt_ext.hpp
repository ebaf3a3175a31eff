#pragma once

#include "sixv/errors.hpp"
#include "sixv/field.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Quadratic extension F[s]/(s^2 - rad): values a + b*s with a, b, rad in F.
/// The radicand travels with each value instead of living in a global
/// context; values with b = 0 are radicand-agnostic and combine with
/// anything, while combining two values that genuinely use different
/// radicands is a programming error and throws.  The intended use keeps a
/// single radicand per computation (an adjoined square root of a parameter
/// that has none in the base field), with nesting for a second root.
template <class F>
class SqrtExt {
public:
    SqrtExt() : a_(), b_(), rad_() {}
    explicit SqrtExt(const F& a) : a_(a), b_(), rad_() {}
    SqrtExt(const F& a, const F& b, const F& rad) : a_(a), b_(b), rad_(rad) {
        if (!b_.is_zero() && rad_.is_zero())
            throw DomainError("quadratic extension with zero radicand");
    }

    /// The adjoined root itself, s = sqrt(rad).
    static SqrtExt root(const F& rad) {
        if (rad.is_zero()) throw DomainError("adjoined root of zero");
        F one = unit_like_(rad);
        return SqrtExt(one - one, one, rad);
    }

    const F& base() const { return a_; }
    const F& root_part() const { return b_; }
    const F& radicand() const { return rad_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return a_.is_one() && b_.is_zero(); }

    SqrtExt operator-() const { return SqrtExt(-a_, -b_, rad_); }

    friend SqrtExt operator+(const SqrtExt& x, const SqrtExt& y) {
        return SqrtExt(x.a_ + y.a_, x.b_ + y.b_, joint_rad_(x, y));
    }
    friend SqrtExt operator-(const SqrtExt& x, const SqrtExt& y) { return x + (-y); }
    friend SqrtExt operator*(const SqrtExt& x, const SqrtExt& y) {
        F rad = joint_rad_(x, y);
        F a = x.a_ * y.a_;
        F b = x.a_ * y.b_ + x.b_ * y.a_;
        if (!x.b_.is_zero() && !y.b_.is_zero()) a += x.b_ * y.b_ * rad;
        return SqrtExt(a, b, rad);
    }
    friend SqrtExt operator/(const SqrtExt& x, const SqrtExt& y) { return x * y.inv(); }

    SqrtExt& operator+=(const SqrtExt& o) { *this = *this + o; return *this; }
    SqrtExt& operator-=(const SqrtExt& o) { *this = *this - o; return *this; }
    SqrtExt& operator*=(const SqrtExt& o) { *this = *this * o; return *this; }
    SqrtExt& operator/=(const SqrtExt& o) { *this = *this / o; return *this; }

    SqrtExt inv() const {
        if (is_zero()) throw PoleError("inverse of zero");
        if (b_.is_zero()) return SqrtExt(unit_like_(a_) / a_, b_, rad_);
        // Conjugate trick; the norm vanishes only if rad is a square in F,
        // which the construction is expected to avoid.
        F norm = a_ * a_ - b_ * b_ * rad_;
        if (norm.is_zero()) throw PoleError("non-invertible element of quadratic extension");
        return SqrtExt(a_ / norm, -(b_ / norm), rad_);
    }

    SqrtExt pow(long e) const {
        if (e == 0) {
            SqrtExt r;
            r.a_ = unit_like_(rad_.is_zero() ? a_ : rad_);
            r.rad_ = rad_;
            return r;
        }
        if (e < 0) return inv().pow(-e);
        SqrtExt acc = pow(0), base = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) acc *= base;
            if (k >>= 1) base *= base;
        }
        return acc;
    }

    friend bool operator==(const SqrtExt& x, const SqrtExt& y) {
        if (!(x.a_ == y.a_) || !(x.b_ == y.b_)) return false;
        if (x.b_.is_zero()) return true;
        return x.rad_ == y.rad_;
    }
    friend bool operator!=(const SqrtExt& x, const SqrtExt& y) { return !(x == y); }

private:
    // One in the coefficient field, built without assuming a converting
    // constructor from int exists for every F.
    static F unit_like_(const F& sample) {
        return FieldOps<F>::from_rat(sample, Rat(1));
    }

    static F joint_rad_(const SqrtExt& x, const SqrtExt& y) {
        if (x.b_.is_zero() && x.rad_.is_zero()) return y.rad_;
        if (y.b_.is_zero() && y.rad_.is_zero()) return x.rad_;
        if (!(x.rad_ == y.rad_)) {
            if (x.b_.is_zero()) return y.rad_;
            if (y.b_.is_zero()) return x.rad_;
            throw DomainError("mixing quadratic extensions with different radicands");
        }
        return x.rad_;
    }

    F a_, b_, rad_;
};

template <class F>
struct FieldOps<SqrtExt<F>> {
    static SqrtExt<F> from_rat(const SqrtExt<F>& proto, const Rat& r) {
        const F& inner = proto.radicand().is_zero() ? proto.base() : proto.radicand();
        F a = FieldOps<F>::from_rat(inner, r);
        return SqrtExt<F>(a, a - a, proto.radicand());
    }
};

} // namespace sixv
