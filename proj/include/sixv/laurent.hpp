#pragma once

#include <map>
#include <string>
#include <vector>

#include "sixv/errors.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Laurent polynomial in one formal variable over a coefficient type F.
/// Zero coefficients are never stored, so the zero polynomial has an empty
/// term map and degree queries on it are a contract violation.
template <class F>
class Laurent {
public:
    Laurent() = default;
    explicit Laurent(const F& c) {
        if (!c.is_zero()) c_[0] = c;
    }

    static Laurent monomial(int e, const F& c) {
        Laurent r;
        if (!c.is_zero()) r.c_[e] = c;
        return r;
    }

    bool is_zero() const { return c_.empty(); }

    int min_exp() const {
        if (is_zero()) throw DomainError("degree of zero polynomial");
        return c_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw DomainError("degree of zero polynomial");
        return c_.rbegin()->first;
    }

    const std::map<int, F>& terms() const { return c_; }

    F coeff(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? F() : it->second;
    }

    void set_coeff(int e, const F& v) {
        if (v.is_zero())
            c_.erase(e);
        else
            c_[e] = v;
    }

    Laurent operator-() const {
        Laurent r;
        for (const auto& [e, c] : c_) r.c_[e] = -c;
        return r;
    }

    Laurent& operator+=(const Laurent& o) {
        for (const auto& [e, c] : o.c_) {
            auto it = c_.find(e);
            if (it == c_.end()) {
                c_[e] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) c_.erase(it);
            }
        }
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += -o; }

    friend Laurent operator+(Laurent a, const Laurent& b) { a += b; return a; }
    friend Laurent operator-(Laurent a, const Laurent& b) { a -= b; return a; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        Laurent r;
        for (const auto& [ea, ca] : a.c_)
            for (const auto& [eb, cb] : b.c_) {
                F prod = ca * cb;
                if (prod.is_zero()) continue;
                auto it = r.c_.find(ea + eb);
                if (it == r.c_.end()) {
                    r.c_[ea + eb] = prod;
                } else {
                    it->second += prod;
                    if (it->second.is_zero()) r.c_.erase(it);
                }
            }
        return r;
    }

    Laurent& operator*=(const Laurent& o) { *this = *this * o; return *this; }

    Laurent scaled(const F& s) const {
        Laurent r;
        if (s.is_zero()) return r;
        for (const auto& [e, c] : c_) {
            F prod = c * s;
            if (!prod.is_zero()) r.c_[e] = prod;
        }
        return r;
    }

    /// Multiplies by the e-th power of the variable.
    Laurent shifted(int e) const {
        Laurent r;
        for (const auto& [k, c] : c_) r.c_[k + e] = c;
        return r;
    }

    friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a.c_ == b.c_); }

    /// Substitutes a value for the variable; Embed lifts coefficients into
    /// the value's type.
    template <class G, class Embed>
    G eval(const G& x, Embed embed) const {
        G acc = embed(F());
        for (const auto& [e, c] : c_) acc += embed(c) * x.pow(e);
        return acc;
    }

    F eval(const F& x) const {
        return eval(x, [](const F& c) { return c; });
    }

private:
    std::map<int, F> c_;
};

/// Rational function of one formal variable over the rationals, kept in a
/// canonical reduced form: numerator and denominator share no polynomial
/// factor, the denominator is a true polynomial with nonzero constant term
/// and leading coefficient one (monomials of the variable are folded into
/// the numerator, which may be Laurent).  This is the scalar type used when
/// the spectral variable is kept formal.
class RatFunc {
public:
    RatFunc() : num_(), den_(Laurent<Rat>(Rat(1))) {}
    RatFunc(const Rat& c) : num_(Laurent<Rat>(c)), den_(Laurent<Rat>(Rat(1))) {}
    RatFunc(long c) : RatFunc(Rat(c)) {}

    static RatFunc variable(int e = 1) {
        RatFunc r;
        r.num_ = Laurent<Rat>::monomial(e, Rat(1));
        return r;
    }

    static RatFunc from_laurent(const Laurent<Rat>& p) {
        RatFunc r;
        r.num_ = p;
        return r;
    }

    static RatFunc fraction(const Laurent<Rat>& n, const Laurent<Rat>& d) {
        if (d.is_zero()) throw PoleError("rational function with zero denominator");
        RatFunc r;
        r.num_ = n;
        r.den_ = d;
        r.normalize_();
        return r;
    }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return den_one_() && num_ == Laurent<Rat>(Rat(1)); }

    const Laurent<Rat>& num() const { return num_; }
    const Laurent<Rat>& den() const { return den_; }

    /// True when the value is a Laurent polynomial (trivial denominator).
    bool is_laurent() const { return den_one_(); }

    const Laurent<Rat>& laurent() const {
        if (!den_one_()) throw DomainError("rational function is not a Laurent polynomial");
        return num_;
    }

    RatFunc operator-() const {
        RatFunc r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        RatFunc r;
        r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
        r.den_ = a.den_ * b.den_;
        r.normalize_();
        return r;
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        RatFunc r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_ * b.den_;
        r.normalize_();
        return r;
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw PoleError("division by the zero rational function");
        if (a.is_zero()) return RatFunc();
        RatFunc r;
        r.num_ = a.num_ * b.den_;
        r.den_ = a.den_ * b.num_;
        r.normalize_();
        return r;
    }

    RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
    RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
    RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
    RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }

    RatFunc inv() const {
        if (is_zero()) throw PoleError("inverse of the zero rational function");
        RatFunc r;
        r.num_ = den_;
        r.den_ = num_;
        r.normalize_();
        return r;
    }

    RatFunc pow(long e) const {
        if (e == 0) return RatFunc(Rat(1));
        if (e < 0) return inv().pow(-e);
        RatFunc acc(Rat(1)), base = *this;
        unsigned long k = static_cast<unsigned long>(e);
        while (k) {
            if (k & 1) acc *= base;
            base = (k >>= 1) ? base * base : base;
        }
        return acc;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// Evaluation at a nonzero rational point of the variable.
    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        if (d.is_zero()) throw PoleError("rational function evaluated at a pole");
        return num_.eval(x) / d;
    }

private:
    bool den_one_() const {
        return !den_.is_zero() && den_.min_exp() == 0 && den_.max_exp() == 0 &&
               den_.coeff(0).is_one();
    }

    static std::vector<Rat> dense_(const Laurent<Rat>& p, int& off) {
        off = p.min_exp();
        std::vector<Rat> v(static_cast<size_t>(p.max_exp() - off + 1));
        for (const auto& [e, c] : p.terms()) v[static_cast<size_t>(e - off)] = c;
        return v;
    }

    static Laurent<Rat> from_dense_(const std::vector<Rat>& v, int off) {
        Laurent<Rat> p;
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) p.set_coeff(off + static_cast<int>(i), v[i]);
        return p;
    }

    // Euclidean remainder of dense polynomials over the rationals; the
    // divisor must be nonzero with a nonzero leading coefficient.
    static std::vector<Rat> rem_(std::vector<Rat> a, const std::vector<Rat>& b) {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        size_t db = b.size();
        while (a.size() >= db) {
            Rat f = a.back() / b.back();
            size_t shift = a.size() - db;
            for (size_t i = 0; i < db; ++i) {
                a[shift + i] -= f * b[i];
            }
            while (!a.empty() && a.back().is_zero()) a.pop_back();
        }
        return a;
    }

    static std::vector<Rat> gcd_(std::vector<Rat> a, std::vector<Rat> b) {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        while (!b.empty() && b.back().is_zero()) b.pop_back();
        while (!b.empty()) {
            std::vector<Rat> r = rem_(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        // Monic normalization so the gcd is canonical.
        if (!a.empty() && !a.back().is_one()) {
            Rat lead = a.back();
            for (Rat& c : a) c /= lead;
        }
        return a;
    }

    // Exact quotient, used only when the divisor is known to divide.
    static std::vector<Rat> quo_(std::vector<Rat> a, const std::vector<Rat>& b) {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        std::vector<Rat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
        size_t db = b.size();
        while (a.size() >= db) {
            Rat f = a.back() / b.back();
            size_t shift = a.size() - db;
            q[shift] = f;
            for (size_t i = 0; i < db; ++i) a[shift + i] -= f * b[i];
            while (!a.empty() && a.back().is_zero()) a.pop_back();
        }
        return q;
    }

    void normalize_() {
        if (den_.is_zero()) throw PoleError("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = Laurent<Rat>(Rat(1));
            return;
        }
        int noff = 0, doff = 0;
        std::vector<Rat> n = dense_(num_, noff);
        std::vector<Rat> d = dense_(den_, doff);
        std::vector<Rat> g = gcd_(n, d);
        if (g.size() > 1) {
            n = quo_(std::move(n), g);
            d = quo_(std::move(d), g);
        }
        Rat lead = d.back();
        if (!lead.is_one()) {
            for (Rat& c : n) c /= lead;
            for (Rat& c : d) c /= lead;
        }
        num_ = from_dense_(n, noff - doff);
        den_ = from_dense_(d, 0);
    }

    Laurent<Rat> num_;
    Laurent<Rat> den_;
};

} // namespace sixv
