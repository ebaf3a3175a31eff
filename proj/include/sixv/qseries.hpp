#pragma once

#include <vector>

#include "sixv/context.hpp"
#include "sixv/errors.hpp"

namespace sixv {

/// (x; q)_n for any integer n.
///
///   n >= 0 :  prod_{k=0}^{n-1} (1 - x q^k)
///   n <  0 :  1 / prod_{k=1}^{-n} (1 - x q^{-k})
///
/// The negative case inverts factors, so it throws PoleError when one of
/// them vanishes.  The two branches satisfy the splicing rule
/// (x;q)_n * (x q^n; q)_{-n} = 1 whenever both sides exist.
template <class F>
F qpoch(const F& x, const F& q, long n) {
    F one = FieldOps<F>::from_rat(q, Rat(1));
    F acc = one;
    if (n >= 0) {
        F xq = x;
        for (long k = 0; k < n; ++k) {
            acc *= one - xq;
            xq *= q;
        }
        return acc;
    }
    F qinv = one / q;
    F xq = x;
    for (long k = 0; k < -n; ++k) {
        xq *= qinv;
        F factor = one - xq;
        if (factor.is_zero()) throw PoleError("pole in negative-length q-Pochhammer");
        acc *= factor;
    }
    return one / acc;
}

/// Terminating basic hypergeometric sum with r+1 upper and r lower
/// parameters, the first upper parameter being q^{-n}:
///
///   sum_{k=0}^{n} (q^{-n};q)_k prod_s (a_s;q)_k
///                 ---------------------------------  z^k
///                 (q;q)_k      prod_s (b_s;q)_k
///
/// Lower-parameter Pochhammers are accumulated incrementally and a
/// vanishing factor raises PoleError; use the regularized variant when a
/// lower parameter may degenerate.
template <class F>
F phi_terminating(long n,
                  const std::vector<F>& a, const std::vector<F>& b,
                  const F& q, const F& z) {
    if (n < 0) throw DomainError("termination index must be nonnegative");
    if (a.size() != b.size())
        throw DomainError("upper and lower parameter counts must agree");
    F one = FieldOps<F>::from_rat(q, Rat(1));
    F q_minus_n = q.pow(-n);
    F total = one;        // k = 0 term
    F term = one;         // running value of the k-th term
    F qk = one;           // q^k
    for (long k = 0; k < n; ++k) {
        // Pass from term k to term k+1.
        F ratio = (one - q_minus_n * qk) * z;
        for (const F& as : a) ratio *= one - as * qk;
        F den = one - q * qk;
        for (const F& bs : b) den *= one - bs * qk;
        if (den.is_zero()) throw PoleError("lower parameter pole in terminating series");
        term *= ratio / den;
        if (term.is_zero()) break; // an upper parameter truncated the sum early
        qk *= q;
        total += term;
    }
    return total;
}

/// Regularized terminating series: each term carries the tail Pochhammers
/// of the lower parameters instead of dividing by them,
///
///   sum_{k=0}^{n} z^k  (q^{-n};q)_k / (q;q)_k
///                 prod_s (a_s;q)_k (b_s q^k;q)_{n-k} .
///
/// It equals the terminating sum times prod_s (b_s;q)_n when no b_s sits on
/// a pole, and stays finite when one does.  The (q;q)_k in the denominator
/// never vanishes for the admissible q, so division by it is safe.
template <class F>
F phi_regularized(long n,
                  const std::vector<F>& a, const std::vector<F>& b,
                  const F& q, const F& z) {
    if (n < 0) throw DomainError("termination index must be nonnegative");
    if (a.size() != b.size())
        throw DomainError("upper and lower parameter counts must agree");
    F one = FieldOps<F>::from_rat(q, Rat(1));
    F q_minus_n = q.pow(-n);
    F total;
    total = one - one; // zero
    F front = one;     // z^k (q^{-n};q)_k / (q;q)_k * prod (a_s;q)_k
    F qk = one;        // q^k
    for (long k = 0; k <= n; ++k) {
        if (!front.is_zero()) {
            F tails = one;
            for (const F& bs : b) tails *= qpoch(bs * qk, q, n - k);
            total += front * tails;
        }
        if (k == n) break;
        F ratio = (one - q_minus_n * qk) * z;
        for (const F& as : a) ratio *= one - as * qk;
        F den = one - q * qk;
        if (den.is_zero()) throw PoleError("degenerate q in regularized series");
        front *= ratio / den;
        if (front.is_zero()) break; // an upper parameter truncated the sum early
        qk *= q;
    }
    return total;
}

/// [x] = x - 1/x.
template <class F>
F qbracket(const F& x) {
    if (x.is_zero()) throw PoleError("bracket of zero");
    return x - x.inv();
}

/// {x} = x + 1/x.
template <class F>
F qbrace(const F& x) {
    if (x.is_zero()) throw PoleError("brace of zero");
    return x + x.inv();
}

} // namespace sixv
