#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>

#include "sixv/qseries.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Index tuple of a three-layer vertex: three outgoing occupation numbers
/// (row) and three incoming ones (column).
struct TetraIndex {
    std::array<long, 3> out;
    std::array<long, 3> in;
};

/// Polynomial family behind the vertex weights, evaluated by iterating the
/// defining recurrence from Q_0 = 1.
template <class F>
F qn_recurrence(long n, const F& x, const F& y, const F& z, const F& q) {
    F one = FieldOps<F>::from_rat(q, Rat(1));
    if (n == 0) return one;
    F q2 = q * q;
    // Branch factors reference the step being taken, so the explicit power
    // is q^{2(n-1)}.
    return (x - one) * (z - one) * qn_recurrence(n - 1, x * q2, y, z * q2, q) +
           x * z * (y - one) * q.pow(2 * (n - 1)) * qn_recurrence(n - 1, x, y * q2, z, q);
}

/// The same polynomials in closed form through the regularized series:
///   Q_n(x,y,z) = (-x)^n q^{n(n-1)} phibar(q^{-2n}, q^{2-2n}/(xy);
///                                         q^{2-2n}/x | q^2, y z q^{2n}).
template <class F>
F qn_closed(long n, const F& x, const F& y, const F& z, const F& q) {
    if (n < 0) throw DomainError("polynomial index must be nonnegative");
    F q2 = q * q;
    F a = q2.pow(1 - n) / (x * y);
    F b = q2.pow(1 - n) / x;
    F arg = y * z * q2.pow(n);
    F series = phi_regularized(n, std::vector<F>{a}, std::vector<F>{b}, q2, arg);
    return (-x).pow(n) * q.pow(n * (n - 1)) * series;
}

/// Per-factor dressing data: the multiplicative fields attached to the
/// three directions one vertex touches, plus diagonal similarity constants.
struct DressingFields {
    std::array<Rat, 3> lambda;
    std::array<Rat, 3> mu;
    std::array<Rat, 3> c;
};

/// The defining weight sum evaluated as a formula.  The third in/out pair
/// enters only through exponents, so the expression extends to negative
/// values there (the analytic continuation used by the vanishing-window
/// property); the middle outgoing index bounds the sum and must be >= 0.
Rat r3_weight(const TetraIndex& idx, const Rat& q);

/// Evaluator for the three-layer vertex weights at a fixed rational q,
/// with a memo over index tuples (the tetrahedron check hits the same
/// small elements many times).
class Tetra3 {
public:
    explicit Tetra3(const Rat& q);

    const Rat& q() const { return q_; }

    /// Matrix element at the given index tuple; exact zero when either
    /// conservation law fails.
    Rat element(const TetraIndex& idx);

    /// Same element computed through the polynomial family (closed form),
    /// used to cross-check the direct sum.
    Rat element_via_polynomials(const TetraIndex& idx) const;

    /// Element dressed by direction fields and similarity constants.
    Rat element_dressed(const TetraIndex& idx, const DressingFields& f);

    /// Both sides of the tetrahedron identity for fixed external indices
    /// n (the six unprimed) and npp (the six double-primed); the six
    /// internal indices are summed out exactly.  Returns lhs - rhs.
    Rat tetrahedron_residual(const std::array<long, 6>& n, const std::array<long, 6>& npp);

    /// Dressed variant: per-space fields lambda[6], mu[6], c[6] are routed
    /// to the four vertex factors by their space labels.
    Rat tetrahedron_residual_dressed(const std::array<long, 6>& n,
                                     const std::array<long, 6>& npp,
                                     const std::array<Rat, 6>& lambda,
                                     const std::array<Rat, 6>& mu,
                                     const std::array<Rat, 6>& c);

private:
    Rat element_uncached(const TetraIndex& idx) const;

    template <class Elem>
    Rat residual_generic(const std::array<long, 6>& n, const std::array<long, 6>& npp,
                         Elem elem);

    Rat q_;
    std::unordered_map<std::uint64_t, Rat> memo_;
};

} // namespace sixv
