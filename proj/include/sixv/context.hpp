#pragma once

#include "sixv/errors.hpp"
#include "sixv/field.hpp"
#include "sixv/laurent.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Evaluation parameters shared by the kernels: the deformation parameter q,
/// optionally its square root p (many exponents are half-integers in q but
/// integers in p), the spectral parameter lambda and the twist-like
/// parameter phi.  All live in one computation field F, which is exact in
/// every configuration used here (rationals, rational functions of a formal
/// lambda, or quadratic extensions of those).
template <class F>
struct ScalarContext {
    F q;
    F p;            // meaningful only when has_p
    bool has_p = false;
    F lambda;
    F phi;

    F embed(const Rat& r) const { return FieldOps<F>::from_rat(q, r); }

    F one() const { return embed(Rat(1)); }

    F qpow(long e) const { return q.pow(e); }
    F lam_pow(long e) const { return lambda.pow(e); }
    F phi_pow(long e) const { return phi.pow(e); }

    /// q^(e/2) for integer e: even exponents stay in q, odd ones need p.
    F qhalf_pow(long e) const {
        if (e % 2 == 0) return q.pow(e / 2);
        if (!has_p) throw DomainError("half-integer power of q requires its square root");
        return p.pow(e);
    }

    ScalarContext<F> with_lambda(const F& l) const {
        ScalarContext<F> c = *this;
        if (l.is_zero()) throw DomainError("spectral parameter must be nonzero");
        c.lambda = l;
        return c;
    }

    ScalarContext<F> with_phi(const F& f) const {
        ScalarContext<F> c = *this;
        if (f.is_zero()) throw DomainError("twist parameter must be nonzero");
        c.phi = f;
        return c;
    }
};

namespace detail {
template <class F>
void check_params(const F& q, const F& lambda, const F& phi) {
    if (q.is_zero()) throw DomainError("q must be nonzero");
    if (q.is_one()) throw DomainError("q must not be a root of unity");
    if ((q * q).is_one()) throw DomainError("q must not be a root of unity");
    if (lambda.is_zero()) throw DomainError("spectral parameter must be nonzero");
    if (phi.is_zero()) throw DomainError("twist parameter must be nonzero");
}
} // namespace detail

/// Builds a context from p (so q = p^2 and half-integer q-powers work).
template <class F>
ScalarContext<F> context_from_p(const F& p, const F& lambda, const F& phi) {
    ScalarContext<F> c;
    c.p = p;
    c.q = p * p;
    c.has_p = true;
    c.lambda = lambda;
    c.phi = phi;
    if (p.is_zero() || p.is_one() || (p * p).is_one())
        throw DomainError("p must be nonzero and not a root of unity");
    detail::check_params(c.q, lambda, phi);
    return c;
}

/// Builds a context from q alone; half-integer powers of q are unavailable
/// unless q happens to be a perfect square (see the rational overload).
template <class F>
ScalarContext<F> context_from_q(const F& q, const F& lambda, const F& phi) {
    ScalarContext<F> c;
    c.q = q;
    c.has_p = false;
    c.lambda = lambda;
    c.phi = phi;
    detail::check_params(q, lambda, phi);
    return c;
}

/// Rational contexts recover p exactly when q is a square of a rational,
/// e.g. q = 1/4 gives p = 1/2; otherwise the context works with integer
/// q-powers only.
inline ScalarContext<Rat> rat_context_from_q(const Rat& q, const Rat& lambda, const Rat& phi) {
    Rat root;
    if (q.sign() > 0 && q.perfect_square_root(&root)) return context_from_p(root, lambda, phi);
    return context_from_q(q, lambda, phi);
}

} // namespace sixv
