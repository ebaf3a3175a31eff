#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "sixv/context.hpp"
#include "sixv/qseries.hpp"

namespace sixv {

/// A representation weight.  Either a concrete nonnegative integer (finite
/// module of dimension n+1) or a generic weight known only through the
/// value x = q^W, optionally with its square root q^{W/2} when a formula
/// genuinely needs half-powers.
template <class F>
struct Weight {
    bool integral = true;
    long n = 0;
    F x;      // q^W
    F xhalf;  // q^{W/2}
    bool has_xhalf = false;
};

template <class F>
Weight<F> weight_int(const ScalarContext<F>& ctx, long n) {
    if (n < 0) throw DomainError("integer weight must be nonnegative");
    Weight<F> w;
    w.integral = true;
    w.n = n;
    w.x = ctx.qpow(n);
    if (ctx.has_p || n % 2 == 0) {
        w.xhalf = ctx.qhalf_pow(n);
        w.has_xhalf = true;
    }
    return w;
}

template <class F>
Weight<F> weight_generic(const F& x) {
    if (x.is_zero()) throw DomainError("generic weight value must be nonzero");
    Weight<F> w;
    w.integral = false;
    w.x = x;
    return w;
}

template <class F>
Weight<F> weight_generic(const F& x, const F& xhalf) {
    Weight<F> w = weight_generic(x);
    w.xhalf = xhalf;
    w.has_xhalf = true;
    return w;
}

/// Generic weight with an explicit non-degeneracy guard: x must avoid the
/// integer weight values q^k for |k| <= bound, so a finite-dimensional
/// degeneration can only be requested on purpose.
template <class F>
Weight<F> weight_generic_checked(const ScalarContext<F>& ctx, const F& x, long bound) {
    for (long k = -bound; k <= bound; ++k)
        if (x == ctx.qpow(k))
            throw DomainError("generic weight collides with an integer weight value");
    return weight_generic(x);
}

namespace detail {

/// q^{c0 + cW*W} for a single weight W with integer coefficients.
template <class F>
F qexp1(const ScalarContext<F>& ctx, const Weight<F>& W, long c0, long cW) {
    if (W.integral) return ctx.qpow(c0 + cW * W.n);
    return ctx.qpow(c0) * W.x.pow(cW);
}

/// q^{c0 + cI*I + cJ*J}.
template <class F>
F qexp2(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ, long c0,
        long cI, long cJ) {
    long base = c0;
    F extra = ctx.one();
    if (WI.integral)
        base += cI * WI.n;
    else
        extra *= WI.x.pow(cI);
    if (WJ.integral)
        base += cJ * WJ.n;
    else
        extra *= WJ.x.pow(cJ);
    return ctx.qpow(base) * extra;
}

/// q^{I*J}: needs at least one integral weight.
template <class F>
F q_bilinear(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ) {
    if (WI.integral) return qexp1(ctx, WJ, 0, WI.n);
    if (WJ.integral) return qexp1(ctx, WI, 0, WJ.n);
    throw DomainError("q^{IJ} with two generic weights is not rational in them");
}

/// q^{I*J/2}: the only genuinely half-integer structure in the normalized
/// entries.  Requires one integral weight; an odd integer side needs the
/// other side's half-power (or p for two integers).
template <class F>
F q_bilinear_half(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ) {
    const Weight<F>* a = &WI;
    const Weight<F>* b = &WJ;
    if (!a->integral) std::swap(a, b);
    if (!a->integral) throw DomainError("q^{IJ/2} with two generic weights");
    if (b->integral) return ctx.qhalf_pow(a->n * b->n);
    if (a->n % 2 == 0) return b->x.pow(a->n / 2);
    if (!b->has_xhalf)
        throw DomainError("odd integer weight times generic weight needs its half-power");
    return b->xhalf.pow(a->n);
}

/// q^{(a + b*I*J)/2} with integer a and b in {-1,+1}.  Folding the affine
/// part in first keeps two odd integral weights from spuriously demanding p.
template <class F>
F q_affine_bilinear_half(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ,
                         long a, long b) {
    if (WI.integral && WJ.integral) return ctx.qhalf_pow(a + b * WI.n * WJ.n);
    F bil = q_bilinear_half(ctx, WI, WJ);
    if (b < 0) bil = bil.inv();
    return ctx.qhalf_pow(a) * bil;
}

} // namespace detail

/// Effective Laurent degree bound m(I,J): the minimum for two integers, the
/// integer side when the other weight is generic.
template <class F>
long m_degree(const Weight<F>& WI, const Weight<F>& WJ) {
    if (WI.integral && WJ.integral) return std::min(WI.n, WJ.n);
    if (WI.integral) return WI.n;
    if (WJ.integral) return WJ.n;
    throw DomainError("degree bound undefined for two generic weights");
}

/// Corner entry (i=j=i'=j'=0) of the normalized R-matrix:
///   phi^{-I} q^{(IJ+m)/2} lambda^m (lambda^{-2} q^{-I-J}; q^2)_m .
template <class F>
F r_corner(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ) {
    long m = m_degree(WI, WJ);
    F phi_part;
    if (WI.integral)
        phi_part = ctx.phi_pow(-WI.n);
    else if (ctx.phi == ctx.one())
        phi_part = ctx.one();
    else
        throw DomainError("phi^{-I} with generic first weight needs phi = 1");
    F q2 = ctx.qpow(2);
    F arg = ctx.lam_pow(-2) * detail::qexp2(ctx, WI, WJ, 0, -1, -1);
    return phi_part * detail::q_affine_bilinear_half(ctx, WI, WJ, m, 1) * ctx.lam_pow(m) *
           qpoch(arg, q2, m);
}

/// Single-sum matrix element of the normalized higher-spin R-matrix
/// R_{I,J}(lambda; phi).  Requires at least one integral weight (which
/// fixes m).  For an integral first weight the full phi^{2i-I} factor is
/// included; for a generic first weight the constant phi^{-I} is dropped
/// (it is not rational in q^I) and callers must track it separately.
/// Out-of-band indices of an integral weight give exact zero.
template <class F>
F rij_single_sum(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ,
                 long i, long j, long ip, long jp) {
    if (i < 0 || j < 0 || ip < 0 || jp < 0) throw DomainError("negative representation index");
    if (i + j != ip + jp) return F();
    if (WI.integral && (i > WI.n || ip > WI.n)) return F();
    if (WJ.integral && (j > WJ.n || jp > WJ.n)) return F();
    long m = m_degree(WI, WJ);

    F q2 = ctx.qpow(2);

    // phi^{2i-I} (integral I) or phi^{2i} (generic I, constant dropped).
    F res = WI.integral ? ctx.phi_pow(2 * i - WI.n) : ctx.phi_pow(2 * i);
    if (i % 2 == 1) res = -res;

    // q^{i(i-J-1) + (I-i)(J-j) + i'(I+j')} expanded into q, x_I, x_J powers:
    // q^{i(i-1) + ij + i'j'} x_I^{i'-j} x_J^{-2i} q^{IJ}.
    res *= detail::qexp2(ctx, WI, WJ, i * (i - 1) + i * j + ip * jp, ip - j, -2 * i);
    res *= detail::q_bilinear(ctx, WI, WJ);

    // 1 / (lambda^{i+i'-m} q^{(IJ-m)/2})
    res *= ctx.lam_pow(m - i - ip);
    res *= detail::q_affine_bilinear_half(ctx, WI, WJ, m, -1);

    F xJm2 = WJ.x.pow(-2);
    res *= qpoch(xJm2, q2, j) / qpoch(xJm2, q2, jp);

    F lm2 = ctx.lam_pow(-2);
    res *= qpoch(lm2 * WI.x / WJ.x, q2, j - ip);
    F arg_mm = lm2 / (WI.x * WJ.x);
    res *= qpoch(arg_mm, q2, m) / (qpoch(q2, q2, i) * qpoch(arg_mm, q2, i + j));

    std::vector<F> a = {ctx.qpow(-2 * ip), lm2 * WJ.x / WI.x, ctx.lam_pow(2) * q2 * WJ.x / WI.x};
    std::vector<F> b = {WI.x.pow(-2), ctx.qpow(2 * (1 + j - ip)),
                        q2 * WJ.x * WJ.x * ctx.qpow(-2 * (i + j))};
    res *= phi_regularized(i, a, b, q2, q2);
    return res;
}

/// Ratio-normalized matrix element: the value of R_{I,J} divided by its
/// corner entry, with the field reduced to phi^{2i}.  Rational in q, lambda,
/// phi, q^I, q^J for ANY weights (the half-powers and the degree bound m
/// cancel in the ratio), which is what makes generic-by-generic weights
/// tractable.
template <class F>
F rij_ratio(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ, long i,
            long j, long ip, long jp) {
    if (i < 0 || j < 0 || ip < 0 || jp < 0) throw DomainError("negative representation index");
    if (i + j != ip + jp) return F();
    if (WI.integral && (i > WI.n || ip > WI.n)) return F();
    if (WJ.integral && (j > WJ.n || jp > WJ.n)) return F();

    F q2 = ctx.qpow(2);
    F res = ctx.phi_pow(2 * i);
    if (i % 2 == 1) res = -res;

    // q^{i(i-1)+ij+i'j'} x_I^{i'-j} x_J^{-2i} lambda^{-i-i'}
    res *= detail::qexp2(ctx, WI, WJ, i * (i - 1) + i * j + ip * jp, ip - j, -2 * i);
    res *= ctx.lam_pow(-i - ip);

    F xJm2 = WJ.x.pow(-2);
    res *= qpoch(xJm2, q2, j) / qpoch(xJm2, q2, jp);

    F lm2 = ctx.lam_pow(-2);
    res *= qpoch(lm2 * WI.x / WJ.x, q2, j - ip);
    res /= qpoch(q2, q2, i) * qpoch(lm2 / (WI.x * WJ.x), q2, i + j);

    std::vector<F> a = {ctx.qpow(-2 * ip), lm2 * WJ.x / WI.x, ctx.lam_pow(2) * q2 * WJ.x / WI.x};
    std::vector<F> b = {WI.x.pow(-2), ctx.qpow(2 * (1 + j - ip)),
                        q2 * WJ.x * WJ.x * ctx.qpow(-2 * (i + j))};
    res *= phi_regularized(i, a, b, q2, q2);
    return res;
}

/// Matrix element of the fundamental L-operator in the rescaled spectral
/// variable nu = mu q^{J/2}, in which every entry is rational in q and
/// x = q^J.  Rows/columns: two-dimensional index a, module index j.
template <class F>
F l_fundamental_nu(const ScalarContext<F>& ctx, const Weight<F>& WJ, const F& nu, long a_out,
                   long a_in, long j_out, long j_in) {
    if (a_out < 0 || a_out > 1 || a_in < 0 || a_in > 1)
        throw DomainError("two-dimensional index out of range");
    if (j_out < 0 || j_in < 0) throw DomainError("negative representation index");
    if (WJ.integral && (j_out > WJ.n || j_in > WJ.n)) return F();
    F nu_inv = nu.inv();
    if (a_out == 0 && a_in == 0) {
        if (j_out != j_in) return F();
        return nu * ctx.qpow(-j_in) - nu_inv * ctx.qpow(j_in);
    }
    if (a_out == 0 && a_in == 1) {
        // raising entry (the F-action block)
        if (j_out != j_in + 1) return F();
        return nu * (ctx.one() - ctx.qpow(2 * j_in) * WJ.x.pow(-2));
    }
    if (a_out == 1 && a_in == 0) {
        // lowering entry (the E-action block)
        if (j_out != j_in - 1) return F();
        return nu_inv * WJ.x * (ctx.qpow(1) - ctx.qpow(1 - 2 * j_in));
    }
    if (j_out != j_in) return F();
    return nu * ctx.qpow(j_in) / WJ.x - nu_inv * WJ.x * ctx.qpow(-j_in);
}

/// Matrix element of the fundamental L-operator L(mu) acting in
/// C^2 (x) V_J^+.  Needs the half-power q^{J/2}.
template <class F>
F l_fundamental(const ScalarContext<F>& ctx, const Weight<F>& WJ, const F& mu, long a_out,
                long a_in, long j_out, long j_in) {
    if (!WJ.has_xhalf) throw DomainError("L-operator needs q^{J/2}");
    return l_fundamental_nu(ctx, WJ, mu * WJ.xhalf, a_out, a_in, j_out, j_in);
}

/// Scalar normalization sigma_{I,J}(lambda) relating the bare two-layer
/// matrix to the normalized one: R = sigma q^I calR.
template <class F>
F sigma_norm(const ScalarContext<F>& ctx, const Weight<F>& WI, const Weight<F>& WJ) {
    long m = m_degree(WI, WJ);
    F q2 = ctx.qpow(2);
    F val = detail::q_affine_bilinear_half(ctx, WI, WJ, -m, 1) * ctx.lam_pow(-m) *
            qpoch(ctx.lam_pow(2) * detail::qexp2(ctx, WI, WJ, 0, -1, -1), q2, m + 1);
    return m % 2 == 0 ? val : -val;
}

/// The horizontal/vertical field pack of the bare two-layer matrix.
struct FieldSet {
    Rat w;
    Rat phi_h, phi_v, psi_h, psi_v;
};

/// Bare two-layer matrix element (the k1-sum evaluated in closed form; the
/// geometric tails are resummed exactly, which is also the analytic
/// continuation beyond the convergence region w < q^{I+J}).
Rat two_layer_entry(const Rat& q, long I, long J, long i1, long j1, long i1p, long j1p,
                    const FieldSet& f);

/// Double-sum route for the normalized R-matrix (first weight integral).
Rat rij_double_sum(const ScalarContext<Rat>& ctx, long I, const Weight<Rat>& WJ, long i, long j,
                   long ip, long jp);

/// Pole-expansion route (first weight integral; an integral second weight
/// smaller than I is reached through the transposition symmetry).
Rat rij_pole_expansion(const ScalarContext<Rat>& ctx, long I, const Weight<Rat>& WJ, long i,
                       long j, long ip, long jp);

} // namespace sixv
