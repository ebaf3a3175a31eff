#include "sixv/rmatrix.hpp"

#include "sixv/laurent.hpp"

namespace sixv {

namespace {

Rat rpow(const Rat& b, long e) { return b.pow(e); }

} // namespace

Rat two_layer_entry(const Rat& q, long I, long J, long i1, long j1, long i1p, long j1p,
                    const FieldSet& f) {
    if (I < 0 || J < 0) throw DomainError("negative weight");
    if (f.w.is_zero() || f.phi_h.is_zero() || f.phi_v.is_zero() || f.psi_h.is_zero() ||
        f.psi_v.is_zero())
        throw DomainError("field set entries must be nonzero");
    if (i1 < 0 || j1 < 0 || i1p < 0 || j1p < 0) throw DomainError("negative index");
    if (i1 > I || i1p > I || j1 > J || j1p > J) return Rat();
    if (i1 + j1 != i1p + j1p) return Rat();

    Rat q2 = q * q;
    Rat gauge = rpow(f.phi_h, i1) * rpow(f.phi_v, j1) * rpow(f.psi_h, i1p - i1) *
                rpow(f.psi_v, j1p - j1);

    // The two layers share the middle index, so each layer's sum over its
    // internal label has coefficients independent of k1; the k1 series is a
    // finite combination of geometric series and is resummed in closed form
    // (the analytic continuation of the convergent region).
    long K0 = std::max(0L, i1p - i1);

    // First layer: out (j1, i1, k1), in (j1p, i1p, k1 + i1 - i1p).
    std::vector<Rat> ca(i1 + 1);
    {
        Rat head = rpow(q, i1 * (i1 + 1) - (i1 - j1p) * i1 + (i1 - j1p) * (i1 - i1p));
        for (long r = 0; r <= i1; ++r) {
            ca[r] = head * qpoch(rpow(q, -2 * j1p), q2, i1 - r) / qpoch(q2, q2, i1 - r) *
                    qpoch(rpow(q, 2 + 2 * j1), q2, r) / qpoch(q2, q2, r) *
                    rpow(q, -2 * r * (j1p + 1));
        }
    }

    // Second layer: out (J-j1, I-i1, k2), in (J-j1p, I-i1p, k1).
    long n2b = I - i1;
    std::vector<Rat> cb(n2b + 1);
    {
        Rat head = rpow(q, n2b * (n2b + 1) - (n2b - (J - j1p)) * n2b);
        for (long r2 = 0; r2 <= n2b; ++r2) {
            cb[r2] = head * qpoch(rpow(q, -2 * (J - j1p)), q2, n2b - r2) /
                     qpoch(q2, q2, n2b - r2) * qpoch(rpow(q, 2 + 2 * (J - j1)), q2, r2) /
                     qpoch(q2, q2, r2) * rpow(q, -2 * r2 * (J - j1p + 1) - 2 * r2 * (i1 - i1p));
        }
    }

    Rat total;
    for (long r = 0; r <= i1; ++r) {
        for (long r2 = 0; r2 <= n2b; ++r2) {
            Rat ratio = f.w * rpow(q, I - J - 2 * (r + r2));
            if (ratio.is_one())
                throw ConvergenceError("two-layer sum has unit geometric ratio");
            total += ca[r] * cb[r2] * ratio.pow(K0) / (Rat(1) - ratio);
        }
    }
    return gauge * total;
}

Rat rij_double_sum(const ScalarContext<Rat>& ctx, long I, const Weight<Rat>& WJ, long i, long j,
                   long ip, long jp) {
    if (I < 0) throw DomainError("negative weight");
    if (i < 0 || j < 0 || ip < 0 || jp < 0) throw DomainError("negative index");
    if (i + j != ip + jp) return Rat();
    if (i > I || ip > I) return Rat();
    if (WJ.integral && (j > WJ.n || jp > WJ.n)) return Rat();
    Weight<Rat> WI = weight_int(ctx, I);
    long m = WJ.integral ? std::min(I, WJ.n) : I;

    Rat q2 = ctx.qpow(2);
    Rat xJ = WJ.x;

    Rat res = ctx.phi_pow(2 * i - I) * ctx.lam_pow(i - ip - m);
    if (m % 2 == 1) res = -res;
    // q^{i^2 - i'(i'-j) + 2I} x_J^{I-i} q^{-j'(I-i)} q^{(IJ-m)/2}
    res *= ctx.qpow(i * i - ip * (ip - j) + 2 * I - jp * (I - i)) * xJ.pow(I - i);
    res *= detail::q_affine_bilinear_half(ctx, WI, WJ, -m, 1);
    res *= qpoch(ctx.lam_pow(2) * ctx.qpow(-I) / xJ, q2, m + 1);
    res /= qpoch(q2, q2, i) * qpoch(q2, q2, I - i);

    Rat sum;
    for (long k = 0; k <= i; ++k) {
        Rat fk = qpoch(ctx.qpow(-2 * i), q2, k) * qpoch(ctx.qpow(2 + 2 * j), q2, k) *
                 qpoch(ctx.qpow(-2 * jp), q2, i - k) / qpoch(q2, q2, k) *
                 ctx.qpow(2 * k * (ip - j) - k * (k + 1));
        if (fk.is_zero()) continue;
        if (k % 2 == 1) fk = -fk;
        for (long l = 0; l <= I - i; ++l) {
            Rat fl = qpoch(ctx.qpow(-2 * (I - i)), q2, l) *
                     qpoch(ctx.qpow(2 - 2 * j) * xJ * xJ, q2, l) *
                     qpoch(ctx.qpow(2 * jp) / (xJ * xJ), q2, I - i - l) / qpoch(q2, q2, l) *
                     ctx.qpow(2 * l * (I + j - i) - l * (l + 1)) * xJ.pow(-2 * l);
            if (fl.is_zero()) continue;
            if (l % 2 == 1) fl = -fl;
            Rat den = Rat(1) - ctx.lam_pow(2) * ctx.qpow(I - 2 * k - 2 * l) / xJ;
            if (den.is_zero()) throw PoleError("double-sum route hit a resonant lambda");
            sum += fk * fl / den;
        }
    }
    return res * sum;
}

namespace {

// Pole-route coefficient of the s-th simple pole, evaluated through a formal
// variable u standing for q^{2J}.  At integer J individual factors develop
// zeros and poles that cancel only in the product; doing the algebra over
// rational functions in u and substituting u = q^{2J} afterwards realizes the
// limit exactly.
Rat pole_coefficient(const Rat& q, long I, const Rat& u0, long s, long i, long j, long ip,
                     long jp) {
    RatFunc u = RatFunc::variable();
    RatFunc q2(q * q);
    RatFunc c = qpoch(u.inv() * RatFunc(q.pow(2 * (I - s))), q2, jp - i);
    c *= qpoch(u.inv() * RatFunc(q.pow(-2 * s)), q2, I);
    c /= qpoch(u.inv() * RatFunc(q.pow(-2 * s)), q2, i + j);
    std::vector<RatFunc> a = {RatFunc(q.pow(-2 * ip)), RatFunc(q.pow(-2 * s)),
                              u * RatFunc(q.pow(2 * (1 + s - I)))};
    std::vector<RatFunc> b = {RatFunc(q.pow(-2 * I)), RatFunc(q.pow(2 * (1 + jp - i))),
                              u * RatFunc(q.pow(2 * (1 - i - j)))};
    c *= phi_regularized(i, a, b, q2, q2);
    return c.eval(u0);
}

} // namespace

Rat rij_pole_expansion(const ScalarContext<Rat>& ctx, long I, const Weight<Rat>& WJ, long i,
                       long j, long ip, long jp) {
    if (I < 0) throw DomainError("negative weight");
    if (i < 0 || j < 0 || ip < 0 || jp < 0) throw DomainError("negative index");
    if (i + j != ip + jp) return Rat();
    if (i > I || ip > I) return Rat();
    if (WJ.integral && (j > WJ.n || jp > WJ.n)) return Rat();

    // The expansion is derived for I <= J.  A smaller integral second weight
    // is reached through the transposition symmetry, which swaps the tensor
    // factors at phi = 1; the phi dependence is a pure row prefactor.
    if (WJ.integral && WJ.n < I) {
        ScalarContext<Rat> flat = ctx.with_phi(Rat(1));
        Rat core = rij_pole_expansion(flat, WJ.n, weight_int(flat, I), j, i, jp, ip);
        return ctx.phi_pow(2 * i - I) * core;
    }

    Weight<Rat> WI = weight_int(ctx, I);
    Rat q2 = ctx.qpow(2);
    Rat xJ = WJ.x;
    Rat u0 = xJ * xJ;

    Rat res = ctx.phi_pow(2 * i - I) * ctx.lam_pow(i - ip - I);
    if ((i + I) % 2 == 1) res = -res;
    // q^{i(i+I-1) + i'(I+j')} x_J^{-2i} x_J^{I-i} q^{-j(I-i)} q^{I(3+J)/2}
    res *= ctx.qpow(i * (i + I - 1) + ip * (I + jp) - j * (I - i)) * xJ.pow(I - 3 * i);
    res *= detail::q_affine_bilinear_half(ctx, WI, WJ, 3 * I, 1);
    res *= qpoch(xJ.pow(-2), q2, j) / qpoch(xJ.pow(-2), q2, jp);
    res *= qpoch(ctx.lam_pow(2) * ctx.qpow(-I) / xJ, q2, I + 1) / qpoch(q2, q2, i);

    Rat sum;
    for (long s = 0; s <= I; ++s) {
        Rat den = Rat(1) - ctx.lam_pow(2) * ctx.qpow(I - 2 * s) / xJ;
        if (den.is_zero()) throw PoleError("pole-expansion route hit a resonant lambda");
        Rat term = ctx.qpow(s * (s - 1) - 2 * i * s) /
                   (den * qpoch(q2, q2, s) * qpoch(q2, q2, I - s));
        if (s % 2 == 1) term = -term;
        term *= pole_coefficient(ctx.q, I, u0, s, i, j, ip, jp);
        sum += term;
    }
    return res * sum;
}

} // namespace sixv
