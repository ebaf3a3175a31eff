#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sixv/context.hpp"
#include "sixv/matrix.hpp"
#include "sixv/qseries.hpp"
#include "sixv/rmatrix.hpp"

namespace sixv {

// ---------------------------------------------------------------------------
// Oscillator and Verma materializations.
//
// These dense matrices exist to make the algebra relations checkable on a
// finite window of the infinite modules.  Columns index the input basis
// vector, rows the output component, so operator composition is plain
// matrix multiplication.  A raising operator maps the last window vector
// outside the window; relation checks must therefore stay away from the
// truncation edge (the tests restrict to the columns whose image under
// every factor of the relation is still inside the window).
// ---------------------------------------------------------------------------

/// Creation operator on the Fock window |0>, ..., |dim-1>.
template <class F>
Matrix<F> fock_raise(const ScalarContext<F>& ctx, size_t dim) {
    Matrix<F> m(dim, dim);
    for (size_t n = 0; n + 1 < dim; ++n) m(n + 1, n) = ctx.one();
    return m;
}

/// Annihilation operator: a-|n> = (1 - q^{2n})|n-1>, a-|0> = 0.
template <class F>
Matrix<F> fock_lower(const ScalarContext<F>& ctx, size_t dim) {
    Matrix<F> m(dim, dim);
    for (size_t n = 1; n < dim; ++n) m(n - 1, n) = ctx.one() - ctx.qpow(2 * static_cast<long>(n));
    return m;
}

/// Diagonal q^{eN} on the Fock window.
template <class F>
Matrix<F> fock_qn(const ScalarContext<F>& ctx, size_t dim, long e) {
    Matrix<F> m(dim, dim);
    for (size_t n = 0; n < dim; ++n) m(n, n) = ctx.qpow(e * static_cast<long>(n));
    return m;
}

/// Raising generator of the highest-weight module on v_0, ..., v_{dim-1}:
/// E v_j = ([q^j]/[q]) v_{j-1}.
template <class F>
Matrix<F> verma_e(const ScalarContext<F>& ctx, size_t dim) {
    Matrix<F> m(dim, dim);
    F br = qbracket(ctx.q);
    for (size_t j = 1; j < dim; ++j) {
        long jj = static_cast<long>(j);
        m(j - 1, j) = (ctx.qpow(jj) - ctx.qpow(-jj)) / br;
    }
    return m;
}

/// Lowering generator, F v_j = ([q^{W-j}]/[q]) v_{j+1}.  The weight enters
/// only through x = q^W, so a generic weight works as well as an integer
/// one; for integer W the entry at j = W vanishes and the span of
/// v_0, ..., v_W is invariant.
template <class F>
Matrix<F> verma_f(const ScalarContext<F>& ctx, const Weight<F>& w, size_t dim) {
    Matrix<F> m(dim, dim);
    F br = qbracket(ctx.q);
    for (size_t j = 0; j + 1 < dim; ++j) {
        long jj = static_cast<long>(j);
        m(j + 1, j) = (w.x * ctx.qpow(-jj) - w.x.inv() * ctx.qpow(jj)) / br;
    }
    return m;
}

/// Diagonal q^{eH}, H v_j = (W - 2j) v_j, materialized as x^e q^{-2ej}.
template <class F>
Matrix<F> verma_qh(const ScalarContext<F>& ctx, const Weight<F>& w, size_t dim, long e) {
    Matrix<F> m(dim, dim);
    F xe = w.x.pow(e);
    for (size_t j = 0; j < dim; ++j) m(j, j) = xe * ctx.qpow(-2 * e * static_cast<long>(j));
    return m;
}

// ---------------------------------------------------------------------------
// Entries of the two layer operators acting in (Fock) x (weight-I module).
//
// Index convention follows the R-matrix one: the subscript pair (n, i) is
// the row, the superscript pair (n', i') the column, so chaining the
// superscript of one factor to the subscript of the next is ordinary
// matrix multiplication.  The minus-family entry vanishes unless
// i + n = i' + n', the plus-family one unless i + n' = i' + n.
// ---------------------------------------------------------------------------

namespace detail {

template <class F>
void check_layer_indices(const Weight<F>& wI, long n, long i, long np, long ip) {
    if (n < 0 || np < 0 || i < 0 || ip < 0)
        throw DomainError("layer operator index must be nonnegative");
    if (wI.integral && (i > wI.n || ip > wI.n))
        throw DomainError("quantum index exceeds the integer weight band");
}

/// Ratio (q^2;q^2)_{num} / (q^2;q^2)_{den} for nonnegative arguments,
/// computed without forming either factorial-sized product.
template <class F>
F poch_ratio_q2(const ScalarContext<F>& ctx, long num, long den) {
    F r = ctx.one();
    if (num >= den)
        for (long s = den + 1; s <= num; ++s) r *= ctx.one() - ctx.qpow(2 * s);
    else
        for (long s = num + 1; s <= den; ++s) r /= ctx.one() - ctx.qpow(2 * s);
    return r;
}

} // namespace detail

/// Minus-family entry.  For an integer weight this is the closed form with
/// the terminating regularized series; the quantum indices live in
/// 0, ..., I.  For a generic weight the same expression is meromorphically
/// continued and the value returned here omits the index-independent
/// prefactor (-lambda)^I (lambda^{-2} q^{1-I}; q^2)_I, which has no
/// continuation inside the computation field; see
/// a_minus_generic_prefactor_note for reporting it alongside the values.
template <class F>
F a_minus_element(const ScalarContext<F>& ctx, const Weight<F>& wI, long n, long i, long np,
                  long ip) {
    detail::check_layer_indices(wI, n, i, np, ip);
    if (i + n != ip + np) return F();
    const F q2 = ctx.qpow(2);
    std::vector<F> upper = {ctx.qpow(-2 * ip), ctx.lam_pow(2) * ctx.q / wI.x};
    if (wI.integral) {
        long I = wI.n;
        F val = ctx.phi_pow(2 * n) * ctx.lam_pow(i - I) *
                ctx.qpow(i * I + i * ip + n * (I - i - ip));
        val *= qpoch(ctx.lam_pow(2) * ctx.qpow(1 - I + 2 * (ip - n)), q2, I - i - ip);
        val /= qpoch(q2, q2, i);
        std::vector<F> lower = {ctx.qpow(-2 * I), ctx.qpow(2 * (1 + n - ip))};
        return val * phi_regularized(i, upper, lower, q2, q2);
    }
    // Generic weight: the finite Pochhammer factor of the closed form is
    // rewritten so that everything left is rational in x = q^I, and the
    // two pieces that are not (the meromorphic Pochhammer and the plain
    // power of -lambda) are dropped as one overall constant.
    F val = ctx.phi_pow(2 * n) * ctx.lam_pow(-i - 2 * ip) * wI.x.pow(ip - n) *
            ctx.qpow(i * ip - (i + ip) * (ip - i - n));
    if (i % 2 != ip % 2) val = -val;
    val *= qpoch(ctx.lam_pow(-2) * ctx.q * wI.x, q2, n - ip);
    val /= qpoch(ctx.lam_pow(-2) * ctx.q / wI.x, q2, n + i) * qpoch(q2, q2, i);
    std::vector<F> lower = {wI.x.pow(-2), ctx.qpow(2 * (1 + n - ip))};
    return val * phi_regularized(i, upper, lower, q2, q2);
}

/// Human-readable description of the constant omitted from generic-weight
/// minus-family values (it multiplies every entry, so all identity checks
/// and ratios are insensitive to it).
inline std::string a_minus_generic_prefactor_note() {
    return "(-lambda)^I (lambda^{-2} q^{1-I}; q^2)_I";
}

/// Plus-family entry.  One expression serves integer and generic weights:
/// the weight enters only through x = q^I and integer powers of q.
template <class F>
F a_plus_element(const ScalarContext<F>& ctx, const Weight<F>& wI, long n, long i, long np,
                 long ip) {
    detail::check_layer_indices(wI, n, i, np, ip);
    if (i + np != ip + n) return F();
    const F q2 = ctx.qpow(2);
    F val = ctx.phi_pow(-2 * n) * ctx.lam_pow(-i) * wI.x.pow(ip + n) *
            ctx.qpow(i * (i + 1) - ip * (ip + 1) + ip * i - n * (i + ip));
    if (i % 2 != ip % 2) val = -val;
    val *= detail::poch_ratio_q2(ctx, np, n);
    val /= qpoch(q2, q2, i);
    std::vector<F> upper = {ctx.qpow(-2 * ip), ctx.lam_pow(2) * ctx.q / wI.x};
    std::vector<F> lower = {wI.x.pow(-2), ctx.qpow(2 * (1 + n - i))};
    return val * phi_regularized(i, upper, lower, q2, q2);
}

// ---------------------------------------------------------------------------
// Band form of the layer operators.
//
// At fixed quantum indices (i, i') the Fock dependence of an entry is a
// geometric factor times a Laurent polynomial in v = q^n of small width:
// the twist contributes phi^{+-2n}, a generic weight x^{-+n}, and every
// remaining n enters through integer powers of q.  The records below store
// that structure exactly; they are what the trace resummation consumes.
// ---------------------------------------------------------------------------

/// One (i, i') record: entry(n -> n + delta) = geom^n * vpoly(q^n) for all
/// n >= floor; entries below the floor are zero (the shift would leave the
/// Fock space).
template <class F>
struct FockBandEntry {
    long delta = 0;
    long floor = 0;
    F geom;
    Laurent<F> vpoly;
};

/// All records of one layer operator on quantum indices 0, ..., icap.
/// For an integer weight icap is the band width I; for a generic weight it
/// is a caller-chosen window (the operator itself is unbounded).
template <class F>
struct FockBandOperator {
    int sign = -1;  // -1 builds from the minus family, +1 from the plus one
    Weight<F> weight;
    long icap = 0;
    std::vector<FockBandEntry<F>> entries;

    const FockBandEntry<F>& at(long i, long ip) const {
        if (i < 0 || ip < 0 || i > icap || ip > icap)
            throw DomainError("band record index out of range");
        return entries[static_cast<size_t>(i * (icap + 1) + ip)];
    }
};

namespace detail {

/// Exact Lagrange fit of y_t = P(z_t) for a Laurent window [-w, w]:
/// multiplies through by z^w and interpolates the resulting polynomial.
template <class F>
Laurent<F> laurent_fit(const std::vector<F>& nodes, const std::vector<F>& values, long w) {
    size_t m = nodes.size();
    Laurent<F> acc;
    for (size_t t = 0; t < m; ++t) {
        if (values[t].is_zero()) continue;
        Laurent<F> basis(values[t] * nodes[t].pow(w));
        for (size_t s = 0; s < m; ++s) {
            if (s == t) continue;
            F den = nodes[t] - nodes[s];
            // (z - z_s) / (z_t - z_s)
            Laurent<F> lin = Laurent<F>::monomial(1, den.inv());
            lin += Laurent<F>(-nodes[s] / den);
            basis *= lin;
        }
        acc += basis;
    }
    Laurent<F> shifted;
    for (const auto& [e, c] : acc.terms()) shifted.set_coeff(e - static_cast<int>(w), c);
    return shifted;
}

} // namespace detail

/// Builds the band record table by exact interpolation: each entry is
/// sampled at enough Fock levels to pin its Laurent coefficients in q^n,
/// then re-checked at a few further levels so a window that was guessed
/// too small is caught instead of silently truncated.
template <class F>
FockBandOperator<F> build_fock_band(const ScalarContext<F>& ctx, const Weight<F>& wI, int sign,
                                    long icap = -1) {
    if (sign != -1 && sign != 1) throw DomainError("band sign must be +1 or -1");
    if (wI.integral)
        icap = wI.n;
    else if (icap < 0)
        throw DomainError("generic-weight band needs an explicit quantum window");

    FockBandOperator<F> band;
    band.sign = sign;
    band.weight = wI;
    band.icap = icap;
    band.entries.resize(static_cast<size_t>((icap + 1) * (icap + 1)));

    F geom = sign < 0 ? ctx.phi_pow(2) : ctx.phi_pow(-2);
    if (!wI.integral) geom = sign < 0 ? geom / wI.x : geom * wI.x;

    for (long i = 0; i <= icap; ++i)
        for (long ip = 0; ip <= icap; ++ip) {
            FockBandEntry<F>& rec = band.entries[static_cast<size_t>(i * (icap + 1) + ip)];
            rec.delta = sign < 0 ? i - ip : ip - i;
            rec.floor = rec.delta < 0 ? -rec.delta : 0;
            rec.geom = geom;

            long w = 3 * (wI.integral ? wI.n : i + ip) + 8;
            size_t m = static_cast<size_t>(2 * w + 1);
            std::vector<F> nodes(m), values(m);
            for (size_t t = 0; t < m; ++t) {
                long n = rec.floor + static_cast<long>(t);
                nodes[t] = ctx.qpow(n);
                F e = sign < 0 ? a_minus_element(ctx, wI, n, i, n + rec.delta, ip)
                               : a_plus_element(ctx, wI, n, i, n + rec.delta, ip);
                values[t] = e / geom.pow(n);
            }
            rec.vpoly = detail::laurent_fit(nodes, values, w);

            for (long extra = 1; extra <= 3; ++extra) {
                long n = rec.floor + static_cast<long>(m) - 1 + extra;
                F e = sign < 0 ? a_minus_element(ctx, wI, n, i, n + rec.delta, ip)
                               : a_plus_element(ctx, wI, n, i, n + rec.delta, ip);
                F fit;
                for (const auto& [ee, c] : rec.vpoly.terms()) fit += c * ctx.qpow(n * ee);
                if (!(fit * geom.pow(n) == e))
                    throw DomainError("band entry is not geometric-polynomial in q^n");
            }
        }
    return band;
}

/// Evaluates one record at Fock level n (zero below its floor).
template <class F>
F band_entry_value(const ScalarContext<F>& ctx, const FockBandEntry<F>& rec, long n) {
    if (n < rec.floor) return F();
    F s;
    for (const auto& [e, c] : rec.vpoly.terms()) s += c * ctx.qpow(n * e);
    return s * rec.geom.pow(n);
}

/// Sum of the geometric series 1 + r + r^2 + ... in the exact field,
/// meaning its closed form 1/(1-r); the only inadmissible input is the
/// ratio 1, where the series has no continuation.
template <class F>
F geometric_series_sum(const F& ratio) {
    F d = ratio.pow(0) - ratio;
    if (d.is_zero()) throw ConvergenceError("geometric series at ratio one");
    return d.inv();
}

/// Trace over the Fock space of a product of band records, one per site,
/// normalized by the twisted trace of the identity block the way the
/// sector decomposition prescribes: the result is
///   Tr(prod_k A(i_k -> i'_k)) * (1 - phi^{2M} q^{2l - IM}),
/// with l the site-index sum.  The product must conserve the total Fock
/// level (net shift zero), otherwise the trace is identically zero and a
/// DomainError flags the caller's bookkeeping mistake.  Levels below the
/// largest record floor are summed term by term; the geometric tail is
/// resummed exactly, and a tail ratio equal to one raises
/// ConvergenceError (inadmissible twist for this sector).
template <class F>
F normalized_fock_trace(const ScalarContext<F>& ctx, const FockBandOperator<F>& band,
                        const std::vector<std::pair<long, long>>& sites) {
    if (sites.empty()) throw DomainError("empty site chain");
    long m = static_cast<long>(sites.size());

    long off = 0, nstar = 0, l = 0;
    std::vector<long> offsets(sites.size());
    for (size_t k = 0; k < sites.size(); ++k) {
        const FockBandEntry<F>& rec = band.at(sites[k].first, sites[k].second);
        offsets[k] = off;
        if (rec.floor - off > nstar) nstar = rec.floor - off;
        off += rec.delta;
        l += sites[k].first;
    }
    if (off != 0) throw DomainError("site chain does not conserve the Fock level");

    // Tail polynomial: product of the per-site records with their levels
    // shifted to the common variable v = q^n, collecting the constant
    // geom^offset factors along the way.
    F gtotal = ctx.one();
    Laurent<F> w(ctx.one());
    for (size_t k = 0; k < sites.size(); ++k) {
        const FockBandEntry<F>& rec = band.at(sites[k].first, sites[k].second);
        gtotal *= rec.geom;
        Laurent<F> shifted;
        for (const auto& [e, c] : rec.vpoly.terms())
            shifted.set_coeff(e, c * ctx.qpow(offsets[k] * e));
        w *= shifted;
        w = w.scaled(rec.geom.pow(offsets[k]));
    }

    F raw;
    for (long n = 0; n < nstar; ++n) {
        F term = ctx.one();
        for (size_t k = 0; k < sites.size(); ++k) {
            const FockBandEntry<F>& rec = band.at(sites[k].first, sites[k].second);
            term *= band_entry_value(ctx, rec, n + offsets[k]);
            if (term.is_zero()) break;
        }
        raw += term;
    }
    for (const auto& [e, c] : w.terms()) {
        F ratio = gtotal * ctx.qpow(e);
        raw += c * ratio.pow(nstar) * geometric_series_sum(ratio);
    }

    F dn = ctx.phi_pow(2 * m) * ctx.qpow(2 * l) * band.weight.x.pow(-m);
    return raw * (ctx.one() - dn);
}

/// Closed form of the normalizing trace itself, 1/(1 - phi^{2M} q^{2l-IM}).
template <class F>
F fock_denominator_trace(const ScalarContext<F>& ctx, const Weight<F>& wI, long m, long l) {
    if (m <= 0) throw DomainError("site count must be positive");
    return geometric_series_sum(ctx.phi_pow(2 * m) * ctx.qpow(2 * l) * wI.x.pow(-m));
}

// ---------------------------------------------------------------------------
// Sector blocks of the traced layer product.
// ---------------------------------------------------------------------------

/// All site-index tuples (i_1, ..., i_M) with sum l and 0 <= i_k <= cap;
/// pass a negative cap for no upper bound.  Lexicographic order.
std::vector<std::vector<long>> sector_compositions(long sites, long l, long cap);

/// One sector of the traced M-fold layer product.  The matrix `a` is the
/// polynomial part every exact identity in the suite uses; the spectral
/// prefactor lambda^{+-hM} attached to the full operator involves the
/// formal exponent h (never evaluated) and is reported as a tag string.
template <class F>
struct SectorBlock {
    int sign = -1;
    long sites = 0;
    long sector = 0;
    std::vector<std::vector<long>> basis;
    Matrix<F> a;
    std::string spectral_tag;
};

/// Builds the sector-l block of the normalized M-site trace of the chosen
/// layer family.  Row index = in-tuple, column = out-tuple, in the order
/// sector_compositions returns them.
template <class F>
SectorBlock<F> q_operator(const ScalarContext<F>& ctx, const Weight<F>& wI, int sign, long sites,
                          long sector) {
    if (sites <= 0) throw DomainError("site count must be positive");
    if (sector < 0) throw DomainError("sector must be nonnegative");
    SectorBlock<F> blk;
    blk.sign = sign;
    blk.sites = sites;
    blk.sector = sector;
    blk.basis = sector_compositions(sites, sector, wI.integral ? wI.n : -1);
    blk.spectral_tag = sign < 0 ? "lambda^{-hM}" : "lambda^{+hM}";

    FockBandOperator<F> band = build_fock_band(ctx, wI, sign, wI.integral ? -1 : sector);
    size_t dim = blk.basis.size();
    blk.a = Matrix<F>(dim, dim);
    std::vector<std::pair<long, long>> sites_buf(static_cast<size_t>(sites));
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c) {
            for (size_t k = 0; k < static_cast<size_t>(sites); ++k)
                sites_buf[k] = {blk.basis[r][k], blk.basis[c][k]};
            blk.a(r, c) = normalized_fock_trace(ctx, band, sites_buf);
        }
    return blk;
}

} // namespace sixv
