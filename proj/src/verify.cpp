#include "sixv/verify.hpp"

#include <array>
#include <initializer_list>
#include <map>
#include <sstream>

#include "sixv/matrix.hpp"
#include "sixv/sqrt_ext.hpp"

namespace sixv {

namespace {

std::string tuple_tag(const char* head, std::initializer_list<long> v) {
    std::ostringstream os;
    os << head << '(';
    bool first = true;
    for (long x : v) {
        if (!first) os << ',';
        os << x;
        first = false;
    }
    os << ')';
    return os.str();
}

/// Dense four-index table of matrix elements for one vertex weight pair.
struct EntryTable {
    long A, B;
    std::vector<Rat> v;
    EntryTable(long a, long b) : A(a), B(b), v((a + 1) * (b + 1) * (a + 1) * (b + 1)) {}
    Rat& at(long i, long j, long ip, long jp) {
        return v[((i * (B + 1) + j) * (A + 1) + ip) * (B + 1) + jp];
    }
    const Rat& at(long i, long j, long ip, long jp) const {
        return v[((i * (B + 1) + j) * (A + 1) + ip) * (B + 1) + jp];
    }
};

EntryTable layer_table(const Rat& q, long A, long B, const FieldSet& f) {
    EntryTable t(A, B);
    for (long i = 0; i <= A; ++i)
        for (long j = 0; j <= B; ++j)
            for (long ip = 0; ip <= A; ++ip) {
                long jp = i + j - ip;
                if (jp < 0 || jp > B) continue;
                t.at(i, j, ip, jp) = two_layer_entry(q, A, B, i, j, ip, jp, f);
            }
    return t;
}

} // namespace

VerifyResult verify_ybe_layers(const Rat& q, long I1, long I2, long I3, const Rat& w,
                               const Rat& wp, const YbeFreeFields& f) {
    VerifyResult vr;

    FieldSet f12{w, f.phi_h, f.phi_v, f.psi_h, f.psi_v};
    // Dependent fields: the second matrix shares the vertical field of the
    // first, the third reuses the second's horizontal field, and the two
    // remaining fields close the compatibility constraints.
    Rat phi_v2 = f.phi_v;
    Rat phi_h3 = f.phi_h2;
    Rat phi_v3 = f.phi_h.inv();
    Rat psi_v3 = f.psi_h * f.psi_v2 * f.psi_h3 / (f.phi_h * f.psi_v * f.psi_h2);
    FieldSet f13{w * wp, f.phi_h2, phi_v2, f.psi_h2, f.psi_v2};
    FieldSet f23{wp, phi_h3, phi_v3, f.psi_h3, psi_v3};

    EntryTable R12 = layer_table(q, I1, I2, f12);
    EntryTable R13 = layer_table(q, I1, I3, f13);
    EntryTable R23 = layer_table(q, I2, I3, f23);

    for (long i1 = 0; i1 <= I1; ++i1)
        for (long i2 = 0; i2 <= I2; ++i2)
            for (long i3 = 0; i3 <= I3; ++i3)
                for (long o1 = 0; o1 <= I1; ++o1)
                    for (long o2 = 0; o2 <= I2; ++o2)
                        for (long o3 = 0; o3 <= I3; ++o3) {
                            Rat lhs;
                            for (long a = 0; a <= I1; ++a) {
                                long b = i1 + i2 - a;
                                if (b < 0 || b > I2) continue;
                                long c = a + i3 - o1;
                                if (c < 0 || c > I3) continue;
                                if (b + c != o2 + o3) continue;
                                lhs += R12.at(i1, i2, a, b) * R13.at(a, i3, o1, c) *
                                       R23.at(b, c, o2, o3);
                            }
                            Rat rhs;
                            for (long b = 0; b <= I2; ++b) {
                                long c = i2 + i3 - b;
                                if (c < 0 || c > I3) continue;
                                long a = i1 + c - o3;
                                if (a < 0 || a > I1) continue;
                                if (a + b != o1 + o2) continue;
                                rhs += R23.at(i2, i3, b, c) * R13.at(i1, c, a, o3) *
                                       R12.at(a, b, o1, o2);
                            }
                            vr.expect(lhs == rhs,
                                      tuple_tag("ybe", {i1, i2, i3, o1, o2, o3}));
                        }
    return vr;
}

namespace {

/// Exchange relation in one conserved sector: the three operators all
/// preserve a + i + j, so each total gives an exact finite-dimensional
/// identity even for generic (infinite-dimensional) weights.
///
/// The participating two-by-two operators are the ones whose matrix
/// elements coincide with the I=1 row of the R-matrix, which differ from
/// the rescaled form by a diagonal similarity in the auxiliary space.
/// Conjugating the whole relation by the first operator's diagonal leaves
/// a single dressing factor lambda^{a-a'} on the second operator, and in
/// that form everything stays rational in the base field.
template <class F>
VerifyResult exchange_sectors(const ScalarContext<F>& ctx, const Weight<F>& WI,
                              const Weight<F>& WJ, const F& nuI, const F& nuJ,
                              long sector_max) {
    VerifyResult vr;
    for (long t = 0; t <= sector_max; ++t) {
        std::vector<std::array<long, 3>> basis;
        for (long a = 0; a <= 1 && a <= t; ++a)
            for (long i = 0; a + i <= t; ++i) {
                long j = t - a - i;
                if (WI.integral && i > WI.n) continue;
                if (WJ.integral && j > WJ.n) continue;
                basis.push_back({a, i, j});
            }
        size_t n = basis.size();
        if (n == 0) continue;
        Matrix<F> LI(n, n), LJ(n, n), RM(n, n);
        for (size_t r = 0; r < n; ++r)
            for (size_t c = 0; c < n; ++c) {
                auto [a, i, j] = basis[r];
                auto [a2, i2, j2] = basis[c];
                if (j == j2) LI(r, c) = l_fundamental_nu(ctx, WI, nuI, a, a2, i, i2);
                if (i == i2)
                    LJ(r, c) = ctx.lam_pow(a - a2) * l_fundamental_nu(ctx, WJ, nuJ, a, a2, j, j2);
                if (a == a2) RM(r, c) = rij_ratio(ctx, WI, WJ, i, j, i2, j2);
            }
        Matrix<F> diff = LI * LJ * RM - RM * LJ * LI;
        vr.expect(diff.is_zero(), tuple_tag("exchange sector", {t}));
    }
    return vr;
}

} // namespace

VerifyResult verify_exchange_int(const Rat& p, long I, long J, const Rat& lambda,
                                 const Rat& mu) {
    ScalarContext<Rat> ctx = context_from_p(p, lambda, Rat(1));
    Weight<Rat> WI = weight_int(ctx, I);
    Weight<Rat> WJ = weight_int(ctx, J);
    Rat nuI = mu * WI.xhalf;
    Rat nuJ = lambda * mu * WJ.xhalf;
    return exchange_sectors(ctx, WI, WJ, nuI, nuJ, 1 + I + J);
}

VerifyResult verify_exchange_generic(const Rat& q, const Rat& xI, const Rat& xJ,
                                     const Rat& lambda0, const Rat& nu, long sector_max) {
    using E = SqrtExt<Rat>;
    // lambda = lambda0 (x_I/x_J)^{1/2} makes both rescaled spectral
    // parameters rational while keeping the R-matrix entries inside the
    // quadratic extension.
    E lambda = E(lambda0) * E::root(xI / xJ);
    ScalarContext<E> ctx = context_from_q(E(q), lambda, E(Rat(1)));
    Weight<E> WI = weight_generic(E(xI));
    Weight<E> WJ = weight_generic(E(xJ));
    return exchange_sectors(ctx, WI, WJ, E(nu), E(lambda0 * nu), sector_max);
}

VerifyResult verify_symmetries(const Rat& p, long I, long J, const Rat& lambda, const Rat& phi,
                               const FieldSet& f) {
    VerifyResult vr;
    ScalarContext<Rat> ctx = context_from_p(p, lambda, phi);
    Rat q = ctx.q;
    Weight<Rat> WI = weight_int(ctx, I);
    Weight<Rat> WJ = weight_int(ctx, J);
    long m = std::min(I, J);

    // Transposition at phi = 1: swapping both tensor factors exchanges the
    // weights.
    ScalarContext<Rat> ctx1 = ctx.with_phi(Rat(1));
    Weight<Rat> VI = weight_int(ctx1, I);
    Weight<Rat> VJ = weight_int(ctx1, J);
    for (long i = 0; i <= I; ++i)
        for (long j = 0; j <= J; ++j)
            for (long ip = 0; ip <= I; ++ip) {
                long jp = i + j - ip;
                if (jp < 0 || jp > J) continue;
                Rat a = rij_single_sum(ctx1, VI, VJ, i, j, ip, jp);
                Rat b = rij_single_sum(ctx1, VJ, VI, j, i, jp, ip);
                vr.expect(a == b, tuple_tag("transpose", {i, j, ip, jp}));
            }

    // Field reflection: phi -> 1/phi mirrors all indices.
    ScalarContext<Rat> ctxr = ctx.with_phi(phi.inv());
    for (long i = 0; i <= I; ++i)
        for (long j = 0; j <= J; ++j)
            for (long ip = 0; ip <= I; ++ip) {
                long jp = i + j - ip;
                if (jp < 0 || jp > J) continue;
                Rat a = rij_single_sum(ctx, WI, WJ, i, j, ip, jp);
                Rat b = rij_single_sum(ctxr, WI, WJ, I - i, J - j, I - ip, J - jp);
                vr.expect(a == b, tuple_tag("reflect", {i, j, ip, jp}));
            }

    // Simultaneous inversion of lambda and q, up to the diagonal similarity
    // and the sign (-1)^m.
    ScalarContext<Rat> ctxi = context_from_p(p.inv(), lambda.inv(), phi);
    Weight<Rat> UI = weight_int(ctxi, I);
    Weight<Rat> UJ = weight_int(ctxi, J);
    for (long i = 0; i <= I; ++i)
        for (long j = 0; j <= J; ++j)
            for (long ip = 0; ip <= I; ++ip) {
                long jp = i + j - ip;
                if (jp < 0 || jp > J) continue;
                Rat lhs = rij_single_sum(ctxi, UI, UJ, i, j, ip, jp);
                long d = -i * (i - 1) - j * (j - 1) + j * (J - I) + ip * (ip - 1) +
                         jp * (jp - 1) - jp * (J - I);
                Rat rhs = q.pow(d) * rij_single_sum(ctx, WI, WJ, i, j, ip, jp);
                if (m % 2 == 1) rhs = -rhs;
                vr.expect(lhs == rhs, tuple_tag("invert", {i, j, ip, jp}));
            }

    // Layer transposition of the bare two-layer matrix: swapping the roles
    // of the two directions transposes the field pack.
    FieldSet ft{f.w, f.phi_v, f.phi_h, f.psi_v, f.psi_h};
    Rat pref = q.pow(I - J);
    for (long j = 0; j <= J; ++j)
        for (long i = 0; i <= I; ++i)
            for (long jp = 0; jp <= J; ++jp) {
                long ip = i + j - jp;
                if (ip < 0 || ip > I) continue;
                Rat a = two_layer_entry(q, J, I, j, i, jp, ip, f);
                Rat b = pref * f.w.pow(i - ip) * two_layer_entry(q, I, J, i, j, ip, jp, ft);
                vr.expect(a == b, tuple_tag("layer-transpose", {j, i, jp, ip}));
            }
    return vr;
}

namespace {

using RecurTerm = std::pair<std::array<long, 4>, Rat>;

/// One nearest-neighbour relation at base tuple (i,j,ip,jp), written with all
/// weight dependence through x_I = q^I and x_J = q^J.  Relations 0..2 are the
/// three independent ones; 3..5 are their role-swapped forms obtained from the
/// transposition symmetry of the normalized entries (swap the two weights
/// together with both index pairs).  The returned shifts may leave the valid
/// index domain; callers decide how to treat such terms.
std::vector<RecurTerm> recurrence_terms(int which, const ScalarContext<Rat>& ctx, const Rat& xI,
                                        const Rat& xJ, long i, long j, long ip, long jp) {
    if (which >= 3) {
        auto v = recurrence_terms(which - 3, ctx, xJ, xI, j, i, jp, ip);
        for (auto& tm : v)
            tm.first = {tm.first[1], tm.first[0], tm.first[3], tm.first[2]};
        return v;
    }
    const Rat& lam = ctx.lambda;
    Rat l2 = lam * lam;
    Rat one(1);
    switch (which) {
        case 0: {
            Rat c1 = (one - l2 * ctx.qpow(2 * (1 + i + j)) / (xI * xJ)) *
                     (one - ctx.qpow(2 + 2 * ip));
            Rat c2 = lam * ctx.qpow(ip - j) * (one - ctx.qpow(2 * (1 + i + ip)) / (xI * xI)) *
                     (one - ctx.qpow(2 + 2 * j));
            Rat c3 = ctx.qpow(3 * j - jp) / xJ * (one - ctx.qpow(2 + 2 * i)) *
                     (one - l2 * ctx.qpow(2 * (1 + ip - j)) * xJ / xI);
            return {{{i, j, ip, jp}, c1},
                    {{i, j + 1, ip + 1, jp}, -c2},
                    {{i + 1, j, ip + 1, jp}, -c3}};
        }
        case 1: {
            Rat d1 = lam * ctx.qpow(i - j - 2 * ip - 2) * xJ *
                     (one - ctx.qpow(2 * (2 + j + jp)) / (xJ * xJ)) *
                     (one - ctx.qpow(2 + 2 * ip));
            Rat d2 = (one - l2 * ctx.qpow(2 * i - 2 * jp) * xJ / xI) *
                     (one - ctx.qpow(2 + 2 * jp));
            Rat d3 = ctx.qpow(3 * i - ip - 1) / xI *
                     (one - l2 * xI * xJ * ctx.qpow(-2 * (1 + i + j))) *
                     (one - ctx.qpow(4 + 2 * j));
            return {{{i, j + 1, ip, jp + 1}, d1},
                    {{i, j + 1, ip + 1, jp}, -d2},
                    {{i, j + 2, ip + 1, jp + 1}, d3}};
        }
        default: {
            Rat e1 = lam * ctx.qpow(3 + 3 * i - j) * xJ / (xI * xI) *
                     (one - xI * xI * ctx.qpow(-2 * i)) *
                     (one - xJ * xJ * ctx.qpow(-2 * (j + jp)));
            Rat e2 = (one - ctx.qpow(2 - 2 * j) * xJ * xJ) *
                     (one - l2 * ctx.qpow(2 * (1 + i - jp)) * xJ / xI);
            Rat e3 = ctx.qpow(3 + 3 * i - ip) / xI * (one - xJ * xJ * ctx.qpow(-2 * jp)) *
                     (one - l2 * xI * xJ * ctx.qpow(-2 * i - 2 * j));
            return {{{i, j, ip, jp}, e1},
                    {{i + 1, j - 1, ip, jp}, e2},
                    {{i + 1, j, ip, jp + 1}, -e3}};
        }
    }
}

} // namespace

VerifyResult verify_recurrences(const ScalarContext<Rat>& ctx_in, const Weight<Rat>& WI,
                                const Weight<Rat>& WJ, long cap) {
    VerifyResult vr;
    ScalarContext<Rat> ctx = ctx_in.with_phi(Rat(1));
    long imax = WI.integral ? WI.n : cap;
    long jmax = WJ.integral ? WJ.n : cap;

    std::map<std::array<long, 4>, Rat> memo;
    auto S = [&](const std::array<long, 4>& t) -> const Rat& {
        auto it = memo.find(t);
        if (it == memo.end())
            it = memo.emplace(t, rij_ratio(ctx, WI, WJ, t[0], t[1], t[2], t[3])).first;
        return it->second;
    };

    static const char* names[3] = {"recur-a", "recur-b", "recur-c"};
    for (long i = 0; i <= imax; ++i)
        for (long j = 0; j <= jmax; ++j)
            for (long ip = 0; ip <= imax; ++ip) {
                long jp = i + j - ip;
                if (jp < 0 || jp > jmax) continue;
                for (int which = 0; which < 3; ++which) {
                    Rat residual;
                    bool interior = true;
                    for (const auto& [t, c] : recurrence_terms(which, ctx, WI.x, WJ.x,
                                                               i, j, ip, jp)) {
                        if (t[0] < 0 || t[0] > imax || t[1] < 0 || t[1] > jmax ||
                            t[2] < 0 || t[2] > imax || t[3] < 0 || t[3] > jmax) {
                            interior = false;
                            break;
                        }
                        residual += c * S(t);
                    }
                    if (!interior) continue;
                    vr.expect(residual.is_zero(),
                              tuple_tag(names[which], {i, j, ip, jp}));
                }
            }
    return vr;
}

VerifyResult verify_reconstruction(const ScalarContext<Rat>& ctx_in, const Weight<Rat>& WI,
                                   const Weight<Rat>& WJ, long cap) {
    VerifyResult vr;
    ScalarContext<Rat> ctx = ctx_in.with_phi(Rat(1));

    // The recurrences live on the full quadrant of nonnegative conserved index
    // tuples; entries with a negative index vanish, and for integer weights
    // the matrix occupies the sub-band with i, i' <= I and j, j' <= J (the
    // quadrant solution does not vanish above the band, so those tuples stay
    // in the system as auxiliary unknowns).  Unknowns are all tuples with row
    // total at most cap.
    std::vector<std::array<long, 4>> tuples;
    std::map<std::array<long, 4>, size_t> col_of;
    for (long t = 0; t <= cap; ++t)
        for (long a = 0; a <= t; ++a)
            for (long c = 0; c <= t; ++c) {
                col_of[{a, t - a, c, t - c}] = tuples.size();
                tuples.push_back({a, t - a, c, t - c});
            }
    size_t n = tuples.size();

    // Assemble all six relations at every base, dropping terms with negative
    // indices and skipping instances that reach past the cap, plus the corner
    // anchor.
    std::vector<std::vector<Rat>> rows;
    for (long t = 0; t < cap; ++t)
        for (long a = 0; a <= t; ++a)
            for (long c = 0; c <= t; ++c)
                for (int which = 0; which < 6; ++which) {
                    std::vector<Rat> row(n + 1);
                    bool over = false;
                    for (const auto& [tt, cc] : recurrence_terms(which, ctx, WI.x, WJ.x,
                                                                 a, t - a, c, t - c)) {
                        if (tt[0] < 0 || tt[1] < 0 || tt[2] < 0 || tt[3] < 0) continue;
                        if (tt[0] + tt[1] > cap) {
                            over = true;
                            break;
                        }
                        row[col_of.at(tt)] += cc;
                    }
                    if (!over) rows.push_back(std::move(row));
                }
    {
        std::vector<Rat> anchor(n + 1);
        anchor[col_of.at({0, 0, 0, 0})] = Rat(1);
        anchor[n] = Rat(1);
        rows.push_back(std::move(anchor));
    }

    // Exact row reduction of the overdetermined system.
    size_t pivot_row = 0;
    std::vector<long> pivot_of_col(n, -1);
    for (size_t col = 0; col < n && pivot_row < rows.size(); ++col) {
        size_t r = pivot_row;
        while (r < rows.size() && rows[r][col].is_zero()) ++r;
        if (r == rows.size()) continue;
        std::swap(rows[r], rows[pivot_row]);
        Rat inv = rows[pivot_row][col].inv();
        for (size_t c = col; c <= n; ++c) rows[pivot_row][c] *= inv;
        for (size_t rr = 0; rr < rows.size(); ++rr) {
            if (rr == pivot_row || rows[rr][col].is_zero()) continue;
            Rat fac = rows[rr][col];
            for (size_t c = col; c <= n; ++c) rows[rr][c] -= fac * rows[pivot_row][c];
        }
        pivot_of_col[col] = static_cast<long>(pivot_row);
        ++pivot_row;
    }
    bool consistent = true;
    for (size_t r = pivot_row; r < rows.size(); ++r)
        if (!rows[r][n].is_zero()) consistent = false;
    vr.expect(consistent, "recurrence system is consistent");

    // A matrix entry is pinned when its column has a pivot and the pivot row
    // involves no free column; every in-band entry must be pinned and must
    // reproduce the directly computed value.
    long iband = WI.integral ? WI.n : cap;
    long jband = WJ.integral ? WJ.n : cap;
    for (size_t col = 0; col < n; ++col) {
        const auto& t = tuples[col];
        if (t[0] > iband || t[1] > jband || t[2] > iband || t[3] > jband) continue;
        bool pinned = pivot_of_col[col] >= 0;
        if (pinned) {
            const auto& prow = rows[pivot_of_col[col]];
            for (size_t c = 0; c < n; ++c)
                if (c != col && pivot_of_col[c] < 0 && !prow[c].is_zero()) pinned = false;
        }
        vr.expect(pinned, tuple_tag("pinned", {t[0], t[1], t[2], t[3]}));
        if (!pinned || !consistent) continue;
        Rat direct = rij_ratio(ctx, WI, WJ, t[0], t[1], t[2], t[3]);
        vr.expect(rows[pivot_of_col[col]][n] == direct,
                  tuple_tag("reconstruct", {t[0], t[1], t[2], t[3]}));
    }
    return vr;
}

} // namespace sixv
