#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "sixv/laurent.hpp"
#include "sixv/rmatrix.hpp"
#include "sixv/tetra.hpp"
#include "sixv/verify.hpp"

using namespace sixv;

namespace {

Rat rq(long n, long d) { return Rat(n, d); }

// [x] = x - 1/x
Rat bracket(const Rat& x) { return x - x.inv(); }

// Closed form for the I=1 row of the normalized matrix, block by block.
// Half powers of q enter only through q^{1/2} and the weight's q^{J/2},
// so the same expressions cover integral and generic J.
Rat spin_half_entry(const ScalarContext<Rat>& ctx, const Weight<Rat>& WJ, long i, long j,
                    long ip, long jp) {
    if (i + j != ip + jp) return Rat();
    Rat qh = ctx.qhalf_pow(1);
    Rat xh = WJ.xhalf;
    if (i == 0 && ip == 0)
        return j == jp ? ctx.phi.inv() * bracket(ctx.lambda * qh * xh * ctx.qpow(-jp)) : Rat();
    if (i == 0 && ip == 1) {
        if (j != jp + 1) return Rat();
        Rat step = WJ.x * ctx.qpow(-jp) - WJ.x.inv() * ctx.qpow(jp);
        return ctx.phi.inv() * step * ctx.qpow(jp) * qh / xh;
    }
    if (i == 1 && ip == 0) {
        if (j + 1 != jp) return Rat();
        return ctx.phi * bracket(ctx.qpow(jp)) * qh * xh * ctx.qpow(-jp);
    }
    return j == jp ? ctx.phi * bracket(ctx.lambda * qh * ctx.qpow(jp) / xh) : Rat();
}

// Properly normalized entry assembled from the two-layer projection.  The
// projection's gauge produces a row field phi^{2i} while the normalized
// matrix carries phi^{2i-I}, so the constant phi^{-I} is supplied here.
Rat normalized_from_layers(const ScalarContext<Rat>& ctx, long I, long J, long i, long j,
                           long ip, long jp) {
    FieldSet f;
    f.w = ctx.lambda * ctx.lambda;
    f.phi_h = ctx.phi * ctx.phi;
    f.phi_v = Rat(1);
    f.psi_h = Rat(1);
    f.psi_v = ctx.lambda;
    Weight<Rat> WI = weight_int(ctx, I), WJ = weight_int(ctx, J);
    Rat bare = two_layer_entry(ctx.qpow(1), I, J, i, j, ip, jp, f);
    return ctx.phi_pow(-I) * sigma_norm(ctx, WI, WJ) * ctx.qpow(I) * bare;
}

// Partial sums of the layered projection, with the vertex weights taken
// straight from the three-layer module.
Rat layer_partial(const Rat& q, long I, long J, long i1, long j1, long i1p, long j1p,
                  const FieldSet& f, long cap) {
    Rat acc;
    for (long k1 = 0; k1 <= cap; ++k1) {
        long k2 = i1 + k1 - i1p;
        Rat top = r3_weight(TetraIndex{{j1, i1, k1}, {j1p, i1p, k2}}, q);
        Rat bot = r3_weight(TetraIndex{{J - j1, I - i1, k2}, {J - j1p, I - i1p, k1}}, q);
        acc += f.w.pow(k1) * top * bot;
    }
    Rat gauge = f.phi_h.pow(i1) * f.phi_v.pow(j1) * f.psi_h.pow(i1p - i1) * f.psi_v.pow(j1p - j1);
    return gauge * acc;
}

std::vector<std::array<long, 4>> conserved_band(long I, long J) {
    std::vector<std::array<long, 4>> out;
    for (long i = 0; i <= I; ++i)
        for (long j = 0; j <= J; ++j)
            for (long ip = 0; ip <= I; ++ip) {
                long jp = i + j - ip;
                if (jp >= 0 && jp <= J) out.push_back({i, j, ip, jp});
            }
    return out;
}

void expect_verifier(const VerifyResult& res) {
    CHECK(res.checks > 0);
    CHECK_MESSAGE(res.ok, (res.failures.empty() ? "no detail" : res.failures.front()));
}

} // namespace

TEST_CASE("I=1 entries match the closed block form on every route") {
    ScalarContext<Rat> ctx = context_from_p(rq(3, 5), rq(7, 4), rq(2, 3));
    Weight<Rat> W1 = weight_int(ctx, 1);

    SUBCASE("integral J = 3") {
        Weight<Rat> W3 = weight_int(ctx, 3);
        for (auto [i, j, ip, jp] : conserved_band(1, 3)) {
            Rat want = spin_half_entry(ctx, W3, i, j, ip, jp);
            CHECK(rij_single_sum(ctx, W1, W3, i, j, ip, jp) == want);
            CHECK(rij_double_sum(ctx, 1, W3, i, j, ip, jp) == want);
            CHECK(rij_pole_expansion(ctx, 1, W3, i, j, ip, jp) == want);
        }
    }

    SUBCASE("both weights equal to one, pole route included") {
        Weight<Rat> WJ1 = weight_int(ctx, 1);
        for (auto [i, j, ip, jp] : conserved_band(1, 1)) {
            Rat want = spin_half_entry(ctx, WJ1, i, j, ip, jp);
            CHECK(rij_single_sum(ctx, W1, WJ1, i, j, ip, jp) == want);
            CHECK(rij_pole_expansion(ctx, 1, WJ1, i, j, ip, jp) == want);
        }
    }

    SUBCASE("generic second weight with a known half power") {
        // x = q^J = (5/9)^2 stands in for a non-integral J.
        Weight<Rat> WG = weight_generic(rq(25, 81), rq(5, 9));
        for (long j = 0; j <= 4; ++j)
            for (long jp = 0; jp <= 4; ++jp)
                for (long i = 0; i <= 1; ++i)
                    for (long ip = 0; ip <= 1; ++ip) {
                        if (i + j != ip + jp) continue;
                        CHECK(rij_single_sum(ctx, W1, WG, i, j, ip, jp) ==
                              spin_half_entry(ctx, WG, i, j, ip, jp));
                    }
    }
}

TEST_CASE("corner entry and the ratio normalization are consistent") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), rq(2, 3));
    Rat q = ctx.qpow(1), lam = ctx.lambda;

    SUBCASE("corner closed form, I=2 J=3") {
        Weight<Rat> W2 = weight_int(ctx, 2), W3 = weight_int(ctx, 3);
        Rat want = ctx.phi_pow(-2) * ctx.qhalf_pow(8) * lam * lam *
                   (Rat(1) - q.pow(-5) / (lam * lam)) * (Rat(1) - q.pow(-3) / (lam * lam));
        CHECK(r_corner(ctx, W2, W3) == want);
        CHECK(rij_single_sum(ctx, W2, W3, 0, 0, 0, 0) == want);
    }

    SUBCASE("corner equals the direct (0,0,0,0) entry for all small weights") {
        for (long I = 1; I <= 3; ++I)
            for (long J = 1; J <= 3; ++J) {
                Weight<Rat> WI = weight_int(ctx, I), WJ = weight_int(ctx, J);
                CHECK(rij_single_sum(ctx, WI, WJ, 0, 0, 0, 0) == r_corner(ctx, WI, WJ));
            }
    }

    SUBCASE("ratio times corner rebuilds the direct entries") {
        Weight<Rat> W2 = weight_int(ctx, 2), W3 = weight_int(ctx, 3);
        for (auto [i, j, ip, jp] : conserved_band(2, 3)) {
            Rat direct = rij_single_sum(ctx, W2, W3, i, j, ip, jp);
            CHECK(rij_ratio(ctx, W2, W3, i, j, ip, jp) * r_corner(ctx, W2, W3) == direct);
        }
    }

    SUBCASE("same with a generic second weight") {
        Weight<Rat> W2 = weight_int(ctx, 2);
        Weight<Rat> WG = weight_generic(rq(5, 9));
        for (long i = 0; i <= 2; ++i)
            for (long j = 0; j <= 3; ++j)
                for (long ip = 0; ip <= 2; ++ip) {
                    long jp = i + j - ip;
                    if (jp < 0 || jp > 3) continue;
                    Rat direct = rij_single_sum(ctx, W2, WG, i, j, ip, jp);
                    CHECK(rij_ratio(ctx, W2, WG, i, j, ip, jp) * r_corner(ctx, W2, WG) == direct);
                }
    }
}

TEST_CASE("weight zero acts as the identity up to the row field") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 7), rq(4, 9));
    Weight<Rat> W0 = weight_int(ctx, 0);
    for (long I = 1; I <= 2; ++I) {
        Weight<Rat> WI = weight_int(ctx, I);
        for (long i = 0; i <= I; ++i)
            for (long ip = 0; ip <= I; ++ip) {
                Rat got = rij_single_sum(ctx, WI, W0, i, 0, ip, 0);
                Rat want = (i == ip) ? ctx.phi_pow(2 * i - I) : Rat();
                CHECK(got == want);
            }
    }
}

TEST_CASE("equal weights at unit spectral parameter give a scaled permutation") {
    RatFunc p(rq(3, 5));
    ScalarContext<RatFunc> ctxF = context_from_p(p, RatFunc::variable(), RatFunc(Rat(1)));
    Rat q = rq(9, 25);

    for (long I = 1; I <= 2; ++I) {
        Weight<RatFunc> W = weight_int(ctxF, I);
        // Scale factor at the permutation point.  The alternating sign is
        // forced by the corner value: q^{I(I+1)/2}(q^{-2I};q^2)_I equals
        // (-1)^I q^{-I(I+1)/2}(q^2;q^2)_I.
        Rat scale = q.pow(-I * (I + 1) / 2) * Rat(I % 2 ? -1 : 1);
        for (long k = 1; k <= I; ++k) scale *= Rat(1) - q.pow(2 * k);
        for (auto [i, j, ip, jp] : conserved_band(I, I)) {
            RatFunc e = rij_single_sum(ctxF, W, W, i, j, ip, jp);
            Rat v = e.eval(Rat(1));
            CHECK(v == ((i == jp && j == ip) ? scale : Rat()));
        }
    }

    // The same point is resonant for plain evaluation: high sectors divide
    // by a vanishing Pochhammer value.
    ScalarContext<Rat> bad = context_from_p(rq(3, 5), Rat(1), Rat(1));
    Weight<Rat> W2 = weight_int(bad, 2);
    CHECK_THROWS_AS((void)rij_single_sum(bad, W2, W2, 2, 1, 2, 1), PoleError);
}

TEST_CASE("Laurent span stays within the degree bound and the extreme coefficients are monomials") {
    Rat p = rq(2, 3), phi = rq(5, 7);
    ScalarContext<RatFunc> ctxF = context_from_p(RatFunc(p), RatFunc::variable(), RatFunc(phi));
    for (long I = 1; I <= 3; ++I)
        for (long J = 1; J <= 3; ++J) {
            Weight<RatFunc> WI = weight_int(ctxF, I), WJ = weight_int(ctxF, J);
            long m = I < J ? I : J;
            for (auto [i, j, ip, jp] : conserved_band(I, J)) {
                RatFunc e = rij_single_sum(ctxF, WI, WJ, i, j, ip, jp);
                if (e.is_zero()) continue;
                const Laurent<Rat>& lau = e.laurent();
                CHECK(lau.min_exp() >= -m);
                CHECK(lau.max_exp() <= m);
                bool diag = (i == ip && j == jp);
                Rat row = phi.pow(2 * i - I);
                Rat low = diag ? row * p.pow(-m - (I - 2 * i) * (J - 2 * j)) : Rat();
                if (m % 2 == 1 && diag) low = -low;
                Rat high = diag ? row * p.pow(m + (I - 2 * i) * (J - 2 * j)) : Rat();
                CHECK(lau.coeff(-static_cast<int>(m)) == low);
                CHECK(lau.coeff(static_cast<int>(m)) == high);
            }
        }
}

TEST_CASE("all four evaluation routes produce the same matrix") {
    const Rat params[3][3] = {
        {rq(2, 5), rq(3, 7), Rat(1)},
        {rq(3, 7), rq(5, 3), rq(2, 3)},
        {rq(5, 8), rq(7, 9), rq(4, 9)},
    };
    for (const auto& t : params) {
        ScalarContext<Rat> ctx = context_from_p(t[0], t[1], t[2]);
        for (long I = 1; I <= 3; ++I)
            for (long J = 1; J <= 3; ++J) {
                Weight<Rat> WI = weight_int(ctx, I), WJ = weight_int(ctx, J);
                for (auto [i, j, ip, jp] : conserved_band(I, J)) {
                    Rat single = rij_single_sum(ctx, WI, WJ, i, j, ip, jp);
                    CHECK(rij_double_sum(ctx, I, WJ, i, j, ip, jp) == single);
                    CHECK(rij_pole_expansion(ctx, I, WJ, i, j, ip, jp) == single);
                    CHECK(normalized_from_layers(ctx, I, J, i, j, ip, jp) == single);
                }
            }
    }
}

TEST_CASE("layer projection corner with unit gauge matches the corner closed form") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), Rat(1));
    FieldSet f;
    f.w = ctx.lambda * ctx.lambda;
    f.phi_h = f.phi_v = f.psi_h = Rat(1);
    f.psi_v = ctx.lambda;
    Rat bare = two_layer_entry(ctx.qpow(1), 1, 1, 0, 0, 0, 0, f);
    Weight<Rat> W1 = weight_int(ctx, 1);
    Rat normalized = sigma_norm(ctx, W1, W1) * ctx.qpow(1) * bare;
    CHECK(normalized == bracket(ctx.lambda * ctx.qpow(1)));
    CHECK(normalized == r_corner(ctx, W1, W1));
}

TEST_CASE("pole expansion covers generic and transposed weights") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), rq(5, 6));

    SUBCASE("generic second weight") {
        Weight<Rat> W2 = weight_int(ctx, 2);
        Weight<Rat> WG = weight_generic(rq(3, 7));
        for (long i = 0; i <= 2; ++i)
            for (long j = 0; j <= 4; ++j)
                for (long ip = 0; ip <= 2; ++ip) {
                    long jp = i + j - ip;
                    if (jp < 0 || jp > 4) continue;
                    CHECK(rij_pole_expansion(ctx, 2, WG, i, j, ip, jp) ==
                          rij_single_sum(ctx, W2, WG, i, j, ip, jp));
                }
    }

    SUBCASE("first weight larger than the second") {
        Weight<Rat> W3 = weight_int(ctx, 3), W2 = weight_int(ctx, 2);
        for (auto [i, j, ip, jp] : conserved_band(3, 2))
            CHECK(rij_pole_expansion(ctx, 3, W2, i, j, ip, jp) ==
                  rij_single_sum(ctx, W3, W2, i, j, ip, jp));
    }
}

TEST_CASE("partial fraction interpolation identity on a cubic") {
    Rat q = rq(2, 7), x = rq(3, 5);
    auto P = [](const Rat& y) { return rq(5, 1) * y.pow(3) + Rat(3) * y * y + Rat(2) * y + Rat(1); };
    long n = 3;
    Rat sum;
    for (long i = 0; i <= n; ++i) {
        Rat term = (Rat(1) / (x - q.pow(i))) * q.pow(i * (i + 1) / 2 - n * i) /
                   (qpoch(q, q, i) * qpoch(q, q, n - i)) * P(q.pow(i));
        if (i % 2 == 1) term = -term;
        sum += term;
    }
    CHECK(x.pow(n + 1) * qpoch(x.inv(), q, n + 1) * sum == P(x));
}

TEST_CASE("layer projection equals the limit of its partial sums") {
    Rat q = rq(2, 5);
    long I = 2, J = 2;
    FieldSet f;
    f.w = q.pow(I + J + 1);
    f.phi_h = Rat(2);
    f.phi_v = rq(3, 2);
    f.psi_h = rq(5, 4);
    f.psi_v = rq(7, 6);

    // The second factor of the summand vanishes on the analytic
    // continuation window below the first admissible term.
    CHECK(r3_weight(TetraIndex{{2, 1, -1}, {2, 2, 0}}, q) == Rat());
    CHECK(r3_weight(TetraIndex{{2, 0, -2}, {2, 2, 0}}, q) == Rat());

    Rat decay = q.pow(50);
    for (auto [i, j, ip, jp] : conserved_band(I, J)) {
        Rat closed = two_layer_entry(q, I, J, i, j, ip, jp, f);
        Rat d100 = closed - layer_partial(q, I, J, i, j, ip, jp, f, 100);
        Rat d200 = closed - layer_partial(q, I, J, i, j, ip, jp, f, 200);
        CHECK(d200.abs() <= d100.abs() * decay);
    }
}

TEST_CASE("layer projection entries are positive in the convergence regime") {
    Rat q = rq(1, 2);
    for (long I = 1; I <= 2; ++I)
        for (long J = 1; J <= 2; ++J) {
            FieldSet f;
            f.w = q.pow(I + J + 1);
            f.phi_h = f.phi_v = f.psi_h = f.psi_v = Rat(1);
            for (auto [i, j, ip, jp] : conserved_band(I, J))
                CHECK(two_layer_entry(q, I, J, i, j, ip, jp, f).sign() > 0);
        }
}

TEST_CASE("layer projection preconditions and degenerate sums") {
    Rat q = rq(1, 2);
    FieldSet f;
    f.w = rq(3, 5);
    f.phi_h = f.phi_v = f.psi_h = f.psi_v = Rat(1);

    CHECK(two_layer_entry(q, 2, 2, 1, 0, 0, 0, f) == Rat());

    FieldSet zero = f;
    zero.psi_v = Rat();
    CHECK_THROWS_AS((void)two_layer_entry(q, 1, 1, 0, 0, 0, 0, zero), DomainError);

    FieldSet unit = f;
    unit.w = Rat(1);
    CHECK_THROWS_AS((void)two_layer_entry(q, 1, 1, 0, 0, 0, 0, unit), ConvergenceError);
}

TEST_CASE("Yang-Baxter contraction vanishes for small weight triples") {
    Rat q = rq(1, 2), w = rq(3, 5), wp = rq(5, 7);
    YbeFreeFields f;
    f.phi_h = Rat(2);
    f.phi_v = rq(3, 2);
    f.psi_h = rq(5, 4);
    f.psi_v = rq(7, 6);
    f.phi_h2 = rq(4, 3);
    f.psi_h2 = rq(8, 7);
    f.psi_v2 = rq(9, 5);
    f.psi_h3 = rq(6, 5);

    expect_verifier(verify_ybe_layers(q, 1, 1, 1, w, wp, f));
    expect_verifier(verify_ybe_layers(q, 1, 1, 2, w, wp, f));
    expect_verifier(verify_ybe_layers(q, 2, 2, 2, w, wp, f));
}

TEST_CASE("exchange relation with the fundamental operator") {
    expect_verifier(verify_exchange_int(rq(2, 5), 1, 2, rq(3, 7), rq(5, 3)));
    expect_verifier(verify_exchange_int(rq(2, 5), 2, 2, rq(7, 5), rq(2, 3)));
    expect_verifier(verify_exchange_generic(rq(4, 9), rq(2, 5), rq(3, 7), rq(3, 2), rq(5, 6), 3));
}

TEST_CASE("fundamental operator blocks, similarity, and the Casimir action") {
    SUBCASE("blocks against the module actions, integral weight") {
        ScalarContext<Rat> ctx = context_from_p(rq(3, 5), rq(2, 3), Rat(1));
        Rat q = ctx.qpow(1), mu = rq(7, 4);
        long J = 2;
        Weight<Rat> WJ = weight_int(ctx, J);
        Rat br_q = bracket(q);
        for (long jo = 0; jo <= J; ++jo)
            for (long ji = 0; ji <= J; ++ji) {
                Rat half = ctx.qhalf_pow(J - 2 * ji);
                Rat e00 = (jo == ji) ? mu * half - mu.inv() / half : Rat();
                Rat e01 = (jo == ji + 1) ? mu * br_q * bracket(q.pow(J - ji)) / br_q / half : Rat();
                Rat e10 = (jo == ji - 1) ? mu.inv() * br_q * (bracket(q.pow(ji)) / br_q) *
                                               ctx.qhalf_pow(J - 2 * (ji - 1))
                                         : Rat();
                Rat e11 = (jo == ji) ? mu / half - mu.inv() * half : Rat();
                CHECK(l_fundamental(ctx, WJ, mu, 0, 0, jo, ji) == e00);
                CHECK(l_fundamental(ctx, WJ, mu, 0, 1, jo, ji) == e01);
                CHECK(l_fundamental(ctx, WJ, mu, 1, 0, jo, ji) == e10);
                CHECK(l_fundamental(ctx, WJ, mu, 1, 1, jo, ji) == e11);
            }
    }

    SUBCASE("blocks against the module actions, generic weight") {
        ScalarContext<Rat> ctx = context_from_p(rq(3, 7), rq(2, 3), Rat(1));
        Rat q = ctx.qpow(1), mu = rq(9, 2);
        Weight<Rat> WG = weight_generic(rq(9, 16), rq(3, 4));
        for (long jo = 0; jo <= 4; ++jo)
            for (long ji = 0; ji <= 4; ++ji) {
                Rat half = WG.xhalf * q.pow(-ji);
                Rat e00 = (jo == ji) ? mu * half - mu.inv() / half : Rat();
                Rat fstep = WG.x * q.pow(-ji) - WG.x.inv() * q.pow(ji);
                Rat e01 = (jo == ji + 1) ? mu * fstep / half : Rat();
                Rat hup = WG.xhalf * q.pow(-(ji - 1));
                Rat e10 = (jo == ji - 1) ? mu.inv() * bracket(q.pow(ji)) * hup : Rat();
                Rat e11 = (jo == ji) ? mu / half - mu.inv() * half : Rat();
                CHECK(l_fundamental(ctx, WG, mu, 0, 0, jo, ji) == e00);
                CHECK(l_fundamental(ctx, WG, mu, 0, 1, jo, ji) == e01);
                CHECK(l_fundamental(ctx, WG, mu, 1, 0, jo, ji) == e10);
                CHECK(l_fundamental(ctx, WG, mu, 1, 1, jo, ji) == e11);
            }
    }

    SUBCASE("diagonal similarity maps the operator onto the I=1 row") {
        ScalarContext<Rat> ctx = context_from_p(rq(3, 5), rq(2, 3), Rat(1));
        long J = 2;
        Weight<Rat> W1 = weight_int(ctx, 1), WJ = weight_int(ctx, J);
        Rat mu = ctx.lambda * ctx.qhalf_pow(1);
        for (long a = 0; a <= 1; ++a)
            for (long b = 0; b <= 1; ++b)
                for (long jo = 0; jo <= J; ++jo)
                    for (long ji = 0; ji <= J; ++ji) {
                        Rat conj = ctx.lam_pow(a - b) * l_fundamental(ctx, WJ, mu, a, b, jo, ji);
                        CHECK(conj == rij_single_sum(ctx, W1, WJ, a, jo, b, ji));
                    }
    }

    SUBCASE("the Casimir combination acts as a scalar") {
        Rat q = rq(3, 7), x = rq(5, 8);
        Rat want = x * q + (x * q).inv();
        for (long j = 0; j <= 4; ++j) {
            Rat fe = (j == 0) ? Rat() : bracket(q.pow(j)) * (x * q.pow(1 - j) - x.inv() * q.pow(j - 1));
            Rat hshift = x * q.pow(1 - 2 * j) + x.inv() * q.pow(2 * j - 1);
            CHECK(fe + hshift == want);
        }
    }
}

TEST_CASE("transposition, reflection, inversion, and layer symmetries hold") {
    FieldSet f;
    f.w = rq(3, 5);
    f.phi_h = Rat(2);
    f.phi_v = rq(3, 2);
    f.psi_h = rq(5, 4);
    f.psi_v = rq(7, 6);
    expect_verifier(verify_symmetries(rq(2, 5), 1, 1, rq(3, 7), rq(5, 6), f));
    expect_verifier(verify_symmetries(rq(2, 5), 1, 2, rq(3, 7), rq(5, 6), f));
    expect_verifier(verify_symmetries(rq(2, 5), 2, 3, rq(3, 4), rq(5, 6), f));
}

TEST_CASE("nearest-neighbour recurrences annihilate the entries") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), Rat(1));

    Weight<Rat> W1 = weight_int(ctx, 1);
    expect_verifier(verify_recurrences(ctx, W1, W1, 0));

    Weight<Rat> W2 = weight_int(ctx, 2), W3 = weight_int(ctx, 3);
    expect_verifier(verify_recurrences(ctx, W2, W3, 0));

    expect_verifier(verify_recurrences(ctx, W2, weight_generic(rq(5, 9)), 4));
    expect_verifier(
        verify_recurrences(ctx, weight_generic(rq(3, 8)), weight_generic(rq(5, 9)), 3));
}

TEST_CASE("recurrences anchored at the corner rebuild the whole matrix") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), Rat(1));
    expect_verifier(verify_reconstruction(ctx, weight_int(ctx, 2), weight_int(ctx, 2), 4));
    expect_verifier(
        verify_reconstruction(ctx, weight_int(ctx, 2), weight_generic(rq(5, 9)), 4));
    ScalarContext<Rat> ctxq = context_from_q(rq(4, 25), rq(3, 4), Rat(1));
    expect_verifier(
        verify_reconstruction(ctxq, weight_generic(rq(3, 8)), weight_generic(rq(5, 9)), 3));
}

TEST_CASE("domain guards reject invalid inputs") {
    ScalarContext<Rat> ctx = context_from_p(rq(2, 5), rq(3, 4), rq(2, 3));
    Weight<Rat> W1 = weight_int(ctx, 1), W2 = weight_int(ctx, 2);

    CHECK_THROWS_AS((void)weight_int(ctx, -1), DomainError);
    CHECK_THROWS_AS((void)weight_generic(Rat()), DomainError);
    CHECK_THROWS_AS((void)m_degree(weight_generic(rq(2, 3)), weight_generic(rq(3, 4))),
                    DomainError);
    CHECK_THROWS_AS((void)rij_single_sum(ctx, W1, W2, -1, 0, 0, -1), DomainError);
    CHECK_THROWS_AS((void)l_fundamental_nu(ctx, W2, rq(2, 3), 2, 0, 0, 0), DomainError);

    // A context built from q alone has no q^{1/2}, so odd half powers and
    // the operator's half shift are unavailable.
    ScalarContext<Rat> noq = context_from_q(rq(2, 5), rq(3, 4), Rat(1));
    CHECK_THROWS_AS((void)noq.qhalf_pow(1), DomainError);
    Weight<Rat> odd = weight_int(noq, 1);
    CHECK_FALSE(odd.has_xhalf);
    CHECK_THROWS_AS((void)l_fundamental(noq, odd, rq(2, 3), 0, 0, 0, 0), DomainError);

    // Resonant spectral parameter on the double sum route.
    ScalarContext<Rat> res = context_from_p(rq(2, 5), rq(4, 25), Rat(1));
    Weight<Rat> R1 = weight_int(res, 1);
    CHECK_THROWS_AS((void)rij_double_sum(res, 1, R1, 1, 0, 1, 0), PoleError);

    // Declared-generic values colliding with integral weights are refused.
    CHECK_THROWS_AS((void)weight_generic_checked(ctx, ctx.qpow(2), 3), DomainError);
    CHECK(weight_generic_checked(ctx, rq(5, 9), 3).x == rq(5, 9));

    // phi^{-I} is not expressible for a generic first weight.
    CHECK_THROWS_AS((void)r_corner(ctx, weight_generic(rq(5, 9)), W2), DomainError);
}
