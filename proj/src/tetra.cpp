#include "sixv/tetra.hpp"

#include <algorithm>

namespace sixv {

namespace {

// Memo key: each index is comfortably below 2^10 in any finite check.
std::uint64_t pack(const TetraIndex& idx) {
    std::uint64_t k = 0;
    for (int s = 0; s < 3; ++s) k = (k << 10) | static_cast<std::uint64_t>(idx.out[s]);
    for (int s = 0; s < 3; ++s) k = (k << 10) | static_cast<std::uint64_t>(idx.in[s]);
    return k;
}

bool conserved(const TetraIndex& i) {
    return i.out[0] + i.out[1] == i.in[0] + i.in[1] &&
           i.out[1] + i.out[2] == i.in[1] + i.in[2];
}

// Space labels (1-based) of the four vertex factors as they appear on the
// left of the tetrahedron identity.
constexpr int kSpaces[4][3] = {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}, {3, 5, 6}};

} // namespace

Tetra3::Tetra3(const Rat& q) : q_(q) {
    if (q.is_zero() || q.abs().is_one()) throw DomainError("q must be nonzero and not a unit");
}

Rat r3_weight(const TetraIndex& idx, const Rat& q) {
    if (!conserved(idx)) return Rat(0);
    const long n1 = idx.out[0], n2 = idx.out[1], n3 = idx.out[2];
    const long n1p = idx.in[0], n3p = idx.in[2];
    if (n2 < 0) throw DomainError("negative middle occupation number");
    Rat Q = q * q;
    Rat acc(0);
    for (long r = 0; r <= n2; ++r) {
        Rat t = qpoch(q.pow(-2 * n1p), Q, n2 - r) / qpoch(Q, Q, n2 - r) *
                qpoch(q.pow(2 + 2 * n1), Q, r) / qpoch(Q, Q, r) *
                q.pow(-2 * r * (n3 + n1p + 1));
        acc += t;
    }
    return q.pow(n2 * (n2 + 1) - (n2 - n1p) * (n2 - n3p)) * acc;
}

Rat Tetra3::element_uncached(const TetraIndex& idx) const {
    for (int s = 0; s < 3; ++s)
        if (idx.out[s] < 0 || idx.in[s] < 0)
            throw DomainError("negative occupation number");
    return r3_weight(idx, q_);
}

Rat Tetra3::element(const TetraIndex& idx) {
    if (!conserved(idx)) return Rat(0);
    std::uint64_t key = pack(idx);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Rat v = element_uncached(idx);
    memo_.emplace(key, v);
    return v;
}

Rat Tetra3::element_via_polynomials(const TetraIndex& idx) const {
    if (!conserved(idx)) return Rat(0);
    const long n1p = idx.in[0], n2p = idx.in[1], n3p = idx.in[2];
    const long n2 = idx.out[1];
    Rat Q = q_ * q_;
    Rat poly = qn_closed(n2, q_.pow(-2 * n1p), q_.pow(-2 * n2p), q_.pow(-2 * n3p), q_);
    return q_.pow(n2 * (n2 + 1) - (n2 - n1p) * (n2 - n3p)) / qpoch(Q, Q, n2) * poly;
}

Rat Tetra3::element_dressed(const TetraIndex& idx, const DressingFields& f) {
    Rat base = element(idx);
    if (base.is_zero()) return base;
    Rat dress = (f.mu[2] / f.lambda[0]).pow(idx.out[1]) *
                (f.lambda[1] / f.lambda[2]).pow(idx.in[0]) *
                (f.mu[0] / f.mu[1]).pow(idx.in[2]);
    for (int s = 0; s < 3; ++s) dress *= f.c[s].pow(idx.out[s] - idx.in[s]);
    return base * dress;
}

template <class Elem>
Rat Tetra3::residual_generic(const std::array<long, 6>& n, const std::array<long, 6>& npp,
                             Elem elem) {
    // 0-based aliases for the six external spaces.
    const long n1 = n[0], n2 = n[1], n3 = n[2], n4 = n[3], n5 = n[4], n6 = n[5];

    Rat lhs(0);
    // One free internal index survives the conservation laws on each side;
    // every other primed index is determined by it, and each factor's own
    // delta functions enforce the remaining constraints.
    for (long n2p = 0; n2p <= std::min(n1 + n2, n2 + n3); ++n2p) {
        long n1p = n1 + n2 - n2p, n3p = n2 + n3 - n2p;
        Rat a = elem(0, TetraIndex{{n1, n2, n3}, {n1p, n2p, n3p}});
        if (a.is_zero()) continue;
        long n4p = n1p + n4 - npp[0];
        if (n4p < 0) continue;
        long n5p = n4 + n5 - n4p;
        if (n5p < 0) continue;
        Rat b = elem(1, TetraIndex{{n1p, n4, n5}, {npp[0], n4p, n5p}});
        if (b.is_zero()) continue;
        long n6p = n4p + n6 - npp[3];
        if (n6p < 0) continue;
        Rat c = elem(2, TetraIndex{{n2p, n4p, n6}, {npp[1], npp[3], n6p}});
        if (c.is_zero()) continue;
        Rat d = elem(3, TetraIndex{{n3p, n5p, n6p}, {npp[2], npp[4], npp[5]}});
        lhs += a * b * c * d;
    }

    Rat rhs(0);
    for (long n5p = 0; n5p <= std::min(n3 + n5, n5 + n6); ++n5p) {
        long n3p = n3 + n5 - n5p, n6p = n5 + n6 - n5p;
        Rat a = elem(3, TetraIndex{{n3, n5, n6}, {n3p, n5p, n6p}});
        if (a.is_zero()) continue;
        long n4p = n4 + n6p - npp[5];
        if (n4p < 0) continue;
        long n2p = n2 + n4 - n4p;
        if (n2p < 0) continue;
        Rat b = elem(2, TetraIndex{{n2, n4, n6p}, {n2p, n4p, npp[5]}});
        if (b.is_zero()) continue;
        long n1p = n1 + n4p - npp[3];
        if (n1p < 0) continue;
        Rat c = elem(1, TetraIndex{{n1, n4p, n5p}, {n1p, npp[3], npp[4]}});
        if (c.is_zero()) continue;
        Rat d = elem(0, TetraIndex{{n1p, n2p, n3p}, {npp[0], npp[1], npp[2]}});
        rhs += a * b * c * d;
    }

    return lhs - rhs;
}

Rat Tetra3::tetrahedron_residual(const std::array<long, 6>& n, const std::array<long, 6>& npp) {
    return residual_generic(n, npp, [this](int, const TetraIndex& idx) { return element(idx); });
}

Rat Tetra3::tetrahedron_residual_dressed(const std::array<long, 6>& n,
                                         const std::array<long, 6>& npp,
                                         const std::array<Rat, 6>& lambda,
                                         const std::array<Rat, 6>& mu,
                                         const std::array<Rat, 6>& c) {
    return residual_generic(n, npp, [&](int factor, const TetraIndex& idx) {
        DressingFields f;
        for (int s = 0; s < 3; ++s) {
            int space = kSpaces[factor][s] - 1;
            f.lambda[s] = lambda[space];
            f.mu[s] = mu[space];
            f.c[s] = c[space];
        }
        return element_dressed(idx, f);
    });
}

} // namespace sixv
