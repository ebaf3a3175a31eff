#pragma once

#include <string>
#include <vector>

#include "sixv/rmatrix.hpp"

namespace sixv {

/// Outcome of an exact identity check: every comparison is counted and
/// failures carry a short description of the offending tuple.
struct VerifyResult {
    bool ok = true;
    long checks = 0;
    std::vector<std::string> failures;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
    void merge(const VerifyResult& o) {
        ok = ok && o.ok;
        checks += o.checks;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
    }
};

/// Free parameters of the three-matrix exchange move; the five remaining
/// fields are fixed by the compatibility constraints and filled in by the
/// verifier itself.
struct YbeFreeFields {
    Rat phi_h{1}, phi_v{1}, psi_h{1}, psi_v{1};
    Rat phi_h2{1}, psi_h2{1}, psi_v2{1};
    Rat psi_h3{1};
};

/// Exchange relation for the bare two-layer matrices with general fields,
/// checked entry-wise over all external index tuples.
VerifyResult verify_ybe_layers(const Rat& q, long I1, long I2, long I3, const Rat& w,
                               const Rat& wp, const YbeFreeFields& f);

/// Exchange relation L(mu) L(lambda mu) R = R L(lambda mu) L(mu) for two
/// integer weights, on the full space (q = p^2 so the half-powers exist).
VerifyResult verify_exchange_int(const Rat& p, long I, long J, const Rat& lambda,
                                 const Rat& mu);

/// Same relation with two generic weights given by x_I = q^I and x_J = q^J,
/// checked exactly in the quadratic extension generated by (x_I/x_J)^{1/2}
/// on all conserved sectors with total a+i+j <= sector_max.
VerifyResult verify_exchange_generic(const Rat& q, const Rat& xI, const Rat& xJ,
                                     const Rat& lambda0, const Rat& nu, long sector_max);

/// Transposition, field-reflection and inversion symmetries of the
/// normalized matrix, plus the layer-transposition identity for the bare
/// two-layer matrix with an arbitrary field pack.
VerifyResult verify_symmetries(const Rat& p, long I, long J, const Rat& lambda, const Rat& phi,
                               const FieldSet& f);

/// Nearest-neighbour recurrences of the ratio-normalized entries over all
/// index tuples whose shifted neighbours stay inside the index domain.
/// Generic weights are capped at index value `cap`.
VerifyResult verify_recurrences(const ScalarContext<Rat>& ctx, const Weight<Rat>& WI,
                                const Weight<Rat>& WJ, long cap);

/// Rebuilds the ratio-normalized entries from the recurrences alone (anchored
/// at the corner entry, with index totals capped at `cap`) and compares every
/// in-band entry with the direct evaluator.
VerifyResult verify_reconstruction(const ScalarContext<Rat>& ctx, const Weight<Rat>& WI,
                                   const Weight<Rat>& WJ, long cap);

} // namespace sixv
