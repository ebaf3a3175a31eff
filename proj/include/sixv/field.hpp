#pragma once

#include "sixv/laurent.hpp"
#include "sixv/rational.hpp"

namespace sixv {

/// Embedding of plain rationals into a computation field F.  Some fields
/// carry runtime structure (the adjoined radicand of a quadratic extension),
/// so the embedding takes a prototype value of the target field from which
/// that structure is copied.  Plain fields ignore the prototype.
template <class F>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static Rat from_rat(const Rat&, const Rat& r) { return r; }
};

template <>
struct FieldOps<RatFunc> {
    static RatFunc from_rat(const RatFunc&, const Rat& r) { return RatFunc(r); }
};

} // namespace sixv
