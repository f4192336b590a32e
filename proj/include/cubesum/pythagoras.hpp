#pragma once

// Primitive Pythagorean triples: recognition against a designated
// hypotenuse, recovery of the unique generator pair
//
//   hyp = m^2 + n^2,  odd leg = m^2 - n^2,  even leg = 2mn
//   (m > n >= 1, gcd(m,n) = 1, m and n of opposite parity)
//
// and reduction of a triple by the common p-power factor of its members.
// The hypotenuse is always the first argument; no auto-detection.

#include "cubesum/errors.hpp"
#include "cubesum/exactmath.hpp"
#include "cubesum/u128.hpp"

namespace cubesum {

struct PrimitiveTriple {
    U128 hyp;       // m^2 + n^2
    U128 leg_odd;   // m^2 - n^2
    U128 leg_even;  // 2mn
    U128 m;
    U128 n;
    friend bool operator==(const PrimitiveTriple&, const PrimitiveTriple&) = default;
};

// Triple for a generator pair; throws domain_error unless m > n >= 1,
// coprime, opposite parity.
PrimitiveTriple triple_from_generators(U128 m, U128 n);

// a^2 == b^2 + c^2 with gcd(a,b) = 1 (pairwise coprimality follows).
// Members must be positive; the degenerate zero-leg case never reaches this
// module.
bool is_primitive_triple(U128 a, U128 b, U128 c);

// Unique (m,n) for a primitive triple given as (hyp, leg, leg) in either
// leg order.  m^2 = (hyp + odd leg)/2 and n^2 = (hyp - odd leg)/2 are exact
// squares for every primitive triple; a failed extraction after the
// primitivity check passes is a library bug, not an input error.
PrimitiveTriple recover_params(U128 a, U128 b, U128 c);

struct ReducedTriple {
    U128 a;      // A / p^q
    U128 b;      // B / p^q
    U128 c;      // C / p^q
    unsigned q;  // min of the three p-adic valuations
};

// Divide A^2 = B^2 + C^2 through by p^(2q), q = min valuation, so that at
// least one member of the result is coprime to p.
ReducedTriple reduce_by_common_valuation(U128 A, U128 B, U128 C, U128 p);

}  // namespace cubesum
