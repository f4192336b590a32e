#pragma once

// S(x,k) = x^3 + (x+1)^3 + ... + (x+k-1)^3, evaluated through the
// triangular-number identity
//
//   S(x,k) = tri(x+k-1)^2 - tri(x-1)^2
//
// together with a term-by-term oracle and the divisor obtained by pairing
// the i-th term with the (k-1-i)-th: each pair (x+i)^3 + (x+k-1-i)^3 is
// divisible by 2x+k-1.

#include <cstdint>

#include "cubesum/errors.hpp"
#include "cubesum/exactmath.hpp"
#include "cubesum/u128.hpp"

namespace cubesum {

struct CubeSumInstance {
    std::uint64_t x = 1;  // first base, >= 1
    std::uint64_t k = 1;  // term count, >= 1
    friend bool operator==(const CubeSumInstance&, const CubeSumInstance&) = default;
};

inline void validate(const CubeSumInstance& inst) {
    if (inst.x < 1 || inst.k < 1) throw domain_error("instance requires x >= 1 and k >= 1");
}

struct TriangularPair {
    U128 high;  // tri(x+k-1)
    U128 low;   // tri(x-1); 0 when x = 1
    friend bool operator==(const TriangularPair&, const TriangularPair&) = default;
};

inline TriangularPair triangular_pair(const CubeSumInstance& inst) {
    validate(inst);
    U128 top = U128(inst.x) + U128(inst.k) - 1;
    return {triangular(top), triangular(U128(inst.x) - 1)};
}

inline U128 cube_sum(const CubeSumInstance& inst) {
    TriangularPair t = triangular_pair(inst);
    return t.high * t.high - t.low * t.low;
}

inline constexpr std::uint64_t kNaiveTermLimit = 1000000;

// Term-by-term summation.  Exists as an independent check on cube_sum and
// is capped so nobody leans on it for production sweeps.
U128 cube_sum_naive(const CubeSumInstance& inst, std::uint64_t term_limit = kNaiveTermLimit);

// 2x+k-1 for even k; (2x+k-1)/2 for odd k (then 2x+k-1 is even).
// Divides cube_sum(inst) for every instance.
inline U128 pairing_divisor(const CubeSumInstance& inst) {
    validate(inst);
    U128 d = 2 * U128(inst.x) + U128(inst.k) - 1;
    return inst.k % 2 == 0 ? d : d >> 1;
}

}  // namespace cubesum
