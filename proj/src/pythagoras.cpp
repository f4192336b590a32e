#include "cubesum/pythagoras.hpp"

#include <algorithm>

namespace cubesum {

PrimitiveTriple triple_from_generators(U128 m, U128 n) {
    if (n < 1 || m <= n) throw domain_error("generators require m > n >= 1");
    if (gcd(m, n) != 1) throw domain_error("generators must be coprime");
    if ((m.raw() & 1) == (n.raw() & 1)) throw domain_error("generators must have opposite parity");
    U128 m2 = m * m;
    U128 n2 = n * n;
    return {m2 + n2, m2 - n2, 2 * m * n, m, n};
}

bool is_primitive_triple(U128 a, U128 b, U128 c) {
    if (a.is_zero() || b.is_zero() || c.is_zero())
        throw domain_error("triple members must be positive");
    if (a * a != b * b + c * c) return false;
    return gcd(a, b) == 1;
}

PrimitiveTriple recover_params(U128 a, U128 b, U128 c) {
    if (!is_primitive_triple(a, b, c)) throw not_primitive_error("not a primitive triple");
    // a primitive triple has an odd hypotenuse and exactly one odd leg
    U128 odd = (b.raw() & 1) ? b : c;
    U128 even = (b.raw() & 1) ? c : b;
    auto [m, m_exact] = isqrt((a + odd) >> 1);
    auto [n, n_exact] = isqrt((a - odd) >> 1);
    if (!m_exact || !n_exact || n < 1 || m <= n || m * m - n * n != odd || 2 * m * n != even)
        throw internal_inconsistency_error("generator extraction failed on a primitive triple");
    return {a, odd, even, m, n};
}

ReducedTriple reduce_by_common_valuation(U128 A, U128 B, U128 C, U128 p) {
    if (A.is_zero() || B.is_zero() || C.is_zero())
        throw domain_error("triple members must be positive");
    if (p < 2 || !is_prime(p)) throw domain_error("reduction requires a prime p");
    if (A * A != B * B + C * C) throw not_a_triple_error("A^2 != B^2 + C^2");
    unsigned q = std::min({valuation(A, p), valuation(B, p), valuation(C, p)});
    U128 scale = checked_pow(p, q);
    return {A / scale, B / scale, C / scale, q};
}

}  // namespace cubesum
