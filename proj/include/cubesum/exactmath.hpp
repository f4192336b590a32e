#pragma once

// Exact integer primitives: integer square root, triangular numbers,
// p-adic valuation, primality, factorization, prime-power detection.
//
// Everything here is a pure function of its arguments; all operations are
// safe to call concurrently.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubesum/errors.hpp"
#include "cubesum/u128.hpp"

namespace cubesum {

// ---------------------------------------------------------------------------
// integer square root

struct IsqrtResult {
    U128 root;   // floor(sqrt(n))
    bool exact;  // root^2 == n
};

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    if (r > 4294967295ull) r = 4294967295ull;  // floor(sqrt(2^64-1))
    // double rounding puts the estimate within one of the true root
    while (static_cast<unsigned __int128>(r) * r > n) --r;
    while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline unsigned __int128 isqrt_raw(unsigned __int128 n) {
    if (n <= std::numeric_limits<std::uint64_t>::max())
        return isqrt_u64(static_cast<std::uint64_t>(n));
    // Newton iteration started above the root converges monotonically down
    // to floor(sqrt(n)).
    int b = bit_width(U128::from_raw(n));
    unsigned __int128 x = static_cast<unsigned __int128>(1) << ((b + 1) / 2);
    for (;;) {
        unsigned __int128 y = (x + n / x) >> 1;
        if (y >= x) return x;
        x = y;
    }
}

}  // namespace detail

inline IsqrtResult isqrt(U128 n) {
    U128 root = U128::from_raw(detail::isqrt_raw(n.raw()));
    // root < 2^64, so root^2 cannot overflow
    return {root, root.raw() * root.raw() == n.raw()};
}

inline bool is_perfect_square(U128 n) { return isqrt(n).exact; }

// ---------------------------------------------------------------------------
// triangular numbers: tri(n) = n(n+1)/2, the sum 1 + 2 + ... + n

inline U128 triangular(U128 n) {
    // one of n, n+1 is even; halve that one before multiplying
    if (n.raw() % 2 == 0) return (n >> 1) * (n + 1);
    return n * ((n + 1) >> 1);
}

// largest n with tri(n) <= t
inline U128 triangular_floor_inverse(U128 t) {
    if (t.is_zero()) return 0;
    // estimate sqrt(2t) without overflowing, then settle within +-2
    U128 n = (t.raw() >> 126) == 0 ? isqrt(U128::from_raw(t.raw() << 1)).root
                                   : (isqrt(t >> 1).root << 1) + 1;
    while (!n.is_zero() && triangular(n) > t) n -= 1;
    for (;;) {
        auto a = n.raw() + 1;
        auto b = a + 1;
        (a % 2 == 0 ? a : b) >>= 1;
        unsigned __int128 next_tri;
        if (__builtin_mul_overflow(a, b, &next_tri) || next_tri > t.raw()) break;
        n += 1;
    }
    return n;
}

// ---------------------------------------------------------------------------
// p-adic valuation: largest q with p^q | n

inline unsigned valuation(U128 n, U128 p) {
    if (n.is_zero()) throw domain_error("valuation is undefined at 0");
    if (p < 2) throw domain_error("valuation requires p >= 2");
    unsigned q = 0;
    auto nn = n.raw();
    auto pp = p.raw();
    while (nn % pp == 0) {
        nn /= pp;
        ++q;
    }
    return q;
}

// signed convenience: v_p(n) = v_p(|n|)
inline unsigned valuation(long long n, U128 p) {
    if (n == 0) throw domain_error("valuation is undefined at 0");
    unsigned long long mag = n < 0 ? 0ull - static_cast<unsigned long long>(n)
                                   : static_cast<unsigned long long>(n);
    return valuation(U128(mag), p);
}

// ---------------------------------------------------------------------------
// gcd (binary)

inline U128 gcd(U128 a, U128 b) {
    auto x = a.raw();
    auto y = b.raw();
    if (x == 0) return U128::from_raw(y);
    if (y == 0) return U128::from_raw(x);
    auto tz = [](unsigned __int128 v) -> int {
        auto lo = static_cast<std::uint64_t>(v);
        if (lo != 0) return __builtin_ctzll(lo);
        return 64 + __builtin_ctzll(static_cast<std::uint64_t>(v >> 64));
    };
    int shift = tz(x | y);
    x >>= tz(x);
    do {
        y >>= tz(y);
        if (x > y) {
            auto t = x;
            x = y;
            y = t;
        }
        y -= x;
    } while (y != 0);
    return U128::from_raw(x << shift);
}

// ---------------------------------------------------------------------------
// primality

struct Primality {
    bool probable_prime;  // the verdict
    bool certain;         // true below 2^64 (deterministic witness set) and
                          // whenever compositeness was proven; above 2^64 a
                          // "prime" verdict is probabilistic with error
                          // probability < 4^-26 (26 rounds past the fixed set)
};

Primality primality(U128 n);
inline bool is_prime(U128 n) { return primality(n).probable_prime; }

// ---------------------------------------------------------------------------
// factorization

struct FactorEntry {
    U128 p;
    unsigned e;
    friend bool operator==(const FactorEntry&, const FactorEntry&) = default;
};

struct Factorization {
    std::vector<FactorEntry> factors;  // ascending by p, exponents >= 1

    U128 value() const {
        U128 v = 1;
        for (const auto& f : factors) v *= checked_pow(f.p, f.e);
        return v;
    }
    // "p^e*p^e*..." with factors in ascending order; only [0-9*^] characters
    std::string str() const {
        std::string s;
        for (const auto& f : factors) {
            if (!s.empty()) s += '*';
            s += f.p.str();
            s += '^';
            s += std::to_string(f.e);
        }
        return s;
    }
    friend bool operator==(const Factorization&, const Factorization&) = default;
};

// Complete factorization of n >= 2: trial division by all primes below
// 10^4, then Brent-cycle splitting with deterministic parameters for the
// remaining cofactors.  Output order never depends on the splitting path.
Factorization factorize(U128 n);

// ---------------------------------------------------------------------------
// prime powers

struct PrimePower {
    U128 p;
    unsigned r;  // >= 1; the integer 1 is not a prime power here
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// (p, r) with n = p^r if n >= 2 is a prime power, else nullopt.
// Implemented by small-prime stripping plus perfect-root extraction, not by
// factorize(), so the two routes check each other.
std::optional<PrimePower> prime_power_form(U128 n);

// floor(n^(1/e)) for e >= 1
U128 iroot(U128 n, unsigned e);

// all primes below limit, by sieve
std::vector<std::uint32_t> primes_below(std::uint32_t limit);

}  // namespace cubesum
