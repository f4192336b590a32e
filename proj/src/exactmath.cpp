#include "cubesum/exactmath.hpp"

#include <algorithm>
#include <array>

namespace cubesum {
namespace {

using u128 = unsigned __int128;
using u64 = std::uint64_t;

// (a*b) mod m.  Fast path through a single 128-bit product when m fits in
// 64 bits; shift-and-add otherwise (moduli above 2^64 are rare here).
u128 mulmod(u128 a, u128 b, u128 m) {
    if (m <= std::numeric_limits<u64>::max()) {
        return static_cast<u128>((a % m) * (b % m)) % m;
    }
    a %= m;
    b %= m;
    u128 r = 0;
    while (b != 0) {
        if (b & 1) {
            // r = (r + a) mod m without overflowing
            r = a >= m - r ? a - (m - r) : r + a;
        }
        a = a >= m - a ? a - (m - a) : a + a;
        b >>= 1;
    }
    return r;
}

u128 powmod(u128 base, u128 exp, u128 m) {
    u128 r = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

// one strong-probable-prime round; true means "passes" (no compositeness found)
bool sprp(u128 n, u128 a, u128 d, int s) {
    a %= n;
    if (a == 0) return true;
    u128 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

u64 splitmix64(u64& state) {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

constexpr std::array<u64, 12> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// smallest prime factor found by dividing out the trial primes; 0 if none
constexpr u64 kTrialBound = 10000;

const std::vector<std::uint32_t>& trial_primes() {
    static const std::vector<std::uint32_t> primes = primes_below(kTrialBound);
    return primes;
}

u128 gcd_raw(u128 a, u128 b) { return gcd(U128::from_raw(a), U128::from_raw(b)).raw(); }

// Brent's cycle variant of the rho method.  n must be odd, composite and
// free of factors below the trial bound.  The polynomial offset c is chosen
// deterministically per call so results never depend on wall clock or
// global state.
u128 pollard_brent(u128 n) {
    u64 seed = static_cast<u64>(n) ^ static_cast<u64>(n >> 64) ^ 0xc0ffee123456789ull;
    for (;;) {
        u128 c = 1 + splitmix64(seed) % (n - 1);
        u128 x = 2 + splitmix64(seed) % (n - 2);
        u128 y = x, ys = x, q = 1, g = 1;
        const unsigned m = 128;
        unsigned r = 1;
        while (g == 1) {
            x = y;
            for (unsigned i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
            for (unsigned k = 0; k < r && g == 1; k += m) {
                ys = y;
                unsigned lim = std::min(m, r - k);
                for (unsigned i = 0; i < lim; ++i) {
                    y = (mulmod(y, y, n) + c) % n;
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = gcd_raw(q, n);
            }
            r <<= 1;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (mulmod(ys, ys, n) + c) % n;
                g = gcd_raw(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle collapsed onto n itself; retry with the next (c, x0)
    }
}

void factor_recursive(u128 n, std::vector<U128>& out) {
    if (n == 1) return;
    if (primality(U128::from_raw(n)).probable_prime) {
        out.push_back(U128::from_raw(n));
        return;
    }
    // perfect powers split exactly; this also keeps rho away from p^2
    for (unsigned e = 2; e <= 127; ++e) {
        if ((static_cast<u128>(1) << e) > n) break;
        U128 root = iroot(U128::from_raw(n), e);
        if (root.raw() < 2) break;
        auto p = checked_pow_opt(root, e);
        if (p && p->raw() == n) {
            std::vector<U128> sub;
            factor_recursive(root.raw(), sub);
            for (unsigned i = 0; i < e; ++i) out.insert(out.end(), sub.begin(), sub.end());
            return;
        }
    }
    u128 d = pollard_brent(n);
    factor_recursive(d, out);
    factor_recursive(n / d, out);
}

}  // namespace

std::vector<std::uint32_t> primes_below(std::uint32_t limit) {
    std::vector<bool> comp(limit, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i < limit; ++i) {
        if (comp[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j < limit; j += i)
            comp[static_cast<std::uint32_t>(j)] = true;
    }
    return primes;
}

Primality primality(U128 n_in) {
    u128 n = n_in.raw();
    if (n < 2) return {false, true};
    for (u64 p : kWitnesses) {
        if (n == p) return {true, true};
        if (n % p == 0) return {false, true};
    }
    if (n < 41 * 41) return {true, true};

    int s = 0;
    u128 d = n - 1;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : kWitnesses) {
        if (!sprp(n, a, d, s)) return {false, true};
    }
    // the 12 bases above decide every n below 2^64
    if (n <= std::numeric_limits<u64>::max()) return {true, true};

    // larger n: add 26 bases derived deterministically from n; a composite
    // survives each independent round with probability < 1/4
    u64 seed = static_cast<u64>(n) ^ (static_cast<u64>(n >> 64) * 0x9e3779b97f4a7c15ull);
    for (int i = 0; i < 26; ++i) {
        u128 a = 2 + splitmix64(seed) % (n - 3);
        if (!sprp(n, a, d, s)) return {false, true};
    }
    return {true, false};
}

Factorization factorize(U128 n_in) {
    if (n_in < 2) throw domain_error("factorize requires n >= 2");
    u128 n = n_in.raw();
    std::vector<U128> primes;
    for (std::uint32_t p : trial_primes()) {
        if (static_cast<u128>(p) * p > n) break;
        while (n % p == 0) {
            n /= p;
            primes.emplace_back(p);
        }
    }
    if (n > 1) {
        if (n < static_cast<u128>(kTrialBound) * kTrialBound) {
            primes.push_back(U128::from_raw(n));  // below trial bound squared: prime
        } else {
            factor_recursive(n, primes);
        }
    }
    std::sort(primes.begin(), primes.end());
    Factorization f;
    for (const U128& p : primes) {
        if (!f.factors.empty() && f.factors.back().p == p) {
            ++f.factors.back().e;
        } else {
            f.factors.push_back({p, 1});
        }
    }
    return f;
}

U128 iroot(U128 n, unsigned e) {
    if (e == 0) throw domain_error("iroot requires e >= 1");
    if (e == 1) return n;
    if (e == 2) return isqrt(n).root;
    if (n.raw() < 2) return n;
    // binary search over candidates; r <= 2^ceil(128/e)
    unsigned bits = (127 + e) / e + 1;
    u128 lo = 1, hi = bits >= 128 ? n.raw() : (static_cast<u128>(1) << bits);
    if (hi > n.raw()) hi = n.raw();
    while (lo < hi) {
        u128 mid = lo + (hi - lo + 1) / 2;
        auto p = checked_pow_opt(U128::from_raw(mid), e);
        if (p && p->raw() <= n.raw()) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return U128::from_raw(lo);
}

std::optional<PrimePower> prime_power_form(U128 n) {
    if (n < 2) throw domain_error("prime_power_form requires n >= 2");
    // a small prime divisor settles it: n = p^e exactly, or n has two
    // distinct prime divisors
    for (std::uint32_t p : trial_primes()) {
        if (p > 100) break;
        if (n.raw() % p == 0) {
            unsigned e = 0;
            u128 m = n.raw();
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            if (m == 1) return PrimePower{U128(p), e};
            return std::nullopt;
        }
    }
    if (is_prime(n)) return PrimePower{n, 1};
    // no prime factor <= 100, composite: only a perfect power p^e (e >= 2,
    // p > 100) remains possible
    for (unsigned e = 2; e <= 19; ++e) {
        U128 root = iroot(n, e);
        if (root < 101) break;
        auto p = checked_pow_opt(root, e);
        if (p && *p == n && is_prime(root)) return PrimePower{root, e};
    }
    return std::nullopt;
}

}  // namespace cubesum
