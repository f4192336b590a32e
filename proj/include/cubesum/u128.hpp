#pragma once

// Exact unsigned 128-bit integer with checked arithmetic.
//
// Every value in this library is a non-negative integer below 2^128, and
// every operation either returns the exact result or throws
// cubesum::overflow_error.  Nothing wraps.  Division and remainder by zero
// throw cubesum::domain_error.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "cubesum/errors.hpp"

namespace cubesum {

class U128 {
public:
    using raw_type = unsigned __int128;

    constexpr U128() = default;
    constexpr U128(unsigned long long v) : v_(v) {}
    constexpr U128(unsigned long v) : v_(v) {}
    constexpr U128(unsigned int v) : v_(v) {}
    constexpr U128(int v) : v_(static_cast<raw_type>(v)) {
        if (v < 0) throw domain_error("U128 from negative int");
    }
    constexpr U128(long v) : v_(static_cast<raw_type>(v)) {
        if (v < 0) throw domain_error("U128 from negative long");
    }
    constexpr U128(long long v) : v_(static_cast<raw_type>(v)) {
        if (v < 0) throw domain_error("U128 from negative long long");
    }

    static constexpr U128 from_raw(raw_type v) {
        U128 r;
        r.v_ = v;
        return r;
    }
    constexpr raw_type raw() const { return v_; }

    static constexpr U128 max() { return from_raw(~raw_type{0}); }

    constexpr bool is_zero() const { return v_ == 0; }
    constexpr bool fits_u64() const { return v_ <= std::numeric_limits<std::uint64_t>::max(); }
    constexpr std::uint64_t to_u64() const {
        if (!fits_u64()) throw overflow_error("U128 does not fit in 64 bits");
        return static_cast<std::uint64_t>(v_);
    }

    friend constexpr U128 operator+(U128 a, U128 b) {
        raw_type r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw overflow_error("U128 addition overflow");
        return from_raw(r);
    }
    friend constexpr U128 operator-(U128 a, U128 b) {
        if (a.v_ < b.v_) throw overflow_error("U128 subtraction underflow");
        return from_raw(a.v_ - b.v_);
    }
    friend constexpr U128 operator*(U128 a, U128 b) {
        raw_type r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw overflow_error("U128 multiplication overflow");
        return from_raw(r);
    }
    friend constexpr U128 operator/(U128 a, U128 b) {
        if (b.v_ == 0) throw domain_error("U128 division by zero");
        return from_raw(a.v_ / b.v_);
    }
    friend constexpr U128 operator%(U128 a, U128 b) {
        if (b.v_ == 0) throw domain_error("U128 remainder by zero");
        return from_raw(a.v_ % b.v_);
    }
    friend constexpr U128 operator<<(U128 a, unsigned s) {
        if (s >= 128) throw overflow_error("U128 shift amount");
        if (s != 0 && (a.v_ >> (128 - s)) != 0) throw overflow_error("U128 shift overflow");
        return from_raw(a.v_ << s);
    }
    friend constexpr U128 operator>>(U128 a, unsigned s) {
        return s >= 128 ? U128{} : from_raw(a.v_ >> s);
    }

    constexpr U128& operator+=(U128 o) { return *this = *this + o; }
    constexpr U128& operator-=(U128 o) { return *this = *this - o; }
    constexpr U128& operator*=(U128 o) { return *this = *this * o; }
    constexpr U128& operator/=(U128 o) { return *this = *this / o; }
    constexpr U128& operator%=(U128 o) { return *this = *this % o; }

    friend constexpr bool operator==(U128 a, U128 b) { return a.v_ == b.v_; }
    friend constexpr std::strong_ordering operator<=>(U128 a, U128 b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const {
        if (v_ == 0) return "0";
        char buf[40];
        int i = 40;
        raw_type v = v_;
        while (v != 0) {
            buf[--i] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
            v /= 10;
        }
        return std::string(buf + i, buf + 40);
    }

    // Decimal only.  Rejects empty input, non-digits, and values >= 2^128.
    static std::optional<U128> parse(std::string_view s) {
        if (s.empty()) return std::nullopt;
        raw_type v = 0;
        for (char c : s) {
            if (c < '0' || c > '9') return std::nullopt;
            raw_type d = static_cast<raw_type>(c - '0');
            if (v > (~raw_type{0} - d) / 10) return std::nullopt;
            v = v * 10 + d;
        }
        return from_raw(v);
    }

    friend std::ostream& operator<<(std::ostream& os, U128 v) { return os << v.str(); }

private:
    raw_type v_ = 0;
};

inline U128 operator""_u128(const char* s) {
    auto v = U128::parse(s);
    if (!v) throw domain_error("invalid U128 literal");
    return *v;
}

constexpr int bit_width(U128 v) {
    auto hi = static_cast<std::uint64_t>(v.raw() >> 64);
    auto lo = static_cast<std::uint64_t>(v.raw());
    if (hi != 0) return 128 - __builtin_clzll(hi);
    if (lo != 0) return 64 - __builtin_clzll(lo);
    return 0;
}

// base^exp, throwing on overflow.
constexpr U128 checked_pow(U128 base, unsigned exp) {
    U128 result = 1;
    U128 b = base;
    while (exp != 0) {
        if (exp & 1u) result *= b;
        exp >>= 1;
        if (exp != 0) b *= b;
    }
    return result;
}

// base^exp, or nullopt if it exceeds capacity (used by root extraction,
// where overflow just means "bigger than any candidate").
constexpr std::optional<U128> checked_pow_opt(U128 base, unsigned exp) {
    U128::raw_type result = 1;
    U128::raw_type b = base.raw();
    for (;;) {
        if (exp & 1u) {
            if (__builtin_mul_overflow(result, b, &result)) return std::nullopt;
        }
        exp >>= 1;
        if (exp == 0) break;
        // exp still has a set bit, so this square is needed in the result.
        if (__builtin_mul_overflow(b, b, &b)) return std::nullopt;
    }
    return U128::from_raw(result);
}

}  // namespace cubesum
