#pragma once

// Scalar integer helpers shared by every module: checked arithmetic,
// modular exponentiation, deterministic 64-bit primality and factoring
// for values that live outside the sieved range.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "symprime/error.hpp"

namespace symprime {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Largest value accepted as a limit anywhere in the library.
inline constexpr u64 max_input = u64{1} << 62;

inline void require_input_range(u64 n, const char* what) {
    if (n > max_input)
        throw std::invalid_argument(std::string(what) + " exceeds 2^62");
}

inline u64 checked_add(u64 a, u64 b) {
    u64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("u64 addition overflow");
    return r;
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("u64 multiplication overflow");
    return r;
}

inline u64 abs_u64(i64 v) {
    return v < 0 ? u64(0) - u64(v) : u64(v);
}

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return u64(u128(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// floor(sqrt(n)) exactly.
inline u64 isqrt(u64 n) {
    if (n < 2) return n;
    u64 r = u64(__builtin_sqrt(double(n)));
    while (u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

/// Deterministic Miller-Rabin for all 64-bit n (first 12 prime bases).
inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_brent(u64 n, u64 c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, g = 1, q = 1, x = 0, ys = 0;
    u64 r = 1;
    constexpr u64 block = 128;
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        do {
            ys = y;
            for (u64 i = 0; i < std::min(block, r - k); ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += block;
        } while (k < r && g == 1);
        r <<= 1;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g;
}

inline void collect_prime_factors(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    for (u64 c = 1;; ++c) {
        u64 g = pollard_brent(n, c);
        if (g != n) {
            collect_prime_factors(g, out);
            collect_prime_factors(n / g, out);
            return;
        }
    }
}

} // namespace detail

/// Distinct prime divisors of n (n >= 1) in increasing order, for arbitrary
/// 64-bit n. Used where values are not bounded by a sieve table.
inline std::vector<u64> distinct_prime_divisors(u64 n) {
    if (n == 0) throw std::invalid_argument("distinct_prime_divisors: n must be positive");
    std::vector<u64> out;
    for (u64 p = 2; p < 64 && n > 1; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    detail::collect_prime_factors(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace symprime
