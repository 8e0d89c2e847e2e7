#pragma once

// Measurable quantities behind the upper-bound argument for S(x): the
// cut-offs L and x^(1/log log x), the reciprocal prime-power sum E, and the
// smooth / Omega-excess prime counts.

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "symprime/error.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/sieve.hpp"

namespace symprime {

struct ProofProfile {
    u64 x = 0;
    unsigned L = 0;
    double E = 0;
    double smooth_threshold = 0;
    u64 prime_count = 0;
    u64 s1_count = 0;       ///< P+(p-1) <= threshold
    u64 s2_count = 0;       ///< P+(p-1) > threshold and Omega(p-1) > L
    u64 omega_excess = 0;   ///< Omega(p-1) > L, any smoothness
    double mean_big_omega = 0;
    std::map<unsigned, u64> omega_histogram;  ///< Omega(p-1) -> number of primes p <= x
};

namespace detail {

inline void require_profile_domain(u64 x, const char* what) {
    if (x < 16) throw std::invalid_argument(std::string(what) + ": x must be >= 16");
    require_input_range(x, what);
}

} // namespace detail

/// floor(log log x / log 2), natural logarithms.
inline unsigned L_of(u64 x) {
    detail::require_profile_domain(x, "L_of");
    return unsigned(std::floor(std::log(std::log(double(x))) / std::log(2.0)));
}

/// x^(1 / log log x).
inline double smooth_threshold(u64 x) {
    detail::require_profile_domain(x, "smooth_threshold");
    return std::pow(double(x), 1.0 / std::log(std::log(double(x))));
}

/// Sum of 1/q over primes and prime powers q < x.
inline double reciprocal_prime_power_sum(const PrimalityTable& primes, u64 x) {
    if (x < 3) return 0.0;
    if (x - 1 > primes.bound())
        throw bound_error("reciprocal_prime_power_sum: primality table below x - 1", x - 1);
    double sum = 0;
    primes.for_each_prime(2, x - 1, [&](u64 p) {
        for (u64 q = p; q < x; q *= p) {
            sum += 1.0 / double(q);
            if (q > (x - 1) / p) break;
        }
    });
    return sum;
}

/// Omega(p - 1) histogram over primes p <= x (p = 2 contributes Omega(1) = 0).
inline std::map<unsigned, u64> omega_histogram(const PrimalityTable& primes, u64 x) {
    if (x > primes.bound()) throw bound_error("omega_histogram: primality table below x", x);
    std::map<unsigned, u64> hist;
    for_each_prime_with_predecessor(primes, 2, x + 1,
                                    [&](u64, const Factorization& pm1) { ++hist[pm1.big_omega()]; });
    return hist;
}

inline ProofProfile proof_profile(const PrimalityTable& primes, u64 x) {
    detail::require_profile_domain(x, "proof_profile");
    if (x > primes.bound()) throw bound_error("proof_profile: primality table below x", x);
    ProofProfile prof;
    prof.x = x;
    prof.L = L_of(x);
    prof.E = reciprocal_prime_power_sum(primes, x);
    prof.smooth_threshold = smooth_threshold(x);
    u64 omega_total = 0;
    for_each_prime_with_predecessor(primes, 2, x + 1, [&](u64, const Factorization& pm1) {
        const unsigned big = pm1.big_omega();
        const bool smooth = double(pm1.p_plus()) <= prof.smooth_threshold;
        ++prof.prime_count;
        ++prof.omega_histogram[big];
        omega_total += big;
        if (smooth) ++prof.s1_count;
        if (big > prof.L) {
            ++prof.omega_excess;
            if (!smooth) ++prof.s2_count;
        }
    });
    prof.mean_big_omega = prof.prime_count ? double(omega_total) / double(prof.prime_count) : 0.0;
    return prof;
}

/// p = a * r + 1 with r = P+(p - 1).
inline std::pair<u64, u64> largest_prime_factor_decomposition(const FactorTable& factors, u64 p) {
    if (p < 3) throw std::invalid_argument("largest_prime_factor_decomposition: p must be an odd prime");
    if (!is_prime_u64(p)) throw std::invalid_argument("largest_prime_factor_decomposition: p must be prime");
    u64 r = factors.p_plus(p - 1);
    return {(p - 1) / r, r};
}

} // namespace symprime
