#pragma once

/// @file symmetry.hpp
/// @brief Symmetric prime pairs, partner certificates and the counting
/// function S(x).
///
/// Two distinct primes p < q form a symmetric pair when
/// gcd(p-1, q-1) = q - p. Since gcd(p-1, q-1) = gcd(p-1, q-p), this holds
/// exactly when (q - p) | (p - 1). Partners of p are therefore p +/- d for the
/// divisors d of p-1, and every partner lies in (p/2, 2p).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "symprime/error.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/parallel.hpp"
#include "symprime/sieve.hpp"

namespace symprime {

/// Which primes may take part in a pair. The odd-only convention is the
/// literal definition; include_two additionally admits the pair {2, 3}, which
/// is what the published S(p_n) table counts.
struct Convention {
    bool include_two = true;

    static constexpr Convention with_two() { return {true}; }
    static constexpr Convention odd_only() { return {false}; }

    constexpr bool admits(u64 prime) const noexcept { return include_two || prime != 2; }
    const char* name() const noexcept { return include_two ? "include_two" : "odd_only"; }

    friend bool operator==(const Convention&, const Convention&) = default;
};

enum class Direction { above, below };

inline const char* to_string(Direction d) { return d == Direction::above ? "above" : "below"; }

/// Witness that p is symmetric: q = p + d (above) or p - d (below), with
/// gcd(p-1, q-1) = d.
struct PartnerCertificate {
    u64 p = 0;
    u64 d = 0;
    u64 q = 0;
    Direction direction = Direction::above;

    friend bool operator==(const PartnerCertificate&, const PartnerCertificate&) = default;
};

struct SurveyRow {
    u64 n = 0;
    u64 p_n = 0;
    u64 s = 0;
    double ratio = 0;
    double model = 0;
};

/// 1 - (1 + log log 2) / log 2 = 0.0860713320559342...
inline double eta() {
    const double ln2 = std::log(2.0);
    return 1.0 - (1.0 + std::log(ln2)) / ln2;
}

/// The model column 1 / (log p)^eta, natural logarithm.
inline double model_value(u64 p) {
    return std::pow(std::log(double(p)), -eta());
}

/// Primality bound needed to certify every prime <= x: partners reach 2x-1.
inline u64 required_primality_bound(u64 x) {
    return x < 2 ? 2 : checked_mul(x, 2) - 1;
}

namespace detail {

inline void require_prime(const PrimalityTable& primes, u64 n, const char* what) {
    if (!primes.is_prime(n)) throw std::invalid_argument(std::string(what) + ": " + std::to_string(n) + " is not prime");
}

inline void require_partner_bound(const PrimalityTable& primes, u64 p, const char* what) {
    u64 need = required_primality_bound(p);
    if (need > primes.bound())
        throw bound_error(std::string(what) + ": partners of " + std::to_string(p) + " need primality up to 2p-1",
                          need);
}

/// True when p has a partner; `pm1` is the factorization of p-1. The
/// caller guarantees the primality table reaches 2p-1.
inline bool has_partner(const PrimalityTable& primes, u64 p, const Factorization& pm1, Convention conv) {
    if (!conv.admits(p)) return false;
    return pm1.any_divisor([&](u64 d) {
        u64 up = p + d;
        if (conv.admits(up) && primes.is_prime_unchecked(up)) return true;
        u64 down = p - d;
        return down >= 2 && conv.admits(down) && primes.is_prime_unchecked(down);
    });
}

/// Scope of partners considered when counting.
enum class PartnerScope {
    unbounded,     ///< any partner, even above x
    within_limit,  ///< partners q <= x only
};

} // namespace detail

using detail::PartnerScope;

/// gcd(p-1, q-1) == |p-q| evaluated literally. Under odd_only, pairs that
/// involve 2 are simply false.
inline bool is_symmetric_pair(const PrimalityTable& primes, u64 p, u64 q, Convention conv = {}) {
    detail::require_prime(primes, p, "is_symmetric_pair");
    detail::require_prime(primes, q, "is_symmetric_pair");
    if (p == q) throw std::invalid_argument("is_symmetric_pair: p and q must differ");
    if (!conv.admits(p) || !conv.admits(q)) return false;
    return std::gcd(p - 1, q - 1) == (p > q ? p - q : q - p);
}

/// All partners of p from the factorization of p-1, ascending by q.
inline std::vector<PartnerCertificate> partners(const PrimalityTable& primes, u64 p, const Factorization& pm1,
                                                Convention conv = {}) {
    detail::require_prime(primes, p, "partners");
    if (pm1.n() != p - 1) throw std::invalid_argument("partners: factorization is not of p-1");
    detail::require_partner_bound(primes, p, "partners");
    std::vector<PartnerCertificate> out;
    if (!conv.admits(p)) return out;
    pm1.for_each_divisor([&](u64 d) {
        u64 up = p + d;
        if (conv.admits(up) && primes.is_prime_unchecked(up)) out.push_back({p, d, up, Direction::above});
        u64 down = p - d;
        if (down >= 2 && conv.admits(down) && primes.is_prime_unchecked(down))
            out.push_back({p, d, down, Direction::below});
    });
    std::ranges::sort(out, {}, &PartnerCertificate::q);
    return out;
}

inline std::vector<PartnerCertificate> partners(const Tables& tables, u64 p, Convention conv = {}) {
    detail::require_prime(tables.primes, p, "partners");
    return partners(tables.primes, p, tables.factors.factorize(p - 1), conv);
}

/// Certificate with minimal d (above before below), or nullopt when p is
/// asymmetric.
inline std::optional<PartnerCertificate> is_symmetric(const PrimalityTable& primes, u64 p, const Factorization& pm1,
                                                      Convention conv = {}) {
    auto all = partners(primes, p, pm1, conv);
    if (all.empty()) return std::nullopt;
    return *std::ranges::min_element(all, [](const auto& a, const auto& b) {
        if (a.d != b.d) return a.d < b.d;
        return a.direction == Direction::above && b.direction == Direction::below;
    });
}

inline std::optional<PartnerCertificate> is_symmetric(const Tables& tables, u64 p, Convention conv = {}) {
    detail::require_prime(tables.primes, p, "is_symmetric");
    return is_symmetric(tables.primes, p, tables.factors.factorize(p - 1), conv);
}

struct CountOptions {
    unsigned threads = 0;
    u64 segment_span = u64{1} << 20;  ///< integers per counting task
    PartnerScope scope = PartnerScope::unbounded;
    std::function<void(u64 done, u64 total)> progress;
};

/// S(x) for every x in `limits` (any order). One pass over the primes up to
/// max(limits); p-1 is factored segment by segment, so no factor table is
/// needed. Requires primes.bound() >= 2*max(limits) - 1 (or >= max(limits)
/// under PartnerScope::within_limit).
inline std::vector<u64> count_symmetric_at(const PrimalityTable& primes, std::span<const u64> limits,
                                           Convention conv = {}, const CountOptions& opts = {}) {
    std::vector<u64> result(limits.size(), 0);
    if (limits.empty()) return result;
    if (opts.segment_span == 0) throw std::invalid_argument("count_symmetric: segment span must be positive");

    if (opts.scope == PartnerScope::within_limit && limits.size() > 1) {
        for (std::size_t i = 0; i < limits.size(); ++i)
            result[i] = count_symmetric_at(primes, limits.subspan(i, 1), conv, opts).front();
        return result;
    }

    std::vector<u64> xs(limits.begin(), limits.end());
    std::ranges::sort(xs);
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    const u64 xmax = xs.back();
    require_input_range(xmax, "count_symmetric limit");
    const u64 need = opts.scope == PartnerScope::unbounded ? required_primality_bound(xmax) : std::max<u64>(xmax, 2);
    if (need > primes.bound())
        throw bound_error("count_symmetric: S(" + std::to_string(xmax) + ") needs primality up to 2x-1", need);
    if (xmax < 2) return result;

    const u64 tasks = (xmax - 1 + opts.segment_span - 1) / opts.segment_span;  // over [2, xmax]
    std::vector<std::vector<u64>> partial(tasks, std::vector<u64>(xs.size(), 0));
    std::atomic<u64> done{0};
    parallel_for(tasks, opts.threads, [&](std::size_t t) {
        const u64 lo = 2 + t * opts.segment_span;
        const u64 hi = std::min(xmax + 1, lo + opts.segment_span);
        auto& counts = partial[t];
        std::size_t slot = std::size_t(std::ranges::lower_bound(xs, lo) - xs.begin());
        for_each_prime_with_predecessor(primes, lo, hi, [&](u64 p, const Factorization& pm1) {
            while (xs[slot] < p) ++slot;
            bool found;
            if (opts.scope == PartnerScope::unbounded) {
                found = detail::has_partner(primes, p, pm1, conv);
            } else {
                found = conv.admits(p) && pm1.any_divisor([&](u64 d) {
                    u64 up = p + d, down = p - d;
                    return (up <= xmax && conv.admits(up) && primes.is_prime_unchecked(up)) ||
                           (down >= 2 && conv.admits(down) && primes.is_prime_unchecked(down));
                });
            }
            if (found) ++counts[slot];
        });
        if (opts.progress) opts.progress(done.fetch_add(1) + 1, tasks);
    });

    std::vector<u64> merged(xs.size(), 0);
    for (const auto& counts : partial)
        for (std::size_t i = 0; i < xs.size(); ++i) merged[i] += counts[i];
    std::partial_sum(merged.begin(), merged.end(), merged.begin());
    for (std::size_t i = 0; i < limits.size(); ++i)
        result[i] = merged[std::size_t(std::ranges::lower_bound(xs, limits[i]) - xs.begin())];
    return result;
}

/// S(x): the number of symmetric primes p <= x.
inline u64 count_symmetric(const PrimalityTable& primes, u64 x, Convention conv = {}, const CountOptions& opts = {}) {
    const u64 limits[] = {x};
    return count_symmetric_at(primes, limits, conv, opts).front();
}

/// Row indices of the survey: 10, 100, ... <= max_n, plus max_n itself when
/// it is not a power of ten.
inline std::vector<u64> survey_indices(u64 max_n) {
    if (max_n == 0) throw std::invalid_argument("tabulate: max_n must be positive");
    std::vector<u64> ns;
    for (u64 n = 10; n <= max_n; n *= 10) {
        ns.push_back(n);
        if (n > max_input / 10) break;
    }
    if (ns.empty() || ns.back() != max_n) ns.push_back(max_n);
    return ns;
}

/// Rows (n, p_n, S(p_n), S(p_n)/n, 1/(log p_n)^eta).
inline std::vector<SurveyRow> tabulate(const PrimalityTable& primes, u64 max_n, Convention conv = {},
                                       const CountOptions& opts = {}) {
    auto ns = survey_indices(max_n);
    std::vector<SurveyRow> rows;
    std::vector<u64> ps;
    for (u64 n : ns) ps.push_back(primes.nth_prime(n));
    auto counts = count_symmetric_at(primes, ps, conv, opts);
    for (std::size_t i = 0; i < ns.size(); ++i)
        rows.push_back({ns[i], ps[i], counts[i], double(counts[i]) / double(ns[i]), model_value(ps[i])});
    return rows;
}

/// Eisenstein lattice count S(q, p) = sum_{i=1}^{(p-1)/2} floor(q i / p):
/// interior lattice points strictly below the diagonal of the
/// (p/2) x (q/2) rectangle.
inline u64 eisenstein_count(u64 q, u64 p) {
    if (p == q) throw std::invalid_argument("eisenstein_count: p and q must differ");
    if (p % 2 == 0 || q % 2 == 0 || !is_prime_u64(p) || !is_prime_u64(q))
        throw std::invalid_argument("eisenstein_count: p and q must be odd primes");
    u64 total = 0;
    for (u64 i = 1; i <= (p - 1) / 2; ++i) total += u64(u128(q) * i / p);
    return total;
}

/// Legendre symbol (a / p) by Euler's criterion.
inline int legendre(i64 a, u64 p) {
    if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
        throw std::invalid_argument("legendre: p must be an odd prime");
    i64 r = a % i64(p);
    u64 residue = u64(r < 0 ? r + i64(p) : r);
    if (residue == 0) return 0;
    return powmod(residue, (p - 1) / 2, p) == 1 ? 1 : -1;
}

} // namespace symprime
