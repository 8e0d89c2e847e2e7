#pragma once

/// @file sieve.hpp
/// @brief Primality, prime indexing and factorization tables.
///
/// Memory model:
///   - PrimalityTable stores one bit per odd integer in [1, bound], i.e. about
///     bound/16 bytes, plus one 64-bit checkpoint per 512 odd entries
///     (bound/128 bytes).
///   - FactorTable stores a 32-bit smallest prime factor for every integer in
///     [0, bound], about 4*bound bytes. Primes are stored as 0 so any bound
///     whose table fits in memory is representable.
/// The two tables are built independently and usually to different bounds:
/// partner searches need primality up to 2x-1 but factorizations only up to x.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "symprime/error.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/parallel.hpp"

namespace symprime {

struct PrimePower {
    u64 prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical factorization of a positive integer. Fixed capacity: no integer
/// below 2^64 has more than 15 distinct prime factors.
class Factorization {
public:
    static constexpr std::size_t capacity = 15;

    Factorization() = default;
    explicit Factorization(u64 n) : n_(n) {}

    u64 n() const noexcept { return n_; }
    std::span<const PrimePower> factors() const noexcept { return {data_.data(), size_}; }
    bool empty() const noexcept { return size_ == 0; }

    /// Appends a prime power; primes must arrive in increasing order.
    void push(u64 prime, std::uint32_t exponent) {
        if (size_ == capacity) throw std::logic_error("Factorization capacity exceeded");
        if (size_ > 0 && data_[size_ - 1].prime >= prime)
            throw std::logic_error("Factorization primes must be strictly increasing");
        data_[size_++] = {prime, exponent};
    }

    unsigned small_omega() const noexcept { return size_; }

    unsigned big_omega() const noexcept {
        unsigned total = 0;
        for (const auto& pp : factors()) total += pp.exponent;
        return total;
    }

    /// Largest prime factor; 0 for n = 1.
    u64 p_plus() const noexcept { return size_ == 0 ? 0 : data_[size_ - 1].prime; }

    u64 divisor_count() const noexcept {
        u64 count = 1;
        for (const auto& pp : factors()) count *= pp.exponent + 1;
        return count;
    }

    /// Calls f(d) for every divisor d of n, in no particular order.
    template <typename F>
    void for_each_divisor(F&& f) const {
        visit_divisors(0, 1, f);
    }

    /// True when pred(d) holds for some divisor d; stops at the first hit.
    template <typename Pred>
    bool any_divisor(Pred&& pred) const {
        return any_divisor_from(0, 1, pred);
    }

    /// All divisors in increasing order.
    std::vector<u64> divisors() const {
        std::vector<u64> out;
        out.reserve(divisor_count());
        for_each_divisor([&](u64 d) { out.push_back(d); });
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Factorization& a, const Factorization& b) {
        return a.n_ == b.n_ && std::ranges::equal(a.factors(), b.factors());
    }

private:
    template <typename F>
    void visit_divisors(std::size_t index, u64 acc, F& f) const {
        if (index == size_) {
            f(acc);
            return;
        }
        const auto& pp = data_[index];
        for (std::uint32_t e = 0;; ++e) {
            visit_divisors(index + 1, acc, f);
            if (e == pp.exponent) break;
            acc *= pp.prime;
        }
    }

    template <typename Pred>
    bool any_divisor_from(std::size_t index, u64 acc, Pred& pred) const {
        if (index == size_) return pred(acc);
        const auto& pp = data_[index];
        for (std::uint32_t e = 0;; ++e) {
            if (any_divisor_from(index + 1, acc, pred)) return true;
            if (e == pp.exponent) return false;
            acc *= pp.prime;
        }
    }

    u64 n_ = 1;
    std::array<PrimePower, capacity> data_{};
    std::uint8_t size_ = 0;
};

struct BuildOptions {
    unsigned threads = 0;                         ///< 0 = hardware concurrency
    u64 segment_entries = u64{1} << 18;          ///< odd entries per sieve segment
    u64 memory_budget = 0;                        ///< bytes; 0 = physical memory
    std::function<void(u64 done, u64 total)> progress;  ///< called once per finished segment
};

namespace detail {

inline u64 physical_memory_bytes() {
    long pages = ::sysconf(_SC_PHYS_PAGES);
    long page_size = ::sysconf(_SC_PAGE_SIZE);
    if (pages <= 0 || page_size <= 0) return ~u64{0};
    return u64(pages) * u64(page_size);
}

inline void check_budget(u64 bytes, const BuildOptions& opts, const char* what) {
    u64 budget = opts.memory_budget ? opts.memory_budget : physical_memory_bytes();
    if (bytes > budget)
        throw resource_error(std::string(what) + " exceeds the memory budget of " + std::to_string(budget) + " bytes",
                             bytes);
}

template <typename T>
std::vector<T> allocate(std::size_t count, T value, const char* what) {
    try {
        return std::vector<T>(count, value);
    } catch (const std::bad_alloc&) {
        throw resource_error(std::string("cannot allocate ") + what, u64(count) * sizeof(T));
    } catch (const std::length_error&) {
        throw resource_error(std::string("cannot allocate ") + what, u64(count) * sizeof(T));
    }
}

/// Plain sieve for the sieving primes up to `limit`.
inline std::vector<u64> small_primes_up_to(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

} // namespace detail

/// Bit table of odd composites over [1, bound]. Bit i of the table stands for
/// the odd integer 2i+1; a set bit means "not prime". Immutable after build.
class PrimalityTable {
public:
    static constexpr u64 entries_per_checkpoint = 512;

    PrimalityTable() = default;

    static PrimalityTable build(u64 bound, const BuildOptions& opts = {}) {
        if (bound < 2) throw std::invalid_argument("PrimalityTable: bound must be >= 2");
        require_input_range(bound, "PrimalityTable bound");
        if (opts.segment_entries == 0 || opts.segment_entries % 64 != 0)
            throw std::invalid_argument("PrimalityTable: segment size must be a positive multiple of 64");

        const u64 entries = (bound + 1) / 2;
        const u64 words = (entries + 63) / 64;
        detail::check_budget(words * 8 + words, opts, "primality table");

        PrimalityTable t;
        t.bound_ = bound;
        t.composite_ = detail::allocate<u64>(words, 0, "primality table");

        const auto sieving = detail::small_primes_up_to(isqrt(bound));
        const u64 segment = opts.segment_entries;
        const u64 segments = (entries + segment - 1) / segment;
        std::atomic<u64> done{0};

        parallel_for(segments, opts.threads, [&](std::size_t s) {
            const u64 e0 = s * segment;
            const u64 e1 = std::min(entries, e0 + segment);
            const u64 lo = 2 * e0 + 1;  // first odd number in segment
            const u64 hi = 2 * e1 - 1;  // last odd number in segment
            u64* bits = t.composite_.data();
            for (u64 q : sieving) {
                if (q == 2) continue;
                if (q * q > hi) break;
                u64 start = std::max(q * q, (lo + q - 1) / q * q);
                if (start % 2 == 0) start += q;
                for (u64 e = (start - 1) / 2; e < e1; e += q) bits[e >> 6] |= u64{1} << (e & 63);
            }
            if (opts.progress) opts.progress(done.fetch_add(1) + 1, segments);
        });

        t.composite_[0] |= 1;  // 1 is not prime
        if (entries % 64) t.composite_.back() |= ~u64{0} << (entries % 64);
        t.rebuild_checkpoints();
        return t;
    }

    /// Reassembles a table from its raw bit array (cache loading).
    static PrimalityTable from_words(u64 bound, std::vector<u64> words) {
        if (bound < 2) throw std::invalid_argument("PrimalityTable: bound must be >= 2");
        const u64 entries = (bound + 1) / 2;
        if (words.size() != (entries + 63) / 64)
            throw std::invalid_argument("PrimalityTable: word count does not match bound");
        PrimalityTable t;
        t.bound_ = bound;
        t.composite_ = std::move(words);
        t.rebuild_checkpoints();
        return t;
    }

    u64 bound() const noexcept { return bound_; }
    std::span<const u64> words() const noexcept { return composite_; }

    bool is_prime(u64 n) const {
        if (n > bound_) throw bound_error("is_prime: " + std::to_string(n) + " is beyond the primality table", n);
        return is_prime_unchecked(n);
    }

    /// Caller guarantees n <= bound().
    bool is_prime_unchecked(u64 n) const noexcept {
        if (n % 2 == 0) return n == 2;
        u64 e = n >> 1;
        return !((composite_[e >> 6] >> (e & 63)) & 1);
    }

    /// pi(x) for x <= bound().
    u64 prime_count(u64 x) const {
        if (x > bound_) throw bound_error("prime_count: " + std::to_string(x) + " is beyond the primality table", x);
        if (x < 2) return 0;
        return 1 + odd_primes_in_prefix((x - 1) / 2 + 1);
    }

    u64 prime_count() const { return prime_count(bound_); }

    /// p_n with p_1 = 2.
    u64 nth_prime(u64 n) const {
        if (n == 0) throw std::invalid_argument("nth_prime: n must be positive");
        if (n == 1) return 2;
        const u64 target = n - 1;  // rank among odd primes
        const u64 total = checkpoints_.back();
        if (target > total)
            throw bound_error("nth_prime: p_" + std::to_string(n) + " is beyond the primality table",
                              nth_prime_upper_estimate(n));
        // last checkpoint block whose prefix count is < target
        auto it = std::lower_bound(checkpoints_.begin(), checkpoints_.end(), target);
        u64 block = u64(it - checkpoints_.begin()) - 1;
        u64 seen = checkpoints_[block];
        for (u64 w = block * (entries_per_checkpoint / 64); w < composite_.size(); ++w) {
            u64 primes = ~composite_[w];
            u64 c = u64(std::popcount(primes));
            if (seen + c >= target) {
                for (u64 k = target - seen; k > 1; --k) primes &= primes - 1;
                return 2 * (w * 64 + u64(std::countr_zero(primes))) + 1;
            }
            seen += c;
        }
        throw std::logic_error("nth_prime: checkpoint inconsistency");
    }

    /// Calls f(p) for every prime p in [lo, hi], ascending; hi <= bound().
    template <typename F>
    void for_each_prime(u64 lo, u64 hi, F&& f) const {
        if (hi > bound_) throw bound_error("for_each_prime: range is beyond the primality table", hi);
        if (lo <= 2 && hi >= 2) f(u64{2});
        if (hi < 3) return;
        u64 first = std::max<u64>(lo, 3) | 1;
        if (first > hi) return;
        u64 e0 = first >> 1, e1 = (hi - 1) / 2 + 1;
        for (u64 w = e0 >> 6; w <= (e1 - 1) >> 6; ++w) {
            u64 primes = ~composite_[w];
            if (w == (e0 >> 6)) primes &= ~u64{0} << (e0 & 63);
            if (w == ((e1 - 1) >> 6) && (e1 & 63)) primes &= ~(~u64{0} << (e1 & 63));
            while (primes) {
                f(2 * (w * 64 + u64(std::countr_zero(primes))) + 1);
                primes &= primes - 1;
            }
        }
    }

    std::vector<u64> primes_in(u64 lo, u64 hi) const {
        std::vector<u64> out;
        for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); });
        return out;
    }

    /// Upper bound for p_n (Rosser: p_n < n(ln n + ln ln n) for n >= 6).
    static u64 nth_prime_upper_estimate(u64 n) {
        if (n < 6) return 13;
        double ln = std::log(double(n));
        return u64(double(n) * (ln + std::log(ln))) + 1;
    }

private:
    void rebuild_checkpoints() {
        const u64 per = entries_per_checkpoint / 64;
        const u64 blocks = (composite_.size() + per - 1) / per;
        checkpoints_.assign(blocks + 1, 0);
        for (u64 b = 0; b < blocks; ++b) {
            u64 c = 0;
            for (u64 w = b * per; w < std::min<u64>((b + 1) * per, composite_.size()); ++w)
                c += u64(std::popcount(~composite_[w]));
            checkpoints_[b + 1] = checkpoints_[b] + c;
        }
    }

    // Odd primes among entries [0, len).
    u64 odd_primes_in_prefix(u64 len) const {
        const u64 per = entries_per_checkpoint / 64;
        u64 block = len / entries_per_checkpoint;
        u64 count = checkpoints_[block];
        u64 w = block * per;
        for (; w < len / 64; ++w) count += u64(std::popcount(~composite_[w]));
        if (len % 64) count += u64(std::popcount(~composite_[w] & ~(~u64{0} << (len % 64))));
        return count;
    }

    u64 bound_ = 0;
    std::vector<u64> composite_;
    std::vector<u64> checkpoints_;  // odd primes before each block of 512 entries
};

/// Smallest-prime-factor table over [0, bound]. Immutable after build.
class FactorTable {
public:
    FactorTable() = default;

    static FactorTable build(u64 bound, const BuildOptions& opts = {}) {
        if (bound < 2) throw std::invalid_argument("FactorTable: bound must be >= 2");
        require_input_range(bound, "FactorTable bound");
        detail::check_budget(checked_mul(bound + 1, 4), opts, "factor table");
        FactorTable t;
        t.bound_ = bound;
        t.spf_ = detail::allocate<std::uint32_t>(bound + 1, 0, "factor table");
        const u64 root = isqrt(bound);
        for (u64 i = 2; i <= root; ++i) {
            if (t.spf_[i] != 0) continue;
            for (u64 j = i * i; j <= bound; j += i)
                if (t.spf_[j] == 0) t.spf_[j] = std::uint32_t(i);
        }
        return t;
    }

    u64 bound() const noexcept { return bound_; }

    /// Smallest prime factor of n >= 2.
    u64 smallest_prime_factor(u64 n) const {
        check(n, "smallest_prime_factor");
        if (n == 1) throw std::invalid_argument("smallest_prime_factor: n must be >= 2");
        return spf_[n] == 0 ? n : spf_[n];
    }

    Factorization factorize(u64 n) const {
        check(n, "factorize");
        Factorization f(n);
        while (n > 1) {
            u64 p = spf_[n] == 0 ? n : spf_[n];
            std::uint32_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.push(p, e);
        }
        return f;
    }

    std::vector<u64> divisors(u64 n) const { return factorize(n).divisors(); }
    u64 p_plus(u64 n) const { return factorize(n).p_plus(); }
    unsigned big_omega(u64 n) const { return factorize(n).big_omega(); }
    unsigned small_omega(u64 n) const { return factorize(n).small_omega(); }

private:
    void check(u64 n, const char* what) const {
        if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be positive");
        if (n > bound_)
            throw bound_error(std::string(what) + ": " + std::to_string(n) + " is beyond the factor table", n);
    }

    u64 bound_ = 0;
    std::vector<std::uint32_t> spf_;
};

struct Tables {
    PrimalityTable primes;
    FactorTable factors;
};

/// Builds both tables; the factor table may be smaller (0 = same as bound).
inline Tables build_tables(u64 bound, u64 factor_bound = 0, const BuildOptions& opts = {}) {
    if (bound < 2) throw std::invalid_argument("build_tables: bound must be >= 2");
    if (factor_bound == 0) factor_bound = bound;
    return Tables{PrimalityTable::build(bound, opts), FactorTable::build(std::max<u64>(factor_bound, 2), opts)};
}

/// Factors p-1 for every prime p in [lo, hi) without a factor table, sieving
/// with the primes up to sqrt(hi). Calls f(p, factorization of p-1) for each
/// prime in ascending order. Requires hi - 1 <= primes.bound().
template <typename F>
void for_each_prime_with_predecessor(const PrimalityTable& primes, u64 lo, u64 hi, F&& f) {
    if (hi <= lo) return;
    if (hi - 1 > primes.bound())
        throw bound_error("for_each_prime_with_predecessor: range is beyond the primality table", hi - 1);
    std::vector<u64> ps = primes.primes_in(lo, hi - 1);
    if (ps.empty()) return;

    // slot[m - base] = index into ps of the prime m + 1
    const u64 base = ps.front() - 1;
    const u64 span_len = ps.back() - base + 1;
    constexpr std::uint32_t none = ~std::uint32_t{0};
    std::vector<std::uint32_t> slot(span_len, none);
    std::vector<u64> rem(ps.size());
    std::vector<Factorization> fac(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
        slot[ps[i] - 1 - base] = std::uint32_t(i);
        rem[i] = ps[i] - 1;
        fac[i] = Factorization(ps[i] - 1);
    }
    const u64 last = ps.back() - 1;
    const auto sieving = primes.primes_in(2, isqrt(last));
    for (u64 q : sieving) {
        if (q * q > last) break;
        u64 m = (base + q - 1) / q * q;
        for (; m <= last; m += q) {
            std::uint32_t s = slot[m - base];
            if (s == none) continue;
            std::uint32_t e = 0;
            while (rem[s] % q == 0) {
                rem[s] /= q;
                ++e;
            }
            fac[s].push(q, e);
        }
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (rem[i] > 1) fac[i].push(rem[i], 1);
        f(ps[i], std::as_const(fac[i]));
    }
}

} // namespace symprime
