#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "symprime/sieve.hpp"
#include "symprime/sieve_cache.hpp"

using namespace symprime;

namespace {

const Tables& shared_tables() {
    static const Tables t = build_tables(200'000, 100'000);
    return t;
}

std::vector<std::pair<u64, unsigned>> as_pairs(const Factorization& f) {
    std::vector<std::pair<u64, unsigned>> out;
    for (const auto& pp : f.factors()) out.emplace_back(pp.prime, pp.exponent);
    return out;
}

} // namespace

TEST(PrimalityTable, SmallBounds) {
    auto t100 = PrimalityTable::build(100);
    EXPECT_EQ(t100.prime_count(100), 25u);

    auto t2 = PrimalityTable::build(2);
    EXPECT_EQ(t2.prime_count(), 1u);
    EXPECT_TRUE(t2.is_prime(2));
    EXPECT_EQ(t2.nth_prime(1), 2u);

    auto t30 = PrimalityTable::build(30);
    std::vector<u64> flagged;
    for (u64 n = 0; n <= 30; ++n)
        if (t30.is_prime(n)) flagged.push_back(n);
    EXPECT_EQ(flagged, (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
}

TEST(PrimalityTable, RejectsBadBounds) {
    EXPECT_THROW(PrimalityTable::build(1), std::invalid_argument);
    EXPECT_THROW(PrimalityTable::build(0), std::invalid_argument);
    EXPECT_THROW(PrimalityTable::build((u64{1} << 62) + 1), std::invalid_argument);
    BuildOptions tiny;
    tiny.memory_budget = 1024;
    EXPECT_THROW(PrimalityTable::build(1'000'000, tiny), resource_error);
}

TEST(PrimalityTable, IsPrimeBasicsAndRange) {
    const auto& t = shared_tables().primes;
    EXPECT_TRUE(t.is_prime(2));
    EXPECT_FALSE(t.is_prime(1));
    EXPECT_FALSE(t.is_prime(0));
    EXPECT_TRUE(t.is_prime(97));
    EXPECT_THROW(t.is_prime(t.bound() + 1), std::out_of_range);
    EXPECT_THROW(t.is_prime(t.bound() + 1), bound_error);
}

TEST(PrimalityTable, AgreesWithTrialDivision) {
    const auto& t = shared_tables().primes;
    for (u64 n = 0; n <= 100'000; ++n) ASSERT_EQ(t.is_prime(n), oracle::is_prime(n)) << n;
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<u64> pick(0, t.bound());
    for (int i = 0; i < 10'000; ++i) {
        u64 n = pick(rng);
        ASSERT_EQ(t.is_prime(n), oracle::is_prime(n)) << n;
    }
}

TEST(PrimalityTable, SegmentationDoesNotChangeResult) {
    BuildOptions small;
    small.segment_entries = 64;
    small.threads = 3;
    BuildOptions large;
    large.segment_entries = u64{1} << 20;
    for (u64 bound : {2ull, 3ull, 64ull, 127ull, 128ull, 129ull, 1000ull, 65'537ull}) {
        auto a = PrimalityTable::build(bound, small);
        auto b = PrimalityTable::build(bound, large);
        ASSERT_TRUE(std::ranges::equal(a.words(), b.words())) << bound;
        ASSERT_EQ(a.prime_count(), b.prime_count());
    }
    BuildOptions odd_size;
    odd_size.segment_entries = 100;
    EXPECT_THROW(PrimalityTable::build(1000, odd_size), std::invalid_argument);
}

TEST(PrimalityTable, CountAndNthPrimeAreInverse) {
    const auto& t = shared_tables().primes;
    EXPECT_EQ(t.prime_count(t.bound()), t.prime_count());
    EXPECT_EQ(t.nth_prime(1), 2u);
    EXPECT_EQ(t.nth_prime(10), 29u);
    EXPECT_EQ(t.nth_prime(25), 97u);
    u64 total = t.prime_count();
    for (u64 n = 1; n <= total; ++n) ASSERT_EQ(t.prime_count(t.nth_prime(n)), n);
    u64 pi = 0;
    for (u64 x = 0; x <= 5000; ++x) {
        if (oracle::is_prime(x)) ++pi;
        ASSERT_EQ(t.prime_count(x), pi) << x;
    }
}

TEST(PrimalityTable, NthPrimeBeyondTable) {
    auto t = PrimalityTable::build(100);
    EXPECT_EQ(t.nth_prime(25), 97u);
    try {
        t.nth_prime(26);
        FAIL() << "expected bound_error";
    } catch (const bound_error& e) {
        EXPECT_GE(e.required(), 101u);
    }
    EXPECT_THROW(t.nth_prime(0), std::invalid_argument);
}

TEST(PrimalityTable, ForEachPrimeRanges) {
    const auto& t = shared_tables().primes;
    EXPECT_EQ(t.primes_in(0, 30), (std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_EQ(t.primes_in(14, 23), (std::vector<u64>{17, 19, 23}));
    EXPECT_TRUE(t.primes_in(24, 28).empty());
    EXPECT_EQ(t.primes_in(2, 2), (std::vector<u64>{2}));
    for (u64 lo : {0ull, 1ull, 63ull, 64ull, 127ull, 128ull, 1000ull})
        for (u64 hi : {lo, lo + 1, lo + 63, lo + 200, lo + 1025}) {
            std::vector<u64> expect;
            for (u64 n = lo; n <= hi; ++n)
                if (oracle::is_prime(n)) expect.push_back(n);
            ASSERT_EQ(t.primes_in(lo, hi), expect) << lo << ".." << hi;
        }
}

TEST(FactorTable, Examples) {
    const auto& f = shared_tables().factors;
    EXPECT_EQ(as_pairs(f.factorize(22)), (std::vector<std::pair<u64, unsigned>>{{2, 1}, {11, 1}}));
    EXPECT_TRUE(f.factorize(1).empty());
    EXPECT_EQ(as_pairs(f.factorize(5040)), (std::vector<std::pair<u64, unsigned>>{{2, 4}, {3, 2}, {5, 1}, {7, 1}}));
    EXPECT_EQ(f.divisors(22), (std::vector<u64>{1, 2, 11, 22}));
    EXPECT_EQ(f.divisors(1), (std::vector<u64>{1}));
    EXPECT_EQ(f.divisors(12), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
    EXPECT_EQ(f.p_plus(1), 0u);
    EXPECT_EQ(f.p_plus(22), 11u);
    EXPECT_EQ(f.p_plus(1024), 2u);
    EXPECT_EQ(f.big_omega(12), 3u);
    EXPECT_EQ(f.small_omega(12), 2u);
    EXPECT_EQ(f.big_omega(1), 0u);
    EXPECT_EQ(f.small_omega(1), 0u);
    EXPECT_EQ(f.big_omega(8), 3u);
    EXPECT_EQ(f.small_omega(8), 1u);
}

TEST(FactorTable, Errors) {
    const auto& f = shared_tables().factors;
    EXPECT_THROW(f.factorize(0), std::invalid_argument);
    EXPECT_THROW(f.factorize(f.bound() + 1), std::out_of_range);
    EXPECT_THROW(f.divisors(0), std::invalid_argument);
    EXPECT_THROW(f.p_plus(f.bound() + 1), std::out_of_range);
    EXPECT_THROW(FactorTable::build(1), std::invalid_argument);
}

TEST(FactorTable, PropertiesUpTo1e5) {
    const auto& f = shared_tables().factors;
    for (u64 n = 1; n <= 100'000; ++n) {
        auto fac = f.factorize(n);
        ASSERT_EQ(as_pairs(fac), oracle::factor(n)) << n;
        u64 product = 1, expected_divisors = 1, max_prime = 0;
        for (const auto& pp : fac.factors()) {
            for (unsigned e = 0; e < pp.exponent; ++e) product *= pp.prime;
            expected_divisors *= pp.exponent + 1;
            max_prime = std::max(max_prime, pp.prime);
        }
        ASSERT_EQ(product, n);
        auto divs = fac.divisors();
        ASSERT_EQ(divs.size(), expected_divisors);
        ASSERT_TRUE(std::ranges::is_sorted(divs));
        for (u64 d : divs) ASSERT_EQ(n % d, 0u);
        ASSERT_EQ(fac.p_plus(), max_prime);
        if (n >= 2) {
            ASSERT_LE(fac.small_omega(), fac.big_omega());
            ASSERT_LE(u64{1} << fac.big_omega(), n);  // Omega(n) <= log2 n
            ASSERT_EQ(f.smallest_prime_factor(n), fac.factors().front().prime);
        }
    }
}

TEST(SegmentedFactorization, MatchesFactorTable) {
    const auto& t = shared_tables();
    u64 seen = 0;
    for (auto [lo, hi] : {std::pair<u64, u64>{2, 3}, {2, 1000}, {999, 5000}, {70'001, 100'001}}) {
        for_each_prime_with_predecessor(t.primes, lo, hi, [&](u64 p, const Factorization& pm1) {
            ASSERT_EQ(pm1, t.factors.factorize(p - 1)) << p;
            ++seen;
        });
    }
    EXPECT_EQ(seen, 1 + t.primes.prime_count(999) + (t.primes.prime_count(4999) - t.primes.prime_count(998)) +
                        (t.primes.prime_count(100'000) - t.primes.prime_count(70'000)));
}

TEST(SieveCache, RoundTripAndMismatch) {
    auto dir = std::filesystem::temp_directory_path() / "symprime_cache_test";
    std::filesystem::remove_all(dir);
    auto built = load_or_build_primality(10'007, dir);
    auto file = cache_file_for(dir, 10'007);
    ASSERT_TRUE(std::filesystem::exists(file));

    std::ifstream in(file, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    EXPECT_EQ(std::string(magic, 4), "SYMP");
    unsigned char ver[4];
    in.read(reinterpret_cast<char*>(ver), 4);
    EXPECT_EQ(ver[0], cache_format_version);
    EXPECT_EQ(ver[1] | ver[2] | ver[3], 0);
    in.close();

    auto loaded = load_primality_cache(file, 10'007);
    ASSERT_TRUE(loaded.has_value());
    EXPECT_TRUE(std::ranges::equal(loaded->words(), built.words()));
    EXPECT_EQ(loaded->prime_count(), built.prime_count());
    EXPECT_EQ(loaded->nth_prime(100), 541u);

    EXPECT_FALSE(load_primality_cache(file, 10'009).has_value());

    // corrupt the version byte: must be rejected, then rebuilt
    {
        std::fstream io(file, std::ios::binary | std::ios::in | std::ios::out);
        io.seekp(4);
        io.put(char(99));
    }
    EXPECT_FALSE(load_primality_cache(file, 10'007).has_value());
    auto rebuilt = load_or_build_primality(10'007, dir);
    EXPECT_EQ(rebuilt.prime_count(), built.prime_count());
    EXPECT_TRUE(load_primality_cache(file, 10'007).has_value());

    // truncated file
    std::filesystem::resize_file(file, std::filesystem::file_size(file) - 8);
    EXPECT_FALSE(load_primality_cache(file, 10'007).has_value());
    std::filesystem::remove_all(dir);
}

TEST(NumberTheory, MillerRabinAndFactoring) {
    for (u64 n = 0; n < 20'000; ++n) ASSERT_EQ(is_prime_u64(n), oracle::is_prime(n)) << n;
    EXPECT_TRUE(is_prime_u64(2'305'843'009'213'693'951ull));  // 2^61 - 1
    EXPECT_FALSE(is_prime_u64(3'215'031'751ull));              // strong pseudoprime to 2,3,5,7
    EXPECT_EQ(distinct_prime_divisors(600'851'475'143ull), (std::vector<u64>{71, 839, 1471, 6857}));
    EXPECT_EQ(distinct_prime_divisors(1), std::vector<u64>{});
    EXPECT_EQ(distinct_prime_divisors(u64{1} << 40), std::vector<u64>{2});
    EXPECT_EQ(distinct_prime_divisors(1'000'000'007ull * 998'244'353ull),
              (std::vector<u64>{998'244'353ull, 1'000'000'007ull}));
    EXPECT_THROW(checked_mul(u64{1} << 33, u64{1} << 33), std::overflow_error);
    EXPECT_EQ(isqrt(99), 9u);
    EXPECT_EQ(isqrt(100), 10u);
    EXPECT_EQ(isqrt(~u64{0}), 4'294'967'295u);
}
