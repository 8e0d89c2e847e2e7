#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "symprime/gcdsets.hpp"

using namespace symprime;

namespace {

const Tables& tables() {
    static const Tables t = build_tables(20'000, 20'000);
    return t;
}

bool literal_gcd_set(const std::vector<u64>& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (std::gcd(a[i], a[j]) != (a[i] > a[j] ? a[i] - a[j] : a[j] - a[i])) return false;
    return true;
}

// Smallest-max k-subset of [1, bound] by plain enumeration.
std::optional<std::vector<u64>> brute_smallest_set(std::size_t k, u64 bound) {
    std::optional<std::vector<u64>> best;
    std::vector<u64> cur;
    auto rec = [&](auto&& self, u64 next) -> void {
        if (cur.size() == k) {
            if (!best || cur.back() < best->back() || (cur.back() == best->back() && cur < *best)) best = cur;
            return;
        }
        for (u64 v = next; v <= bound; ++v) {
            if (best && v > best->back()) break;
            bool ok = true;
            for (u64 a : cur) ok = ok && std::gcd(a, v) == v - a;
            if (!ok) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return best;
}

} // namespace

TEST(GcdDiffSet, Verify) {
    EXPECT_TRUE(verify_gcd_diff_set(std::vector<u64>{6, 8, 9, 12}));
    EXPECT_TRUE(verify_gcd_diff_set(std::vector<u64>{12, 9, 8, 6}));
    EXPECT_TRUE(verify_gcd_diff_set(std::vector<u64>{1, 2}));
    EXPECT_TRUE(verify_gcd_diff_set(std::vector<u64>{5}));
    EXPECT_TRUE(verify_gcd_diff_set(std::vector<u64>{}));
    EXPECT_FALSE(verify_gcd_diff_set(std::vector<u64>{6, 8, 10}));
    EXPECT_THROW(verify_gcd_diff_set(std::vector<u64>{0, 1}), std::invalid_argument);
    EXPECT_THROW(verify_gcd_diff_set(std::vector<u64>{3, 3}), std::invalid_argument);
}

TEST(GcdDiffSet, VerifyAgreesWithLiteralGcd) {
    for (u64 a = 1; a <= 40; ++a)
        for (u64 b = a + 1; b <= 40; ++b)
            for (u64 c = b + 1; c <= 40; ++c) {
                std::vector<u64> s{a, b, c};
                ASSERT_EQ(verify_gcd_diff_set(s), literal_gcd_set(s));
            }
}

TEST(GcdDiffSet, SearchSmallK) {
    EXPECT_EQ(search_gcd_diff_set(2, 10)->elements, (std::vector<u64>{1, 2}));
    EXPECT_EQ(search_gcd_diff_set(3, 10)->elements, (std::vector<u64>{2, 3, 4}));
    EXPECT_EQ(search_gcd_diff_set(4, 20)->elements, (std::vector<u64>{6, 8, 9, 12}));
    EXPECT_FALSE(search_gcd_diff_set(4, 11));
    EXPECT_THROW(search_gcd_diff_set(1, 10), std::invalid_argument);
}

TEST(GcdDiffSet, SearchMatchesEnumeration) {
    for (std::size_t k = 2; k <= 5; ++k) {
        auto got = search_gcd_diff_set(k, 60);
        auto want = brute_smallest_set(k, 60);
        ASSERT_EQ(got.has_value(), want.has_value()) << k;
        if (got) {
            EXPECT_EQ(got->elements, *want) << k;
        }
    }
}

TEST(GcdDiffSet, LargerSets) {
    auto five = search_gcd_diff_set(5, 100);
    ASSERT_TRUE(five);
    EXPECT_EQ(five->elements, (std::vector<u64>{36, 40, 42, 45, 48}));
    // No 6-element set fits below 240.
    EXPECT_FALSE(search_gcd_diff_set(6, 239));
    auto six = search_gcd_diff_set(6, 240);
    ASSERT_TRUE(six);
    EXPECT_TRUE(literal_gcd_set(six->elements));
    EXPECT_EQ(six->elements.back(), 240u);
}

TEST(GcdDiffSet, DilationClosure) {
    for (std::size_t k = 2; k <= 5; ++k) {
        auto s = search_gcd_diff_set(k, 100);
        ASSERT_TRUE(s);
        for (u64 c = 1; c <= 50; ++c) {
            std::vector<u64> scaled;
            for (u64 a : s->elements) scaled.push_back(c * a);
            ASSERT_TRUE(verify_gcd_diff_set(scaled)) << k << " x" << c;
        }
    }
}

TEST(PrimeGcdDiffSet, Verify) {
    EXPECT_TRUE(verify_prime_gcd_diff_set(std::vector<u64>{13, 17, 19}));
    EXPECT_TRUE(verify_prime_gcd_diff_set(std::vector<u64>{3, 5}));
    EXPECT_FALSE(verify_prime_gcd_diff_set(std::vector<u64>{13, 17, 23}));
    EXPECT_FALSE(verify_prime_gcd_diff_set(std::vector<u64>{9, 13}));
    EXPECT_FALSE(verify_prime_gcd_diff_set(std::vector<u64>{13, 13}));
}

TEST(PrimeGcdDiffSet, SearchAgreesWithGraphSearch) {
    auto g = build_graph(tables(), 20'000, Convention::odd_only());
    for (std::size_t k = 2; k <= 5; ++k)
        for (u64 min_element : {2ull, 10ull, 100ull}) {
            auto a = search_prime_gcd_diff_set(tables(), k, min_element, 20'000);
            auto b = search_prime_gcd_diff_set(g, k, min_element);
            ASSERT_EQ(a.has_value(), b.has_value()) << k << " " << min_element;
            if (a) {
                EXPECT_EQ(a->elements, b->elements);
                EXPECT_TRUE(verify_prime_gcd_diff_set(a->elements));
                EXPECT_GT(a->elements.front(), min_element);
            }
        }
    EXPECT_EQ(search_prime_gcd_diff_set(tables(), 3, 2, 100)->elements, (std::vector<u64>{13, 17, 19}));
    EXPECT_THROW(search_prime_gcd_diff_set(tables(), 3, 2, 30'000), std::out_of_range);
    EXPECT_THROW(search_prime_gcd_diff_set(g, 3, 1), std::invalid_argument);
}

TEST(Admissibility, Examples) {
    std::vector<LinearForm> consecutive{{1, 0}, {1, 1}};
    EXPECT_FALSE(is_admissible(consecutive).admissible);
    std::vector<LinearForm> three{{1, 3}, {1, 5}, {1, 7}};
    auto rep = is_admissible(three);
    EXPECT_FALSE(rep.admissible);
    auto at3 = std::ranges::find(rep.checks, u64{3}, &PrimeCheck::prime);
    ASSERT_NE(at3, rep.checks.end());
    EXPECT_FALSE(at3->avoiding_residue);
    EXPECT_EQ(at3->covering_form.size(), 3u);
    std::vector<LinearForm> twins{{1, 0}, {1, 2}};
    EXPECT_TRUE(is_admissible(twins).admissible);
    std::vector<LinearForm> constant{{0, 6}};
    EXPECT_FALSE(is_admissible(constant).admissible);
    std::vector<LinearForm> zero{{0, 0}};
    EXPECT_FALSE(is_admissible(zero).admissible);
    std::vector<LinearForm> vanish{{4, 2}, {1, 1}};
    EXPECT_FALSE(is_admissible(vanish).admissible);
    EXPECT_THROW(is_admissible(std::span<const LinearForm>{}), std::invalid_argument);
}

TEST(Admissibility, FormsAtPlusOneAlwaysAdmissible) {
    for (i64 a = 1; a <= 60; ++a)
        for (i64 b = a + 1; b <= 60; b += 7)
            for (i64 c = b + 1; c <= 60; c += 5) {
                std::vector<LinearForm> forms{{a, 1}, {b, 1}, {c, 1}};
                ASSERT_TRUE(is_admissible(forms).admissible);
            }
}

TEST(Admissibility, AgreesWithDirectResidueScan) {
    // Admissible iff no prime below 60 divides the product for every t;
    // larger primes cannot when the coefficients are small.
    auto small_primes = oracle::primes_up_to(60);
    for (i64 h1 = 0; h1 <= 12; ++h1)
        for (i64 h2 = h1 + 1; h2 <= 12; ++h2)
            for (i64 g = 1; g <= 4; ++g) {
                std::vector<LinearForm> forms{{1, h1}, {g, h2}, {2, 1}};
                bool expect = true;
                for (u64 p : small_primes) {
                    bool covered = true;
                    for (i64 t = 0; t < i64(p) && covered; ++t) {
                        bool hit = false;
                        for (const auto& f : forms) hit = hit || (f.g * t + f.h) % i64(p) == 0;
                        covered = hit;
                    }
                    if (covered) expect = false;
                }
                ASSERT_EQ(is_admissible(forms).admissible, expect) << h1 << " " << h2 << " " << g;
            }
}

TEST(MaynardTao, Hypotheses) {
    std::vector<LinearForm> proportional{{2, 2}, {1, 1}};
    auto rep = maynard_tao_hypothesis_check(proportional);
    EXPECT_FALSE(rep.passed);
    ASSERT_EQ(rep.zero_determinants.size(), 1u);

    std::vector<LinearForm> negative{{-1, 1}, {2, 1}};
    auto neg = maynard_tao_hypothesis_check(negative);
    EXPECT_FALSE(neg.passed);
    EXPECT_EQ(neg.nonpositive_g, (std::vector<std::size_t>{0}));

    std::vector<LinearForm> good{{12, 1}, {16, 1}, {18, 1}};
    EXPECT_TRUE(maynard_tao_hypothesis_check(good).passed);
    std::vector<LinearForm> bad3{{1, 3}, {1, 5}, {1, 7}};
    EXPECT_FALSE(maynard_tao_hypothesis_check(bad3).passed);
    EXPECT_FALSE(maynard_tao_hypothesis_check(std::span<const LinearForm>{}).passed);
}

TEST(Bftb, InputCheck) {
    std::vector<i64> b{0, 2, 6};
    auto ok = bftb_input_check(b, 1);
    EXPECT_TRUE(ok.passed);
    std::vector<i64> dup{0, 2, 2};
    EXPECT_FALSE(bftb_input_check(dup, 1).passed);
    std::vector<i64> three{3, 5, 7};
    EXPECT_FALSE(bftb_input_check(three, 1).passed);
    std::vector<i64> shared{1, 3};
    auto rep = bftb_input_check(shared, 6);
    EXPECT_FALSE(rep.passed);
    EXPECT_EQ(rep.not_coprime_to_g, (std::vector<std::size_t>{1}));
    EXPECT_FALSE(bftb_input_check(b, 0).g_positive);
}

TEST(CoprimalityLemma, HoldsForOddPrimeSets) {
    EXPECT_TRUE(coprimality_lemma_check(std::vector<u64>{13, 17, 19}));
    EXPECT_THROW(coprimality_lemma_check(std::vector<u64>{2, 3}), std::invalid_argument);
    EXPECT_THROW(coprimality_lemma_check(std::vector<u64>{13, 23}), std::invalid_argument);
    auto g = build_graph(tables(), 5000, Convention::odd_only());
    for (std::size_t m : {2u, 3u, 4u})
        for (const auto& c : find_cliques(g, m)) ASSERT_TRUE(coprimality_lemma_check(c.members));
}
