#pragma once

/// @file gcdsets.hpp
/// @brief Gcd-difference sets, admissibility of linear-form tuples, and the
/// input conditions of the prime-tuple theorems used to build cliques of
/// symmetric primes.
///
/// A gcd-difference set A has gcd(a, b) = |a - b| for all distinct a, b.
/// For a < b this is the same as (b - a) | a, since gcd(a, b) = gcd(a, b - a).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "symprime/error.hpp"
#include "symprime/graph.hpp"
#include "symprime/number_theory.hpp"
#include "symprime/sieve.hpp"

namespace symprime {

struct GcdDiffSet {
    std::vector<u64> elements;  ///< ascending, distinct

    friend bool operator==(const GcdDiffSet&, const GcdDiffSet&) = default;
};

namespace detail {

// Lexicographically smallest (k)-subset of `candidates` (ascending) that is
// pairwise compatible; compatible(a, b) is called with a < b.
template <typename Compatible>
bool smallest_compatible_subset(const std::vector<u64>& candidates, std::size_t k, std::size_t start,
                                std::vector<u64>& chosen, Compatible& compatible) {
    if (chosen.size() == k) return true;
    for (std::size_t i = start; i + (k - chosen.size()) <= candidates.size(); ++i) {
        u64 c = candidates[i];
        if (!std::ranges::all_of(chosen, [&](u64 a) { return compatible(a, c); })) continue;
        chosen.push_back(c);
        if (smallest_compatible_subset(candidates, k, i + 1, chosen, compatible)) return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace detail

/// True iff gcd(a, b) = |a - b| for every pair, using the literal gcd.
inline bool verify_gcd_diff_set(std::span<const u64> elements) {
    std::vector<u64> sorted(elements.begin(), elements.end());
    std::ranges::sort(sorted);
    if (!sorted.empty() && sorted.front() == 0) throw std::invalid_argument("verify_gcd_diff_set: elements must be positive");
    if (std::ranges::adjacent_find(sorted) != sorted.end())
        throw std::invalid_argument("verify_gcd_diff_set: elements must be distinct");
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (std::gcd(sorted[i], sorted[j]) != sorted[j] - sorted[i]) return false;
    return true;
}

/// The k-element gcd-difference set with the smallest maximum (ties broken
/// lexicographically) among sets with max <= max_element.
inline std::optional<GcdDiffSet> search_gcd_diff_set(std::size_t k, u64 max_element) {
    if (k < 2) throw std::invalid_argument("search_gcd_diff_set: k must be >= 2");
    require_input_range(max_element, "search_gcd_diff_set bound");
    auto compatible = [](u64 a, u64 b) { return a % (b - a) == 0; };
    std::vector<u64> candidates, chosen;
    for (u64 top = 2; top <= max_element; ++top) {
        candidates.clear();
        for (u64 a = top / 2; a < top; ++a)  // (top - a) | a forces a >= top / 2
            if (a > 0 && a % (top - a) == 0) candidates.push_back(a);
        chosen.clear();
        if (detail::smallest_compatible_subset(candidates, k - 1, 0, chosen, compatible)) {
            chosen.push_back(top);
            return GcdDiffSet{chosen};
        }
    }
    return std::nullopt;
}

/// Primes with pairwise gcd(p - 1, q - 1) = |p - q|.
inline bool verify_prime_gcd_diff_set(std::span<const u64> elements) {
    std::vector<u64> sorted(elements.begin(), elements.end());
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end()) return false;
    for (u64 p : sorted)
        if (!is_prime_u64(p)) return false;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j)
            if (std::gcd(sorted[i] - 1, sorted[j] - 1) != sorted[j] - sorted[i]) return false;
    return true;
}

/// Smallest-max set of k primes, all > min_element and <= prime_bound, with
/// pairwise gcd(p - 1, q - 1) = |p - q|. Windowed scan: the members below a
/// prime M are M - d for divisors d of M - 1.
inline std::optional<GcdDiffSet> search_prime_gcd_diff_set(const Tables& tables, std::size_t k, u64 min_element,
                                                           u64 prime_bound) {
    if (k < 2) throw std::invalid_argument("search_prime_gcd_diff_set: k must be >= 2");
    if (prime_bound > tables.primes.bound())
        throw bound_error("search_prime_gcd_diff_set: primality table below prime bound", prime_bound);
    if (prime_bound > 2 && prime_bound - 1 > tables.factors.bound())
        throw bound_error("search_prime_gcd_diff_set: factor table below prime bound - 1", prime_bound - 1);
    auto compatible = [](u64 a, u64 b) { return (a - 1) % (b - a) == 0; };
    std::optional<GcdDiffSet> found;
    std::vector<u64> candidates, chosen;
    if (prime_bound < 3) return found;
    tables.primes.for_each_prime(std::max<u64>(min_element + 1, 3), prime_bound, [&](u64 top) {
        if (found) return;
        candidates.clear();
        tables.factors.factorize(top - 1).for_each_divisor([&](u64 d) {
            if (d < top && top - d > min_element && top - d >= 2 && tables.primes.is_prime_unchecked(top - d))
                candidates.push_back(top - d);
        });
        std::ranges::sort(candidates);
        chosen.clear();
        if (detail::smallest_compatible_subset(candidates, k - 1, 0, chosen, compatible)) {
            chosen.push_back(top);
            found = GcdDiffSet{chosen};
        }
    });
    return found;
}

/// Same search through a prebuilt graph window: the answer is an m-clique
/// with every member > min_element.
inline std::optional<GcdDiffSet> search_prime_gcd_diff_set(const SymGraph& graph, std::size_t k, u64 min_element) {
    if (k < 2) throw std::invalid_argument("search_prime_gcd_diff_set: k must be >= 2");
    if (!graph.convention().include_two && min_element < 2)
        throw std::invalid_argument("search_prime_gcd_diff_set: odd-only graph cannot see sets containing 2");
    std::optional<Clique> best;
    for (const auto& c : find_cliques(graph, k)) {
        if (c.members.front() <= min_element) continue;
        if (!best || c.members.back() < best->members.back() ||
            (c.members.back() == best->members.back() && c < *best))
            best = c;
    }
    if (!best) return std::nullopt;
    return GcdDiffSet{best->members};
}

/// The form g*t + h.
struct LinearForm {
    i64 g = 0;
    i64 h = 0;

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Outcome of the residue scan at one prime.
struct PrimeCheck {
    u64 prime = 0;
    std::optional<u64> avoiding_residue;       ///< t mod prime with no form divisible by prime
    std::optional<std::size_t> vanishing_form; ///< form with prime | g and prime | h (covers every t)
    std::vector<std::size_t> covering_form;    ///< residue t -> a form vanishing at t, when all are covered
};

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<PrimeCheck> checks;
    std::string skipped_primes_note;
};

namespace detail {

inline u64 residue_of(const LinearForm& f, u64 t, u64 p) {
    i128 v = (i128(f.g) * i128(t) + i128(f.h)) % i128(p);
    return u64(v < 0 ? v + i128(p) : v);
}

inline PrimeCheck scan_prime(std::span<const LinearForm> forms, u64 p) {
    PrimeCheck check{p, std::nullopt, std::nullopt, {}};
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (forms[i].g % i64(p) == 0 && forms[i].h % i64(p) == 0) {
            check.vanishing_form = i;
            return check;
        }
    // Each remaining form kills at most one class, so an avoiding residue
    // appears within the first forms.size() + 1 classes.
    std::vector<std::size_t> covering;
    for (u64 t = 0; t < p; ++t) {
        auto hit = std::ranges::find_if(forms, [&](const LinearForm& f) { return residue_of(f, t, p) == 0; });
        if (hit == forms.end()) {
            check.avoiding_residue = t;
            return check;
        }
        covering.push_back(std::size_t(hit - forms.begin()));
    }
    check.covering_form = std::move(covering);
    return check;
}

} // namespace detail

/// A tuple is admissible when no prime divides the product of the forms for
/// every t. Checked primes: every p <= k, every prime dividing some g_i, and
/// for constant forms every prime dividing h_i. Any other prime p exceeds k
/// and divides no g_i, so each form vanishes on exactly one class mod p and
/// k < p forms cannot cover all of them.
inline AdmissibilityReport is_admissible(std::span<const LinearForm> forms) {
    if (forms.empty()) throw std::invalid_argument("is_admissible: empty tuple");
    AdmissibilityReport report;
    const u64 k = forms.size();

    std::vector<u64> primes;
    for (u64 p = 2; p <= k; ++p)
        if (is_prime_u64(p)) primes.push_back(p);
    for (const auto& f : forms) {
        if (f.g == 0 && f.h == 0) {
            report.admissible = false;
            report.skipped_primes_note = "a form is identically zero, so every prime is a fixed divisor";
            return report;
        }
        u64 source = f.g != 0 ? abs_u64(f.g) : abs_u64(f.h);
        for (u64 p : distinct_prime_divisors(source)) primes.push_back(p);
    }
    std::ranges::sort(primes);
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    for (u64 p : primes) {
        auto check = detail::scan_prime(forms, p);
        if (!check.avoiding_residue) report.admissible = false;
        report.checks.push_back(std::move(check));
    }
    report.skipped_primes_note = "primes p > " + std::to_string(k) +
                                 " not dividing any g_i were skipped: each form covers one class mod p and " +
                                 std::to_string(k) + " forms cannot cover p classes";
    return report;
}

struct MaynardTaoReport {
    bool passed = true;
    std::vector<std::size_t> nonpositive_g;                         ///< indices with g_i <= 0
    std::vector<std::pair<std::size_t, std::size_t>> zero_determinants;  ///< i < j with g_i h_j = g_j h_i
    AdmissibilityReport admissibility;
};

/// Positivity of every g_i, g_i h_j - g_j h_i != 0 for all i < j, and
/// admissibility.
inline MaynardTaoReport maynard_tao_hypothesis_check(std::span<const LinearForm> forms) {
    MaynardTaoReport report;
    if (forms.empty()) {
        report.passed = false;
        report.admissibility.admissible = false;
        report.admissibility.skipped_primes_note = "empty tuple";
        return report;
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
        if (forms[i].g <= 0) report.nonpositive_g.push_back(i);
    for (std::size_t i = 0; i < forms.size(); ++i)
        for (std::size_t j = i + 1; j < forms.size(); ++j)
            if (i128(forms[i].g) * forms[j].h - i128(forms[j].g) * forms[i].h == 0)
                report.zero_determinants.emplace_back(i, j);
    report.admissibility = is_admissible(forms);
    report.passed = report.nonpositive_g.empty() && report.zero_determinants.empty() && report.admissibility.admissible;
    return report;
}

struct BftbReport {
    bool passed = true;
    std::vector<std::pair<std::size_t, std::size_t>> duplicates;
    AdmissibilityReport admissibility;
    bool g_positive = true;
    std::vector<std::size_t> not_coprime_to_g;  ///< j with gcd(g, b_j) > 1
};

/// Distinct b_j, admissible {t + b_j}, and gcd(g, b_1 ... b_k) = 1 checked
/// one factor at a time.
inline BftbReport bftb_input_check(std::span<const i64> b, i64 g) {
    BftbReport report;
    if (b.empty()) {
        report.passed = false;
        report.admissibility.admissible = false;
        report.admissibility.skipped_primes_note = "empty tuple";
        return report;
    }
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (b[i] == b[j]) report.duplicates.emplace_back(i, j);
    std::vector<LinearForm> forms;
    for (i64 v : b) forms.push_back({1, v});
    report.admissibility = is_admissible(forms);
    report.g_positive = g > 0;
    for (std::size_t j = 0; j < b.size(); ++j)
        if (std::gcd(abs_u64(g), abs_u64(b[j])) != 1) report.not_coprime_to_g.push_back(j);
    report.passed = report.duplicates.empty() && report.admissibility.admissible && report.g_positive &&
                    report.not_coprime_to_g.empty();
    return report;
}

/// For a gcd-difference set b of odd primes, g = prod(b_i - 1) is coprime
/// to prod(b_j). Evaluated as gcd(b_i - 1, b_j) == 1 for every i, j.
inline bool coprimality_lemma_check(std::span<const u64> b) {
    if (b.empty() || !verify_prime_gcd_diff_set(b))
        throw std::invalid_argument("coprimality_lemma_check: input is not a prime gcd-difference set");
    if (std::ranges::find(b, u64{2}) != b.end())
        throw std::invalid_argument("coprimality_lemma_check: set must consist of odd primes");
    for (u64 bi : b)
        for (u64 bj : b)
            if (std::gcd(bi - 1, bj) != 1) return false;
    return true;
}

} // namespace symprime
