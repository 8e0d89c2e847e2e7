// Minimal library usage: sieve, count symmetric primes, and print a few
// partner certificates.

#include <cstdio>

#include "symprime/symprime.hpp"

int main() {
    using namespace symprime;

    const u64 x = 1000;
    auto tables = build_tables(required_primality_bound(x), x);

    for (u64 p : {3, 23, 29, 113}) {
        auto cert = is_symmetric(tables, p, Convention::odd_only());
        if (cert)
            std::printf("%llu: partner %llu (d = %llu)\n", (unsigned long long)p, (unsigned long long)cert->q,
                        (unsigned long long)cert->d);
        else
            std::printf("%llu: asymmetric\n", (unsigned long long)p);
    }

    u64 s = count_symmetric(tables.primes, x, Convention::odd_only());
    u64 pi = tables.primes.prime_count(x);
    std::printf("S(%llu) = %llu of pi = %llu primes; model 1/(log x)^eta = %.4f\n", (unsigned long long)x,
                (unsigned long long)s, (unsigned long long)pi, model_value(x));
}
