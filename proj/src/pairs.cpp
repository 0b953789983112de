#include "radlehmer/enumerate.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace radlehmer {

PairConstruction prime_pair_construction(u64 limit_m) {
    if (limit_m < 2) throw std::invalid_argument("prime pair construction needs limit_m >= 2");
    u64 top = 0;
    if (limit_m > (~u64{0} >> 2) || __builtin_mul_overflow(limit_m + 1, 2 * limit_m + 1, &top))
        throw std::overflow_error("(m + 1)(2m + 1) overflows for m = " + std::to_string(limit_m));
    PairConstruction out;
    for (u64 m = 2; m <= limit_m; m += 2) {
        const u64 q = 2 * m + 1;
        if (!is_prime(m + 1) || !is_prime(q)) continue;
        const u64 product = (m + 1) * q;
        PrimePair pair{m, m + 1, q, product, is_k_member(product)};
        if (pair.member) ++out.verified;
        out.pairs.push_back(pair);
        if (m > limit_m - 2) break;
    }
    return out;
}

double k2_bound(double x) {
    if (!(x >= 20.0)) throw std::domain_error("k2_bound needs x >= 20");
    const double lx = std::log(x);
    return std::sqrt(x) * std::exp(2.0 * std::sqrt(2.0 * lx) / std::log(lx));
}

K2Scan k2_pair_scan(u64 x, u64 memory_budget) {
    if (x < 4) throw std::invalid_argument("k2_pair_scan needs x >= 4");
    const auto start = std::chrono::steady_clock::now();
    const u64 half = std::max<u64>(x / 2, 2);
    const u64 table_bytes = SpfTable::bytes_for(half);
    // Rough pi(x/2) upper bound times map entry cost.
    const double prime_estimate = 1.26 * static_cast<double>(half) / std::log(static_cast<double>(half) + 2.0) + 16.0;
    if (static_cast<double>(table_bytes) + prime_estimate * 48.0 > static_cast<double>(memory_budget))
        throw BudgetError("k2_pair_scan up to " + std::to_string(x) + " exceeds memory budget of " +
                          std::to_string(memory_budget) + " bytes");
    const SpfTable table = SpfTable::build(half, memory_budget);

    std::unordered_map<u64, std::vector<u64>> buckets;
    for (u64 p = 3; p <= half; p += 2)
        if (table.is_prime(p)) buckets[rad(factorize(p - 1, &table))].push_back(p);

    u64 count = 0;
    for (const auto& [key, primes] : buckets) {
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const u64 limit = x / primes[i];
            for (std::size_t j = i + 1; j < primes.size() && primes[j] <= limit; ++j) ++count;
        }
    }

    K2Scan out;
    out.report.tag = ClassTag::K_d(2);
    out.report.thresholds = {x};
    out.report.counts = {count};
    out.bound = x >= 20 ? k2_bound(static_cast<double>(x)) : 0.0;
    out.report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace radlehmer
