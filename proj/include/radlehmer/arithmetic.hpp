#pragma once

// Exact 64-bit arithmetic: primality, factorization and the multiplicative
// functions phi, lambda, rad and kappa = rad(phi).

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radlehmer {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when a request would exceed the configured memory budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default memory budget in bytes: room for a 2^31-entry smallest-prime-factor
/// table. Overridden by the RADLEHMER_MEMORY_BUDGET environment variable.
u64 default_memory_budget();

struct PrimePower {
    u64 prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime decomposition of a positive integer. Primes are strictly increasing
/// and the product of the prime powers equals value().
class Factorization {
public:
    Factorization() = default;

    /// Builds from unsorted, possibly repeated prime factors.
    static Factorization from_primes(u64 value, std::vector<u64> primes);

    u64 value() const { return value_; }
    std::span<const PrimePower> factors() const { return factors_; }
    std::size_t omega() const { return factors_.size(); }
    bool squarefree() const;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    u64 value_ = 1;
    std::vector<PrimePower> factors_;
};

/// Smallest-prime-factor table over 2..limit. Immutable once built.
class SpfTable {
public:
    /// Throws BudgetError when 4 * (limit + 1) bytes exceed `budget_bytes`,
    /// std::invalid_argument when limit < 2.
    static SpfTable build(u64 limit, u64 budget_bytes = default_memory_budget());

    u64 limit() const { return limit_; }
    bool contains(u64 n) const { return n >= 2 && n <= limit_; }
    /// Smallest prime factor of n, 2 <= n <= limit().
    u64 spf(u64 n) const { return spf_[n]; }
    bool is_prime(u64 n) const { return contains(n) && spf_[n] == n; }
    /// Primes in ascending order up to limit().
    std::vector<u64> primes() const;

    static constexpr u64 bytes_for(u64 limit) { return (limit + 1) * sizeof(std::uint32_t); }

private:
    u64 limit_ = 0;
    std::vector<std::uint32_t> spf_;
};

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }
u64 powmod(u64 base, u64 exp, u64 m);

/// Deterministic for every 64-bit input.
bool is_prime(u64 n);
bool is_prime(u64 n, const SpfTable* table);

/// Primes up to `limit` by a plain Eratosthenes sieve.
std::vector<u64> primes_up_to(u64 limit);

/// Throws std::invalid_argument for n = 0.
Factorization factorize(u64 n, const SpfTable* table = nullptr);

u64 rad(const Factorization& f);
u64 euler_phi(const Factorization& f);
u64 carmichael_lambda(const Factorization& f);
/// rad(phi(n)).
u64 kappa(const Factorization& f, const SpfTable* table = nullptr);
/// rad(lambda(n)); always equal to kappa().
u64 kappa_via_lambda(const Factorization& f, const SpfTable* table = nullptr);

/// True iff every prime dividing m also divides a, i.e. rad(m) | a.
/// Works without factoring m. m = 0 is rejected by returning false.
bool rad_divides(u64 m, u64 a);

/// exp(log x * logloglog x / loglog x). Throws std::domain_error for x < 20.
double bound_L(double x);

} // namespace radlehmer
