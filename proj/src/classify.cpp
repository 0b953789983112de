#include "radlehmer/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace radlehmer {

namespace {

void require_n(u64 n) {
    if (n < 2) throw std::invalid_argument("classes are defined for n >= 2, got " + std::to_string(n));
}

bool is_prime_factorization(const Factorization& f) {
    return f.omega() == 1 && f.factors()[0].exponent == 1;
}

// Prime factorization of phi(n) as prime -> exponent.
std::map<u64, std::uint32_t> phi_factors(const Factorization& f, const SpfTable* table) {
    std::map<u64, std::uint32_t> out;
    for (const auto& pp : f.factors()) {
        if (pp.exponent > 1) out[pp.prime] += pp.exponent - 1;
        if (pp.prime == 2) continue;
        const Factorization below = factorize(pp.prime - 1, table);
        for (const auto& q : below.factors()) out[q.prime] += q.exponent;
    }
    return out;
}

std::uint32_t valuation(u64 m, u64 q) {
    std::uint32_t v = 0;
    while (m % q == 0) {
        m /= q;
        ++v;
    }
    return v;
}

} // namespace

std::optional<std::uint32_t> lehmer_order(const Factorization& f, const SpfTable* table) {
    require_n(f.value());
    const u64 m = f.value() - 1;
    std::uint32_t k = 1;
    for (const auto& [q, e] : phi_factors(f, table)) {
        std::uint32_t v = valuation(m, q);
        if (v == 0) return std::nullopt;
        k = std::max(k, (e + v - 1) / v);
    }
    return k;
}

std::optional<std::uint32_t> lehmer_order(u64 n, const SpfTable* table) {
    require_n(n);
    return lehmer_order(factorize(n, table), table);
}

Classification classify(const Factorization& f, const SpfTable* table) {
    const u64 n = f.value();
    require_n(n);
    Classification c;
    c.n = n;
    c.is_prime = is_prime_factorization(f);
    c.is_composite = !c.is_prime;
    c.omega = static_cast<std::uint32_t>(f.omega());
    c.squarefree = f.squarefree();
    c.phi = euler_phi(f);
    c.lambda = carmichael_lambda(f);
    c.kappa = kappa(f, table);
    c.satisfies_kappa_condition = (n - 1) % c.kappa == 0;
    c.in_K = c.is_composite && c.satisfies_kappa_condition;
    c.is_carmichael = c.is_composite && (n - 1) % c.lambda == 0;
    c.is_lehmer = c.is_composite && (n - 1) % c.phi == 0;
    c.lehmer_order = lehmer_order(f, table);
    return c;
}

Classification classify(u64 n, const SpfTable* table) {
    require_n(n);
    return classify(factorize(n, table), table);
}

bool is_k_member(u64 n, const SpfTable* table) {
    require_n(n);
    const Factorization f = factorize(n, table);
    if (is_prime_factorization(f) || !f.squarefree()) return false;
    return std::all_of(f.factors().begin(), f.factors().end(),
                       [&](const PrimePower& pp) { return rad_divides(pp.prime - 1, n - 1); });
}

bool is_carmichael_korselt(u64 n, const SpfTable* table) {
    require_n(n);
    const Factorization f = factorize(n, table);
    if (is_prime_factorization(f) || !f.squarefree()) return false;
    return std::all_of(f.factors().begin(), f.factors().end(),
                       [&](const PrimePower& pp) { return (n - 1) % (pp.prime - 1) == 0; });
}

bool is_carmichael_lambda(u64 n, const SpfTable* table) {
    require_n(n);
    const Factorization f = factorize(n, table);
    return !is_prime_factorization(f) && (n - 1) % carmichael_lambda(f) == 0;
}

bool is_lehmer(u64 n, const SpfTable* table) {
    require_n(n);
    const Factorization f = factorize(n, table);
    return !is_prime_factorization(f) && (n - 1) % euler_phi(f) == 0;
}

bool k2_pair_check(u64 p, u64 q) {
    if (p == q) throw std::invalid_argument("k2_pair_check needs distinct primes");
    if (!is_prime(p) || !is_prime(q)) throw std::invalid_argument("k2_pair_check arguments must be prime");
    return rad(factorize(p - 1)) == rad(factorize(q - 1));
}

bool is_squarefull(u64 n, const SpfTable* table) {
    if (n == 0) throw std::invalid_argument("is_squarefull needs n >= 1");
    const Factorization f = factorize(n, table);
    return std::all_of(f.factors().begin(), f.factors().end(),
                       [](const PrimePower& pp) { return pp.exponent >= 2; });
}

u64 squarefull_from_seed(u64 d) {
    if (d == 0) throw std::invalid_argument("squarefull seed must be >= 1");
    u64 r = rad(factorize(d));
    u64 out = 0;
    if (__builtin_mul_overflow(d, r, &out))
        throw std::overflow_error("d * rad(d) overflows 64 bits for d = " + std::to_string(d));
    return out;
}

} // namespace radlehmer
