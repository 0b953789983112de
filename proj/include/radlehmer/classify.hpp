#pragma once

// Membership predicates for the composite classes relaxing Lehmer's totient
// condition, ordered by strength:
//
//   Lehmer      phi(n)    | n - 1
//   Carmichael  lambda(n) | n - 1     (Korselt: squarefree, p - 1 | n - 1)
//   k-Lehmer    phi(n)    | (n - 1)^k
//   K-member    kappa(n)  | n - 1     (kappa = rad phi = rad lambda)
//
// All classes exclude primes and 1.

#include "radlehmer/arithmetic.hpp"

#include <cstdint>
#include <optional>

namespace radlehmer {

struct Classification {
    u64 n = 0;
    bool is_prime = false;
    bool is_composite = false;
    std::uint32_t omega = 0;
    bool squarefree = false;
    u64 phi = 0;
    u64 lambda = 0;
    u64 kappa = 0;
    /// kappa(n) | n - 1; true for every prime.
    bool satisfies_kappa_condition = false;
    /// Composite and kappa(n) | n - 1.
    bool in_K = false;
    bool is_carmichael = false;
    bool is_lehmer = false;
    /// Minimal k >= 1 with phi(n) | (n - 1)^k.
    std::optional<std::uint32_t> lehmer_order;

    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Throws std::invalid_argument for n < 2.
Classification classify(u64 n, const SpfTable* table = nullptr);
Classification classify(const Factorization& f, const SpfTable* table = nullptr);

/// Composite with kappa(n) | n - 1. Rejects early on a repeated prime or on a
/// prime p | n with rad(p - 1) not dividing n - 1.
bool is_k_member(u64 n, const SpfTable* table = nullptr);
bool is_carmichael_korselt(u64 n, const SpfTable* table = nullptr);
bool is_carmichael_lambda(u64 n, const SpfTable* table = nullptr);
bool is_lehmer(u64 n, const SpfTable* table = nullptr);
std::optional<std::uint32_t> lehmer_order(u64 n, const SpfTable* table = nullptr);
std::optional<std::uint32_t> lehmer_order(const Factorization& f, const SpfTable* table = nullptr);

/// rad(p - 1) == rad(q - 1), which for distinct primes is equivalent to pq
/// being a K-member. Throws std::invalid_argument unless p, q are distinct
/// primes.
bool k2_pair_check(u64 p, u64 q);

/// 1 counts as squarefull. Throws std::invalid_argument for n = 0.
bool is_squarefull(u64 n, const SpfTable* table = nullptr);
/// d * rad(d). Throws std::invalid_argument for d = 0 and
/// std::overflow_error when the product exceeds 64 bits.
u64 squarefull_from_seed(u64 d);

} // namespace radlehmer
