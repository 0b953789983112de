#include "radlehmer/classify.hpp"

#include "naive_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace radlehmer;

TEST_CASE("classify worked examples") {
    const Classification c561 = classify(561);
    CHECK(c561.is_carmichael);
    CHECK(c561.in_K);
    CHECK(c561.lehmer_order == 2u);
    CHECK_FALSE(c561.is_lehmer);
    CHECK(c561.phi == 320);
    CHECK(c561.lambda == 80);
    CHECK(c561.kappa == 10);
    CHECK(c561.omega == 3);

    const Classification c15 = classify(15);
    CHECK(c15.in_K);
    CHECK_FALSE(c15.is_carmichael);
    CHECK(c15.lehmer_order == 3u);

    const Classification c17 = classify(17);
    CHECK(c17.is_prime);
    CHECK_FALSE(c17.is_composite);
    CHECK_FALSE(c17.in_K);
    CHECK(c17.satisfies_kappa_condition);
    CHECK(c17.lehmer_order == 1u);

    const Classification c2 = classify(2);
    CHECK(c2.is_prime);
    CHECK(c2.kappa == 1);
    CHECK_FALSE(c2.in_K);

    CHECK_THROWS_AS(classify(1), std::invalid_argument);
    CHECK_THROWS_AS(classify(0), std::invalid_argument);
}

TEST_CASE("predicates on named examples") {
    CHECK(is_k_member(15));
    CHECK_FALSE(is_k_member(9));
    CHECK(is_k_member(561));
    CHECK_FALSE(is_k_member(17));

    CHECK(is_carmichael_korselt(561));
    CHECK_FALSE(is_carmichael_korselt(15));
    CHECK_FALSE(is_carmichael_korselt(6));

    CHECK(is_carmichael_lambda(561));
    CHECK_FALSE(is_carmichael_lambda(15));
    CHECK_FALSE(is_carmichael_lambda(4));

    CHECK_FALSE(is_lehmer(561));
    for (u64 p : {2, 3, 5, 7, 101, 65537}) CHECK_FALSE(is_lehmer(p));

    CHECK(lehmer_order(15) == 3u);
    CHECK(lehmer_order(561) == 2u);
    CHECK_FALSE(lehmer_order(21).has_value());

    CHECK_THROWS_AS(is_k_member(1), std::invalid_argument);
    CHECK_THROWS_AS(lehmer_order(0), std::invalid_argument);
}

TEST_CASE("k2_pair_check") {
    CHECK(k2_pair_check(3, 5));
    CHECK_FALSE(k2_pair_check(3, 7));
    CHECK(k2_pair_check(7, 13));
    CHECK_THROWS_AS(k2_pair_check(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(k2_pair_check(4, 7), std::invalid_argument);
}

TEST_CASE("squarefull helpers") {
    CHECK(is_squarefull(36));
    CHECK(is_squarefull(1));
    CHECK_FALSE(is_squarefull(12));
    CHECK(squarefull_from_seed(6) == 36);
    CHECK(squarefull_from_seed(1) == 1);
    CHECK_THROWS_AS(squarefull_from_seed(0), std::invalid_argument);
    CHECK_THROWS_AS(squarefull_from_seed(u64{1} << 63 | 1), std::overflow_error);

    // d -> d rad(d) is injective on 1..10^4 and hits exactly the squarefull
    // numbers up to the largest value it reaches from small seeds.
    std::set<u64> image;
    for (u64 d = 1; d <= 10'000; ++d) {
        const u64 v = squarefull_from_seed(d);
        REQUIRE(image.insert(v).second);
    }
    // Any squarefull s has seed d <= s / rad(s) <= s / 2, so every s <= 20000
    // comes from a seed <= 10^4.
    std::set<u64> brute;
    for (u64 n = 1; n <= 20'000; ++n)
        if (naive::is_squarefull(n)) brute.insert(n);
    std::set<u64> low(image.begin(), image.upper_bound(20'000));
    CHECK(low == brute);
    for (u64 n = 1; n <= 20'000; ++n) REQUIRE(is_squarefull(n) == naive::is_squarefull(n));
}

TEST_CASE("lehmer_order is minimal: valuation check per prime") {
    const SpfTable t = SpfTable::build(200'000);
    for (u64 n = 2; n <= 200'000; ++n) {
        const auto k = lehmer_order(n, &t);
        const Factorization phi_f = factorize(euler_phi(factorize(n, &t)), &t);
        bool exists = true;
        std::uint32_t need = 1;
        for (const auto& pp : phi_f.factors()) {
            std::uint32_t v = 0;
            for (u64 m = n - 1; m % pp.prime == 0; m /= pp.prime) ++v;
            if (v == 0) {
                exists = false;
                break;
            }
            // smallest k with k * v >= e
            std::uint32_t kk = 1;
            while (kk * v < pp.exponent) ++kk;
            need = std::max(need, kk);
        }
        REQUIRE_MESSAGE(k.has_value() == exists, "n = " << n);
        if (!exists) continue;
        REQUIRE(*k == need);
        // phi | (n-1)^k and, for k > 1, phi does not divide (n-1)^(k-1)
        for (const auto& pp : phi_f.factors()) {
            std::uint32_t v = 0;
            for (u64 m = n - 1; m % pp.prime == 0; m /= pp.prime) ++v;
            REQUIRE(u64{*k} * v >= pp.exponent);
        }
        if (*k > 1) {
            bool short_by_one = false;
            for (const auto& pp : phi_f.factors()) {
                std::uint32_t v = 0;
                for (u64 m = n - 1; m % pp.prime == 0; m /= pp.prime) ++v;
                short_by_one = short_by_one || u64{*k - 1} * v < pp.exponent;
            }
            REQUIRE(short_by_one);
        }
    }
}

TEST_CASE("classification invariants and subset chain on 2..10^6") {
    const SpfTable t = SpfTable::build(1'000'000);
    std::size_t K = 0, C = 0, L = 0;
    for (u64 n = 2; n <= 1'000'000; ++n) {
        const Classification c = classify(n, &t);
        REQUIRE(c.is_prime == !c.is_composite);
        REQUIRE(c.lehmer_order.has_value() == c.satisfies_kappa_condition);
        REQUIRE(c.is_lehmer == (c.is_composite && c.lehmer_order == 1u));
        if (c.in_K) {
            ++K;
            REQUIRE(c.squarefree);
            REQUIRE(std::gcd(n, c.phi) == 1);
            REQUIRE(is_k_member(n, &t));
        } else {
            REQUIRE_FALSE(is_k_member(n, &t));
        }
        if (c.is_carmichael) {
            ++C;
            REQUIRE(c.in_K);
            REQUIRE(c.omega >= 3);
        }
        if (c.is_lehmer) {
            ++L;
            REQUIRE(c.is_carmichael);
        }
        if (c.is_composite) REQUIRE(is_carmichael_korselt(n, &t) == is_carmichael_lambda(n, &t));
        REQUIRE(c.kappa == kappa_via_lambda(factorize(n, &t), &t));
    }
    CHECK(L == 0);
    CHECK(C == 43);
    CHECK(K == 1559);
}

TEST_CASE("k2_pair_check equals is_k_member(pq) on random prime pairs") {
    std::mt19937_64 rng(99);
    auto random_prime = [&](u64 lo, u64 hi) {
        for (;;) {
            u64 n = lo + rng() % (hi - lo + 1);
            if (is_prime(n)) return n;
        }
    };
    int agree_true = 0;
    for (int i = 0; i < 10'000; ++i) {
        u64 p, q;
        if (i % 2 == 0) {
            p = random_prime(3, 31'622);
            q = random_prime(3, 1'000'000'000 / p);
        } else {
            // Same-radical draws: p - 1 and q - 1 both of the form 2^a 3^b.
            do {
                p = (u64{1} << (1 + rng() % 12)) * static_cast<u64>(std::pow(3, rng() % 8)) + 1;
                q = (u64{1} << (1 + rng() % 12)) * static_cast<u64>(std::pow(3, 1 + rng() % 8)) + 1;
            } while (!is_prime(p) || !is_prime(q) || p == q || p > 1'000'000'000 / q);
        }
        if (p == q) continue;
        const bool check = k2_pair_check(p, q);
        REQUIRE_MESSAGE(check == is_k_member(p * q), "p=" << p << " q=" << q);
        agree_true += check;
    }
    CHECK(agree_true > 1000);
}
