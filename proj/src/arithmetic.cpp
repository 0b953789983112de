#include "radlehmer/arithmetic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace radlehmer {

namespace {

constexpr u64 kTrialBound = 1u << 16;

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = primes_up_to(kTrialBound);
    return primes;
}

// Strong probable-prime test to base a, n odd and > 2.
bool sprp(u64 n, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Brent's variant of Pollard rho. n must be odd, composite and free of
// factors below kTrialBound.
u64 find_factor(u64 n) {
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        constexpr u64 batch = 128;
        for (u64 r = 1; g == 1; r <<= 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            for (u64 k = 0; k < r && g == 1; k += batch) {
                ys = y;
                for (u64 i = 0; i < std::min(batch, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = find_factor(n);
    split_large(d, out);
    split_large(n / d, out);
}

} // namespace

u64 default_memory_budget() {
    constexpr u64 fallback = SpfTable::bytes_for((u64{1} << 31) - 1);
    const char* env = std::getenv("RADLEHMER_MEMORY_BUDGET");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') return fallback;
    return v;
}

Factorization Factorization::from_primes(u64 value, std::vector<u64> primes) {
    std::sort(primes.begin(), primes.end());
    Factorization f;
    f.value_ = value;
    for (u64 p : primes) {
        if (!f.factors_.empty() && f.factors_.back().prime == p)
            ++f.factors_.back().exponent;
        else
            f.factors_.push_back({p, 1});
    }
    return f;
}

bool Factorization::squarefree() const {
    return std::all_of(factors_.begin(), factors_.end(),
                       [](const PrimePower& pp) { return pp.exponent == 1; });
}

SpfTable SpfTable::build(u64 limit, u64 budget_bytes) {
    if (limit < 2) throw std::invalid_argument("SpfTable limit must be at least 2");
    if (limit >= (u64{1} << 32) || bytes_for(limit) > budget_bytes) {
        throw BudgetError("SpfTable for limit " + std::to_string(limit) + " needs " +
                          std::to_string(bytes_for(limit)) + " bytes, memory budget is " +
                          std::to_string(budget_bytes) +
                          " bytes");
    }
    SpfTable t;
    t.limit_ = limit;
    t.spf_.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (t.spf_[i] != 0) continue;
        t.spf_[i] = static_cast<std::uint32_t>(i);
        if (i > limit / i) continue;
        for (u64 j = i * i; j <= limit; j += i)
            if (t.spf_[j] == 0) t.spf_[j] = static_cast<std::uint32_t>(i);
    }
    return t;
}

std::vector<u64> SpfTable::primes() const {
    std::vector<u64> out;
    for (u64 i = 2; i <= limit_; ++i)
        if (spf_[i] == i) out.push_back(i);
    return out;
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    // Sinclair's bases: a complete witness set for n < 2^64.
    for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL})
        if (!sprp(n, a)) return false;
    return true;
}

bool is_prime(u64 n, const SpfTable* table) {
    if (table != nullptr && n <= table->limit()) return table->is_prime(n);
    return is_prime(n);
}

std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i > limit / i) continue;
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

Factorization factorize(u64 n, const SpfTable* table) {
    if (n == 0) throw std::invalid_argument("cannot factorize 0");
    std::vector<u64> primes;
    u64 rest = n;
    if (table != nullptr && rest <= table->limit()) {
        while (rest > 1) {
            u64 p = table->spf(rest);
            primes.push_back(p);
            rest /= p;
        }
        return Factorization::from_primes(n, std::move(primes));
    }
    for (u64 p : small_primes()) {
        if (p * p > rest) break;
        while (rest % p == 0) {
            primes.push_back(p);
            rest /= p;
        }
    }
    if (rest > 1) {
        if (rest < kTrialBound * kTrialBound)
            primes.push_back(rest);
        else
            split_large(rest, primes);
    }
    return Factorization::from_primes(n, std::move(primes));
}

u64 rad(const Factorization& f) {
    u64 r = 1;
    for (const auto& pp : f.factors()) r *= pp.prime;
    return r;
}

u64 euler_phi(const Factorization& f) {
    u64 phi = 1;
    for (const auto& pp : f.factors()) {
        phi *= pp.prime - 1;
        for (std::uint32_t i = 1; i < pp.exponent; ++i) phi *= pp.prime;
    }
    return phi;
}

u64 carmichael_lambda(const Factorization& f) {
    u64 lambda = 1;
    for (const auto& pp : f.factors()) {
        u64 term;
        if (pp.prime == 2 && pp.exponent >= 3) {
            term = u64{1} << (pp.exponent - 2);
        } else {
            term = pp.prime - 1;
            for (std::uint32_t i = 1; i < pp.exponent; ++i) term *= pp.prime;
        }
        lambda = std::lcm(lambda, term);
    }
    return lambda;
}

u64 kappa(const Factorization& f, const SpfTable* table) {
    // rad(phi) is the product of the primes dividing some p - 1, together
    // with every p that appears squared.
    std::vector<u64> primes;
    for (const auto& pp : f.factors()) {
        if (pp.exponent >= 2) primes.push_back(pp.prime);
        if (pp.prime == 2) continue;
        const Factorization below = factorize(pp.prime - 1, table);
        for (const auto& q : below.factors()) primes.push_back(q.prime);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    u64 r = 1;
    for (u64 q : primes) r *= q;
    return r;
}

u64 kappa_via_lambda(const Factorization& f, const SpfTable* table) {
    return rad(factorize(carmichael_lambda(f), table));
}

bool rad_divides(u64 m, u64 a) {
    if (m == 0) return false;
    u64 g = std::gcd(m, a);
    if (g == 1) return m == 1;
    // Strip every prime of g from m; what is left must be 1.
    for (u64 h = g; h > 1; h = std::gcd(m, h)) m /= h;
    return m == 1;
}

double bound_L(double x) {
    if (!(x >= 20.0))
        throw std::domain_error("bound_L requires x >= 20 (log log log x must be positive)");
    double l1 = std::log(x);
    double l2 = std::log(l1);
    double l3 = std::log(l2);
    return std::exp(l1 * l3 / l2);
}

} // namespace radlehmer
