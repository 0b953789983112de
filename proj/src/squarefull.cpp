#include "radlehmer/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace radlehmer {

namespace {

u64 floor_sqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// Emits r^2 * m for every m <= limit whose primes all lie in `primes`.
void emit_multiples(std::span<const u64> primes, std::size_t from, u64 m, u64 limit, u64 r2, std::vector<u64>& out) {
    out.push_back(r2 * m);
    for (std::size_t j = from; j < primes.size(); ++j) {
        if (primes[j] > limit / m) break;
        emit_multiples(primes, j, m * primes[j], limit, r2, out);
    }
}

} // namespace

std::vector<u64> squarefull_up_to(u64 x, u64 memory_budget) {
    std::vector<u64> out;
    if (x == 0) return out;
    const u64 root = floor_sqrt(x);
    // About zeta(3/2)/zeta(3) * sqrt(x) values; 3 sqrt(x) bounds it.
    const long double estimate = 3.0L * static_cast<long double>(root + 1) * sizeof(u64);
    if (estimate + SpfTable::bytes_for(std::max<u64>(root, 2)) > static_cast<long double>(memory_budget))
        throw BudgetError("squarefull enumeration up to " + std::to_string(x) + " exceeds memory budget of " +
                          std::to_string(memory_budget) + " bytes");
    out.push_back(1);
    if (root < 2) return out;
    const SpfTable table = SpfTable::build(root, memory_budget);
    // Each squarefull number is d * rad(d) for exactly one seed d. Group the
    // seeds by r = rad(d): then d = r * m with m supported on the primes of r,
    // and d * rad(d) = r^2 * m <= x.
    std::vector<u64> primes;
    for (u64 r = 2; r <= root; ++r) {
        const Factorization f = factorize(r, &table);
        if (!f.squarefree()) continue;
        primes.clear();
        for (const auto& pp : f.factors()) primes.push_back(pp.prime);
        emit_multiples(primes, 0, 1, x / (r * r), r * r, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double zeta(double s) {
    if (!(s > 1.0)) throw std::domain_error("zeta is evaluated only for s > 1");
    // Direct partial sum plus Euler-Maclaurin tail; the first neglected term
    // is far below 1e-12 at N = 64.
    constexpr int N = 64;
    double sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<double>(n), -s);
    const double nn = N;
    sum += std::pow(nn, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(nn, -s);
    // B_2k / (2k)! for k = 1..5
    constexpr double coeff[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
    double rising = s; // s (s + 1) ... (s + 2k - 2)
    double power = std::pow(nn, -s - 1.0);
    for (int k = 0; k < 5; ++k) {
        sum += coeff[k] * rising * power;
        rising *= (s + 2 * k + 1) * (s + 2 * k + 2);
        power /= nn * nn;
    }
    return sum;
}

double squarefull_constant() {
    static const double value = zeta(1.5) / zeta(3.0);
    return value;
}

SquarefullReport count_squarefull(std::span<const u64> thresholds, u64 memory_budget) {
    const auto start = std::chrono::steady_clock::now();
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("thresholds must be ascending");
    SquarefullReport out;
    out.report.tag = ClassTag{ClassKind::squarefull, 0};
    out.report.thresholds.assign(thresholds.begin(), thresholds.end());
    out.constant = squarefull_constant();
    const std::vector<u64> all = thresholds.empty() ? std::vector<u64>{} : squarefull_up_to(thresholds.back(), memory_budget);
    for (u64 x : thresholds) {
        const u64 c = static_cast<u64>(std::upper_bound(all.begin(), all.end(), x) - all.begin());
        out.report.counts.push_back(c);
        out.ratios.push_back(x == 0 ? 0.0 : static_cast<double>(c) / std::sqrt(static_cast<double>(x)));
    }
    out.report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace radlehmer
