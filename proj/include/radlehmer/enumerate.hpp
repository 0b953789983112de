#pragma once

// Range-scale counting and enumeration over segmented sieves.
//
// A SegmentPlan splits [lo, hi) into fixed-size segments. Workers take
// segments in any order; results are merged strictly in segment order, so
// every count and member stream is independent of segment size and worker
// count.

#include "radlehmer/arithmetic.hpp"
#include "radlehmer/classify.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radlehmer {

struct Range {
    u64 lo = 0;
    u64 hi = 0; // exclusive

    friend bool operator==(const Range&, const Range&) = default;
};

class SegmentPlan {
public:
    static constexpr u64 kDefaultSegmentSize = 1'000'000;

    /// Throws std::invalid_argument unless 2 <= lo <= hi and segment_size >= 1.
    SegmentPlan(u64 lo, u64 hi, u64 segment_size = kDefaultSegmentSize);

    /// Plan over [2, x + 1), i.e. every n <= x.
    static SegmentPlan up_to(u64 x, u64 segment_size = kDefaultSegmentSize);

    u64 lo() const { return lo_; }
    u64 hi() const { return hi_; }
    u64 segment_size() const { return segment_size_; }
    std::size_t size() const { return count_; }
    Range segment(std::size_t i) const;
    std::vector<Range> segments() const;

private:
    u64 lo_;
    u64 hi_;
    u64 segment_size_;
    std::size_t count_;
};

enum class ClassKind { K, carmichael, lehmer, k_lehmer, K_d, squarefull, primes };

struct ClassTag {
    ClassKind kind = ClassKind::K;
    std::uint32_t param = 0; // k for k_lehmer, d for K_d

    static ClassTag k_lehmer(std::uint32_t k);
    static ClassTag K_d(std::uint32_t d);

    /// "K", "carmichael", "lehmer", "klehmer:<k>", "kd:<d>", "squarefull", "primes".
    std::string name() const;
    /// Inverse of name(); also accepts lowercase "k". Throws std::invalid_argument.
    static ClassTag parse(const std::string& text);
    /// Throws std::invalid_argument when the parameter is out of range.
    void validate() const;

    bool matches(const Classification& c) const;

    friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

struct CountReport {
    ClassTag tag;
    std::vector<u64> thresholds;
    std::vector<u64> counts; // members n with plan.lo <= n <= threshold
    /// Only for k_lehmer with totals requested: L_k(x) + pi(x) + 1.
    std::vector<u64> totals;
    double elapsed_seconds = 0.0;
};

struct Progress {
    std::size_t segments_done = 0;
    std::size_t segments_total = 0;
};

struct RunOptions {
    unsigned workers = 1;
    u64 memory_budget = default_memory_budget();
    /// Invoked on the calling thread after each merged segment.
    std::function<void(const Progress&)> progress;
};

/// One sieve pass counting several classes. Thresholds must be ascending,
/// and lie in [plan.lo(), plan.hi()).
std::vector<CountReport> count_classes(const SegmentPlan& plan, std::span<const ClassTag> tags,
                                       std::span<const u64> thresholds, const RunOptions& options = {});
CountReport count_class(const SegmentPlan& plan, ClassTag tag, std::span<const u64> thresholds,
                        const RunOptions& options = {});

/// Calls `emit` for every member of the class in plan, in ascending order.
/// Returning false from `emit` stops the enumeration early.
void list_members(const SegmentPlan& plan, ClassTag tag,
                  const std::function<bool(const Classification&)>& emit, const RunOptions& options = {});

CountReport count_K_d(const SegmentPlan& plan, std::uint32_t d, std::span<const u64> thresholds,
                      const RunOptions& options = {});
/// With `with_totals`, also fills CountReport::totals with L_k(x) + pi(x) + 1.
CountReport count_L_k(const SegmentPlan& plan, std::uint32_t k, std::span<const u64> thresholds,
                      bool with_totals = false, const RunOptions& options = {});
CountReport count_primes(const SegmentPlan& plan, std::span<const u64> thresholds, const RunOptions& options = {});

// Squarefull numbers ------------------------------------------------------

/// Every squarefull n <= x (1 included), ascending, generated as d * rad(d)
/// over seeds d grouped by their radical.
std::vector<u64> squarefull_up_to(u64 x, u64 memory_budget = default_memory_budget());

/// Riemann zeta for real s > 1, summed with Euler-Maclaurin tail correction.
double zeta(double s);
/// zeta(3/2) / zeta(3), the density constant of squarefull numbers.
double squarefull_constant();

struct SquarefullReport {
    CountReport report;
    std::vector<double> ratios; // count / sqrt(x)
    double constant = 0.0;
};

SquarefullReport count_squarefull(std::span<const u64> thresholds, u64 memory_budget = default_memory_budget());

// Two-prime members -------------------------------------------------------

struct PrimePair {
    u64 m = 0;
    u64 p = 0; // m + 1
    u64 q = 0; // 2m + 1
    u64 product = 0;
    bool member = false;
};

struct PairConstruction {
    std::vector<PrimePair> pairs;
    std::size_t verified = 0;
};

/// Even m <= limit_m with m + 1 and 2m + 1 both prime, each product checked
/// for K-membership. Throws std::overflow_error if a product overflows.
PairConstruction prime_pair_construction(u64 limit_m);

/// The K_2 diagnostic x^(1/2) exp(2 (2 log x)^(1/2) / log log x).
double k2_bound(double x);

struct K2Scan {
    CountReport report; // tag kd:2, single threshold x
    double bound = 0.0;
};

/// Counts primes p < q with pq <= x and rad(p - 1) = rad(q - 1) by bucketing
/// primes on rad(p - 1). Throws BudgetError when the sieve or prime buckets
/// exceed the budget.
K2Scan k2_pair_scan(u64 x, u64 memory_budget = default_memory_budget());

// Diagnostics -------------------------------------------------------------

struct BoundRow {
    u64 x = 0;
    u64 K = 0;
    u64 C = 0;
    u64 K2 = 0;
    u64 L2 = 0;
    double K_over_C = 0.0; // infinity when C = 0
    std::int64_t K_minus_C = 0;
    double x_over_L = 0.0;
    double kd2_bound = 0.0; // x^(1 - 1/(2d)), d = 2
    double kd3_bound = 0.0; // d = 3
    double k2_bound = 0.0;
    double lk2_bound = 0.0; // x^(1 - 1/(4k - 1)), k = 2
    double lk3_bound = 0.0; // k = 3
};

/// Empirical counts next to reference curves with unit constants. Not a
/// pass/fail check. Throws std::domain_error for x < 20.
std::vector<BoundRow> bound_report(std::span<const u64> xs, u64 segment_size = SegmentPlan::kDefaultSegmentSize,
                                   const RunOptions& options = {});

} // namespace radlehmer
