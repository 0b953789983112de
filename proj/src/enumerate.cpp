#include "radlehmer/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace radlehmer {

// SegmentPlan ---------------------------------------------------------------

SegmentPlan::SegmentPlan(u64 lo, u64 hi, u64 segment_size) : lo_(lo), hi_(hi), segment_size_(segment_size) {
    if (lo < 2) throw std::invalid_argument("segment plan must start at 2 or above");
    if (hi < lo) throw std::invalid_argument("segment plan needs lo <= hi");
    if (segment_size == 0) throw std::invalid_argument("segment size must be positive");
    count_ = static_cast<std::size_t>((hi - lo + segment_size - 1) / segment_size);
}

SegmentPlan SegmentPlan::up_to(u64 x, u64 segment_size) {
    if (x == std::numeric_limits<u64>::max()) throw std::invalid_argument("range bound too large");
    return SegmentPlan(2, std::max<u64>(x + 1, 2), segment_size);
}

Range SegmentPlan::segment(std::size_t i) const {
    if (i >= count_) throw std::out_of_range("segment index out of range");
    u64 a = lo_ + static_cast<u64>(i) * segment_size_;
    u64 b = (hi_ - a > segment_size_) ? a + segment_size_ : hi_;
    return {a, b};
}

std::vector<Range> SegmentPlan::segments() const {
    std::vector<Range> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < count_; ++i) out.push_back(segment(i));
    return out;
}

// ClassTag ------------------------------------------------------------------

ClassTag ClassTag::k_lehmer(std::uint32_t k) { return {ClassKind::k_lehmer, k}; }
ClassTag ClassTag::K_d(std::uint32_t d) { return {ClassKind::K_d, d}; }

std::string ClassTag::name() const {
    switch (kind) {
    case ClassKind::K: return "K";
    case ClassKind::carmichael: return "carmichael";
    case ClassKind::lehmer: return "lehmer";
    case ClassKind::k_lehmer: return "klehmer:" + std::to_string(param);
    case ClassKind::K_d: return "kd:" + std::to_string(param);
    case ClassKind::squarefull: return "squarefull";
    case ClassKind::primes: return "primes";
    }
    return "?";
}

ClassTag ClassTag::parse(const std::string& text) {
    auto param_of = [&](std::size_t prefix) {
        std::string digits = text.substr(prefix);
        if (digits.empty() || digits.size() > 9 ||
            !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("bad class parameter in '" + text + "'");
        return static_cast<std::uint32_t>(std::stoul(digits));
    };
    ClassTag tag;
    if (text == "K" || text == "k") tag = {ClassKind::K, 0};
    else if (text == "carmichael") tag = {ClassKind::carmichael, 0};
    else if (text == "lehmer") tag = {ClassKind::lehmer, 0};
    else if (text == "squarefull") tag = {ClassKind::squarefull, 0};
    else if (text == "primes") tag = {ClassKind::primes, 0};
    else if (text.rfind("klehmer:", 0) == 0) tag = k_lehmer(param_of(8));
    else if (text.rfind("kd:", 0) == 0) tag = K_d(param_of(3));
    else throw std::invalid_argument("unknown class '" + text + "'");
    tag.validate();
    return tag;
}

void ClassTag::validate() const {
    if (kind == ClassKind::k_lehmer && param < 1) throw std::invalid_argument("klehmer needs k >= 1");
    if (kind == ClassKind::K_d && param < 2) throw std::invalid_argument("kd needs d >= 2");
}

bool ClassTag::matches(const Classification& c) const {
    switch (kind) {
    case ClassKind::K: return c.in_K;
    case ClassKind::carmichael: return c.is_carmichael;
    case ClassKind::lehmer: return c.is_lehmer;
    case ClassKind::k_lehmer: return c.is_composite && c.lehmer_order && *c.lehmer_order <= param;
    case ClassKind::K_d: return c.in_K && c.omega == param;
    case ClassKind::squarefull: return is_squarefull(c.n);
    case ClassKind::primes: return c.is_prime;
    }
    return false;
}

// Segment sieve -------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint8_t kComposite = 1;
constexpr std::uint8_t kRejected = 2;
constexpr unsigned kOmegaShift = 2; // bits 2..7 count small prime factors

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

struct SieveContext {
    std::vector<u64> primes;
    std::vector<u64> rad_pm1; // rad(p - 1) per sieving prime
};

SieveContext make_context(u64 hi, u64 budget) {
    SieveContext ctx;
    const u64 root = isqrt(hi > 0 ? hi - 1 : 0);
    if (root < 2) return ctx;
    const SpfTable table = SpfTable::build(root, budget);
    ctx.primes = table.primes();
    ctx.rad_pm1.reserve(ctx.primes.size());
    for (u64 p : ctx.primes) ctx.rad_pm1.push_back(p == 2 ? 1 : rad(factorize(p - 1, &table)));
    return ctx;
}

// Per-segment verdicts: primality, K-membership and omega for K-members.
struct SegmentSieve {
    u64 lo = 0;
    std::vector<u64> cofactor;
    std::vector<std::uint8_t> flags;

    bool is_prime(std::size_t i) const { return (flags[i] & kComposite) == 0; }

    bool in_K(std::size_t i) const {
        if ((flags[i] & (kComposite | kRejected)) != kComposite) return false;
        u64 c = cofactor[i];
        return c == 1 || rad_divides(c - 1, lo + i - 1);
    }

    std::uint32_t omega(std::size_t i) const { return (flags[i] >> kOmegaShift) + (cofactor[i] > 1 ? 1 : 0); }
};

// Marks composites and runs the trial-division fast reject: a K-member is
// squarefree and rad(p - 1) | n - 1 for each prime p | n. Survivors keep a
// cofactor that is 1 or a single prime above sqrt(hi).
SegmentSieve sieve_segment(Range r, const SieveContext& ctx) {
    SegmentSieve s;
    s.lo = r.lo;
    const std::size_t len = static_cast<std::size_t>(r.hi - r.lo);
    s.cofactor.resize(len);
    s.flags.assign(len, 0);
    for (std::size_t i = 0; i < len; ++i) s.cofactor[i] = r.lo + i;
    if (len == 0) return s;
    const u64 last = r.hi - 1;
    for (std::size_t k = 0; k < ctx.primes.size(); ++k) {
        const u64 p = ctx.primes[k];
        if (p > last / p) break;
        const u64 rp = ctx.rad_pm1[k];
        u64 start = std::max(2 * p, (r.lo + p - 1) / p * p);
        for (u64 m = start; m < r.hi; m += p) {
            const std::size_t i = static_cast<std::size_t>(m - r.lo);
            std::uint8_t f = s.flags[i] | kComposite;
            if ((f & kRejected) == 0) {
                if ((m / p) % p == 0 || (m - 1) % rp != 0) {
                    f |= kRejected;
                } else {
                    s.cofactor[i] /= p;
                    f = static_cast<std::uint8_t>(f + (1u << kOmegaShift));
                }
            }
            s.flags[i] = f;
        }
    }
    return s;
}

struct SegmentResult {
    std::vector<std::vector<u64>> buckets; // [tag][first threshold >= n]
    std::vector<Classification> members;   // listing mode only
};

bool needs_classification(ClassKind kind) {
    return kind == ClassKind::carmichael || kind == ClassKind::lehmer || kind == ClassKind::k_lehmer;
}

SegmentResult scan_segment(Range r, const SieveContext& ctx, std::span<const ClassTag> tags,
                           std::span<const u64> thresholds, bool listing) {
    SegmentResult out;
    out.buckets.assign(tags.size(), std::vector<u64>(thresholds.size(), 0));
    const SegmentSieve s = sieve_segment(r, ctx);
    const bool any_detail = listing || std::any_of(tags.begin(), tags.end(),
                                                   [](const ClassTag& t) { return needs_classification(t.kind); });

    for (std::size_t i = 0; i < s.flags.size(); ++i) {
        const u64 n = r.lo + i;
        const bool prime = s.is_prime(i);
        const bool member_K = !prime && s.in_K(i);
        if (!prime && !member_K) continue;

        std::optional<Classification> detail;
        if (member_K && any_detail) detail = classify(n);
        std::size_t bucket = thresholds.size();
        if (!thresholds.empty()) {
            bucket = static_cast<std::size_t>(std::lower_bound(thresholds.begin(), thresholds.end(), n) -
                                              thresholds.begin());
        }

        for (std::size_t t = 0; t < tags.size(); ++t) {
            bool hit = false;
            switch (tags[t].kind) {
            case ClassKind::primes: hit = prime; break;
            case ClassKind::K: hit = member_K; break;
            case ClassKind::K_d: hit = member_K && s.omega(i) == tags[t].param; break;
            case ClassKind::carmichael:
            case ClassKind::lehmer:
            case ClassKind::k_lehmer: hit = member_K && tags[t].matches(*detail); break;
            case ClassKind::squarefull: break; // not produced by the sieve
            }
            if (!hit) continue;
            if (bucket < thresholds.size()) ++out.buckets[t][bucket];
            if (listing) out.members.push_back(detail ? *detail : classify(n));
        }
    }
    return out;
}

u64 segment_bytes(u64 segment_size) { return segment_size * (sizeof(u64) + sizeof(std::uint8_t)); }

void check_budget(const SegmentPlan& plan, const RunOptions& options) {
    const unsigned workers = std::max(1u, options.workers);
    const u64 seg = std::min<u64>(plan.segment_size(), plan.hi() - plan.lo());
    const u64 root = isqrt(plan.hi() > 0 ? plan.hi() - 1 : 0);
    const u128 need = static_cast<u128>(workers) * segment_bytes(seg) + static_cast<u128>(SpfTable::bytes_for(root)) +
                      static_cast<u128>(root) * 2 * sizeof(u64);
    if (need > options.memory_budget) {
        throw BudgetError("segment sieve over [" + std::to_string(plan.lo()) + ", " + std::to_string(plan.hi()) +
                          ") with segment size " + std::to_string(plan.segment_size()) + " and " +
                          std::to_string(workers) + " workers needs about " + std::to_string(static_cast<u64>(need)) +
                          " bytes, memory budget is " + std::to_string(options.memory_budget) + " bytes");
    }
}

// Runs `work` over every segment index on up to `workers` threads and hands
// each result to `sink` in index order. Stops early when `sink` returns false.
template <class Result, class Work, class Sink>
void run_ordered(std::size_t count, unsigned workers, Work&& work, Sink&& sink) {
    workers = std::max(1u, workers);
    const std::size_t window = static_cast<std::size_t>(workers) * 4;
    for (std::size_t base = 0; base < count; base += window) {
        const std::size_t batch = std::min(window, count - base);
        std::vector<std::optional<Result>> results(batch);
        if (workers == 1 || batch == 1) {
            for (std::size_t j = 0; j < batch; ++j) results[j] = work(base + j);
        } else {
            std::atomic<std::size_t> next{0};
            std::exception_ptr error;
            std::mutex error_mutex;
            auto run = [&] {
                for (std::size_t j; (j = next.fetch_add(1)) < batch;) {
                    try {
                        results[j] = work(base + j);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            };
            std::vector<std::jthread> pool;
            const unsigned n_threads = static_cast<unsigned>(std::min<std::size_t>(workers, batch));
            for (unsigned w = 0; w < n_threads; ++w) pool.emplace_back(run);
            pool.clear();
            if (error) std::rethrow_exception(error);
        }
        for (std::size_t j = 0; j < batch; ++j)
            if (!sink(base + j, std::move(*results[j]))) return;
    }
}

void check_thresholds(const SegmentPlan& plan, std::span<const u64> thresholds) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end()))
        throw std::invalid_argument("thresholds must be ascending");
    for (u64 t : thresholds)
        if (t < plan.lo() || t >= plan.hi())
            throw std::invalid_argument("threshold " + std::to_string(t) + " outside plan range [" +
                                        std::to_string(plan.lo()) + ", " + std::to_string(plan.hi()) + ")");
}

std::vector<u64> prefix_sums(const std::vector<u64>& buckets) {
    std::vector<u64> out(buckets.size());
    u64 running = 0;
    for (std::size_t j = 0; j < buckets.size(); ++j) out[j] = running += buckets[j];
    return out;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

// Counting ------------------------------------------------------------------

std::vector<CountReport> count_classes(const SegmentPlan& plan, std::span<const ClassTag> tags,
                                       std::span<const u64> thresholds, const RunOptions& options) {
    const auto start = Clock::now();
    for (const auto& t : tags) t.validate();
    check_thresholds(plan, thresholds);

    std::vector<ClassTag> sieve_tags;
    for (const auto& t : tags)
        if (t.kind != ClassKind::squarefull) sieve_tags.push_back(t);

    std::vector<std::vector<u64>> buckets(sieve_tags.size(), std::vector<u64>(thresholds.size(), 0));
    if (!sieve_tags.empty() && plan.size() > 0) {
        check_budget(plan, options);
        const SieveContext ctx = make_context(plan.hi(), options.memory_budget);
        const std::size_t total = plan.size();
        run_ordered<SegmentResult>(
            total, options.workers,
            [&](std::size_t i) { return scan_segment(plan.segment(i), ctx, sieve_tags, thresholds, false); },
            [&](std::size_t i, SegmentResult&& r) {
                for (std::size_t t = 0; t < sieve_tags.size(); ++t)
                    for (std::size_t j = 0; j < thresholds.size(); ++j) buckets[t][j] += r.buckets[t][j];
                if (options.progress) options.progress({i + 1, total});
                return true;
            });
    }

    std::vector<u64> squarefull;
    if (std::any_of(tags.begin(), tags.end(), [](const ClassTag& t) { return t.kind == ClassKind::squarefull; }) &&
        !thresholds.empty()) {
        squarefull = squarefull_up_to(thresholds.back(), options.memory_budget);
    }

    std::vector<CountReport> reports;
    std::size_t sieve_index = 0;
    for (const auto& t : tags) {
        CountReport rep;
        rep.tag = t;
        rep.thresholds.assign(thresholds.begin(), thresholds.end());
        if (t.kind == ClassKind::squarefull) {
            auto first = std::lower_bound(squarefull.begin(), squarefull.end(), plan.lo());
            for (u64 x : thresholds)
                rep.counts.push_back(static_cast<u64>(std::upper_bound(first, squarefull.end(), x) - first));
        } else {
            rep.counts = prefix_sums(buckets[sieve_index++]);
        }
        reports.push_back(std::move(rep));
    }
    const double elapsed = seconds_since(start);
    for (auto& r : reports) r.elapsed_seconds = elapsed;
    return reports;
}

CountReport count_class(const SegmentPlan& plan, ClassTag tag, std::span<const u64> thresholds,
                        const RunOptions& options) {
    const ClassTag tags[] = {tag};
    return std::move(count_classes(plan, tags, thresholds, options).front());
}

CountReport count_K_d(const SegmentPlan& plan, std::uint32_t d, std::span<const u64> thresholds,
                      const RunOptions& options) {
    return count_class(plan, ClassTag::K_d(d), thresholds, options);
}

CountReport count_L_k(const SegmentPlan& plan, std::uint32_t k, std::span<const u64> thresholds, bool with_totals,
                      const RunOptions& options) {
    if (!with_totals) return count_class(plan, ClassTag::k_lehmer(k), thresholds, options);
    if (plan.lo() != 2) throw std::invalid_argument("L_k + pi + 1 totals need a plan starting at 2");
    const ClassTag tags[] = {ClassTag::k_lehmer(k), ClassTag{ClassKind::primes, 0}};
    auto reports = count_classes(plan, tags, thresholds, options);
    CountReport out = std::move(reports[0]);
    for (std::size_t j = 0; j < out.counts.size(); ++j) out.totals.push_back(out.counts[j] + reports[1].counts[j] + 1);
    return out;
}

CountReport count_primes(const SegmentPlan& plan, std::span<const u64> thresholds, const RunOptions& options) {
    return count_class(plan, ClassTag{ClassKind::primes, 0}, thresholds, options);
}

void list_members(const SegmentPlan& plan, ClassTag tag, const std::function<bool(const Classification&)>& emit,
                  const RunOptions& options) {
    tag.validate();
    if (tag.kind == ClassKind::squarefull) {
        if (plan.hi() <= plan.lo()) return;
        for (u64 n : squarefull_up_to(plan.hi() - 1, options.memory_budget))
            if (n >= plan.lo() && !emit(classify(n))) return;
        return;
    }
    if (plan.size() == 0) return;
    check_budget(plan, options);
    const SieveContext ctx = make_context(plan.hi(), options.memory_budget);
    const ClassTag tags[] = {tag};
    const std::size_t total = plan.size();
    run_ordered<SegmentResult>(
        total, options.workers, [&](std::size_t i) { return scan_segment(plan.segment(i), ctx, tags, {}, true); },
        [&](std::size_t i, SegmentResult&& r) {
            for (const auto& c : r.members)
                if (!emit(c)) return false;
            if (options.progress) options.progress({i + 1, total});
            return true;
        });
}

// Diagnostics ---------------------------------------------------------------

std::vector<BoundRow> bound_report(std::span<const u64> xs, u64 segment_size, const RunOptions& options) {
    std::vector<u64> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) return {};
    if (sorted.front() < 20) throw std::domain_error("bound_report needs every x >= 20");

    const ClassTag tags[] = {ClassTag{ClassKind::K, 0}, ClassTag{ClassKind::carmichael, 0}, ClassTag::K_d(2),
                             ClassTag::k_lehmer(2)};
    const auto reports = count_classes(SegmentPlan::up_to(sorted.back(), segment_size), tags, sorted, options);

    std::vector<BoundRow> rows;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
        const double x = static_cast<double>(sorted[j]);
        BoundRow row;
        row.x = sorted[j];
        row.K = reports[0].counts[j];
        row.C = reports[1].counts[j];
        row.K2 = reports[2].counts[j];
        row.L2 = reports[3].counts[j];
        row.K_over_C = row.C == 0 ? std::numeric_limits<double>::infinity()
                                  : static_cast<double>(row.K) / static_cast<double>(row.C);
        row.K_minus_C = static_cast<std::int64_t>(row.K) - static_cast<std::int64_t>(row.C);
        row.x_over_L = x / bound_L(x);
        row.kd2_bound = std::pow(x, 1.0 - 1.0 / 4.0);
        row.kd3_bound = std::pow(x, 1.0 - 1.0 / 6.0);
        row.k2_bound = k2_bound(x);
        row.lk2_bound = std::pow(x, 1.0 - 1.0 / 7.0);
        row.lk3_bound = std::pow(x, 1.0 - 1.0 / 11.0);
        rows.push_back(row);
    }
    return rows;
}

} // namespace radlehmer
