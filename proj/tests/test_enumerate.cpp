#include "radlehmer/enumerate.hpp"

#include "naive_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace radlehmer;

namespace {

const std::vector<u64> kDecades = {100, 1'000, 10'000, 100'000, 1'000'000, 10'000'000};

std::vector<u64> members(const SegmentPlan& plan, ClassTag tag, unsigned workers = 1) {
    std::vector<u64> out;
    RunOptions o;
    o.workers = workers;
    list_members(
        plan, tag,
        [&](const Classification& c) {
            out.push_back(c.n);
            return true;
        },
        o);
    return out;
}

const ClassTag kK{ClassKind::K, 0};
const ClassTag kCarmichael{ClassKind::carmichael, 0};
const ClassTag kLehmer{ClassKind::lehmer, 0};
const ClassTag kPrimes{ClassKind::primes, 0};
const ClassTag kSquarefull{ClassKind::squarefull, 0};

} // namespace

TEST_CASE("SegmentPlan covers its range with disjoint ordered segments") {
    for (u64 lo : {2, 3, 17, 1000}) {
        for (u64 len : {0, 1, 9, 10, 11, 12345}) {
            for (u64 seg : {1, 7, 10, 1000, 100000}) {
                const SegmentPlan plan(lo, lo + len, seg);
                u64 cursor = lo;
                for (const Range& r : plan.segments()) {
                    REQUIRE(r.lo == cursor);
                    REQUIRE(r.hi > r.lo);
                    REQUIRE(r.hi - r.lo <= seg);
                    cursor = r.hi;
                }
                REQUIRE(cursor == lo + len);
            }
        }
    }
    CHECK_THROWS_AS(SegmentPlan(1, 10, 5), std::invalid_argument);
    CHECK_THROWS_AS(SegmentPlan(10, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(SegmentPlan(2, 10, 0), std::invalid_argument);
    CHECK(SegmentPlan::up_to(100).hi() == 101);
}

TEST_CASE("ClassTag names round-trip and reject junk") {
    for (const auto& tag : {kK, kCarmichael, kLehmer, kPrimes, kSquarefull, ClassTag::k_lehmer(3), ClassTag::K_d(2)})
        CHECK(ClassTag::parse(tag.name()) == tag);
    CHECK(ClassTag::parse("k") == kK);
    CHECK_THROWS_AS(ClassTag::parse("kd:1"), std::invalid_argument);
    CHECK_THROWS_AS(ClassTag::parse("klehmer:0"), std::invalid_argument);
    CHECK_THROWS_AS(ClassTag::parse("kd:"), std::invalid_argument);
    CHECK_THROWS_AS(ClassTag::parse("kd:x"), std::invalid_argument);
    CHECK_THROWS_AS(ClassTag::parse("bogus"), std::invalid_argument);
}

TEST_CASE("K and Carmichael counts per decade through 10^7") {
    const auto plan = SegmentPlan::up_to(10'000'000);
    const ClassTag tags[] = {kK, kCarmichael, kLehmer};
    const auto reports = count_classes(plan, tags, kDecades);
    CHECK(reports[0].counts == std::vector<u64>{4, 19, 103, 422, 1559, 5645});
    CHECK(reports[1].counts == std::vector<u64>{0, 1, 7, 16, 43, 105});
    CHECK(reports[2].counts == std::vector<u64>{0, 0, 0, 0, 0, 0});
    for (const auto& r : reports) CHECK(std::is_sorted(r.counts.begin(), r.counts.end()));
}

TEST_CASE("list_members examples") {
    CHECK(members(SegmentPlan(2, 100), kK) == std::vector<u64>{15, 51, 85, 91});
    CHECK(members(SegmentPlan(2, 1000), kCarmichael) == std::vector<u64>{561});
    CHECK(members(SegmentPlan(2, 100), ClassTag::K_d(2)) == std::vector<u64>{15, 51, 85, 91});
    CHECK(members(SegmentPlan(2, 101), kSquarefull) == std::vector<u64>{4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72, 81, 100});
    CHECK(members(SegmentPlan(2, 30), kPrimes) == std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    std::size_t seen = 0;
    list_members(SegmentPlan(2, 100'000, 1000), kK, [&](const Classification&) { return ++seen < 10; });
    CHECK(seen == 10);
}

TEST_CASE("list_members is ascending with many workers and small segments") {
    const auto plan = SegmentPlan(2, 200'000, 3'000);
    const auto serial = members(plan, kK, 1);
    const auto parallel = members(plan, kK, 8);
    CHECK(serial == parallel);
    CHECK(std::is_sorted(parallel.begin(), parallel.end()));
}

TEST_CASE("count_K_d examples and partition identity") {
    const auto plan = SegmentPlan::up_to(100'000);
    const u64 x2[] = {100};
    CHECK(count_K_d(plan, 2, x2).counts[0] == 4);
    const u64 x3[] = {1'000};
    CHECK(count_K_d(plan, 3, x3).counts[0] == 4); // brute-force scan of 2..1000
    CHECK(count_K_d(plan, 2, x3).counts[0] == 15);

    const std::vector<u64> xs = {1'000, 10'000, 100'000};
    const auto K = count_class(plan, kK, xs);
    std::vector<u64> sum(xs.size(), 0);
    for (std::uint32_t d = 2; d <= 8; ++d) {
        const auto r = count_K_d(plan, d, xs);
        for (std::size_t j = 0; j < xs.size(); ++j) sum[j] += r.counts[j];
    }
    CHECK(sum == K.counts);
    CHECK_THROWS_AS(count_K_d(plan, 1, xs), std::invalid_argument);
}

TEST_CASE("count_L_k examples, nesting and totals") {
    const auto plan = SegmentPlan::up_to(1'000'000);
    const u64 x6[] = {1'000'000};
    CHECK(count_L_k(plan, 1, x6).counts[0] == 0);

    const auto in_L2 = members(SegmentPlan(2, 1001), ClassTag::k_lehmer(2));
    CHECK(std::find(in_L2.begin(), in_L2.end(), 561) != in_L2.end());
    CHECK(std::find(in_L2.begin(), in_L2.end(), 15) == in_L2.end());
    const u64 x3[] = {1'000};
    // brute-force orders over 2..1000: L_1..L_4 = 0, 1, 10, 13
    CHECK(count_L_k(plan, 2, x3).counts[0] == 1);
    CHECK(count_L_k(plan, 3, x3).counts[0] == 10);
    CHECK(count_L_k(plan, 4, x3).counts[0] == 13);

    const u64 x5[] = {100'000};
    const u64 K = count_class(plan, kK, x5).counts[0];
    u64 prev = 0;
    for (std::uint32_t k = 1; k <= 64; ++k) {
        const u64 c = count_L_k(plan, k, x5).counts[0];
        CHECK(c >= prev);
        CHECK(c <= K);
        prev = c;
    }
    CHECK(prev == K);

    const auto with_totals = count_L_k(plan, 2, x5, true);
    CHECK(with_totals.totals[0] == with_totals.counts[0] + 9'592 + 1);
}

TEST_CASE("count_primes") {
    const auto plan = SegmentPlan::up_to(1'000'000, 65'536);
    const std::vector<u64> xs = {10, 100, 1'000'000};
    const auto r = count_primes(plan, xs);
    CHECK(r.counts == std::vector<u64>{4, 25, 78'498});
    CHECK(naive::prime_count(1'000'000) == 78'498);
    CHECK(count_primes(SegmentPlan(2, 3), std::vector<u64>{2}).counts[0] == 1);
}

TEST_CASE("thresholds are validated against the plan") {
    const auto plan = SegmentPlan::up_to(1000);
    CHECK_THROWS_AS(count_class(plan, kK, std::vector<u64>{1001}), std::invalid_argument);
    CHECK_THROWS_AS(count_class(plan, kK, std::vector<u64>{500, 100}), std::invalid_argument);
    CHECK_THROWS_AS(count_class(plan, kK, std::vector<u64>{1}), std::invalid_argument);
}

TEST_CASE("segment sieve refuses plans beyond the memory budget") {
    RunOptions o;
    o.memory_budget = 1'000;
    CHECK_THROWS_AS(count_class(SegmentPlan::up_to(1'000'000), kK, std::vector<u64>{1'000'000}, o), BudgetError);
}

TEST_CASE("counts match the naive classifier on [2, 2*10^4] for every class") {
    const u64 X = 20'000;
    const auto plan = SegmentPlan(2, X + 1, 777);
    const std::vector<ClassTag> tags = {kK,        kCarmichael,          kLehmer,          kPrimes,
                                        kSquarefull, ClassTag::K_d(2),   ClassTag::K_d(3), ClassTag::k_lehmer(1),
                                        ClassTag::k_lehmer(2), ClassTag::k_lehmer(5)};
    const std::vector<u64> xs = {50, 999, 5'000, X};
    RunOptions o;
    o.workers = 3;
    const auto reports = count_classes(plan, tags, xs, o);
    for (std::size_t t = 0; t < tags.size(); ++t) {
        std::vector<u64> expect(xs.size(), 0);
        std::vector<u64> listed;
        for (u64 n = 2; n <= X; ++n) {
            const auto v = naive::classify(n);
            bool hit = false;
            switch (tags[t].kind) {
            case ClassKind::K: hit = v.in_K; break;
            case ClassKind::carmichael: hit = v.carmichael; break;
            case ClassKind::lehmer: hit = v.lehmer; break;
            case ClassKind::primes: hit = v.prime; break;
            case ClassKind::squarefull: hit = naive::is_squarefull(n); break;
            case ClassKind::K_d: hit = v.in_K && v.omega == tags[t].param; break;
            case ClassKind::k_lehmer: hit = !v.prime && v.order && *v.order <= tags[t].param; break;
            }
            if (!hit) continue;
            listed.push_back(n);
            for (std::size_t j = 0; j < xs.size(); ++j)
                if (n <= xs[j]) ++expect[j];
        }
        INFO("class " << tags[t].name());
        CHECK(reports[t].counts == expect);
        CHECK(members(plan, tags[t], 2) == listed);
    }
}

TEST_CASE("counts are independent of segment size and worker count") {
    const std::vector<u64> xs = {1'000, 65'537, 999'999, 1'000'000};
    const ClassTag tags[] = {kK, kCarmichael, kPrimes, ClassTag::K_d(3), ClassTag::k_lehmer(3)};
    std::optional<std::vector<std::vector<u64>>> reference;
    for (u64 seg : {10'000, 100'000, 1'000'000}) {
        for (unsigned w : {1u, 4u, 8u}) {
            RunOptions o;
            o.workers = w;
            const auto reports = count_classes(SegmentPlan::up_to(1'000'000, seg), tags, xs, o);
            std::vector<std::vector<u64>> counts;
            for (const auto& r : reports) counts.push_back(r.counts);
            if (!reference) reference = counts;
            CHECK(counts == *reference);
        }
    }
}

TEST_CASE("squarefull enumeration") {
    const auto upto100 = squarefull_up_to(100);
    CHECK(upto100 == std::vector<u64>{1, 4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 72, 81, 100});
    CHECK(squarefull_up_to(1) == std::vector<u64>{1});
    CHECK(squarefull_up_to(0).empty());

    const u64 t1[] = {1};
    CHECK(count_squarefull(t1).report.counts[0] == 1);
    const u64 t100[] = {100};
    CHECK(count_squarefull(t100).report.counts[0] == 14);

    const auto seeded = squarefull_up_to(1'000'000);
    std::vector<u64> brute;
    for (u64 n = 1; n <= 1'000'000; ++n)
        if (naive::is_squarefull(n)) brute.push_back(n);
    CHECK(seeded == brute);
}

TEST_CASE("zeta and the squarefull density constant") {
    // 30-digit references
    CHECK(std::abs(zeta(2.0) - 1.64493406684822643647241516665) < 1e-12);
    CHECK(std::abs(zeta(3.0) - 1.20205690315959428539973816151) < 1e-12);
    CHECK(std::abs(zeta(1.5) - 2.61237534868548834334856756793) < 1e-12);
    CHECK(std::abs(squarefull_constant() - 2.17325431251955413823708984044) < 1e-9);
    CHECK_THROWS_AS(zeta(1.0), std::domain_error);

    const u64 xs[] = {10'000, 1'000'000};
    const auto rep = count_squarefull(xs);
    CHECK(rep.constant == squarefull_constant());
    CHECK(rep.ratios.size() == 2);
    CHECK(rep.ratios[1] == doctest::Approx(static_cast<double>(rep.report.counts[1]) / 1000.0));
}

TEST_CASE("prime pair construction") {
    const auto pc = prime_pair_construction(10'000);
    REQUIRE(pc.pairs.size() >= 2);
    CHECK(pc.pairs[0].m == 2);
    CHECK(pc.pairs[0].product == 15);
    CHECK(pc.pairs[0].member);
    CHECK(pc.pairs[1].m == 6);
    CHECK(pc.pairs[1].product == 91);
    CHECK(pc.pairs.size() == 188); // sieve count of qualifying even m <= 10^4
    CHECK(pc.verified == pc.pairs.size());
    for (const auto& p : pc.pairs) {
        CHECK(p.m % 2 == 0);
        CHECK(naive::is_prime(p.p));
        CHECK(naive::is_prime(p.q));
    }
    CHECK_THROWS_AS(prime_pair_construction(1), std::invalid_argument);
    CHECK_THROWS_AS(prime_pair_construction(~u64{0}), std::overflow_error);
}

TEST_CASE("k2_pair_scan") {
    CHECK(k2_pair_scan(100).report.counts[0] == 4);
    // brute-force pair scan: 15, 63, 203
    CHECK(k2_pair_scan(1'000).report.counts[0] == 15);
    CHECK(k2_pair_scan(10'000).report.counts[0] == 63);
    CHECK(k2_pair_scan(100'000).report.counts[0] == 203);
    const u64 x[] = {100'000};
    CHECK(k2_pair_scan(100'000).report.counts[0] == count_K_d(SegmentPlan::up_to(100'000), 2, x).counts[0]);
    CHECK(k2_pair_scan(100).bound > 0);
    CHECK_THROWS_AS(k2_pair_scan(3), std::invalid_argument);
    CHECK_THROWS_AS(k2_pair_scan(1'000'000, 1'000), BudgetError);
}

TEST_CASE("bound_report") {
    const std::vector<u64> xs = {100'000, 1'000'000, 10'000'000};
    const auto rows = bound_report(xs);
    REQUIRE(rows.size() == 3);
    CHECK(rows[2].K == 5645);
    CHECK(rows[2].C == 105);
    CHECK(rows[2].K_over_C == doctest::Approx(5645.0 / 105.0));
    CHECK(rows[0].K_over_C == doctest::Approx(422.0 / 16.0));
    CHECK(rows[1].K_minus_C == 1559 - 43);
    for (const auto& r : rows) {
        CHECK(r.x_over_L > static_cast<double>(r.K));
        CHECK(r.x_over_L < static_cast<double>(r.x));
        CHECK(r.K2 <= r.K);
        CHECK(r.L2 <= r.K);
    }
    CHECK(std::isinf(bound_report(std::vector<u64>{100}).front().K_over_C));
    CHECK_THROWS_AS(bound_report(std::vector<u64>{19}), std::domain_error);
}
