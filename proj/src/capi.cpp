#include "radlehmer/radlehmer.h"

#include "radlehmer/arithmetic.hpp"
#include "radlehmer/classify.hpp"
#include "radlehmer/enumerate.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

using namespace radlehmer;

struct rl_spf_table {
    SpfTable table;
};

struct rl_report {
    std::vector<CountReport> series;
    std::optional<std::vector<double>> ratios;
    std::optional<double> constant;
    std::optional<double> bound;
};

struct rl_pair_list {
    PairConstruction construction;
};

namespace {

thread_local std::string last_error;

rl_status fail(rl_status status, const char* message) {
    last_error = message;
    return status;
}

template <class F>
rl_status guarded(F&& body) {
    try {
        body();
        return RL_OK;
    } catch (const BudgetError& e) {
        return fail(RL_BUDGET_EXCEEDED, e.what());
    } catch (const std::overflow_error& e) {
        return fail(RL_OVERFLOW, e.what());
    } catch (const std::domain_error& e) {
        return fail(RL_DOMAIN_ERROR, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(RL_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(RL_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RL_BUDGET_EXCEEDED, "out of memory");
    } catch (const std::exception& e) {
        return fail(RL_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(RL_INTERNAL_ERROR, "unknown error");
    }
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be NULL");
}

const SpfTable* unwrap(const rl_spf_table* t) { return t ? &t->table : nullptr; }

u64 budget_or_default(uint64_t budget) { return budget == 0 ? default_memory_budget() : budget; }

ClassTag to_tag(rl_class c) {
    if (c.kind < RL_CLASS_K || c.kind > RL_CLASS_PRIMES) throw std::invalid_argument("invalid class kind");
    ClassTag tag{static_cast<ClassKind>(c.kind), c.param};
    if (tag.kind != ClassKind::k_lehmer && tag.kind != ClassKind::K_d) tag.param = 0;
    tag.validate();
    return tag;
}

rl_class from_tag(ClassTag t) { return {static_cast<rl_class_kind>(t.kind), t.param}; }

SegmentPlan to_plan(const rl_plan* plan) {
    require(plan, "plan");
    return SegmentPlan(plan->lo, plan->hi, plan->segment_size == 0 ? SegmentPlan::kDefaultSegmentSize : plan->segment_size);
}

RunOptions to_options(const rl_run_options* o) {
    RunOptions out;
    if (o == nullptr) return out;
    out.workers = o->workers == 0 ? 1 : o->workers;
    out.memory_budget = budget_or_default(o->memory_budget);
    if (o->progress) {
        auto fn = o->progress;
        void* user = o->progress_user;
        out.progress = [fn, user](const Progress& p) { fn(p.segments_done, p.segments_total, user); };
    }
    return out;
}

rl_classification to_c(const Classification& c) {
    rl_classification r{};
    r.n = c.n;
    r.is_prime = c.is_prime;
    r.is_composite = c.is_composite;
    r.omega = c.omega;
    r.squarefree = c.squarefree;
    r.phi = c.phi;
    r.lambda = c.lambda;
    r.kappa = c.kappa;
    r.satisfies_kappa_condition = c.satisfies_kappa_condition;
    r.in_K = c.in_K;
    r.is_carmichael = c.is_carmichael;
    r.is_lehmer = c.is_lehmer;
    r.lehmer_order = c.lehmer_order.value_or(0);
    return r;
}

std::span<const u64> span_of(const uint64_t* data, size_t n) {
    if (n > 0) require(data, "thresholds");
    return {reinterpret_cast<const u64*>(data), n};
}

template <class Fn>
rl_status predicate(uint64_t n, const rl_spf_table* table, int* out, Fn fn) {
    return guarded([&] {
        require(out, "out");
        *out = fn(n, unwrap(table)) ? 1 : 0;
    });
}

template <class Fn>
rl_status arithmetic_fn(uint64_t n, uint64_t* out, Fn fn) {
    return guarded([&] {
        require(out, "out");
        *out = fn(factorize(n));
    });
}

} // namespace

extern "C" {

const char* rl_last_error(void) { return last_error.c_str(); }

const char* rl_status_string(rl_status status) {
    switch (status) {
    case RL_OK: return "ok";
    case RL_INVALID_ARGUMENT: return "invalid argument";
    case RL_BUDGET_EXCEEDED: return "memory budget exceeded";
    case RL_OVERFLOW: return "64-bit overflow";
    case RL_DOMAIN_ERROR: return "domain error";
    case RL_INTERNAL_ERROR: return "internal error";
    }
    return "unknown status";
}

uint64_t rl_default_memory_budget(void) { return default_memory_budget(); }

rl_status rl_spf_table_create(uint64_t limit, uint64_t memory_budget, rl_spf_table** out) {
    return guarded([&] {
        require(out, "out");
        *out = new rl_spf_table{SpfTable::build(limit, budget_or_default(memory_budget))};
    });
}

void rl_spf_table_destroy(rl_spf_table* table) { delete table; }

uint64_t rl_spf_table_limit(const rl_spf_table* table) { return table ? table->table.limit() : 0; }

rl_status rl_spf_table_spf(const rl_spf_table* table, uint64_t n, uint64_t* out) {
    return guarded([&] {
        require(table, "table");
        require(out, "out");
        if (!table->table.contains(n)) throw std::invalid_argument("index outside table range");
        *out = table->table.spf(n);
    });
}

rl_status rl_is_prime(uint64_t n, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = is_prime(n) ? 1 : 0;
    });
}

rl_status rl_factorize(uint64_t n, const rl_spf_table* table, rl_prime_power* factors, size_t capacity, size_t* count) {
    return guarded([&] {
        require(count, "count");
        const Factorization f = factorize(n, unwrap(table));
        *count = f.omega();
        if (f.omega() > capacity) throw std::invalid_argument("factor buffer too small");
        if (f.omega() > 0) require(factors, "factors");
        for (std::size_t i = 0; i < f.omega(); ++i) factors[i] = {f.factors()[i].prime, f.factors()[i].exponent};
    });
}

rl_status rl_rad(uint64_t n, uint64_t* out) {
    return arithmetic_fn(n, out, [](const Factorization& f) { return rad(f); });
}
rl_status rl_euler_phi(uint64_t n, uint64_t* out) {
    return arithmetic_fn(n, out, [](const Factorization& f) { return euler_phi(f); });
}
rl_status rl_carmichael_lambda(uint64_t n, uint64_t* out) {
    return arithmetic_fn(n, out, [](const Factorization& f) { return carmichael_lambda(f); });
}
rl_status rl_kappa(uint64_t n, uint64_t* out) {
    return arithmetic_fn(n, out, [](const Factorization& f) { return kappa(f); });
}

rl_status rl_bound_L(double x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = bound_L(x);
    });
}

rl_status rl_classify(uint64_t n, const rl_spf_table* table, rl_classification* out) {
    return guarded([&] {
        require(out, "out");
        *out = to_c(classify(n, unwrap(table)));
    });
}

rl_status rl_is_k_member(uint64_t n, const rl_spf_table* table, int* out) {
    return predicate(n, table, out, [](u64 v, const SpfTable* t) { return is_k_member(v, t); });
}
rl_status rl_is_carmichael_korselt(uint64_t n, const rl_spf_table* table, int* out) {
    return predicate(n, table, out, [](u64 v, const SpfTable* t) { return is_carmichael_korselt(v, t); });
}
rl_status rl_is_carmichael_lambda(uint64_t n, const rl_spf_table* table, int* out) {
    return predicate(n, table, out, [](u64 v, const SpfTable* t) { return is_carmichael_lambda(v, t); });
}
rl_status rl_is_lehmer(uint64_t n, const rl_spf_table* table, int* out) {
    return predicate(n, table, out, [](u64 v, const SpfTable* t) { return is_lehmer(v, t); });
}
rl_status rl_is_squarefull(uint64_t n, const rl_spf_table* table, int* out) {
    return predicate(n, table, out, [](u64 v, const SpfTable* t) { return is_squarefull(v, t); });
}

rl_status rl_lehmer_order(uint64_t n, const rl_spf_table* table, uint32_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = lehmer_order(n, unwrap(table)).value_or(0);
    });
}

rl_status rl_k2_pair_check(uint64_t p, uint64_t q, int* out) {
    return guarded([&] {
        require(out, "out");
        *out = k2_pair_check(p, q) ? 1 : 0;
    });
}

rl_status rl_squarefull_from_seed(uint64_t d, uint64_t* out) {
    return guarded([&] {
        require(out, "out");
        *out = squarefull_from_seed(d);
    });
}

rl_status rl_class_parse(const char* text, rl_class* out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = from_tag(ClassTag::parse(text));
    });
}

rl_status rl_class_name(rl_class cls, char* buffer, size_t capacity) {
    return guarded([&] {
        require(buffer, "buffer");
        const std::string name = to_tag(cls).name();
        if (name.size() + 1 > capacity) throw std::invalid_argument("name buffer too small");
        std::memcpy(buffer, name.c_str(), name.size() + 1);
    });
}

rl_status rl_count(const rl_plan* plan, const rl_class* classes, size_t n_classes, const uint64_t* thresholds,
                   size_t n_thresholds, const rl_run_options* options, rl_report** out) {
    return guarded([&] {
        require(out, "out");
        if (n_classes > 0) require(classes, "classes");
        std::vector<ClassTag> tags;
        for (size_t i = 0; i < n_classes; ++i) tags.push_back(to_tag(classes[i]));
        auto series = count_classes(to_plan(plan), tags, span_of(thresholds, n_thresholds), to_options(options));
        *out = new rl_report{std::move(series), std::nullopt, std::nullopt, std::nullopt};
    });
}

rl_status rl_count_k_lehmer_totals(const rl_plan* plan, uint32_t k, const uint64_t* thresholds, size_t n_thresholds,
                                   const rl_run_options* options, rl_report** out) {
    return guarded([&] {
        require(out, "out");
        auto rep = count_L_k(to_plan(plan), k, span_of(thresholds, n_thresholds), true, to_options(options));
        *out = new rl_report{{std::move(rep)}, std::nullopt, std::nullopt, std::nullopt};
    });
}

rl_status rl_count_squarefull(const uint64_t* thresholds, size_t n_thresholds, uint64_t memory_budget,
                              rl_report** out) {
    return guarded([&] {
        require(out, "out");
        auto sq = count_squarefull(span_of(thresholds, n_thresholds), budget_or_default(memory_budget));
        *out = new rl_report{{std::move(sq.report)}, std::move(sq.ratios), sq.constant, std::nullopt};
    });
}

rl_status rl_k2_pair_scan(uint64_t x, uint64_t memory_budget, rl_report** out) {
    return guarded([&] {
        require(out, "out");
        auto scan = k2_pair_scan(x, budget_or_default(memory_budget));
        *out = new rl_report{{std::move(scan.report)}, std::nullopt, std::nullopt, scan.bound};
    });
}

void rl_report_destroy(rl_report* report) { delete report; }

size_t rl_report_class_count(const rl_report* report) { return report ? report->series.size() : 0; }

rl_class rl_report_class(const rl_report* report, size_t class_index) {
    if (!report || class_index >= report->series.size()) return {RL_CLASS_K, 0};
    return from_tag(report->series[class_index].tag);
}

size_t rl_report_threshold_count(const rl_report* report) {
    return report && !report->series.empty() ? report->series.front().thresholds.size() : 0;
}

uint64_t rl_report_threshold(const rl_report* report, size_t index) {
    if (index >= rl_report_threshold_count(report)) return 0;
    return report->series.front().thresholds[index];
}

uint64_t rl_report_count(const rl_report* report, size_t class_index, size_t index) {
    if (!report || class_index >= report->series.size()) return 0;
    const auto& counts = report->series[class_index].counts;
    return index < counts.size() ? counts[index] : 0;
}

int rl_report_total(const rl_report* report, size_t class_index, size_t index, uint64_t* out) {
    if (!report || !out || class_index >= report->series.size()) return 0;
    const auto& totals = report->series[class_index].totals;
    if (index >= totals.size()) return 0;
    *out = totals[index];
    return 1;
}

int rl_report_ratio(const rl_report* report, size_t index, double* out) {
    if (!report || !out || !report->ratios || index >= report->ratios->size()) return 0;
    *out = (*report->ratios)[index];
    return 1;
}

int rl_report_constant(const rl_report* report, double* out) {
    if (!report || !out || !report->constant) return 0;
    *out = *report->constant;
    return 1;
}

int rl_report_bound(const rl_report* report, double* out) {
    if (!report || !out || !report->bound) return 0;
    *out = *report->bound;
    return 1;
}

double rl_report_elapsed_seconds(const rl_report* report) {
    return report && !report->series.empty() ? report->series.front().elapsed_seconds : 0.0;
}

rl_status rl_list_members(const rl_plan* plan, rl_class cls, const rl_run_options* options, rl_member_fn emit,
                          void* user) {
    return guarded([&] {
        require(reinterpret_cast<const void*>(emit), "emit");
        list_members(
            to_plan(plan), to_tag(cls),
            [&](const Classification& c) {
                const rl_classification rc = to_c(c);
                return emit(&rc, user) != 0;
            },
            to_options(options));
    });
}

rl_status rl_prime_pair_construction(uint64_t limit_m, rl_pair_list** out) {
    return guarded([&] {
        require(out, "out");
        *out = new rl_pair_list{prime_pair_construction(limit_m)};
    });
}

void rl_pair_list_destroy(rl_pair_list* list) { delete list; }

size_t rl_pair_list_size(const rl_pair_list* list) { return list ? list->construction.pairs.size() : 0; }

size_t rl_pair_list_verified(const rl_pair_list* list) { return list ? list->construction.verified : 0; }

rl_prime_pair rl_pair_list_get(const rl_pair_list* list, size_t index) {
    if (!list || index >= list->construction.pairs.size()) return {};
    const auto& p = list->construction.pairs[index];
    return {p.m, p.p, p.q, p.product, p.member ? 1 : 0};
}

rl_status rl_bound_report(const uint64_t* xs, size_t n_xs, uint64_t segment_size, const rl_run_options* options,
                          rl_bound_row* rows, size_t* n_rows) {
    return guarded([&] {
        require(n_rows, "n_rows");
        if (n_xs > 0) require(rows, "rows");
        const auto table = bound_report(span_of(xs, n_xs),
                                        segment_size == 0 ? SegmentPlan::kDefaultSegmentSize : segment_size,
                                        to_options(options));
        for (std::size_t i = 0; i < table.size(); ++i) {
            const auto& r = table[i];
            rows[i] = {r.x,        r.K,         r.C,         r.K2,       r.L2,        r.K_over_C, r.K_minus_C,
                       r.x_over_L, r.kd2_bound, r.kd3_bound, r.k2_bound, r.lk2_bound, r.lk3_bound};
        }
        *n_rows = table.size();
    });
}

double rl_squarefull_constant(void) { return squarefull_constant(); }

} // extern "C"
