#include "cli_app.hpp"

#include "output.hpp"
#include "radlehmer/radlehmer.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <limits>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace radlehmer::cli {

namespace {

constexpr std::uint64_t kSlowThreshold = 1'000'000'000;

// Library failure carried up to the command dispatcher.
struct LibraryError : std::runtime_error {
    rl_status status;
    explicit LibraryError(rl_status s) : std::runtime_error(rl_last_error()), status(s) {}
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void check(rl_status s) {
    if (s != RL_OK) throw LibraryError(s);
}

struct ReportDeleter {
    void operator()(rl_report* r) const { rl_report_destroy(r); }
};
using ReportPtr = std::unique_ptr<rl_report, ReportDeleter>;

struct PairListDeleter {
    void operator()(rl_pair_list* p) const { rl_pair_list_destroy(p); }
};
using PairListPtr = std::unique_ptr<rl_pair_list, PairListDeleter>;

struct CommonOptions {
    std::string format = "csv";
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string segment_size = "1000000";
    bool timing = false;
    bool progress = false;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool parallel) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--timing", o.timing, "Append elapsed_seconds to each record");
    if (parallel) {
        cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
        cmd->add_option("--segment-size", o.segment_size, "Integers per sieve segment");
        cmd->add_flag("--progress", o.progress, "Report segment progress on stderr");
    }
}

Format format_of(const CommonOptions& o) { return o.format == "json" ? Format::json : Format::csv; }

void progress_to_stream(size_t done, size_t total, void* user) {
    auto* err = static_cast<std::ostream*>(user);
    if (done == total || done % 16 == 0) *err << "progress: " << done << "/" << total << " segments\n";
}

rl_run_options run_options(const CommonOptions& o, std::ostream& err) {
    rl_run_options opts{};
    opts.workers = o.threads;
    opts.memory_budget = 0;
    if (o.progress) {
        opts.progress = &progress_to_stream;
        opts.progress_user = &err;
    }
    return opts;
}

std::uint64_t segment_size_of(const CommonOptions& o) {
    std::uint64_t s = parse_count(o.segment_size);
    if (s == 0) throw UsageError("--segment-size must be positive");
    return s;
}

rl_plan plan_up_to(std::uint64_t x, const CommonOptions& o) {
    if (x == std::numeric_limits<std::uint64_t>::max()) throw UsageError("limit too large");
    return rl_plan{2, x + 1, segment_size_of(o)};
}

std::string class_name(rl_class c) {
    char buf[32];
    check(rl_class_name(c, buf, sizeof buf));
    return buf;
}

rl_class parse_kind(const std::string& text) {
    rl_class c{};
    if (rl_class_parse(text.c_str(), &c) != RL_OK)
        throw UsageError("unknown --kind '" + text +
                         "' (expected k, carmichael, lehmer, klehmer:<k>, kd:<d>, squarefull or primes)");
    return c;
}

std::uint64_t parse_limit(const std::string& text, std::uint64_t min) {
    std::uint64_t v = parse_count(text);
    if (v < min) throw UsageError("limit must be at least " + std::to_string(min) + ", got " + text);
    return v;
}

const std::vector<std::string> kClassifyColumns = {
    "n",      "prime",  "composite", "omega",      "squarefree", "phi",    "lambda",
    "kappa",  "kappa_divides",       "in_K",       "carmichael", "lehmer", "lehmer_order"};

Row classification_row(const rl_classification& c) {
    Cell order = c.lehmer_order ? Cell{static_cast<std::uint64_t>(c.lehmer_order)} : Cell{std::monostate{}};
    return {c.n,
            static_cast<bool>(c.is_prime),
            static_cast<bool>(c.is_composite),
            static_cast<std::uint64_t>(c.omega),
            static_cast<bool>(c.squarefree),
            c.phi,
            c.lambda,
            c.kappa,
            static_cast<bool>(c.satisfies_kappa_condition),
            static_cast<bool>(c.in_K),
            static_cast<bool>(c.is_carmichael),
            static_cast<bool>(c.is_lehmer),
            order};
}

void with_timing(std::vector<std::string>& columns, const CommonOptions& o) {
    if (o.timing) columns.push_back("elapsed_seconds");
}

// table ---------------------------------------------------------------------

void cmd_table(const std::string& limit_text, bool slow_ok, const CommonOptions& o, std::ostream& out,
               std::ostream& err) {
    const std::uint64_t limit = parse_count(limit_text);
    std::vector<std::uint64_t> thresholds;
    std::uint64_t decade = 100;
    for (int n = 2; n <= 11; ++n, decade *= 10) {
        thresholds.push_back(decade);
        if (decade == limit) break;
    }
    if (thresholds.back() != limit)
        throw UsageError("--limit must be a power of 10 between 1e2 and 1e11, got " + limit_text);
    if (limit >= kSlowThreshold && !slow_ok)
        throw UsageError("--limit " + limit_text + " is a long run; pass --i-know-this-is-slow to proceed");

    const rl_plan plan = plan_up_to(limit, o);
    const rl_class classes[] = {{RL_CLASS_CARMICHAEL, 0}, {RL_CLASS_K, 0}};
    const rl_run_options opts = run_options(o, err);
    rl_report* raw = nullptr;
    check(rl_count(&plan, classes, 2, thresholds.data(), thresholds.size(), &opts, &raw));
    ReportPtr report(raw);

    std::vector<std::string> columns = {"n", "C", "K"};
    with_timing(columns, o);
    RecordWriter w(out, format_of(o), columns);
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
        Row row = {static_cast<std::uint64_t>(j + 2), rl_report_count(report.get(), 0, j),
                   rl_report_count(report.get(), 1, j)};
        if (o.timing) row.push_back(rl_report_elapsed_seconds(report.get()));
        w.write(row);
    }
}

// count / list ----------------------------------------------------------------

void cmd_count(const std::string& kind, const std::string& limit_text, bool totals, const CommonOptions& o,
               std::ostream& out, std::ostream& err) {
    const rl_class cls = parse_kind(kind);
    const std::uint64_t limit = parse_limit(limit_text, 2);
    const std::string name = class_name(cls);
    if (totals && cls.kind != RL_CLASS_K_LEHMER) throw UsageError("--totals applies to --kind klehmer:<k> only");

    rl_report* raw = nullptr;
    std::vector<std::string> columns = {"kind", "x", "count"};
    if (cls.kind == RL_CLASS_SQUAREFULL) {
        check(rl_count_squarefull(&limit, 1, 0, &raw));
        columns.insert(columns.end(), {"ratio", "constant"});
    } else {
        const rl_plan plan = plan_up_to(limit, o);
        const rl_run_options opts = run_options(o, err);
        if (totals) {
            check(rl_count_k_lehmer_totals(&plan, cls.param, &limit, 1, &opts, &raw));
            columns.push_back("total");
        } else {
            check(rl_count(&plan, &cls, 1, &limit, 1, &opts, &raw));
        }
    }
    ReportPtr report(raw);
    with_timing(columns, o);

    Row row = {name, limit, rl_report_count(report.get(), 0, 0)};
    double ratio = 0, constant = 0;
    std::uint64_t total = 0;
    if (rl_report_ratio(report.get(), 0, &ratio) && rl_report_constant(report.get(), &constant)) {
        row.push_back(ratio);
        row.push_back(constant);
    }
    if (totals && rl_report_total(report.get(), 0, 0, &total)) row.push_back(total);
    if (o.timing) row.push_back(rl_report_elapsed_seconds(report.get()));
    RecordWriter w(out, format_of(o), columns);
    w.write(row);
}

struct ListSink {
    RecordWriter* writer;
};

int emit_member(const rl_classification* c, void* user) {
    static_cast<ListSink*>(user)->writer->write(classification_row(*c));
    return 1;
}

void cmd_list(const std::string& kind, const std::string& limit_text, const CommonOptions& o, std::ostream& out,
              std::ostream& err) {
    const rl_class cls = parse_kind(kind);
    const std::uint64_t limit = parse_limit(limit_text, 2);
    const rl_plan plan = plan_up_to(limit, o);
    const rl_run_options opts = run_options(o, err);
    RecordWriter w(out, format_of(o), kClassifyColumns);
    ListSink sink{&w};
    check(rl_list_members(&plan, cls, &opts, &emit_member, &sink));
}

// classify --------------------------------------------------------------------

void cmd_classify(const std::vector<std::string>& values, const CommonOptions& o, std::ostream& out) {
    std::vector<std::uint64_t> ns;
    for (const auto& v : values) {
        std::uint64_t n = 0;
        try {
            n = parse_count(v);
        } catch (const std::invalid_argument&) {
            throw UsageError("not an integer: '" + v + "'");
        }
        if (n < 2 || n >= (std::uint64_t{1} << 63)) throw UsageError("classify needs 2 <= n < 2^63, got " + v);
        ns.push_back(n);
    }
    RecordWriter w(out, format_of(o), kClassifyColumns);
    for (std::uint64_t n : ns) {
        rl_classification c{};
        check(rl_classify(n, nullptr, &c));
        w.write(classification_row(c));
    }
}

// pairs / diagnostics -----------------------------------------------------------

void cmd_pairs(const std::string& limit_text, const std::string& construct_text, const CommonOptions& o,
               std::ostream& out, std::ostream& err) {
    if (limit_text.empty() == construct_text.empty())
        throw UsageError("pairs needs exactly one of --limit or --construct");
    if (!limit_text.empty()) {
        const std::uint64_t x = parse_limit(limit_text, 4);
        rl_report* raw = nullptr;
        check(rl_k2_pair_scan(x, 0, &raw));
        ReportPtr report(raw);
        std::vector<std::string> columns = {"x", "k2_count", "k2_bound_diagnostic"};
        with_timing(columns, o);
        double bound = 0;
        rl_report_bound(report.get(), &bound);
        Row row = {x, rl_report_count(report.get(), 0, 0), x >= 20 ? Cell{bound} : Cell{std::monostate{}}};
        if (o.timing) row.push_back(rl_report_elapsed_seconds(report.get()));
        RecordWriter w(out, format_of(o), columns);
        w.write(row);
        return;
    }
    const std::uint64_t limit_m = parse_limit(construct_text, 2);
    rl_pair_list* raw = nullptr;
    check(rl_prime_pair_construction(limit_m, &raw));
    PairListPtr list(raw);
    RecordWriter w(out, format_of(o), {"m", "p", "q", "product", "member"});
    const std::size_t size = rl_pair_list_size(list.get());
    for (std::size_t i = 0; i < size; ++i) {
        const rl_prime_pair p = rl_pair_list_get(list.get(), i);
        w.write({p.m, p.p, p.q, p.product, static_cast<bool>(p.member)});
    }
    err << "verified " << rl_pair_list_verified(list.get()) << " of " << size << " products as K-members\n";
}

std::vector<std::uint64_t> parse_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(parse_count(text.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

void cmd_diagnostics(const std::string& xs_text, const CommonOptions& o, std::ostream& out, std::ostream& err) {
    const std::vector<std::uint64_t> xs = parse_list(xs_text);
    std::vector<rl_bound_row> rows(xs.size());
    std::size_t n_rows = 0;
    const rl_run_options opts = run_options(o, err);
    check(rl_bound_report(xs.data(), xs.size(), segment_size_of(o), &opts, rows.data(), &n_rows));
    err << "note: bound columns are reference curves with unit constants; they are diagnostics, not checks\n";
    RecordWriter w(out, format_of(o),
                   {"x", "K", "C", "K2", "L2", "K_over_C", "K_minus_C", "x_over_L", "kd2_bound", "kd3_bound",
                    "k2_bound", "lk2_bound", "lk3_bound"});
    for (std::size_t i = 0; i < n_rows; ++i) {
        const auto& r = rows[i];
        w.write({r.x, r.K, r.C, r.K2, r.L2, r.K_over_C, static_cast<std::int64_t>(r.K_minus_C), r.x_over_L,
                 r.kd2_bound, r.kd3_bound, r.k2_bound, r.lk2_bound, r.lk3_bound});
    }
}

} // namespace

std::uint64_t parse_count(const std::string& text) {
    // mantissa digits [. digits] [e exponent]
    std::size_t i = 0;
    std::string digits;
    int frac = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits += text[i++];
            ++frac;
        }
    }
    if (digits.empty()) throw std::invalid_argument("not a number: '" + text + "'");
    int exponent = 0;
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        std::string e;
        if (i < text.size() && text[i] == '+') ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) e += text[i++];
        if (e.empty() || e.size() > 3) throw std::invalid_argument("bad exponent in '" + text + "'");
        exponent = std::stoi(e);
    }
    if (i != text.size()) throw std::invalid_argument("not a number: '" + text + "'");
    int shift = exponent - frac;
    while (shift < 0 && !digits.empty() && digits.back() == '0') {
        digits.pop_back();
        ++shift;
    }
    if (shift < 0) throw std::invalid_argument("not an integer: '" + text + "'");
    std::uint64_t v = 0;
    auto mul_add = [&](std::uint64_t m, std::uint64_t a) {
        if (__builtin_mul_overflow(v, m, &v) || __builtin_add_overflow(v, a, &v))
            throw std::invalid_argument("value does not fit 64 bits: '" + text + "'");
    };
    for (char c : digits) mul_add(10, static_cast<std::uint64_t>(c - '0'));
    for (int k = 0; k < shift; ++k) mul_add(10, 0);
    return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Count and classify Lehmer-type composite numbers", "radlehmer"};
    app.require_subcommand(1);

    CommonOptions table_o, count_o, list_o, classify_o, pairs_o, diag_o;
    std::string table_limit, count_kind, count_limit, list_kind, list_limit, pairs_limit, pairs_construct, diag_xs;
    bool slow_ok = false, totals = false;
    std::vector<std::string> classify_values;

    auto* table = app.add_subcommand("table", "Values of C(10^n) and K(10^n) for each decade up to --limit");
    table->add_option("--limit", table_limit, "Power of ten, 1e2..1e11")->required();
    table->add_flag("--i-know-this-is-slow", slow_ok, "Allow limits of 1e9 and above");
    add_common(table, table_o, true);

    auto* count = app.add_subcommand("count", "Count members of a class up to --limit");
    count->add_option("--kind", count_kind, "k|carmichael|lehmer|klehmer:<k>|kd:<d>|squarefull|primes")->required();
    count->add_option("--limit", count_limit, "Upper bound (inclusive)")->required();
    count->add_flag("--totals", totals, "With klehmer:<k>, also emit L_k(x) + pi(x) + 1");
    add_common(count, count_o, true);

    auto* list = app.add_subcommand("list", "List members of a class up to --limit in ascending order");
    list->add_option("--kind", list_kind, "k|carmichael|lehmer|klehmer:<k>|kd:<d>|squarefull|primes")->required();
    list->add_option("--limit", list_limit, "Upper bound (inclusive)")->required();
    add_common(list, list_o, true);

    auto* classify = app.add_subcommand("classify", "Full classification of each argument");
    classify->add_option("n", classify_values, "Integers 2 <= n < 2^63")->required();
    add_common(classify, classify_o, false);

    auto* pairs = app.add_subcommand("pairs", "Two-prime members: bucket scan or the (m+1)(2m+1) construction");
    pairs->add_option("--limit", pairs_limit, "Count pq <= limit with rad(p-1) = rad(q-1)");
    pairs->add_option("--construct", pairs_construct, "List products (m+1)(2m+1) for even m up to this value");
    add_common(pairs, pairs_o, false);

    auto* diag = app.add_subcommand("diagnostics", "Empirical counts beside asymptotic reference curves");
    diag->add_option("--x-values", diag_xs, "Comma-separated x values, each >= 20")->required();
    add_common(diag, diag_o, true);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*table) cmd_table(table_limit, slow_ok, table_o, out, err);
        else if (*count) cmd_count(count_kind, count_limit, totals, count_o, out, err);
        else if (*list) cmd_list(list_kind, list_limit, list_o, out, err);
        else if (*classify) cmd_classify(classify_values, classify_o, out);
        else if (*pairs) cmd_pairs(pairs_limit, pairs_construct, pairs_o, out, err);
        else if (*diag) cmd_diagnostics(diag_xs, diag_o, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const LibraryError& e) {
        err << "error: " << e.what() << "\n";
        switch (e.status) {
        case RL_BUDGET_EXCEEDED:
            err << "hint: set RADLEHMER_MEMORY_BUDGET (bytes) to allow larger runs\n";
            return kExitResource;
        case RL_INVALID_ARGUMENT:
        case RL_DOMAIN_ERROR:
        case RL_OVERFLOW: return kExitUsage;
        default: return kExitFailure;
        }
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace radlehmer::cli
