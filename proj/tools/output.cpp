#include "output.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace radlehmer::cli {

namespace {

std::string render_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[400];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    return std::string(buf, res.ptr);
}

std::string quote_if_needed(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else return v;
        },
        cell);
}

bool all_digits(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

Cell infer(const std::string& text, bool quoted) {
    if (quoted) return text;
    if (text.empty()) return std::monostate{};
    if (text == "true") return true;
    if (text == "false") return false;
    if (all_digits(text)) {
        std::uint64_t v = 0;
        auto r = std::from_chars(text.data(), text.data() + text.size(), v);
        if (r.ec == std::errc() && render_csv_cell(v) == text) return v;
    }
    if (text.size() > 1 && text[0] == '-' && all_digits(std::string_view(text).substr(1))) {
        std::int64_t v = 0;
        auto r = std::from_chars(text.data(), text.data() + text.size(), v);
        if (r.ec == std::errc() && render_csv_cell(v) == text) return v;
    }
    if (text == "inf") return std::numeric_limits<double>::infinity();
    if (text == "-inf") return -std::numeric_limits<double>::infinity();
    double d = 0;
    auto r = std::from_chars(text.data(), text.data() + text.size(), d, std::chars_format::fixed);
    if (r.ec == std::errc() && r.ptr == text.data() + text.size() && render_double(d) == text) return d;
    return text;
}

} // namespace

std::string render_csv_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return "";
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, double>) return render_double(v);
            else if constexpr (std::is_same_v<T, std::string>) return quote_if_needed(v);
            else return std::to_string(v);
        },
        cell);
}

RecordWriter::RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns)
    : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i];
        out_ << '\n';
    } else {
        out_ << '[';
    }
}

RecordWriter::~RecordWriter() {
    try {
        finish();
    } catch (...) {
    }
}

void RecordWriter::write(const Row& row) {
    if (finished_) throw std::logic_error("write after finish");
    if (row.size() != columns_.size()) throw std::invalid_argument("row width does not match columns");
    if (format_ == Format::csv) {
        for (std::size_t i = 0; i < row.size(); ++i) out_ << (i ? "," : "") << render_csv_cell(row[i]);
        out_ << '\n';
    } else {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = to_json(row[i]);
        out_ << (rows_ ? "," : "") << obj.dump();
    }
    ++rows_;
}

void RecordWriter::finish() {
    if (finished_) return;
    finished_ = true;
    if (format_ == Format::json) out_ << "]\n";
    out_.flush();
}

void write_table(std::ostream& out, Format format, const Table& table) {
    RecordWriter w(out, format, table.columns);
    for (const auto& row : table.rows) w.write(row);
    w.finish();
}

Table parse_csv(std::string_view text) {
    Table table;
    std::vector<std::pair<std::string, bool>> fields;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    bool header = true;

    auto end_field = [&] {
        fields.emplace_back(std::move(field), quoted);
        field.clear();
        quoted = false;
    };
    auto end_row = [&] {
        end_field();
        if (header) {
            for (auto& f : fields) table.columns.push_back(f.first);
            header = false;
        } else {
            if (fields.size() != table.columns.size()) throw std::invalid_argument("ragged CSV row");
            Row row;
            for (auto& f : fields) row.push_back(infer(f.first, f.second));
            table.rows.push_back(std::move(row));
        }
        fields.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            end_row();
        } else {
            field += c;
        }
    }
    if (in_quotes) throw std::invalid_argument("unterminated quoted CSV field");
    if (!field.empty() || !fields.empty()) end_row();
    return table;
}

} // namespace radlehmer::cli
