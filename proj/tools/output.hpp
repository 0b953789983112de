#pragma once

// Schema-stable record output. CSV: header row, comma separated, LF line
// endings. JSON: one array of objects per document, keys in column order.
// Integers are always written in full; doubles use the shortest fixed-point
// form that round-trips.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace radlehmer::cli {

using Cell = std::variant<std::monostate, std::uint64_t, std::int64_t, double, bool, std::string>;
using Row = std::vector<Cell>;

enum class Format { csv, json };

std::string render_csv_cell(const Cell& cell);

/// Streams rows as they arrive. finish() closes a JSON document; it is also
/// called by the destructor.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format, std::vector<std::string> columns);
    RecordWriter(const RecordWriter&) = delete;
    RecordWriter& operator=(const RecordWriter&) = delete;
    ~RecordWriter();

    void write(const Row& row);
    void finish();

private:
    std::ostream& out_;
    Format format_;
    std::vector<std::string> columns_;
    std::size_t rows_ = 0;
    bool finished_ = false;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<Row> rows;
};

void write_table(std::ostream& out, Format format, const Table& table);

/// Parses CSV written by RecordWriter, inferring cell types. Throws
/// std::invalid_argument on ragged rows or unterminated quotes.
Table parse_csv(std::string_view text);

} // namespace radlehmer::cli
