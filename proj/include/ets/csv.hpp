#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace ets {

/// Minimal CSV reader: comma separator, optional double-quote quoting
/// with "" escapes, tolerant of CRLF line endings. Rows are returned as
/// raw string fields; all typing happens in the parsers above it.
class CsvReader {
public:
    /// Opens `path`; throws DataError if the file cannot be read.
    explicit CsvReader(const std::string& path);

    /// Reads the next row into `fields`. Returns false at end of input.
    /// Blank lines are skipped. `row_number()` gives the 1-based line of
    /// the row just read.
    bool next(std::vector<std::string>& fields);

    [[nodiscard]] std::size_t row_number() const { return row_number_; }

private:
    std::ifstream in_;
    std::string path_;
    std::size_t line_ = 0;
    std::size_t row_number_ = 0;
};

/// Splits one CSV line (no trailing newline) into fields.
std::vector<std::string> split_csv_line(const std::string& line);

/// Quotes a field for CSV output if it contains a comma, quote or newline.
std::string csv_quote(const std::string& field);

}  // namespace ets
