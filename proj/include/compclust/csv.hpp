#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace compclust::csv {

struct Row {
    std::vector<std::string> fields;
    std::size_t line_no = 0;  // 1-based line of the record's first physical line
};

// Streaming reader for delimited text. The delimiter is sniffed from the
// first line: tab if one is present, comma otherwise. Quoted fields follow
// the usual CSV rules ("" escapes a quote, quoted fields may span lines).
class Reader {
public:
    explicit Reader(std::istream& in);

    // Reads the next record into `out`. Returns false at end of input.
    // Blank lines are skipped. Throws ValidationError on an unterminated
    // quoted field.
    bool next(Row& out);

    char delimiter() const { return delim_; }

private:
    std::istream& in_;
    char delim_ = ',';
    bool sniffed_ = false;
    std::size_t line_ = 0;

    bool read_physical_line(std::string& out);
};

// Quotes `field` if it contains the delimiter, a quote, or a newline.
std::string escape(const std::string& field, char delim);

void write_row(std::ostream& os, const std::vector<std::string>& fields, char delim = ',');

}  // namespace compclust::csv
