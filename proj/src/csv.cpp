#include "compclust/csv.hpp"

#include <istream>
#include <ostream>

#include "compclust/errors.hpp"

namespace compclust::csv {

Reader::Reader(std::istream& in) : in_(in) {}

bool Reader::read_physical_line(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
}

bool Reader::next(Row& out) {
    std::string line;
    // Skip blank lines between records.
    do {
        if (!read_physical_line(line)) return false;
    } while (line.empty());

    if (!sniffed_) {
        delim_ = (line.find('\t') != std::string::npos) ? '\t' : ',';
        sniffed_ = true;
    }

    out.fields.clear();
    out.line_no = line_;

    std::string field;
    bool in_quotes = false;
    std::size_t i = 0;
    while (true) {
        if (i >= line.size()) {
            if (in_quotes) {
                // Quoted field continues on the next physical line.
                if (!read_physical_line(line)) {
                    throw ValidationError("line " + std::to_string(out.line_no) +
                                          ": unterminated quoted field");
                }
                field += '\n';
                i = 0;
                continue;
            }
            break;
        }
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"' && field.empty()) {
            in_quotes = true;
        } else if (c == delim_) {
            out.fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
        ++i;
    }
    out.fields.push_back(std::move(field));
    return true;
}

std::string escape(const std::string& field, char delim) {
    bool needs_quotes = field.find(delim) != std::string::npos ||
                        field.find('"') != std::string::npos ||
                        field.find('\n') != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields, char delim) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << delim;
        os << escape(fields[i], delim);
    }
    os << '\n';
}

}  // namespace compclust::csv
