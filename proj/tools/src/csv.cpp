#include "slowfast_cli/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "slowfast/error.hpp"

namespace slowfast::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    // to_chars ignores the C locale, unlike printf
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

double parse_number(std::string_view s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw Error(ErrorKind::InvalidArgument, "not a number: '" + std::string(s) + "'");
    }
    return v;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw Error(ErrorKind::InvalidArgument, "no CSV column named '" + std::string(name) + "'");
}

const std::string& CsvTable::at(std::size_t row, std::string_view name) const {
    return rows.at(row).at(column(name));
}

namespace {

void write_field(std::ostream& os, const std::string& f) {
    if (f.find_first_of(",\"\r\n") == std::string::npos) {
        os << f;
        return;
    }
    os << '"';
    for (char c : f) {
        if (c == '"') os << '"';
        os << c;
    }
    os << '"';
}

void write_record(std::ostream& os, const std::vector<std::string>& rec) {
    for (std::size_t i = 0; i < rec.size(); ++i) {
        if (i) os << ',';
        write_field(os, rec[i]);
    }
    os << '\n';
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
    write_record(os, table.header);
    for (const auto& r : table.rows) write_record(os, r);
}

std::string to_csv(const CsvTable& table) {
    std::ostringstream os;
    write_csv(os, table);
    return os.str();
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    const auto end_record = [&] {
        rec.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(rec));
        rec.clear();
        field_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty()) throw Error(ErrorKind::InvalidArgument, "stray quote in CSV field");
            quoted = true;
            field_started = true;
            break;
        case ',':
            rec.push_back(std::move(field));
            field.clear();
            field_started = true;
            break;
        case '\r':
            break;
        case '\n':
            end_record();
            break;
        default:
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw Error(ErrorKind::InvalidArgument, "unterminated quoted CSV field");
    if (field_started || !rec.empty()) end_record();

    if (records.empty()) throw Error(ErrorKind::InvalidArgument, "empty CSV");
    CsvTable t;
    t.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size()) {
            std::ostringstream os;
            os << "CSV row " << r << " has " << records[r].size() << " fields, header has "
               << t.header.size();
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

CsvTable read_csv(std::istream& is) {
    const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return parse_csv(text);
}

}  // namespace slowfast::cli
