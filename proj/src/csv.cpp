#include "cheshire/csv.hpp"

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace cheshire {

namespace {

constexpr std::string_view kBaseHeader = "phi,d1_postselected,d1_total,d2_total";
constexpr std::string_view kQuantumColumn = ",quantum_d1";

void append_real(std::string &line, double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    line.append(buf, static_cast<std::size_t>(n));
}

double parse_field(std::string_view field, std::size_t line) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || end != field.data() + field.size()) {
        throw CsvError("csv line " + std::to_string(line) + ": malformed number '" +
                       std::string(field) + "'");
    }
    return value;
}

// Restores the stream's exception mask on scope exit.
class ExceptionMaskGuard {
public:
    ExceptionMaskGuard(std::ostream &s, std::ios::iostate mask) : s_(s), old_(s.exceptions()) {
        s_.exceptions(mask);
    }
    ~ExceptionMaskGuard() { s_.exceptions(old_); }
    ExceptionMaskGuard(const ExceptionMaskGuard &) = delete;
    ExceptionMaskGuard &operator=(const ExceptionMaskGuard &) = delete;

private:
    std::ostream &s_;
    std::ios::iostate old_;
};

} // namespace

void write_csv(const SweepResult &result, std::ostream &sink) {
    ExceptionMaskGuard guard(sink, std::ios::badbit | std::ios::failbit);

    std::string line(kBaseHeader);
    if (result.has_quantum) {
        line += kQuantumColumn;
    }
    line += '\n';
    sink << line;
    for (const auto &row : result.rows) {
        line.clear();
        append_real(line, row.phi);
        line += ',';
        append_real(line, row.d1_postselected);
        line += ',';
        append_real(line, row.d1_total);
        line += ',';
        append_real(line, row.d2_total);
        if (result.has_quantum) {
            line += ',';
            append_real(line, row.quantum_d1);
        }
        line += '\n';
        sink << line;
    }
    sink.flush();
}

SweepResult read_csv(std::istream &source) {
    SweepResult result;
    std::string line;
    if (!std::getline(source, line)) {
        throw CsvError("csv: missing header");
    }
    if (line == std::string(kBaseHeader) + std::string(kQuantumColumn)) {
        result.has_quantum = true;
    } else if (line != kBaseHeader) {
        throw CsvError("csv: unexpected header '" + line + "'");
    }
    const std::size_t columns = result.has_quantum ? 5 : 4;

    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        std::vector<double> fields;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            fields.push_back(parse_field(rest.substr(0, comma), line_no));
            if (comma == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != columns) {
            throw CsvError("csv line " + std::to_string(line_no) + ": expected " +
                           std::to_string(columns) + " fields");
        }
        SweepRow row{fields[0], fields[1], fields[2], fields[3],
                     result.has_quantum ? fields[4] : 0.0};
        result.rows.push_back(row);
    }
    return result;
}

} // namespace cheshire
