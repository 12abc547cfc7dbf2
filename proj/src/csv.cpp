#include "funcboost/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

namespace funcboost {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    const char* begin = t.data();
    const char* end = begin + t.size();
    const auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end;
}

[[noreturn]] void fail(const std::string& message) { throw DataError(message); }

std::string cell_ref(std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

CurveTable load_curves(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open '" + path + "'");

    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) fail("'" + path + "' is empty");
    if (lines.size() < 2) fail("'" + path + "' has a header but no data rows");

    // Header: grid times, optionally terminated by a response column name.
    const std::vector<std::string> header = split_fields(lines[0]);
    CurveTable table;
    std::size_t grid_size = header.size();
    const std::string last = trim(header.back());
    if (last == "label") {
        table.response = ResponseKind::Label;
        --grid_size;
    } else if (last == "y") {
        table.response = ResponseKind::Scalar;
        --grid_size;
    }
    if (grid_size == 0) fail("'" + path + "': no grid columns in header");

    table.grid.resize(static_cast<Eigen::Index>(grid_size));
    for (std::size_t j = 0; j < grid_size; ++j) {
        double t;
        if (!parse_double(header[j], t)) {
            if (j + 1 == header.size())
                fail("'" + path + "': unknown response column name '" + trim(header[j]) + "'");
            fail("'" + path + "': header " + cell_ref(1, j + 1) + " is not a number: '" +
                 trim(header[j]) + "'");
        }
        table.grid[static_cast<Eigen::Index>(j)] = t;
    }
    for (std::size_t j = 1; j < grid_size; ++j)
        if (!(table.grid[static_cast<Eigen::Index>(j)] >
              table.grid[static_cast<Eigen::Index>(j - 1)]))
            fail("'" + path + "': grid is not strictly increasing between columns " +
                 std::to_string(j) + " and " + std::to_string(j + 1));

    const std::size_t expected = header.size();
    const std::size_t n = lines.size() - 1;
    table.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(grid_size));
    if (table.response != ResponseKind::None) table.y.resize(static_cast<Eigen::Index>(n));

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t line_no = i + 2;
        const std::vector<std::string> fields = split_fields(lines[i + 1]);
        if (fields.size() != expected)
            fail("'" + path + "': line " + std::to_string(line_no) + " has " +
                 std::to_string(fields.size()) + " fields, expected " + std::to_string(expected));
        for (std::size_t j = 0; j < expected; ++j) {
            double v;
            if (!parse_double(fields[j], v))
                fail("'" + path + "': " + cell_ref(line_no, j + 1) + " is not a number: '" +
                     trim(fields[j]) + "'");
            if (j < grid_size) {
                table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            } else {
                if (table.response == ResponseKind::Label && v != 1.0 && v != -1.0)
                    fail("'" + path + "': line " + std::to_string(line_no) +
                         ": label must be -1 or +1, got '" + trim(fields[j]) + "'");
                table.y[static_cast<Eigen::Index>(i)] = v;
            }
        }
    }
    return table;
}

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

void atomic_write_text(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail("cannot write '" + tmp + "'");
        out << contents;
        if (!out) fail("write to '" + tmp + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) fail("cannot replace '" + path + "': " + ec.message());
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Eigen::MatrixXd& rows) {
    if (static_cast<Eigen::Index>(header.size()) != rows.cols())
        throw std::invalid_argument("write_csv: header width mismatch");
    std::ostringstream out;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j) out << ',';
        out << header[j];
    }
    out << '\n';
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            if (j) out << ',';
            out << format_double(rows(i, j));
        }
        out << '\n';
    }
    atomic_write_text(path, out.str());
}

void save_curves(const CurveTable& table, const std::string& path) {
    if (table.values.cols() != table.grid.size())
        throw std::invalid_argument("save_curves: grid/value width mismatch");
    std::vector<std::string> header;
    header.reserve(static_cast<std::size_t>(table.grid.size()) + 1);
    for (Eigen::Index j = 0; j < table.grid.size(); ++j)
        header.push_back(format_double(table.grid[j]));
    Eigen::MatrixXd rows = table.values;
    if (table.response != ResponseKind::None) {
        if (table.y.size() != table.values.rows())
            throw std::invalid_argument("save_curves: response length mismatch");
        header.push_back(table.response == ResponseKind::Label ? "label" : "y");
        rows.conservativeResize(Eigen::NoChange, rows.cols() + 1);
        rows.col(rows.cols() - 1) = table.y;
    }
    write_csv(path, header, rows);
}

}  // namespace funcboost
