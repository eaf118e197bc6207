#include "lpstat/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lpstat/errors.hpp"

namespace lpstat {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // trim surrounding whitespace
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [p, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || p != last)
        throw DataError("non-numeric cell '" + cell + "' at row " + std::to_string(row + 1) +
                        ", column " + std::to_string(col + 1));
    return value;
}

std::vector<std::string> read_content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

const std::vector<double>& CsvColumns::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw DataError("no column named '" + name + "'");
}

CsvColumns read_csv_columns(std::istream& in) {
    auto lines = read_content_lines(in);
    if (lines.empty()) throw DataError("empty input");
    CsvColumns out;
    out.names = split_line(lines[0]);
    if (out.names.empty()) throw DataError("empty header row");
    out.columns.resize(out.names.size());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto cells = split_line(lines[r]);
        if (cells.size() != out.names.size())
            throw DataError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(out.names.size()));
        for (std::size_t c = 0; c < cells.size(); ++c)
            out.columns[c].push_back(parse_cell(cells[c], r, c));
    }
    if (out.columns[0].empty()) throw DataError("empty input");
    return out;
}

CsvColumns read_csv_columns_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return read_csv_columns(in);
}

LabeledMatrix read_csv_matrix(std::istream& in) {
    auto lines = read_content_lines(in);
    if (lines.size() < 2) throw DataError("table needs a header row and at least one data row");
    auto header = split_line(lines[0]);
    if (header.size() < 2) throw DataError("table header needs at least one category label");

    LabeledMatrix out;
    out.col_labels.assign(header.begin() + 1, header.end());
    out.values = Matrix(lines.size() - 1, out.col_labels.size());
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto cells = split_line(lines[r]);
        if (cells.size() != header.size())
            throw DataError("row " + std::to_string(r + 1) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        out.row_labels.push_back(cells[0]);
        for (std::size_t c = 1; c < cells.size(); ++c)
            out.values(r - 1, c - 1) = parse_cell(cells[c], r, c);
    }
    return out;
}

LabeledMatrix read_csv_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return read_csv_matrix(in);
}

ContingencyTable read_csv_table(std::istream& in) {
    auto m = read_csv_matrix(in);
    return ContingencyTable(std::move(m.values), std::move(m.row_labels),
                            std::move(m.col_labels));
}

ContingencyTable read_csv_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    return read_csv_table(in);
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

}  // namespace lpstat
