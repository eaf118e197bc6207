#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lpstat/discrete_dist.hpp"
#include "lpstat/matrix.hpp"

namespace lpstat {

/// Named numeric columns parsed from CSV with a header row. Parsing is
/// strict: locale-independent decimal point, error on any non-numeric cell.
/// Lines starting with '#' are skipped.
struct CsvColumns {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    const std::vector<double>& column(const std::string& name) const;
};

CsvColumns read_csv_columns(std::istream& in);
CsvColumns read_csv_columns_file(const std::string& path);

/// Labeled numeric matrix: first row and first column carry labels, the
/// body is numeric. No normalization is applied.
struct LabeledMatrix {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Matrix values;
};
LabeledMatrix read_csv_matrix(std::istream& in);
LabeledMatrix read_csv_matrix_file(const std::string& path);

/// Contingency table in CSV matrix form: first row and first column carry
/// category labels, the body is numeric (counts or probabilities).
ContingencyTable read_csv_table(std::istream& in);
ContingencyTable read_csv_table_file(const std::string& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace lpstat
