#pragma once

#include <string>
#include <vector>

#include "iregress/dataset.hpp"

namespace iregress {

// Two explicit column layouts; never auto-detected, because reading a radius
// column as an upper bound corrupts an analysis silently.
//   BoundsPairs:  <name>_lo, <name>_hi
//   CenterRadius: <name>_c,  <name>_r
enum class CsvLayout { BoundsPairs, CenterRadius };

struct ColumnSpec {
    CsvLayout layout = CsvLayout::BoundsPairs;
    std::string response = "y";
    // Empty means: every other complete column pair, in header order.
    std::vector<std::string> predictors;
};

class CsvError : public Error {
public:
    CsvError(std::string path, std::size_t row, std::string column, const std::string& reason)
        : Error(path + (row ? ":" + std::to_string(row) : "") +
                (column.empty() ? "" : " [" + column + "]") + ": " + reason),
          path(std::move(path)),
          row(row),
          column(std::move(column)) {}
    std::string path;
    std::size_t row = 0;  // 1-based data row, 0 when not row-specific
    std::string column;
};

IntervalDataset load_dataset(const std::string& path, const ColumnSpec& spec);

// Prediction input: named predictor pairs only, any number of rows
// (including zero). Extra columns are ignored.
std::vector<std::vector<Interval>> load_predictor_rows(
    const std::string& path, CsvLayout layout, const std::vector<std::string>& predictors);

void write_dataset(const std::string& path, const IntervalDataset& data, CsvLayout layout);

// 17 significant digits: loses nothing on a double round-trip.
std::string format_double(double v);

std::string layout_name(CsvLayout layout);
CsvLayout parse_layout(const std::string& name);

}  // namespace iregress
