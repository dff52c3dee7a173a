#include "iregress/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace iregress {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_double(const std::string& path, std::size_t row, const std::string& column,
                    const std::string& text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw CsvError(path, row, column, "not a number: '" + text + "'");
    }
    return v;
}

struct ColumnPair {
    std::size_t first = 0;   // _lo or _c column index
    std::size_t second = 0;  // _hi or _r column index
};

}  // namespace

std::string layout_name(CsvLayout layout) {
    return layout == CsvLayout::BoundsPairs ? "bounds" : "center-radius";
}

CsvLayout parse_layout(const std::string& name) {
    if (name == "bounds") return CsvLayout::BoundsPairs;
    if (name == "center-radius") return CsvLayout::CenterRadius;
    throw ConfigError("unknown layout '" + name + "' (expected bounds or center-radius)");
}

IntervalDataset load_dataset(const std::string& path, const ColumnSpec& spec) {
    std::ifstream in(path);
    if (!in) throw CsvError(path, 0, "", "cannot open file");

    std::string line;
    if (!std::getline(in, line)) throw CsvError(path, 0, "", "missing header row");
    std::vector<std::string> header = split_csv_line(line);

    const std::string suffix_a = spec.layout == CsvLayout::BoundsPairs ? "_lo" : "_c";
    const std::string suffix_b = spec.layout == CsvLayout::BoundsPairs ? "_hi" : "_r";

    auto find_column = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? header.size() : static_cast<std::size_t>(it - header.begin());
    };
    auto find_pair = [&](const std::string& var) -> ColumnPair {
        std::size_t a = find_column(var + suffix_a);
        std::size_t b = find_column(var + suffix_b);
        if (a == header.size()) throw CsvError(path, 0, var + suffix_a, "missing column");
        if (b == header.size()) throw CsvError(path, 0, var + suffix_b, "missing column");
        return {a, b};
    };

    std::vector<std::string> predictor_names = spec.predictors;
    if (predictor_names.empty()) {
        // Every complete pair other than the response, in header order.
        for (const std::string& col : header) {
            if (col.size() <= suffix_a.size() ||
                col.compare(col.size() - suffix_a.size(), suffix_a.size(), suffix_a) != 0) {
                continue;
            }
            std::string var = col.substr(0, col.size() - suffix_a.size());
            if (var == spec.response) continue;
            if (find_column(var + suffix_b) != header.size()) predictor_names.push_back(var);
        }
    }

    ColumnPair response_cols = find_pair(spec.response);
    std::vector<ColumnPair> predictor_cols;
    predictor_cols.reserve(predictor_names.size());
    for (const std::string& var : predictor_names) predictor_cols.push_back(find_pair(var));

    std::vector<std::vector<Interval>> xs(predictor_names.size());
    std::vector<Interval> ys;

    auto read_interval = [&](const std::vector<std::string>& fields, std::size_t row,
                             const ColumnPair& cols, const std::string& var) {
        if (cols.first >= fields.size() || cols.second >= fields.size()) {
            throw CsvError(path, row, var, "row has too few fields");
        }
        double a = parse_double(path, row, var + suffix_a, fields[cols.first]);
        double b = parse_double(path, row, var + suffix_b, fields[cols.second]);
        if (spec.layout == CsvLayout::BoundsPairs) {
            if (a > b + kBoundsSlack) {
                throw CsvError(path, row, var, "bounds inverted: lower " + std::to_string(a) +
                                                   " > upper " + std::to_string(b));
            }
            return make_from_bounds(a, b);
        }
        if (b < -kBoundsSlack) {
            throw CsvError(path, row, var + suffix_b,
                           "negative radius " + std::to_string(b));
        }
        return Interval(a, b < 0.0 ? 0.0 : b);
    };

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        std::vector<std::string> fields = split_csv_line(line);
        for (std::size_t j = 0; j < predictor_cols.size(); ++j) {
            xs[j].push_back(read_interval(fields, row, predictor_cols[j], predictor_names[j]));
        }
        ys.push_back(read_interval(fields, row, response_cols, spec.response));
    }
    if (row < 2) throw CsvError(path, 0, "", "need at least 2 data rows, got " +
                                                 std::to_string(row));

    std::vector<std::string> names = predictor_names;
    names.push_back(spec.response);
    return IntervalDataset::make(std::move(xs), std::move(ys), std::move(names));
}

std::vector<std::vector<Interval>> load_predictor_rows(
    const std::string& path, CsvLayout layout, const std::vector<std::string>& predictors) {
    std::ifstream in(path);
    if (!in) throw CsvError(path, 0, "", "cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw CsvError(path, 0, "", "missing header row");
    std::vector<std::string> header = split_csv_line(line);

    const std::string suffix_a = layout == CsvLayout::BoundsPairs ? "_lo" : "_c";
    const std::string suffix_b = layout == CsvLayout::BoundsPairs ? "_hi" : "_r";
    std::vector<ColumnPair> cols;
    for (const std::string& var : predictors) {
        ColumnPair pair;
        bool found_a = false, found_b = false;
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == var + suffix_a) {
                pair.first = c;
                found_a = true;
            } else if (header[c] == var + suffix_b) {
                pair.second = c;
                found_b = true;
            }
        }
        if (!found_a) throw CsvError(path, 0, var + suffix_a, "missing column");
        if (!found_b) throw CsvError(path, 0, var + suffix_b, "missing column");
        cols.push_back(pair);
    }

    std::vector<std::vector<Interval>> rows;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row;
        std::vector<std::string> fields = split_csv_line(line);
        std::vector<Interval> out_row;
        out_row.reserve(predictors.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].first >= fields.size() || cols[j].second >= fields.size()) {
                throw CsvError(path, row, predictors[j], "row has too few fields");
            }
            double a = parse_double(path, row, predictors[j] + suffix_a, fields[cols[j].first]);
            double b = parse_double(path, row, predictors[j] + suffix_b, fields[cols[j].second]);
            if (layout == CsvLayout::BoundsPairs) {
                if (a > b + kBoundsSlack) {
                    throw CsvError(path, row, predictors[j],
                                   "bounds inverted: lower " + std::to_string(a) + " > upper " +
                                       std::to_string(b));
                }
                out_row.push_back(make_from_bounds(a, b));
            } else {
                if (b < -kBoundsSlack) {
                    throw CsvError(path, row, predictors[j] + suffix_b,
                                   "negative radius " + std::to_string(b));
                }
                out_row.push_back(Interval(a, b < 0.0 ? 0.0 : b));
            }
        }
        rows.push_back(std::move(out_row));
    }
    return rows;
}

void write_dataset(const std::string& path, const IntervalDataset& data, CsvLayout layout) {
    std::ofstream out(path);
    if (!out) throw CsvError(path, 0, "", "cannot open file for writing");
    const std::string sa = layout == CsvLayout::BoundsPairs ? "_lo" : "_c";
    const std::string sb = layout == CsvLayout::BoundsPairs ? "_hi" : "_r";

    const std::size_t p = data.n_predictors();
    for (std::size_t j = 0; j < p; ++j) {
        out << data.predictor_name(j) << sa << ',' << data.predictor_name(j) << sb << ',';
    }
    out << data.response_name() << sa << ',' << data.response_name() << sb << '\n';

    auto emit = [&](const Interval& v, bool last) {
        if (layout == CsvLayout::BoundsPairs) {
            out << format_double(v.lower()) << ',' << format_double(v.upper());
        } else {
            out << format_double(v.center) << ',' << format_double(v.radius);
        }
        out << (last ? '\n' : ',');
    };
    for (std::size_t i = 0; i < data.n_obs(); ++i) {
        for (std::size_t j = 0; j < p; ++j) emit(data.predictor(j)[i], false);
        emit(data.response()[i], true);
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace iregress
