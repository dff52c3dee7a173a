#include "iregress/dataset.hpp"

namespace iregress {

IntervalDataset IntervalDataset::make(std::vector<std::vector<Interval>> predictors,
                                      std::vector<Interval> response,
                                      std::vector<std::string> names) {
    const std::size_t n = response.size();
    if (n < 2) throw TooFewRows("dataset needs at least 2 observations, got " + std::to_string(n));
    for (std::size_t j = 0; j < predictors.size(); ++j) {
        if (predictors[j].size() != n) {
            throw LengthMismatch("predictor column " + std::to_string(j) + " has " +
                                 std::to_string(predictors[j].size()) + " rows, response has " +
                                 std::to_string(n));
        }
    }
    if (!names.empty() && names.size() != predictors.size() + 1) {
        throw LengthMismatch("names must label the p predictors plus the response");
    }
    IntervalDataset d;
    d.predictors_ = std::move(predictors);
    d.response_ = std::move(response);
    d.names_ = std::move(names);
    return d;
}

std::vector<Interval> IntervalDataset::x_row(std::size_t i) const {
    std::vector<Interval> row;
    row.reserve(predictors_.size());
    for (const auto& col : predictors_) row.push_back(col[i]);
    return row;
}

std::string IntervalDataset::predictor_name(std::size_t j) const {
    if (!names_.empty()) return names_[j];
    return "x" + std::to_string(j + 1);
}

std::string IntervalDataset::response_name() const {
    if (!names_.empty()) return names_.back();
    return "y";
}

}  // namespace iregress
