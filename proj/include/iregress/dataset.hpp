#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iregress/errors.hpp"
#include "iregress/interval.hpp"

namespace iregress {

// n observations of (X_1, ..., X_p, Y) interval tuples, stored by column.
// Immutable after construction; fitting never mutates it.
class IntervalDataset {
public:
    // predictors: p columns of n intervals each; response: n intervals.
    // names, when given, label the predictors followed by the response.
    static IntervalDataset make(std::vector<std::vector<Interval>> predictors,
                                std::vector<Interval> response,
                                std::vector<std::string> names = {});

    std::size_t n_obs() const { return response_.size(); }
    std::size_t n_predictors() const { return predictors_.size(); }

    const std::vector<Interval>& predictor(std::size_t j) const { return predictors_[j]; }
    const std::vector<Interval>& response() const { return response_; }

    // Row view: x_row(i)[j] == predictor(j)[i].
    std::vector<Interval> x_row(std::size_t i) const;

    const std::vector<std::string>& names() const { return names_; }
    std::string predictor_name(std::size_t j) const;
    std::string response_name() const;

private:
    IntervalDataset() = default;
    std::vector<std::vector<Interval>> predictors_;
    std::vector<Interval> response_;
    std::vector<std::string> names_;
};

}  // namespace iregress
