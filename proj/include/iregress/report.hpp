#pragma once

#include <string>
#include <vector>

#include "iregress/csv.hpp"
#include "iregress/dataset.hpp"
#include "iregress/diagnostics.hpp"
#include "iregress/fit.hpp"
#include "iregress/simulation.hpp"

namespace iregress {

inline constexpr const char* kFitReportSchema = "iregress.fit/1";

struct FitReport {
    FitResult fit;
    Diagnostics diagnostics;
    std::string response;
    std::vector<std::string> predictors;
    std::vector<std::string> warnings;
};

FitReport build_fit_report(const IntervalDataset& data, const FitResult& fit);

// Stable JSON layout pinned by golden tests: {schema_version, model,
// coefficients{a[], b, mu}, branch, objective, diagnostics{...}, warnings[]}.
std::string fit_report_to_json(const FitReport& report);
std::string no_solution_report_to_json(const NoSolutionInfo& info);

// Reads back what fit_report_to_json wrote (for predict / plot-data).
FitReport parse_fit_report(const std::string& json_text);

std::string parameter_study_to_json(const ParameterStudyReport& report);
std::string parameter_study_to_csv(const ParameterStudyReport& report);
std::string comparison_study_to_json(const ComparisonStudyReport& report);
std::string comparison_study_to_csv(const ComparisonStudyReport& report);

struct PlotDataFiles {
    std::string rectangles;  // always written
    std::string line;        // univariate fits only
    std::string residuals;   // always written
    bool line_written = false;
};

// Plain CSV files for external plotting: observation rectangles, the fitted
// line with its +/- mu companions (univariate only), and residuals.
PlotDataFiles emit_plot_data(const IntervalDataset& data, const FitResult& fit,
                             const std::string& out_dir);

}  // namespace iregress
