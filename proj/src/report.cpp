#include "iregress/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace iregress {

using nlohmann::json;

FitReport build_fit_report(const IntervalDataset& data, const FitResult& fit) {
    FitReport report;
    report.fit = fit;
    report.diagnostics = compute_diagnostics(data, fit);
    report.response = data.response_name();
    for (std::size_t j = 0; j < data.n_predictors(); ++j) {
        report.predictors.push_back(data.predictor_name(j));
    }
    if (report.diagnostics.neg_radius_count > 0) {
        report.warnings.push_back(std::to_string(report.diagnostics.neg_radius_count) +
                                  " fitted radii are negative before clamping");
    }
    if (fit.ambiguous_minimum) {
        report.warnings.push_back(
            "multiple sign patterns tie the minimum objective; reporting the first in "
            "lexicographic order");
    }
    return report;
}

std::string fit_report_to_json(const FitReport& report) {
    json j;
    j["schema_version"] = kFitReportSchema;
    j["status"] = "ok";
    j["model"] = {{"response", report.response}, {"predictors", report.predictors}};
    j["coefficients"] = {{"a", report.fit.a}, {"b", report.fit.b}, {"mu", report.fit.mu}};
    j["branch"] = report.fit.branch.to_string();
    j["objective"] = report.fit.objective;
    j["diagnostics"] = {{"sst", report.diagnostics.sst},
                        {"sse", report.diagnostics.sse},
                        {"ssr", report.diagnostics.ssr},
                        {"r2", report.diagnostics.r2},
                        {"sigma2_lambda", report.diagnostics.sigma2_lambda},
                        {"sigma2_eta", report.diagnostics.sigma2_eta},
                        {"neg_radius_bound_mean", report.diagnostics.neg_radius_bound_mean},
                        {"neg_radius_count", report.diagnostics.neg_radius_count}};
    j["warnings"] = report.warnings;
    return j.dump(2) + "\n";
}

std::string no_solution_report_to_json(const NoSolutionInfo& info) {
    json j;
    j["schema_version"] = kFitReportSchema;
    j["status"] = "no_solution";
    j["reason"] = info.reason;
    return j.dump(2) + "\n";
}

FitReport parse_fit_report(const std::string& json_text) {
    json j = json::parse(json_text);
    if (j.value("schema_version", "") != kFitReportSchema) {
        throw ConfigError("fit report schema mismatch: expected " +
                          std::string(kFitReportSchema) + ", got '" +
                          j.value("schema_version", "<missing>") + "'");
    }
    if (j.value("status", "") != "ok") {
        throw ConfigError("fit report does not contain a solution (status '" +
                          j.value("status", "<missing>") + "')");
    }
    FitReport report;
    report.response = j["model"]["response"].get<std::string>();
    report.predictors = j["model"]["predictors"].get<std::vector<std::string>>();
    report.fit.a = j["coefficients"]["a"].get<std::vector<double>>();
    report.fit.b = j["coefficients"]["b"].get<double>();
    report.fit.mu = j["coefficients"]["mu"].get<double>();
    report.fit.objective = j["objective"].get<double>();
    report.fit.sigma2_lambda = j["diagnostics"]["sigma2_lambda"].get<double>();
    report.fit.sigma2_eta = j["diagnostics"]["sigma2_eta"].get<double>();
    std::string branch = j["branch"].get<std::string>();
    if (branch == "plus") {
        report.fit.branch.kind = Branch::Kind::PlusHalfSpace;
    } else if (branch == "minus") {
        report.fit.branch.kind = Branch::Kind::MinusHalfSpace;
    } else {
        report.fit.branch.kind = Branch::Kind::SignPattern;
        for (char c : branch.substr(branch.find(':') + 1)) {
            report.fit.branch.signs.push_back(c == '+' ? 1 : -1);
        }
    }
    return report;
}

namespace {

json metric_to_json(const MetricSummary& m) {
    return {{"mae", m.mae}, {"mae_se", m.mae_se}, {"me", m.me}, {"me_se", m.me_se}};
}

json amse_to_json(const AmseSummary& a) {
    return {{"center", a.center},   {"center_se", a.center_se}, {"radius", a.radius},
            {"radius_se", a.radius_se}, {"average", a.average}, {"average_se", a.average_se}};
}

}  // namespace

std::string parameter_study_to_json(const ParameterStudyReport& report) {
    json j;
    j["schema_version"] = "iregress.parameter_study/1";
    j["seed"] = report.seed;
    j["replications"] = report.replications;
    j["cells"] = json::array();
    for (const auto& c : report.cells) {
        j["cells"].push_back({{"model", c.model},
                              {"n", c.n},
                              {"replications", c.replications},
                              {"used", c.used},
                              {"no_solution", c.no_solution},
                              {"true_a", c.true_a},
                              {"true_b", c.true_b},
                              {"true_mu", c.true_mu},
                              {"a", metric_to_json(c.a)},
                              {"b", metric_to_json(c.b)},
                              {"mu", metric_to_json(c.mu)},
                              {"p_wrong_hat", c.p_wrong_hat},
                              {"predicted_me_a", c.predicted_me_a},
                              {"me_minus_predicted", c.me_minus_predicted},
                              {"me_minus_predicted_se", c.me_minus_predicted_se},
                              {"redraw_rate", c.redraw_rate},
                              {"eta_mean_shift", c.eta_mean_shift}});
    }
    return j.dump(2) + "\n";
}

std::string parameter_study_to_csv(const ParameterStudyReport& report) {
    std::string out =
        "model,n,replications,used,no_solution,true_a,true_b,true_mu,"
        "mae_a,mae_a_se,me_a,me_a_se,mae_b,mae_b_se,me_b,me_b_se,"
        "mae_mu,mae_mu_se,me_mu,me_mu_se,p_wrong_hat,predicted_me_a,"
        "me_minus_predicted,me_minus_predicted_se,redraw_rate,eta_mean_shift\n";
    for (const auto& c : report.cells) {
        out += c.model + ',' + std::to_string(c.n) + ',' + std::to_string(c.replications) + ',' +
               std::to_string(c.used) + ',' + std::to_string(c.no_solution) + ',';
        for (double v : {c.true_a, c.true_b, c.true_mu}) out += format_double(v) + ',';
        for (const MetricSummary* m : {&c.a, &c.b, &c.mu}) {
            out += format_double(m->mae) + ',' + format_double(m->mae_se) + ',' +
                   format_double(m->me) + ',' + format_double(m->me_se) + ',';
        }
        out += format_double(c.p_wrong_hat) + ',' + format_double(c.predicted_me_a) + ',' +
               format_double(c.me_minus_predicted) + ',' +
               format_double(c.me_minus_predicted_se) + ',' + format_double(c.redraw_rate) +
               ',' + format_double(c.eta_mean_shift) + '\n';
    }
    return out;
}

std::string comparison_study_to_json(const ComparisonStudyReport& report) {
    json j;
    j["schema_version"] = "iregress.comparison_study/1";
    j["seed"] = report.seed;
    j["replications"] = report.replications;
    j["split"] = report.split;
    j["cells"] = json::array();
    for (const auto& c : report.cells) {
        j["cells"].push_back({{"model", c.model},
                              {"n", c.n},
                              {"replications", c.replications},
                              {"used", c.used},
                              {"no_solution", c.no_solution},
                              {"degenerate_validation", c.degenerate_validation},
                              {"ours", amse_to_json(c.ours)},
                              {"ccrm", amse_to_json(c.ccrm)},
                              {"redraw_rate", c.redraw_rate}});
    }
    return j.dump(2) + "\n";
}

std::string comparison_study_to_csv(const ComparisonStudyReport& report) {
    std::string out =
        "model,n,replications,used,no_solution,degenerate_validation,"
        "ours_center,ours_center_se,ours_radius,ours_radius_se,ours_average,ours_average_se,"
        "ccrm_center,ccrm_center_se,ccrm_radius,ccrm_radius_se,ccrm_average,ccrm_average_se,"
        "redraw_rate\n";
    for (const auto& c : report.cells) {
        out += c.model + ',' + std::to_string(c.n) + ',' + std::to_string(c.replications) + ',' +
               std::to_string(c.used) + ',' + std::to_string(c.no_solution) + ',' +
               std::to_string(c.degenerate_validation) + ',';
        for (const AmseSummary* a : {&c.ours, &c.ccrm}) {
            out += format_double(a->center) + ',' + format_double(a->center_se) + ',' +
                   format_double(a->radius) + ',' + format_double(a->radius_se) + ',' +
                   format_double(a->average) + ',' + format_double(a->average_se) + ',';
        }
        out += format_double(c.redraw_rate) + '\n';
    }
    return out;
}

PlotDataFiles emit_plot_data(const IntervalDataset& data, const FitResult& fit,
                             const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    PlotDataFiles files;
    files.rectangles = (fs::path(out_dir) / "rectangles.csv").string();
    files.line = (fs::path(out_dir) / "line.csv").string();
    files.residuals = (fs::path(out_dir) / "residuals.csv").string();

    {
        std::ofstream out(files.rectangles);
        out << "predictor,x_lo,x_hi,y_lo,y_hi\n";
        for (std::size_t j = 0; j < data.n_predictors(); ++j) {
            for (std::size_t i = 0; i < data.n_obs(); ++i) {
                const Interval& x = data.predictor(j)[i];
                const Interval& y = data.response()[i];
                out << data.predictor_name(j) << ',' << format_double(x.lower()) << ','
                    << format_double(x.upper()) << ',' << format_double(y.lower()) << ','
                    << format_double(y.upper()) << '\n';
            }
        }
    }

    if (fit.a.size() == 1) {
        double x_min = data.predictor(0)[0].lower();
        double x_max = data.predictor(0)[0].upper();
        for (const Interval& x : data.predictor(0)) {
            x_min = std::min(x_min, x.lower());
            x_max = std::max(x_max, x.upper());
        }
        std::ofstream out(files.line);
        out << "x,y_hat,y_hat_plus_mu,y_hat_minus_mu\n";
        for (double x : {x_min, x_max}) {
            double y = fit.a[0] * x + fit.b;
            out << format_double(x) << ',' << format_double(y) << ','
                << format_double(y + fit.mu) << ',' << format_double(y - fit.mu) << '\n';
        }
        files.line_written = true;
    }

    {
        const Residuals res = residuals(data, fit);
        std::ofstream out(files.residuals);
        out << "residual_center,residual_radius\n";
        for (std::size_t i = 0; i < res.center.size(); ++i) {
            out << format_double(res.center[i]) << ',' << format_double(res.radius[i]) << '\n';
        }
    }
    return files;
}

}  // namespace iregress
