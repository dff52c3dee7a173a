#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iregress/ccrm.hpp"
#include "iregress/csv.hpp"
#include "iregress/diagnostics.hpp"
#include "iregress/fit.hpp"
#include "iregress/report.hpp"
#include "iregress/simulation.hpp"

namespace {

using namespace iregress;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoSolution = 2;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << text;
}

struct FitArgs {
    std::string data_path;
    std::string layout = "bounds";
    std::string response = "y";
    std::string predictors;
    std::string out;
};

int run_fit(const FitArgs& args) {
    ColumnSpec spec;
    spec.layout = parse_layout(args.layout);
    spec.response = args.response;
    spec.predictors = split_list(args.predictors);
    IntervalDataset data = load_dataset(args.data_path, spec);

    FitOutcome outcome =
        data.n_predictors() == 1 ? fit_univariate(data) : fit_multivariate(data);
    if (!outcome.ok()) {
        write_text(args.out, no_solution_report_to_json(*outcome.no_solution));
        return kExitNoSolution;
    }
    write_text(args.out, fit_report_to_json(build_fit_report(data, outcome.fit())));
    return kExitOk;
}

struct PredictArgs {
    std::string fit_path;
    std::string data_path;
    std::string layout = "bounds";
    std::string out;
    bool clamp = true;
};

int run_predict(const PredictArgs& args) {
    std::ifstream in(args.fit_path);
    if (!in) throw ConfigError("cannot open fit report '" + args.fit_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    FitReport report = parse_fit_report(buffer.str());

    auto rows = load_predictor_rows(args.data_path, parse_layout(args.layout),
                                    report.predictors);
    std::string out = "y_c,y_r_raw,y_r,y_lo,y_hi,clamped\n";
    for (const auto& row : rows) {
        Prediction p = predict(report.fit, row, args.clamp);
        Interval iv = p.as_interval();
        out += format_double(p.center) + ',' + format_double(p.radius_raw) + ',' +
               format_double(p.radius) + ',' + format_double(iv.lower()) + ',' +
               format_double(iv.upper()) + ',' + (p.clamped ? "1" : "0") + '\n';
    }
    write_text(args.out, out);
    return kExitOk;
}

struct SimulateArgs {
    std::string config_path;
    std::string presets;          // comma list: model1 or 1
    std::string n_list = "100";
    std::size_t reps = 1000;
    std::uint64_t seed = 0;
    std::string compare;          // "ccrm" switches to the comparison study
    double split = 0.8;
    std::string out_dir = ".";
    // custom model parameters (used when no preset is given)
    std::string a_list;
    double b = 5.0;
    double mu = 0.5;
    double sigma_lambda = 2.0;
    double sigma_eta = 0.3;
    std::string xc_law, xr_law, error_law;
    std::string label = "custom";
};

void apply_config_file(SimulateArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw ConfigError("cannot open config file '" + args.config_path + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (eq == std::string::npos) {
            throw ConfigError(args.config_path + ":" + std::to_string(lineno) +
                              ": expected key = value");
        }
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        try {
            if (key == "preset") {
                args.presets = value;
            } else if (key == "n") {
                args.n_list = value;
            } else if (key == "reps" || key == "replications") {
                args.reps = std::stoul(value);
            } else if (key == "seed") {
                args.seed = std::stoull(value);
            } else if (key == "compare") {
                args.compare = value;
            } else if (key == "split") {
                args.split = std::stod(value);
            } else if (key == "out") {
                args.out_dir = value;
            } else if (key == "a") {
                args.a_list = value;
            } else if (key == "b") {
                args.b = std::stod(value);
            } else if (key == "mu") {
                args.mu = std::stod(value);
            } else if (key == "sigma_lambda") {
                args.sigma_lambda = std::stod(value);
            } else if (key == "sigma_eta") {
                args.sigma_eta = std::stod(value);
            } else if (key == "xc_law") {
                args.xc_law = value;
            } else if (key == "xr_law") {
                args.xr_law = value;
            } else if (key == "error_law") {
                args.error_law = value;
            } else if (key == "label") {
                args.label = value;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const std::exception& e) {
            throw ConfigError(args.config_path + ":" + std::to_string(lineno) + ": " + key +
                              ": " + e.what());
        }
    }
}

std::vector<SimulationConfig> build_configs(const SimulateArgs& args) {
    std::vector<SimulationConfig> bases;
    if (!args.presets.empty()) {
        for (const std::string& name : split_list(args.presets)) {
            std::string digits = name;
            if (digits.rfind("model", 0) == 0) digits = digits.substr(5);
            int which = 0;
            try {
                which = std::stoi(digits);
            } catch (const std::exception&) {
                throw ConfigError("preset: expected model1..model6, got '" + name + "'");
            }
            bases.push_back(model_preset(which));
        }
    } else {
        SimulationConfig c;
        c.label = args.label;
        if (!args.a_list.empty()) {
            c.a.clear();
            for (const std::string& s : split_list(args.a_list)) c.a.push_back(std::stod(s));
        }
        c.b = args.b;
        c.mu = args.mu;
        c.sigma_lambda = args.sigma_lambda;
        c.sigma_eta = args.sigma_eta;
        bases.push_back(std::move(c));
    }
    for (SimulationConfig& c : bases) {
        if (!args.xc_law.empty() || !args.xr_law.empty()) {
            if (c.predictor_laws.empty()) c.predictor_laws.resize(c.p());
            for (PredictorLaw& law : c.predictor_laws) {
                if (!args.xc_law.empty()) law.center = DistributionSpec::parse(args.xc_law);
                if (!args.xr_law.empty()) law.radius = DistributionSpec::parse(args.xr_law);
            }
        }
        if (!args.error_law.empty()) {
            if (args.error_law == "normal") {
                c.error_family = DistributionSpec::Family::Normal;
            } else if (args.error_law == "uniform") {
                c.error_family = DistributionSpec::Family::Uniform;
            } else {
                throw ConfigError("error_law: expected normal or uniform, got '" +
                                  args.error_law + "'");
            }
        }
        c.seed = args.seed;
        c.replications = args.reps;
    }

    std::vector<SimulationConfig> configs;
    for (const SimulationConfig& base : bases) {
        for (const std::string& n_text : split_list(args.n_list)) {
            std::size_t n = 0;
            try {
                n = std::stoul(n_text);
            } catch (const std::exception&) {
                throw ConfigError("n: expected a comma list of sizes, got '" + n_text + "'");
            }
            configs.push_back(base.with_n(n));
        }
    }
    if (configs.empty()) throw ConfigError("no simulation configs requested");
    return configs;
}

int run_simulate(const SimulateArgs& args) {
    std::vector<SimulationConfig> configs = build_configs(args);
    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);

    if (!args.compare.empty()) {
        if (args.compare != "ccrm") {
            throw ConfigError("compare: only 'ccrm' is available, got '" + args.compare + "'");
        }
        ComparisonStudyReport report = run_comparison_study(configs, args.reps, args.split);
        write_text((fs::path(args.out_dir) / "comparison_study.csv").string(),
                   comparison_study_to_csv(report));
        write_text((fs::path(args.out_dir) / "comparison_study.json").string(),
                   comparison_study_to_json(report));
        std::cout << "wrote " << (fs::path(args.out_dir) / "comparison_study.{csv,json}").string()
                  << "\n";
    } else {
        ParameterStudyReport report = run_parameter_study(configs, args.reps);
        write_text((fs::path(args.out_dir) / "parameter_study.csv").string(),
                   parameter_study_to_csv(report));
        write_text((fs::path(args.out_dir) / "parameter_study.json").string(),
                   parameter_study_to_json(report));
        std::cout << "wrote " << (fs::path(args.out_dir) / "parameter_study.{csv,json}").string()
                  << "\n";
    }
    return kExitOk;
}

struct PlotArgs {
    std::string fit_path;
    std::string data_path;
    std::string layout = "bounds";
    std::string out_dir = ".";
    std::string response = "y";
    std::string predictors;
};

int run_plot_data(const PlotArgs& args) {
    std::ifstream in(args.fit_path);
    if (!in) throw ConfigError("cannot open fit report '" + args.fit_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    FitReport report = parse_fit_report(buffer.str());

    ColumnSpec spec;
    spec.layout = parse_layout(args.layout);
    spec.response = report.response;
    spec.predictors = report.predictors;
    IntervalDataset data = load_dataset(args.data_path, spec);

    PlotDataFiles files = emit_plot_data(data, report.fit, args.out_dir);
    std::cout << "wrote " << files.rectangles << "\n";
    if (files.line_written) {
        std::cout << "wrote " << files.line << "\n";
    } else {
        std::cout << "line overlay skipped: fit is not univariate\n";
    }
    std::cout << "wrote " << files.residuals << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"least squares regression for interval-valued data"};
    app.require_subcommand(1);

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "fit the interval linear model, emit a JSON report");
    fit_cmd->add_option("--data", fit_args.data_path, "input CSV")->required();
    fit_cmd->add_option("--layout", fit_args.layout, "bounds | center-radius");
    fit_cmd->add_option("--response", fit_args.response, "response variable name");
    fit_cmd->add_option("--predictors", fit_args.predictors,
                        "comma list of predictor names (default: all pairs)");
    fit_cmd->add_option("--out", fit_args.out, "report path (default stdout)");

    PredictArgs predict_args;
    auto* predict_cmd =
        app.add_subcommand("predict", "predict intervals for new data from a fit report");
    predict_cmd->add_option("--fit", predict_args.fit_path, "fit report JSON")->required();
    predict_cmd->add_option("--data", predict_args.data_path, "input CSV")->required();
    predict_cmd->add_option("--layout", predict_args.layout, "bounds | center-radius");
    predict_cmd->add_flag("--clamp,!--no-clamp", predict_args.clamp,
                          "round negative predicted radii up to 0 (default on)");
    predict_cmd->add_option("--out", predict_args.out, "output CSV (default stdout)");

    SimulateArgs sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "run a seeded Monte-Carlo study");
    sim_cmd->add_option("--config", sim_args.config_path, "key = value config file");
    sim_cmd->add_option("--preset", sim_args.presets, "comma list of model presets (model1..6)");
    sim_cmd->add_option("--n", sim_args.n_list, "comma list of sample sizes");
    sim_cmd->add_option("--reps", sim_args.reps, "replications per cell");
    sim_cmd->add_option("--seed", sim_args.seed, "master seed");
    sim_cmd->add_option("--compare", sim_args.compare, "baseline to compare against (ccrm)");
    sim_cmd->add_option("--split", sim_args.split, "training fraction for the comparison study");
    sim_cmd->add_option("--out", sim_args.out_dir, "output directory");
    sim_cmd->add_option("--a", sim_args.a_list, "custom model: comma list of slopes");
    sim_cmd->add_option("--b", sim_args.b, "custom model: center intercept");
    sim_cmd->add_option("--mu", sim_args.mu, "custom model: radius intercept");
    sim_cmd->add_option("--sigma-lambda", sim_args.sigma_lambda, "custom model: center error sd");
    sim_cmd->add_option("--sigma-eta", sim_args.sigma_eta, "custom model: radius error sd");
    sim_cmd->add_option("--xc-law", sim_args.xc_law, "predictor center law, e.g. uniform(0,10)");
    sim_cmd->add_option("--xr-law", sim_args.xr_law, "predictor radius law, e.g. uniform(0.5,2.5)");
    sim_cmd->add_option("--error-law", sim_args.error_law, "error family: normal | uniform");
    sim_cmd->add_option("--label", sim_args.label, "label for custom configs");

    PlotArgs plot_args;
    auto* plot_cmd =
        app.add_subcommand("plot-data", "emit rectangle/line/residual CSVs for plotting");
    plot_cmd->add_option("--fit", plot_args.fit_path, "fit report JSON")->required();
    plot_cmd->add_option("--data", plot_args.data_path, "input CSV")->required();
    plot_cmd->add_option("--layout", plot_args.layout, "bounds | center-radius");
    plot_cmd->add_option("--out", plot_args.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (fit_cmd->parsed()) return run_fit(fit_args);
        if (predict_cmd->parsed()) {
            return run_predict(predict_args);
        }
        if (sim_cmd->parsed()) {
            if (!sim_args.config_path.empty()) {
                // File values first, command-line flags override.
                SimulateArgs merged;
                merged.config_path = sim_args.config_path;
                apply_config_file(merged);
                if (!sim_cmd->get_option("--preset")->empty()) merged.presets = sim_args.presets;
                if (!sim_cmd->get_option("--n")->empty()) merged.n_list = sim_args.n_list;
                if (!sim_cmd->get_option("--reps")->empty()) merged.reps = sim_args.reps;
                if (!sim_cmd->get_option("--seed")->empty()) merged.seed = sim_args.seed;
                if (!sim_cmd->get_option("--compare")->empty()) merged.compare = sim_args.compare;
                if (!sim_cmd->get_option("--split")->empty()) merged.split = sim_args.split;
                if (!sim_cmd->get_option("--out")->empty()) merged.out_dir = sim_args.out_dir;
                if (!sim_cmd->get_option("--a")->empty()) merged.a_list = sim_args.a_list;
                if (!sim_cmd->get_option("--b")->empty()) merged.b = sim_args.b;
                if (!sim_cmd->get_option("--mu")->empty()) merged.mu = sim_args.mu;
                if (!sim_cmd->get_option("--sigma-lambda")->empty()) {
                    merged.sigma_lambda = sim_args.sigma_lambda;
                }
                if (!sim_cmd->get_option("--sigma-eta")->empty()) {
                    merged.sigma_eta = sim_args.sigma_eta;
                }
                if (!sim_cmd->get_option("--xc-law")->empty()) merged.xc_law = sim_args.xc_law;
                if (!sim_cmd->get_option("--xr-law")->empty()) merged.xr_law = sim_args.xr_law;
                if (!sim_cmd->get_option("--error-law")->empty()) {
                    merged.error_law = sim_args.error_law;
                }
                if (!sim_cmd->get_option("--label")->empty()) merged.label = sim_args.label;
                return run_simulate(merged);
            }
            return run_simulate(sim_args);
        }
        if (plot_cmd->parsed()) return run_plot_data(plot_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
