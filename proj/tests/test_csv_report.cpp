#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iregress/csv.hpp"
#include "iregress/fit.hpp"
#include "iregress/report.hpp"
#include "iregress/rng.hpp"
#include "test_support.hpp"

using namespace iregress;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "iregress_tests";
    fs::create_directories(dir);
    return dir / name;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("minimal bounds file round trip") {
    fs::path p = temp_file("mini.csv");
    write_file(p, "x_lo,x_hi,y_lo,y_hi\n0,2,5,9\n1,3,7,11\n");
    IntervalDataset d = load_dataset(p.string(), ColumnSpec{});
    CHECK(d.n_obs() == 2);
    CHECK(d.n_predictors() == 1);
    CHECK(d.predictor(0)[0].center == 1.0);
    CHECK(d.response()[1].upper() == 11.0);
    CHECK(d.predictor_name(0) == "x");
}

TEST_CASE("inverted bounds are rejected with the row number") {
    fs::path p = temp_file("inverted.csv");
    write_file(p, "x_lo,x_hi,y_lo,y_hi\n0,2,5,9\n1,3,7,11\n5,3,7,11\n");
    try {
        load_dataset(p.string(), ColumnSpec{});
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.row == 3);
        CHECK(std::string(e.what()).find("inverted") != std::string::npos);
    }
}

TEST_CASE("negative radius in center-radius layout names the column") {
    fs::path p = temp_file("negradius.csv");
    write_file(p, "x_c,x_r,y_c,y_r\n0,1,5,2\n1,1,7,-0.5\n4,1,7,1\n");
    ColumnSpec spec;
    spec.layout = CsvLayout::CenterRadius;
    try {
        load_dataset(p.string(), spec);
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.column == "y_r");
        CHECK(e.row == 2);
    }
}

TEST_CASE("missing column is reported by name") {
    fs::path p = temp_file("missing.csv");
    write_file(p, "x_lo,x_hi,y_lo\n0,2,5\n1,3,7\n");
    try {
        load_dataset(p.string(), ColumnSpec{});
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.column == "y_hi");
    }
}

TEST_CASE("malformed numbers carry row and column context") {
    fs::path p = temp_file("badnum.csv");
    write_file(p, "x_lo,x_hi,y_lo,y_hi\n0,2,5,9\n1,oops,7,11\n");
    try {
        load_dataset(p.string(), ColumnSpec{});
        FAIL("expected CsvError");
    } catch (const CsvError& e) {
        CHECK(e.row == 2);
        CHECK(e.column == "x_hi");
    }
}

TEST_CASE("load-write-load is value identical in both layouts") {
    RngStream rng(51, 0);
    testsupport::ModelSpec spec;
    spec.a = {1.3, -0.7};
    spec.mu = 0.4;
    spec.sigma_lambda = 1.0;
    spec.sigma_eta = 0.2;
    IntervalDataset original = testsupport::make_model_data(spec, 25, rng);

    for (CsvLayout layout : {CsvLayout::BoundsPairs, CsvLayout::CenterRadius}) {
        fs::path p = temp_file(std::string("roundtrip_") + layout_name(layout) + ".csv");
        write_dataset(p.string(), original, layout);
        ColumnSpec cs;
        cs.layout = layout;
        IntervalDataset loaded = load_dataset(p.string(), cs);
        REQUIRE(loaded.n_obs() == original.n_obs());
        REQUIRE(loaded.n_predictors() == original.n_predictors());
        for (std::size_t j = 0; j < original.n_predictors(); ++j) {
            for (std::size_t i = 0; i < original.n_obs(); ++i) {
                CHECK(loaded.predictor(j)[i].center ==
                      doctest::Approx(original.predictor(j)[i].center).epsilon(1e-15));
                CHECK(loaded.predictor(j)[i].radius ==
                      doctest::Approx(original.predictor(j)[i].radius).epsilon(1e-15));
            }
        }
        // Bounds layout reconstructs (center, radius) from (lo, hi); one
        // rounding step of slack. Center-radius is bit exact.
        if (layout == CsvLayout::CenterRadius) {
            for (std::size_t i = 0; i < original.n_obs(); ++i) {
                CHECK(loaded.response()[i] == original.response()[i]);
            }
        }
    }
}

TEST_CASE("predictor row loader tolerates empty data and extra columns") {
    fs::path p = temp_file("predrows.csv");
    write_file(p, "extra,x_lo,x_hi\n");
    auto rows = load_predictor_rows(p.string(), CsvLayout::BoundsPairs, {"x"});
    CHECK(rows.empty());

    write_file(p, "extra,x_lo,x_hi\n9,0,2\n9,1,3\n");
    rows = load_predictor_rows(p.string(), CsvLayout::BoundsPairs, {"x"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0].center == 2.0);

    CHECK_THROWS_AS(load_predictor_rows(p.string(), CsvLayout::BoundsPairs, {"z"}), CsvError);
}

TEST_CASE("fit report JSON round trips through the parser") {
    RngStream rng(52, 0);
    testsupport::ModelSpec spec;
    spec.a = {2.0};
    spec.mu = 0.5;
    spec.sigma_lambda = 1.0;
    spec.sigma_eta = 0.2;
    IntervalDataset data = testsupport::make_model_data(spec, 30, rng);
    FitOutcome out = fit_univariate(data);
    REQUIRE(out.ok());
    FitReport report = build_fit_report(data, out.fit());
    std::string json_text = fit_report_to_json(report);

    FitReport parsed = parse_fit_report(json_text);
    CHECK(parsed.fit.a == report.fit.a);
    CHECK(parsed.fit.b == report.fit.b);
    CHECK(parsed.fit.mu == report.fit.mu);
    CHECK(parsed.fit.sigma2_eta == report.fit.sigma2_eta);
    CHECK(parsed.fit.branch.kind == report.fit.branch.kind);
    CHECK(parsed.predictors == report.predictors);

    CHECK_THROWS_AS(parse_fit_report("{\"schema_version\":\"other/9\"}"), ConfigError);
}

TEST_CASE("fit report layout is pinned by the golden file") {
    ColumnSpec spec;
    IntervalDataset data =
        load_dataset(std::string(IREGRESS_TEST_DATA_DIR) + "/uni_noiseless.csv", spec);
    FitOutcome out = fit_univariate(data);
    REQUIRE(out.ok());
    std::string produced = fit_report_to_json(build_fit_report(data, out.fit()));
    std::string golden = read_file(std::string(IREGRESS_TEST_DATA_DIR) + "/golden_fit_report.json");
    CHECK(produced == golden);
}

TEST_CASE("plot data files have the documented headers") {
    RngStream rng(53, 0);
    testsupport::ModelSpec spec;
    spec.a = {2.0};
    spec.b = 5.0;
    spec.mu = 0.0;
    IntervalDataset data = testsupport::make_model_data(spec, 10, rng);
    FitOutcome out = fit_univariate(data);
    REQUIRE(out.ok());

    fs::path dir = temp_file("plotdir");
    PlotDataFiles files = emit_plot_data(data, out.fit(), dir.string());
    CHECK(files.line_written);
    std::string rects = read_file(files.rectangles);
    CHECK(rects.rfind("predictor,x_lo,x_hi,y_lo,y_hi\n", 0) == 0);
    std::string line = read_file(files.line);
    CHECK(line.rfind("x,y_hat,y_hat_plus_mu,y_hat_minus_mu\n", 0) == 0);
    std::string residuals_text = read_file(files.residuals);
    CHECK(residuals_text.rfind("residual_center,residual_radius\n", 0) == 0);

    // mu = 0: the companion lines coincide with the regression line.
    std::istringstream ls(line);
    std::string header, row;
    std::getline(ls, header);
    while (std::getline(ls, row)) {
        std::stringstream rs(row);
        std::string x, y, yp, ym;
        std::getline(rs, x, ',');
        std::getline(rs, y, ',');
        std::getline(rs, yp, ',');
        std::getline(rs, ym, ',');
        CHECK(y == yp);
        CHECK(y == ym);
    }
}

TEST_CASE("format_double survives a parse round trip") {
    RngStream rng(54, 0);
    for (int i = 0; i < 200; ++i) {
        double v = rng.normal(0.0, 1.0) * std::pow(10.0, rng.uniform(-12.0, 12.0));
        CHECK(std::stod(format_double(v)) == v);
    }
}
