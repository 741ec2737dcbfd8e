// anticross — batch CLI over the anticross library: model scans, measurement
// surfaces, thermal sweeps, and simulated estimation runs, emitted as
// plot-ready CSV/JSON with reproducible metadata.
//
// Exit codes: 0 success, 2 config error, 3 degenerate/non-identifiable
// setup, 4 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "anticross/estimate.hpp"
#include "anticross/metrology.hpp"
#include "anticross/models.hpp"
#include "anticross/model_zoo.hpp"
#include "anticross/scan.hpp"
#include "anticross/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::pair<double, double> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw anticross::ConfigError("--range expects lo:hi");
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        return {lo, hi};
    } catch (const std::exception&) {
        throw anticross::ConfigError("--range expects numeric lo:hi");
    }
}

anticross::MeasurementDirection parse_direction(const std::string& text) {
    std::istringstream in(text);
    std::vector<double> parts;
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            parts.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw anticross::ConfigError("--r expects r1,r2,r3");
        }
    }
    if (parts.size() != 3) throw anticross::ConfigError("--r expects r1,r2,r3");
    return anticross::MeasurementDirection(parts[0], parts[1], parts[2]);
}

double parse_beta(const std::string& text) {
    if (text == "inf" || text == "infinity") return anticross::kInf;
    try {
        const double beta = std::stod(text);
        if (beta < 0.0) throw anticross::ConfigError("--beta must be >= 0");
        return beta;
    } catch (const anticross::ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw anticross::ConfigError("--beta expects a number or 'inf'");
    }
}

void write_artifact(const std::string& path,
                    const std::function<void(std::ostream&)>& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + path);
    writer(out);
    if (!out) throw IoError("failed writing " + path);
}

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw anticross::ConfigError("cannot open model config " + path);
    nlohmann::json config;
    try {
        in >> config;
    } catch (const nlohmann::json::parse_error& e) {
        throw anticross::ConfigError(std::string("model config parse: ") + e.what());
    }
    return config;
}

struct CommonOpts {
    std::string model_path;
    std::string out_path;
    std::string format = "csv";
    std::string range;
    std::size_t steps = 201;
    std::uint64_t seed = 12345;

    anticross::OutputFormat output_format() const {
        if (format == "csv") return anticross::OutputFormat::kCsv;
        if (format == "json") return anticross::OutputFormat::kJson;
        throw anticross::ConfigError("--format must be csv or json");
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_model = true) {
    if (needs_model)
        cmd->add_option("--model", opts.model_path, "model config JSON path")
            ->required();
    cmd->add_option("--out", opts.out_path, "output path ('-' for stdout)");
    cmd->add_option("--format", opts.format, "csv|json");
    cmd->add_option("--range", opts.range, "scan range lo:hi");
    cmd->add_option("--steps", opts.steps, "grid points (inclusive endpoints)");
    cmd->add_option("--seed", opts.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace anticross;

    CLI::App app{"anticross: precision limits of two-level avoided-crossing models"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts opts;

    auto* qfi = app.add_subcommand("qfi-scan", "QFI and fidelity oracle over lambda");
    CommonOpts qfi_opts;
    add_common(qfi, qfi_opts);
    std::string qfi_variable = "lambda";
    double qfi_fixed_lambda = 0.0;
    qfi->add_option("--variable", qfi_variable,
                    "scan variable: lambda (default) or phi (perturbation only)");
    qfi->add_option("--fixed-lambda", qfi_fixed_lambda,
                    "lambda held fixed for phi scans");

    auto* gsurf = app.add_subcommand("g-surface", "g(x, r1, r3) over the unit disk");
    CommonOpts g_opts;
    add_common(gsurf, g_opts, /*needs_model=*/false);
    std::vector<double> g_xs{0.01, 0.1, 10.0, 100.0};
    std::size_t g_grid = 101;
    std::size_t g_circle_steps = 0;
    gsurf->add_option("--x", g_xs, "x values (default 0.01 0.1 10 100)");
    gsurf->add_option("--grid", g_grid, "grid resolution per axis (>= 16)");
    gsurf->add_option("--circle", g_circle_steps,
                      "additionally scan theta along the r2 = 0 unit circle");

    auto* thermal = app.add_subcommand("thermal-scan", "thermal QFI split over beta");
    CommonOpts th_opts;
    add_common(thermal, th_opts);
    double th_lambda = 0.0;
    std::string th_r = "1,0,0";
    bool th_log = false;
    thermal->add_option("--lambda", th_lambda, "evaluation point")->required();
    thermal->add_option("--r", th_r, "measurement direction r1,r2,r3");
    thermal->add_flag("--log-grid", th_log, "geometric beta grid");

    auto* est = app.add_subcommand("estimate", "simulated estimation vs CRB");
    CommonOpts est_opts;
    add_common(est, est_opts);
    double est_lambda = 1.0;
    std::string est_r = "1,0,0";
    std::string est_beta = "inf";
    std::uint64_t est_m = 10000;
    std::uint64_t est_batches = 500;
    std::string est_method = "mle";
    std::string est_search;
    std::size_t est_grid = 512;
    double est_tol = 1e-10;
    est->add_option("--lambda-true", est_lambda, "true parameter value")->required();
    est->add_option("--r", est_r, "measurement direction r1,r2,r3");
    est->add_option("--beta", est_beta, "inverse temperature (number or 'inf')");
    est->add_option("--m", est_m, "shots per batch");
    est->add_option("--batches", est_batches, "independent batches");
    est->add_option("--method", est_method, "mle|bayes");
    est->add_option("--search", est_search, "estimator search interval lo:hi")
        ->required();
    est->add_option("--grid-points", est_grid, "estimator grid (>= 64)");
    est->add_option("--tolerance", est_tol, "bisection tolerance");

    auto* validate = app.add_subcommand("model-validate", "load and sanity-check a model");
    CommonOpts val_opts;
    add_common(validate, val_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (qfi->parsed()) {
            const auto config = load_config(qfi_opts.model_path);
            const auto model = model_from_json(config);
            Metadata meta{"qfi-scan", resolved_config(config), std::nullopt,
                          delta_convention_of(config)};

            ScanRequest req;
            req.model_config = config;
            req.steps = qfi_opts.steps;
            if (qfi_variable == "lambda")
                req.variable = ScanVariable::kLambda;
            else if (qfi_variable == "phi")
                req.variable = ScanVariable::kPhi;
            else
                throw ConfigError("--variable must be lambda or phi");
            std::vector<QfiScanRow> rows;
            if (req.variable == ScanVariable::kLambda) {
                auto [lo, hi] = qfi_opts.range.empty() ? model->domain()
                                                       : parse_range(qfi_opts.range);
                req.lo = lo;
                req.hi = hi;
                rows = qfi_scan(*model, req.grid());
            } else {
                if (config.value("type", "") != "perturbation")
                    throw ConfigError("--variable phi requires a perturbation model");
                auto [lo, hi] = qfi_opts.range.empty()
                                    ? std::pair<double, double>{0.0, M_PI / 2}
                                    : parse_range(qfi_opts.range);
                req.lo = lo;
                req.hi = hi;
                meta.command = "qfi-scan --variable phi";
                const auto base =
                    std::dynamic_pointer_cast<const PerturbationModel>(model);
                for (double phi : req.grid()) {
                    PerturbationParams p = base->params();
                    p.phi = std::min(phi, std::nextafter(M_PI / 2, 0.0));
                    QfiScanRow row;
                    row.lambda = qfi_fixed_lambda;
                    row.c = perturbation_coefficients(p, qfi_fixed_lambda);
                    row.spectral = eigenvalues(row.c);
                    if (row.spectral.degenerate)
                        row.flag = "degenerate";
                    else
                        row.h_qfi = qfi_ground(
                            row.c, perturbation_derivatives(p, qfi_fixed_lambda));
                    rows.push_back(row);
                }
            }
            write_artifact(qfi_opts.out_path, [&](std::ostream& out) {
                write_qfi_scan(out, meta, rows, qfi_opts.output_format());
            });
        } else if (gsurf->parsed()) {
            Metadata meta{"g-surface",
                          nlohmann::json{{"x", g_xs},
                                         {"grid", g_grid},
                                         {"circle", g_circle_steps}},
                          std::nullopt, "n/a"};
            auto rows = g_surface(g_xs, g_grid);
            if (g_circle_steps > 0) {
                const auto circle = g_circle(g_xs, g_circle_steps);
                rows.insert(rows.end(), circle.begin(), circle.end());
            }
            write_artifact(g_opts.out_path, [&](std::ostream& out) {
                write_g_surface(out, meta, rows, g_opts.output_format());
            });
        } else if (thermal->parsed()) {
            const auto config = load_config(th_opts.model_path);
            const auto model = model_from_json(config);
            const auto r = parse_direction(th_r);
            auto [lo, hi] = th_opts.range.empty()
                                ? std::pair<double, double>{0.0, 10.0}
                                : parse_range(th_opts.range);
            std::vector<double> grid(th_opts.steps);
            if (th_log) {
                if (!(lo > 0.0))
                    throw ConfigError("--log-grid requires a positive range");
                for (std::size_t i = 0; i < grid.size(); ++i)
                    grid[i] = lo * std::pow(hi / lo,
                                            double(i) / double(grid.size() - 1));
            } else {
                for (std::size_t i = 0; i < grid.size(); ++i)
                    grid[i] = lo + (hi - lo) * double(i) / double(grid.size() - 1);
            }
            grid.back() = hi;
            nlohmann::json full = resolved_config(config);
            full["lambda"] = th_lambda;
            full["r"] = {r.r1, r.r2, r.r3};
            Metadata meta{"thermal-scan", full, std::nullopt,
                          delta_convention_of(config)};
            const auto rows = thermal_scan(*model, th_lambda, r, grid);
            const auto summary = thermal_scan_summary(*model, th_lambda, r, rows);
            write_artifact(th_opts.out_path, [&](std::ostream& out) {
                write_thermal_scan(out, meta, rows, summary, th_opts.output_format());
            });
        } else if (est->parsed()) {
            const auto config = load_config(est_opts.model_path);
            const auto model = model_from_json(config);
            const auto r = parse_direction(est_r);
            const double beta = parse_beta(est_beta);
            EstimatorConfig ec;
            ec.method = est_method == "bayes" ? EstimatorMethod::kBayesPosteriorMean
                                              : EstimatorMethod::kMle;
            if (est_method != "mle" && est_method != "bayes")
                throw ConfigError("--method must be mle or bayes");
            ec.search_interval = parse_range(est_search);
            ec.grid_points = est_grid;
            ec.tolerance = est_tol;

            nlohmann::json full = resolved_config(config);
            full["lambda_true"] = est_lambda;
            full["r"] = {r.r1, r.r2, r.r3};
            full["beta"] = est_beta;
            full["m"] = est_m;
            full["batches"] = est_batches;
            full["method"] = est_method;
            full["search"] = {ec.search_interval.first, ec.search_interval.second};
            full["grid_points"] = est_grid;
            full["tolerance"] = est_tol;
            Metadata meta{"estimate", full, est_opts.seed,
                          delta_convention_of(config)};

            const auto report = run_experiment(*model, est_lambda, r, beta, est_m,
                                               est_batches, est_opts.seed, ec);
            write_artifact(est_opts.out_path, [&](std::ostream& out) {
                write_estimation_report(out, meta, report);
            });
        } else if (validate->parsed()) {
            const auto config = load_config(val_opts.model_path);
            const auto model = model_from_json(config);
            Metadata meta{"model-validate", resolved_config(config), std::nullopt,
                          delta_convention_of(config)};
            write_artifact(val_opts.out_path, [&](std::ostream& out) {
                write_validation_report(out, meta, *model);
            });
        }
    } catch (const ConfigError& e) {
        std::cerr << "anticross: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DegenerateBundleError& e) {
        std::cerr << "anticross: degenerate setup: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const NonIdentifiableError& e) {
        std::cerr << "anticross: non-identifiable setup: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const IoError& e) {
        std::cerr << "anticross: io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "anticross: error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
