#include "anticross/scan.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "anticross/metrology.hpp"
#include "anticross/parallel.hpp"
#include "anticross/version.hpp"

namespace anticross {

using nlohmann::json;

void ScanRequest::validate() const {
    if (steps < 2) throw ConfigError("scan: steps must be >= 2");
    if (!(lo < hi)) throw ConfigError("scan: range must satisfy lo < hi");
}

std::vector<double> ScanRequest::grid() const {
    validate();
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i)
        g[i] = lo + (hi - lo) * i / (steps - 1);
    g.back() = hi;  // endpoint exact, immune to rounding overshoot
    return g;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json Metadata::to_json() const {
    json meta;
    meta["tool"] = "anticross";
    meta["version"] = kVersion;
    meta["command"] = command;
    meta["config"] = config;
    if (seed) meta["seed"] = *seed;
    meta["delta_convention"] = delta_convention;
    return meta;
}

namespace {

void write_csv_prelude(std::ostream& out, const Metadata& meta,
                       const std::string& header) {
    out << "# " << meta.to_json().dump() << "\n" << header << "\n";
}

std::string cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

json row_value(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

// ---------------------------------- qfi scan ---------------------------------

std::vector<QfiScanRow> qfi_scan(const TwoLevelModel& model,
                                 const std::vector<double>& grid) {
    std::vector<QfiScanRow> rows(grid.size());
    // bodies must not leak exceptions out of the worker threads
    parallel_for(grid.size(), [&](std::size_t i) {
        QfiScanRow& row = rows[i];
        row.lambda = grid[i];
        row.c = model.coefficients(grid[i]);
        row.spectral = eigenvalues(row.c);
        if (row.spectral.degenerate) {
            row.flag = "degenerate";
            return;
        }
        try {
            row.h_qfi = qfi_ground(row.c, model.derivatives(grid[i]));
        } catch (const DomainError&) {
            row.flag = "derivative-edge";  // finite-difference step leaves the domain
        }
        try {
            row.h_fidelity_oracle = qfi_fidelity_oracle(model, grid[i]);
        } catch (const DomainError&) {
            if (row.flag.empty()) row.flag = "oracle-edge";
        }
        row.h_paper_printed = model.paper_printed_qfi(grid[i]);
    });
    return rows;
}

void write_qfi_scan(std::ostream& out, const Metadata& meta,
                    const std::vector<QfiScanRow>& rows, OutputFormat format) {
    static const char* kColumns =
        "lambda,omega0,delta,gamma,h_minus,h_plus,gap,x,H_qfi,"
        "H_fidelity_oracle,H_paper_printed,flag";
    if (format == OutputFormat::kCsv) {
        write_csv_prelude(out, meta, kColumns);
        for (const auto& row : rows) {
            out << format_double(row.lambda) << ',' << format_double(row.c.omega0)
                << ',' << format_double(row.c.delta) << ','
                << format_double(row.c.gamma) << ','
                << format_double(row.spectral.h_minus) << ','
                << format_double(row.spectral.h_plus) << ','
                << format_double(row.spectral.gap) << ','
                << format_double(row.spectral.x) << ',' << cell(row.h_qfi) << ','
                << cell(row.h_fidelity_oracle) << ',' << cell(row.h_paper_printed)
                << ',' << row.flag << "\n";
        }
        return;
    }
    json doc;
    doc["meta"] = meta.to_json();
    doc["columns"] = json::array();
    for (const auto& name :
         {"lambda", "omega0", "delta", "gamma", "h_minus", "h_plus", "gap", "x",
          "H_qfi", "H_fidelity_oracle", "H_paper_printed", "flag"})
        doc["columns"].push_back(name);
    doc["rows"] = json::array();
    for (const auto& row : rows) {
        doc["rows"].push_back(json::array(
            {row.lambda, row.c.omega0, row.c.delta, row.c.gamma,
             row.spectral.h_minus, row.spectral.h_plus, row.spectral.gap,
             row.spectral.x, row_value(row.h_qfi), row_value(row.h_fidelity_oracle),
             row_value(row.h_paper_printed), row.flag}));
    }
    out << doc.dump(2) << "\n";
}

// --------------------------------- g surface ---------------------------------

std::vector<GSurfaceRow> g_surface(const std::vector<double>& x_values,
                                   std::size_t grid_n) {
    if (grid_n < 16) throw ConfigError("g-surface: grid_n must be >= 16");
    std::vector<GSurfaceRow> rows;
    for (double x : x_values) {
        for (std::size_t i = 0; i < grid_n; ++i) {
            const double r1 = -1.0 + 2.0 * i / (grid_n - 1);
            for (std::size_t j = 0; j < grid_n; ++j) {
                const double r3 = -1.0 + 2.0 * j / (grid_n - 1);
                if (r1 * r1 + r3 * r3 > 1.0) continue;  // outside the disk
                GSurfaceRow row;
                row.x = x;
                row.r1 = r1;
                row.r3 = r3;
                try {
                    row.g = g_function_disk(x, r1, r3);
                } catch (const DeterministicOutcomeError&) {
                    row.flag = "deterministic";
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<GSurfaceRow> g_circle(const std::vector<double>& x_values,
                                  std::size_t theta_steps) {
    if (theta_steps < 2) throw ConfigError("g-circle: theta_steps must be >= 2");
    std::vector<GSurfaceRow> rows;
    for (double x : x_values) {
        for (std::size_t k = 0; k < theta_steps; ++k) {
            const double theta = 2.0 * M_PI * double(k) / double(theta_steps);
            MeasurementDirection r;
            r.r1 = std::sin(theta);
            r.r2 = 0.0;
            r.r3 = std::cos(theta);
            GSurfaceRow row;
            row.x = x;
            row.r1 = r.r1;
            row.r3 = r.r3;
            row.flag = "circle";
            try {
                row.g = g_function(x, r);
            } catch (const DeterministicOutcomeError&) {
                row.flag = "deterministic";
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_g_surface(std::ostream& out, const Metadata& meta,
                     const std::vector<GSurfaceRow>& rows, OutputFormat format) {
    if (format == OutputFormat::kCsv) {
        write_csv_prelude(out, meta, "x,r1,r3,g,flag");
        for (const auto& row : rows)
            out << format_double(row.x) << ',' << format_double(row.r1) << ','
                << format_double(row.r3) << ',' << cell(row.g) << ',' << row.flag
                << "\n";
        return;
    }
    json doc;
    doc["meta"] = meta.to_json();
    doc["columns"] = json::array({"x", "r1", "r3", "g", "flag"});
    doc["rows"] = json::array();
    for (const auto& row : rows)
        doc["rows"].push_back(
            json::array({row.x, row.r1, row.r3, row_value(row.g), row.flag}));
    out << doc.dump(2) << "\n";
}

// -------------------------------- thermal scan -------------------------------

std::vector<ThermalScanRow> thermal_scan(const TwoLevelModel& model, double lambda,
                                         const MeasurementDirection& r,
                                         const std::vector<double>& beta_grid) {
    const CoefficientBundle c = model.coefficients(lambda);
    const DerivativeBundle d = model.derivatives(lambda);
    if (c.degenerate())
        throw DegenerateBundleError("thermal_scan: degenerate bundle at lambda");
    std::vector<ThermalScanRow> rows(beta_grid.size());
    parallel_for(beta_grid.size(), [&](std::size_t i) {
        ThermalScanRow& row = rows[i];
        row.beta = beta_grid[i];
        row.qfi = thermal_qfi(c, d, row.beta);
        row.purity = purity(thermal_state(c, row.beta));
        try {
            row.f_beta = thermal_fisher(c, d, row.beta, r).value;
            if (row.qfi.h_total > 0.0)
                row.g_effective = *row.f_beta / row.qfi.h_total;
        } catch (const DeterministicOutcomeError&) {
            row.flag = "deterministic";
        }
    });
    return rows;
}

ThermalScanSummary thermal_scan_summary(const TwoLevelModel& model, double lambda,
                                        const MeasurementDirection& r,
                                        const std::vector<ThermalScanRow>& rows) {
    const CoefficientBundle c = model.coefficients(lambda);
    const DerivativeBundle d = model.derivatives(lambda);
    ThermalScanSummary s;
    s.limit_h_over_beta2 = d.d_gamma * d.d_gamma + d.d_delta * d.d_delta;
    const double lead = r.r1 * d.d_gamma - r.r3 * d.d_delta;
    s.limit_f_over_beta2 = lead * lead;
    s.h0 = qfi_ground(c, d);

    // least squares on H = C·beta² over the small-beta rows (beta <= 1e-2)
    double swh = 0.0, swf = 0.0, sw = 0.0;
    bool any_f = false;
    for (const auto& row : rows) {
        if (!(row.beta > 0.0) || row.beta > 1e-2) continue;
        const double b2 = row.beta * row.beta;
        sw += b2 * b2;
        swh += b2 * row.qfi.h_total;
        if (row.f_beta) {
            swf += b2 * *row.f_beta;
            any_f = true;
        }
    }
    if (sw > 0.0) {
        s.fitted_h_over_beta2 = swh / sw;
        if (any_f) s.fitted_f_over_beta2 = swf / sw;
    }
    if (!rows.empty() && s.h0 > 0.0)
        s.h_total_over_h0_at_hi = rows.back().qfi.h_total / s.h0;
    return s;
}

void write_thermal_scan(std::ostream& out, const Metadata& meta,
                        const std::vector<ThermalScanRow>& rows,
                        const ThermalScanSummary& summary, OutputFormat format) {
    json sum;
    sum["fitted_H_over_beta2"] = row_value(summary.fitted_h_over_beta2);
    sum["fitted_F_over_beta2"] = row_value(summary.fitted_f_over_beta2);
    sum["limit_H_over_beta2"] = summary.limit_h_over_beta2;
    sum["limit_F_over_beta2"] = summary.limit_f_over_beta2;
    sum["H_total_over_H0_at_range_hi"] = summary.h_total_over_h0_at_hi;
    sum["H0"] = summary.h0;

    if (format == OutputFormat::kCsv) {
        write_csv_prelude(out, meta,
                          "beta,H_classical,H_quantum,H_total,k_C,k_Q,purity,"
                          "F_beta,g_effective,flag");
        out << "# summary " << sum.dump() << "\n";
        for (const auto& row : rows)
            out << format_double(row.beta) << ','
                << format_double(row.qfi.h_classical) << ','
                << format_double(row.qfi.h_quantum) << ','
                << format_double(row.qfi.h_total) << ','
                << format_double(row.qfi.k_c) << ',' << format_double(row.qfi.k_q)
                << ',' << format_double(row.purity) << ',' << cell(row.f_beta)
                << ',' << cell(row.g_effective) << ',' << row.flag << "\n";
        return;
    }
    json doc;
    doc["meta"] = meta.to_json();
    doc["summary"] = sum;
    doc["columns"] =
        json::array({"beta", "H_classical", "H_quantum", "H_total", "k_C", "k_Q",
                     "purity", "F_beta", "g_effective", "flag"});
    doc["rows"] = json::array();
    for (const auto& row : rows)
        doc["rows"].push_back(json::array(
            {row.beta, row.qfi.h_classical, row.qfi.h_quantum, row.qfi.h_total,
             row.qfi.k_c, row.qfi.k_q, row.purity, row_value(row.f_beta),
             row_value(row.g_effective), row.flag}));
    out << doc.dump(2) << "\n";
}

// ----------------------------------- reports ---------------------------------

void write_estimation_report(std::ostream& out, const Metadata& meta,
                             const EstimationReport& report) {
    json doc;
    doc["meta"] = meta.to_json();
    doc["lambda_true"] = report.lambda_true;
    doc["mean"] = report.mean;
    doc["bias"] = report.bias;
    doc["empirical_variance"] = report.empirical_variance;
    doc["crb_classical"] = report.crb_classical;
    doc["crb_quantum"] = report.crb_quantum;
    doc["variance_over_crb_classical"] =
        report.empirical_variance / report.crb_classical;
    doc["variance_over_crb_quantum"] =
        report.empirical_variance / report.crb_quantum;
    doc["m_per_batch"] = report.m_per_batch;
    doc["batches"] = report.batches;
    doc["seed"] = report.seed;
    doc["clamped_batches"] = report.clamped_batches;
    doc["estimates"] = report.estimates;
    out << doc.dump(2) << "\n";
}

void write_validation_report(std::ostream& out, const Metadata& meta,
                             const TwoLevelModel& model) {
    json doc;
    doc["meta"] = meta.to_json();
    doc["model"] = model.name();
    const auto [lo, hi] = model.domain();
    doc["domain"] = json::array({lo, hi});
    doc["analytic_derivatives"] = model.has_analytic_derivatives();
    doc["warnings"] = model.validation_warnings();
    out << doc.dump(2) << "\n";
}

}  // namespace anticross
