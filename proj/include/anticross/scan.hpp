// scan.hpp — Grid scans over models and the plot-ready artifacts they emit.
// Rows are computed in parallel over grid points and always written in grid
// order; every artifact starts with a metadata block sufficient to reproduce
// the run (tool version, resolved config, seed, delta convention).

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "anticross/estimate.hpp"
#include "anticross/hamiltonian.hpp"
#include "anticross/types.hpp"

namespace anticross {

enum class ScanVariable { kLambda, kBeta, kPhi, kTheta };
enum class OutputFormat { kCsv, kJson };

struct ScanRequest {
    std::string model_path;
    nlohmann::json model_config;
    ScanVariable variable = ScanVariable::kLambda;
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 2;  // >= 2, inclusive endpoints
    OutputFormat format = OutputFormat::kCsv;

    // fixed parameters
    double beta = kInf;
    MeasurementDirection r{1.0, 0.0, 0.0};
    double fixed_lambda = 0.0;  // for phi scans

    void validate() const;
    std::vector<double> grid() const;
};

// serialize with 17 significant digits (round-trip exact)
std::string format_double(double v);

struct Metadata {
    std::string command;
    nlohmann::json config;
    std::optional<std::uint64_t> seed;
    std::string delta_convention = "n/a";

    nlohmann::json to_json() const;
};

// One row of the lambda scan.  Degenerate grid points carry empty information
// fields and a non-empty flag.
struct QfiScanRow {
    double lambda = 0.0;
    CoefficientBundle c;
    SpectralData spectral;
    std::optional<double> h_qfi;
    std::optional<double> h_fidelity_oracle;
    std::optional<double> h_paper_printed;
    std::string flag;
};

std::vector<QfiScanRow> qfi_scan(const TwoLevelModel& model,
                                 const std::vector<double>& grid);
void write_qfi_scan(std::ostream& out, const Metadata& meta,
                    const std::vector<QfiScanRow>& rows, OutputFormat format);

// g over the unit disk at fixed x; points outside the disk omitted.
struct GSurfaceRow {
    double x = 0.0;
    double r1 = 0.0;
    double r3 = 0.0;
    std::optional<double> g;
    std::string flag;
};

std::vector<GSurfaceRow> g_surface(const std::vector<double>& x_values,
                                   std::size_t grid_n);

// g along the r2 = 0 unit circle (r1, r3) = (sin theta, cos theta), the
// boundary where g == 1 except at the two deterministic directions.
std::vector<GSurfaceRow> g_circle(const std::vector<double>& x_values,
                                  std::size_t theta_steps);
void write_g_surface(std::ostream& out, const Metadata& meta,
                     const std::vector<GSurfaceRow>& rows, OutputFormat format);

struct ThermalScanRow {
    double beta = 0.0;
    FisherBreakdown qfi;
    double purity = 0.5;
    std::optional<double> f_beta;
    std::optional<double> g_effective;  // f_beta / h_total
    std::string flag;
};

struct ThermalScanSummary {
    // least-squares C in H ~ C·beta² over the low-beta part of the range,
    // with the analytic limits for comparison
    std::optional<double> fitted_h_over_beta2;
    std::optional<double> fitted_f_over_beta2;
    double limit_h_over_beta2 = 0.0;  // (d_gamma)² + (d_delta)²
    double limit_f_over_beta2 = 0.0;  // (r1·d_gamma - r3·d_delta)²
    double h_total_over_h0_at_hi = 0.0;
    double h0 = 0.0;
};

std::vector<ThermalScanRow> thermal_scan(const TwoLevelModel& model, double lambda,
                                         const MeasurementDirection& r,
                                         const std::vector<double>& beta_grid);
ThermalScanSummary thermal_scan_summary(const TwoLevelModel& model, double lambda,
                                        const MeasurementDirection& r,
                                        const std::vector<ThermalScanRow>& rows);
void write_thermal_scan(std::ostream& out, const Metadata& meta,
                        const std::vector<ThermalScanRow>& rows,
                        const ThermalScanSummary& summary, OutputFormat format);

// estimate report artifact (always JSON)
void write_estimation_report(std::ostream& out, const Metadata& meta,
                             const EstimationReport& report);

// model-validate artifact
void write_validation_report(std::ostream& out, const Metadata& meta,
                             const TwoLevelModel& model);

}  // namespace anticross
