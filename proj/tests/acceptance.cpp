// acceptance.cpp — end-to-end verification suite.  Every check below runs at
// its stated tolerance and prints one PASS/FAIL line; the exit code is the
// number of failed checks.
//
// Check 4 (dynamical no-gain) is expected to FAIL and is reported honestly:
// the claimed identity "evolved-superposition QFI == ground QFI for all
// (theta, phi, t)" does not hold.  The dynamical phases e^{-i h∓(lambda) t}
// carry parameter information of their own; differentiating the full evolved
// family gives
//   H_t = H0·(1 - sin²theta·sin²PHI) + sin²theta·(t·d_gap)² + cross-term,
// with PHI = phi - gap·t and d_gap = d_lambda(h+ - h-).  H_t == H0 only on
// the restricted set theta ∈ {0, pi}, or d_gap = 0 together with sin PHI = 0
// (see test_dynamics.cpp, where the closed form above is verified against the
// fidelity method).  A covariance argument that transplants the static SLD,
// L_t = U L U†, silently drops the (d_lambda U)·U† term and so misses these
// contributions.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anticross/dynamics.hpp"
#include "anticross/estimate.hpp"
#include "anticross/metrology.hpp"
#include "anticross/model_zoo.hpp"
#include "anticross/scan.hpp"
#include "anticross/rng.hpp"

using namespace anticross;

namespace {

struct Outcome {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<Outcome> results;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    results.push_back({id, name, pass, detail});
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const auto start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

ModelPtr linear_gamma_model() {
    return std::make_shared<FunctionModel>(
        "linear-gamma", std::pair<double, double>{0.0, 5.0},
        [](double lambda) { return CoefficientBundle{0.0, 1.0, lambda}; },
        [](double) {
            DerivativeBundle d;
            d.d_gamma = 1.0;
            return d;
        });
}

struct ZooEntry {
    ModelPtr model;
    std::string name;
};

std::vector<ZooEntry> zoo() {
    std::vector<ZooEntry> out;
    out.push_back({std::make_shared<PerturbationModel>(
                       PerturbationParams{0.0, 1.0, 1.0, M_PI / 4.0},
                       std::pair<double, double>{-3.0, 3.0}),
                   "perturbation"});
    out.push_back({std::make_shared<RabiModel>(
                       RabiParams{1.0, 1.0, RabiDeltaConvention::kPaper},
                       std::pair<double, double>{0.0, 4.0}),
                   "rabi"});
    out.push_back({std::make_shared<ThreeLevelModel>(ThreeLevelParams{
                       std::make_shared<PerturbationModel>(
                           PerturbationParams{0.0, 1.0, 1.0, 0.6},
                           std::pair<double, double>{-3.0, 3.0}),
                       0.1, 10.0}),
                   "three-level"});
    return out;
}

// ---------------------------------------------------------------- check 1 --
void check_rabi_maximum() {
    const RabiModel model({1.0, 1.0, RabiDeltaConvention::kPaper}, {0.0, 4.0});
    ScanRequest req;
    req.lo = 1e-3;
    req.hi = 4.0;
    req.steps = 4000;
    const double t0 = now_seconds();
    const auto rows = qfi_scan(model, req.grid());
    const double elapsed = now_seconds() - t0;

    double best = -1.0, best_lambda = 0.0;
    for (const auto& row : rows) {
        if (row.h_qfi && *row.h_qfi > best) {
            best = *row.h_qfi;
            best_lambda = row.lambda;
        }
    }
    const double target = 32.0 / 17.0;
    const bool pass = std::abs(best_lambda - target) <= 1e-3 && elapsed < 1.0;
    std::ostringstream detail;
    detail << "argmax = " << best_lambda << " vs 32/17 = " << target
           << " (|diff| = " << std::abs(best_lambda - target) << "), scan of "
           << req.steps << " points took " << elapsed << " s";
    report(1, "rabi QFI maximum at lambda = 32/17", pass, detail.str());
}

// ---------------------------------------------------------------- check 2 --
void check_universal_optimality() {
    bool pass = true;
    double worst = 0.0;
    for (double x : {0.01, 0.1, 1.0, 10.0, 100.0}) {
        for (int k = 0; k < 256; ++k) {
            const double theta = 2.0 * M_PI * k / 256.0;
            MeasurementDirection r;
            r.r1 = std::sin(theta);
            r.r2 = 0.0;
            r.r3 = std::cos(theta);
            const double g = g_function(x, r);
            worst = std::max(worst, std::abs(g - 1.0));
            if (std::abs(g - 1.0) > 1e-12) pass = false;
        }
    }
    double max_g = 0.0;
    const std::uint64_t key = stream_key(20240817, 0);
    std::uint64_t idx = 0;
    for (int i = 0; i < 100000; ++i) {
        // gaussian triple -> uniform direction
        const double u1 = std::max(counter_uniform(key, idx++), 1e-12);
        const double u2 = counter_uniform(key, idx++);
        const double u3 = std::max(counter_uniform(key, idx++), 1e-12);
        const double u4 = counter_uniform(key, idx++);
        const double g1 = std::sqrt(-2 * std::log(u1)) * std::cos(2 * M_PI * u2);
        const double g2 = std::sqrt(-2 * std::log(u1)) * std::sin(2 * M_PI * u2);
        const double g3 = std::sqrt(-2 * std::log(u3)) * std::cos(2 * M_PI * u4);
        if (g1 * g1 + g2 * g2 + g3 * g3 < 1e-12) continue;
        const double x = std::exp(counter_uniform(key, idx++) * 2.0 *
                                      std::log(1e3) -
                                  std::log(1e3));
        try {
            max_g = std::max(max_g,
                             g_function(x, MeasurementDirection(g1, g2, g3)));
        } catch (const DeterministicOutcomeError&) {
        }
    }
    if (max_g > 1.0 + 1e-12) pass = false;
    std::ostringstream detail;
    detail << "max |g-1| on the r2=0 circle = " << worst
           << "; max g over 1e5 random directions = " << max_g;
    report(2, "universal optimality of the r2 = 0 circle", pass, detail.str());
}

// ---------------------------------------------------------------- check 3 --
void check_oracle_equivalence() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& entry : zoo()) {
        const auto [lo, hi] = entry.model->domain();
        double worst = 0.0;
        for (int i = 1; i <= 100; ++i) {
            const double lambda = lo + (hi - lo) * i / 101.0;
            const double pipe = qfi_ground(entry.model->coefficients(lambda),
                                           entry.model->derivatives(lambda));
            const double oracle = qfi_fidelity_oracle(*entry.model, lambda);
            const double rel = std::abs(pipe - oracle) /
                               std::max({std::abs(oracle), std::abs(pipe), 1e-300});
            worst = std::max(worst, rel);
        }
        if (worst > 1e-5) pass = false;
        detail << entry.name << ": max rel dev = " << worst << "; ";
    }
    report(3, "closed-form QFI vs fidelity oracle (100 interior points/model)",
           pass, detail.str());
}

// ---------------------------------------------------------------- check 4 --
void check_no_gain() {
    const auto models = zoo();
    const std::uint64_t key = stream_key(77001, 0);
    std::uint64_t idx = 0;
    int violations = 0;
    double max_rel = 0.0;
    for (int i = 0; i < 200; ++i) {
        const auto& entry = models[i % models.size()];
        const auto [lo, hi] = entry.model->domain();
        const double margin = 0.05 * (hi - lo);
        const double lambda =
            lo + margin + (hi - lo - 2 * margin) * counter_uniform(key, idx++);
        SuperpositionSpec spec;
        spec.theta = M_PI * counter_uniform(key, idx++);
        spec.phi = 2.0 * M_PI * 0.9999 * counter_uniform(key, idx++);
        spec.time = 3.0 * counter_uniform(key, idx++);
        double ht, h0;
        try {
            ht = qfi_evolved(*entry.model, lambda, spec);
            h0 = qfi_ground(entry.model->coefficients(lambda),
                            entry.model->derivatives(lambda));
        } catch (const Error&) {
            continue;
        }
        const double rel = std::abs(ht - h0) / std::max(std::abs(h0), 1e-300);
        max_rel = std::max(max_rel, rel);
        if (rel > 1e-4) ++violations;
    }
    const bool pass = violations == 0;
    std::ostringstream detail;
    detail << violations
           << "/200 tuples violate |H_t - H0|/H0 <= 1e-4 (max rel dev = "
           << max_rel
           << "); the identity holds only for theta ∈ {0, pi} or "
              "d_lambda(gap) = 0 with sin(phi - gap·t) = 0 — "
              "see the header comment";
    report(4, "dynamical no-gain identity over random (model, lambda, theta, phi, t)",
           pass, detail.str());
}

// ---------------------------------------------------------------- check 5 --
void check_thermal_limits() {
    const CoefficientBundle c{0.3, 1.3, 0.7};
    DerivativeBundle d;
    d.d_gamma = 1.1;
    d.d_delta = 0.4;
    const MeasurementDirection r(0.8, 0.0, 0.6);
    const double w = c.coupling_norm();
    const double h0 = qfi_ground(c, d);

    bool pass = true;
    double low_t_worst = 1.0;
    for (double z : {10.0, 15.0, 30.0}) {
        const double ratio = thermal_qfi(c, d, z / w).h_total / h0;
        low_t_worst = std::min(low_t_worst, ratio);
        if (ratio < 1.0 - 1e-6) pass = false;
    }

    // least-squares fits of H and F against beta² on a small-beta log grid
    double sw = 0.0, swh = 0.0, swf = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double beta = 1e-4 * std::pow(10.0, double(i) / 20.0);
        const double b2 = beta * beta;
        sw += b2 * b2;
        swh += b2 * thermal_qfi(c, d, beta).h_total;
        swf += b2 * thermal_fisher(c, d, beta, r).value;
    }
    const double fitted_h = swh / sw;
    const double fitted_f = swf / sw;
    const double limit_h = d.d_gamma * d.d_gamma + d.d_delta * d.d_delta;
    const double lead = r.r1 * d.d_gamma - r.r3 * d.d_delta;
    const double limit_f = lead * lead;
    if (std::abs(fitted_h - limit_h) > 0.01 * limit_h) pass = false;
    if (std::abs(fitted_f - limit_f) > 0.01 * limit_f) pass = false;

    std::ostringstream detail;
    detail << "min H_beta/H0 at beta·w >= 10: " << low_t_worst
           << "; fitted H/beta² = " << fitted_h << " vs " << limit_h
           << "; fitted F/beta² = " << fitted_f << " vs " << limit_f;
    report(5, "thermal limits: low-T saturation and small-beta quadratics", pass,
           detail.str());
}

// ---------------------------------------------------------------- check 6 --
void check_crb_saturation() {
    const auto model = linear_gamma_model();
    EstimatorConfig config;
    config.search_interval = {0.0, 5.0};
    config.grid_points = 512;
    config.tolerance = 1e-10;

    const double t0 = now_seconds();
    const auto optimal = run_experiment(*model, 1.0, MeasurementDirection(1, 0, 0),
                                        kInf, 10000, 500, 20230817, config);
    const double ratio_opt = optimal.empirical_variance / optimal.crb_quantum;

    // direction with g = 1/2 at x = 1
    const MeasurementDirection half(std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0), 0.0);
    const auto sub = run_experiment(*model, 1.0, half, kInf, 10000, 500, 20230818,
                                    config);
    const double ratio_sub = sub.empirical_variance / sub.crb_quantum;
    const double elapsed = now_seconds() - t0;

    const bool pass = ratio_opt >= 0.8 && ratio_opt <= 1.25 && ratio_sub >= 1.6 &&
                      ratio_sub <= 2.5 && elapsed < 10.0;
    std::ostringstream detail;
    detail << "optimal direction var/qCRB = " << ratio_opt
           << " (band [0.8, 1.25]); g = 0.5 direction var/qCRB = " << ratio_sub
           << " (band [1.6, 2.5]); runtime " << elapsed << " s";
    report(6, "Cramér-Rao saturation at m = 1e4, 500 batches", pass, detail.str());
}

// ---------------------------------------------------------------- check 7 --
void check_degenerate_families() {
    bool pass = true;
    std::ostringstream detail;

    // gamma == 0 family: commuting perturbation
    {
        const PerturbationModel model({0.0, 1.0, 1.0, 0.0}, {-3.0, 3.0});
        ScanRequest req;
        req.lo = -3.0;
        req.hi = 3.0;
        req.steps = 201;
        int nonzero = 0, informative_rows = 0;
        for (const auto& row : qfi_scan(model, req.grid())) {
            if (!row.h_qfi) continue;
            ++informative_rows;
            if (*row.h_qfi != 0.0) ++nonzero;
        }
        if (nonzero > 0 || informative_rows == 0) pass = false;
        detail << "gamma==0: " << nonzero << "/" << informative_rows
               << " nonzero QFI rows; ";
    }
    // delta == 0 family
    {
        const auto model = std::make_shared<FunctionModel>(
            "pure-transverse", std::pair<double, double>{-2.0, 2.0},
            [](double lambda) {
                return CoefficientBundle{0.0, 0.0, 1.0 + lambda * lambda};
            });
        ScanRequest req;
        req.lo = -2.0;
        req.hi = 2.0;
        req.steps = 201;
        int nonzero = 0, informative_rows = 0;
        for (const auto& row : qfi_scan(*model, req.grid())) {
            if (!row.h_qfi) continue;
            ++informative_rows;
            if (*row.h_qfi != 0.0) ++nonzero;
        }
        if (nonzero > 0 || informative_rows == 0) pass = false;
        detail << "delta==0: " << nonzero << "/" << informative_rows
               << " nonzero QFI rows";
    }
    report(7, "gamma == 0 or delta == 0 families carry zero QFI", pass,
           detail.str());
}

// ---------------------------------------------------------------- check 8 --
void check_kappa_expansion() {
    const auto base = linear_gamma_model();
    const double lambda = 0.5;
    const CoefficientBundle c = base->coefficients(lambda);
    const DerivativeBundle d = base->derivatives(lambda);
    const auto exact = [&](double kappa) {
        CoefficientBundle shifted = c;
        shifted.gamma += kappa;
        shifted.omega0 += kappa;
        return qfi_ground(shifted, d);
    };
    const double res1 =
        std::abs(three_level_qfi_first_order(c, d, 1e-3) - exact(1e-3));
    const double res2 =
        std::abs(three_level_qfi_first_order(c, d, 5e-4) - exact(5e-4));
    const double ratio = res1 / res2;
    const bool pass = ratio >= 4.0 * 0.8 && ratio <= 4.0 * 1.2;
    std::ostringstream detail;
    detail << "residual(1e-3)/residual(5e-4) = " << ratio
           << " (target 4 within 20%)";
    report(8, "three-level first-order formula has O(kappa²) residual", pass,
           detail.str());
}

// ---------------------------------------------------------------- check 9 --
void check_perturbation_documented_discrepancy() {
    bool pass = true;
    std::ostringstream detail;

    // (a) the printed closed form is NOT the pipeline value away from 0
    const PerturbationParams p{0.0, 1.0, 1.0, M_PI / 4.0};
    const double printed = perturbation_qfi_paper_printed(p, 1.0);
    const double pipeline = perturbation_qfi_closed_form(p, 1.0);
    if (std::abs(printed - pipeline) < 0.3) pass = false;
    // while the pipeline agrees with the fidelity oracle
    const PerturbationModel model(p, {-3.0, 3.0});
    const double oracle = qfi_fidelity_oracle(model, 1.0);
    if (std::abs(pipeline - oracle) > 1e-5 * oracle) pass = false;
    detail << "printed = " << printed << ", pipeline = " << pipeline
           << ", oracle = " << oracle << "; ";

    // (b) phi-grid argmax at pi/4 (81 inclusive points, lambda near the center)
    for (double lambda : {0.0, 0.005}) {
        double best = -1.0;
        int best_k = -1;
        for (int k = 0; k <= 80; ++k) {
            const double phi = std::min((M_PI / 2.0) * k / 80.0, M_PI / 2.0 - 1e-12);
            const PerturbationParams q{0.0, 1.0, 1.0, phi};
            const double h = qfi_ground(perturbation_coefficients(q, lambda),
                                        perturbation_derivatives(q, lambda));
            if (h > best) {
                best = h;
                best_k = k;
            }
        }
        if (best_k != 40) pass = false;
        detail << "phi-argmax(lambda=" << lambda << ") = grid index " << best_k
               << "/80; ";
    }

    // (c) evenness in lambda at phi = pi/4
    double worst = 0.0;
    for (int i = 1; i <= 60; ++i) {
        const double lambda = 3.0 * i / 60.0;
        const double plus = perturbation_qfi_closed_form(p, lambda);
        const double minus = perturbation_qfi_closed_form(p, -lambda);
        worst = std::max(worst, std::abs(plus - minus) / plus);
    }
    if (worst > 1e-10) pass = false;
    detail << "max evenness deviation = " << worst;
    report(9, "perturbation model: documented printed-formula discrepancy", pass,
           detail.str());
}

// --------------------------------------------------------------- check 10 --
void check_determinism() {
    const std::string config_path = "/tmp/anticross_acceptance_model.json";
    {
        std::ofstream out(config_path);
        out << R"({"type":"custom-table","params":{)"
            << R"("lambda":[0,1,2,3,4,5],"omega0":[0,0,0,0,0,0],)"
            << R"("delta":[1,1,1,1,1,1],"gamma":[0,1,2,3,4,5]},"domain":[0,5]})";
    }
    const std::string base = std::string(ANTICROSS_CLI_PATH) +
                             " estimate --model " + config_path +
                             " --lambda-true 1.0 --r 1,0,0 --m 2000 --batches 100" +
                             " --seed 99 --search 0:5 --out ";
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    };
    const int c1 =
        std::system(("ANTICROSS_THREADS=1 " + base + "/tmp/anticross_det1.json").c_str());
    const int c2 =
        std::system(("ANTICROSS_THREADS=4 " + base + "/tmp/anticross_det2.json").c_str());
    const std::string a = slurp("/tmp/anticross_det1.json");
    const std::string b = slurp("/tmp/anticross_det2.json");
    const bool pass = c1 == 0 && c2 == 0 && !a.empty() && a == b;
    std::ostringstream detail;
    detail << "artifact sizes " << a.size() << " vs " << b.size() << " bytes, "
           << (a == b ? "byte-identical" : "DIFFER") << " across worker counts";
    report(10, "seeded estimate artifacts are byte-identical", pass, detail.str());
}

}  // namespace

int main() {
    check_rabi_maximum();
    check_universal_optimality();
    check_oracle_equivalence();
    check_no_gain();
    check_thermal_limits();
    check_crb_saturation();
    check_degenerate_families();
    check_kappa_expansion();
    check_perturbation_documented_discrepancy();
    check_determinism();

    int failures = 0;
    std::printf("=== anticross acceptance criteria ===\n");
    for (const auto& r : results) {
        std::printf("[%s] %2d %s\n        %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("=== %zu checks, %d failed ===\n", results.size(), failures);
    return failures;
}
