// model_zoo.hpp — The three worked example models (perturbation-induced
// anti-crossing, driven double well in the rotating-wave approximation, and
// the effective reduction of a three-level system), each with analytic
// derivatives and the closed-form QFI expressions used for cross-checks.

#pragma once

#include "anticross/hamiltonian.hpp"
#include "anticross/types.hpp"

namespace anticross {

// --------------------------- perturbation model ------------------------------

// H = H0 + lambda·H1 with H0 = diag(omega, omega + delta_gap) and
// H1 = R(phi)·diag(0, epsilon)·R(phi)^T.  Coefficients:
//   omega0 = omega + (delta_gap + lambda·epsilon)/2
//   delta  = ½(delta_gap + lambda·epsilon·cos 2phi)
//   gamma  = -½·lambda·epsilon·sin 2phi
struct PerturbationParams {
    double omega = 0.0;
    double delta_gap = 1.0;  // > 0
    double epsilon = 1.0;    // > 0
    double phi = 0.0;        // [0, pi/2)

    void validate() const;
};

CoefficientBundle perturbation_coefficients(const PerturbationParams& p, double lambda);
DerivativeBundle perturbation_derivatives(const PerturbationParams& p, double lambda);

// Pipeline QFI at phi = pi/4 (the only angle with a printed closed form);
// analytically (epsilon/delta_gap)² / [1 + (epsilon·lambda/delta_gap)²]².
// Throws unless phi == pi/4 (within 1e-12).
double perturbation_qfi_closed_form(const PerturbationParams& p, double lambda);

// The literature closed form 1/(1 + y²·lambda²)², y = epsilon/(2·delta_gap),
// emitted next to the pipeline value in scan artifacts; the two agree only at
// special parameter points (delta_gap = epsilon, lambda = 0).
double perturbation_qfi_paper_printed(const PerturbationParams& p, double lambda);

class PerturbationModel final : public TwoLevelModel {
public:
    PerturbationModel(PerturbationParams params, std::pair<double, double> domain);

    std::string name() const override { return "perturbation"; }
    std::pair<double, double> domain() const override { return domain_; }
    CoefficientBundle coefficients(double lambda) const override;
    bool has_analytic_derivatives() const override { return true; }
    DerivativeBundle derivatives(double lambda) const override;
    std::optional<double> paper_printed_qfi(double lambda) const override;

    const PerturbationParams& params() const { return params_; }

private:
    PerturbationParams params_;
    std::pair<double, double> domain_;
};

// ------------------------------- Rabi model ----------------------------------

// Effective rotating-wave model of the driven double well.  With
// Omega = sqrt(lambda² + (omega - omega0)²):
//   gamma = -(lambda/4Omega)·[Omega - (omega0 - omega)]
//   delta = Omega - 2·omega            ("paper" convention)
//   delta = omega - Omega/2            ("matrix" convention, ½(omega2-omega1)
//                                       of the effective matrix)
// The "paper" convention reproduces the published closed-form QFI and its
// maximum at lambda = (32/17)·omega0; it is the default.
enum class RabiDeltaConvention { kPaper, kMatrix };

struct RabiParams {
    double omega0 = 1.0;  // level splitting, > 0
    double omega = 1.0;   // drive frequency, > 0
    RabiDeltaConvention convention = RabiDeltaConvention::kPaper;

    void validate() const;
};

// lambda >= 0.  The Omega = 0 point (lambda = 0 at exact resonance) is a
// removable singularity, handled by the limits gamma = 0, d_gamma = -¼.
CoefficientBundle rabi_coefficients(const RabiParams& p, double lambda);
DerivativeBundle rabi_derivatives(const RabiParams& p, double lambda);

// Pipeline QFI at resonance (omega == omega0), paper convention; equals
//   1/(64·omega0²) · [1 - y + (17/64)·y²]^{-2},  y = lambda/omega0,
// maximized at lambda = (32/17)·omega0.
double rabi_qfi_resonance(const RabiParams& p, double lambda);

class RabiModel final : public TwoLevelModel {
public:
    RabiModel(RabiParams params, std::pair<double, double> domain);

    std::string name() const override { return "rabi"; }
    std::pair<double, double> domain() const override { return domain_; }
    CoefficientBundle coefficients(double lambda) const override;
    bool has_analytic_derivatives() const override { return true; }
    DerivativeBundle derivatives(double lambda) const override;
    std::optional<double> paper_printed_qfi(double lambda) const override;

    const RabiParams& params() const { return params_; }

private:
    RabiParams params_;
    std::pair<double, double> domain_;
};

// ----------------------------- three-level model -----------------------------

// Effective two-level reduction of a three-level system whose third level is
// far detuned (eps_gap >> level energies) and weakly coupled (g << 1).  The
// reduction shifts omega1, omega2 and gamma by kappa = g²/eps_gap:
//   omega0' = omega0 + kappa, gamma' = gamma + kappa, delta' = delta.
struct ThreeLevelParams {
    ModelPtr base;
    double g = 0.0;        // >= 0
    double eps_gap = 1.0;  // > 0

    double kappa() const { return g * g / eps_gap; }
    void validate() const;
};

CoefficientBundle three_level_effective(const ThreeLevelParams& p, double lambda);

// First-order expansion of the effective-model QFI in kappa:
//   H_kappa = H0 - 2·kappa·(N/(gamma²+delta²)) ·
//             [2·gamma·delta·d_gamma + d_delta·(delta² - gamma²)]/(gamma²+delta²)²,
// with N = delta·d_gamma - gamma·d_delta carrying its sign (the true Taylor
// coefficient; |N| would flip the correction for N < 0).  (c, d) are the base
// coefficients.  Throws ZeroQfiError when H0 = 0.
double three_level_qfi_first_order(const CoefficientBundle& c,
                                   const DerivativeBundle& d, double kappa);

class ThreeLevelModel final : public TwoLevelModel {
public:
    explicit ThreeLevelModel(ThreeLevelParams params);

    std::string name() const override { return "three-level"; }
    std::pair<double, double> domain() const override { return params_.base->domain(); }
    CoefficientBundle coefficients(double lambda) const override;
    bool has_analytic_derivatives() const override {
        return params_.base->has_analytic_derivatives();
    }
    DerivativeBundle derivatives(double lambda) const override;
    std::vector<std::string> validation_warnings() const override;

    const ThreeLevelParams& params() const { return params_; }

private:
    ThreeLevelParams params_;
};

}  // namespace anticross
