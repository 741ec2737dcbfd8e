#include "anticross/model_zoo.hpp"

#include <cmath>
#include <sstream>

#include "anticross/metrology.hpp"

namespace anticross {

// --------------------------- perturbation model ------------------------------

void PerturbationParams::validate() const {
    if (!(delta_gap > 0.0)) throw ConfigError("perturbation: delta must be > 0");
    if (!(epsilon > 0.0)) throw ConfigError("perturbation: epsilon must be > 0");
    if (!(phi >= 0.0 && phi < M_PI / 2.0))
        throw ConfigError("perturbation: phi must lie in [0, pi/2)");
}

CoefficientBundle perturbation_coefficients(const PerturbationParams& p,
                                            double lambda) {
    const double c2 = std::cos(2.0 * p.phi);
    const double s2 = std::sin(2.0 * p.phi);
    CoefficientBundle c;
    c.omega0 = p.omega + 0.5 * (p.delta_gap + lambda * p.epsilon);
    c.delta = 0.5 * (p.delta_gap + lambda * p.epsilon * c2);
    c.gamma = -0.5 * lambda * p.epsilon * s2;
    return c;
}

DerivativeBundle perturbation_derivatives(const PerturbationParams& p,
                                          double /*lambda*/) {
    DerivativeBundle d;
    d.d_omega0 = 0.5 * p.epsilon;
    d.d_delta = 0.5 * p.epsilon * std::cos(2.0 * p.phi);
    d.d_gamma = -0.5 * p.epsilon * std::sin(2.0 * p.phi);
    return d;
}

double perturbation_qfi_closed_form(const PerturbationParams& p, double lambda) {
    if (std::abs(p.phi - M_PI / 4.0) > 1e-12)
        throw Error("perturbation_qfi_closed_form: closed form holds at phi = pi/4 only");
    // pipeline value; equals (eps/delta)²/[1 + (eps·lambda/delta)²]² analytically
    return qfi_ground(perturbation_coefficients(p, lambda),
                      perturbation_derivatives(p, lambda));
}

double perturbation_qfi_paper_printed(const PerturbationParams& p, double lambda) {
    const double y = p.epsilon / (2.0 * p.delta_gap);
    const double z = 1.0 + y * y * lambda * lambda;
    return 1.0 / (z * z);
}

PerturbationModel::PerturbationModel(PerturbationParams params,
                                     std::pair<double, double> domain)
    : params_(params), domain_(domain) {
    params_.validate();
    if (!(domain_.first < domain_.second))
        throw ConfigError("perturbation: empty domain");
}

CoefficientBundle PerturbationModel::coefficients(double lambda) const {
    require_inside(lambda);
    return perturbation_coefficients(params_, lambda);
}

DerivativeBundle PerturbationModel::derivatives(double lambda) const {
    require_inside(lambda);
    return perturbation_derivatives(params_, lambda);
}

std::optional<double> PerturbationModel::paper_printed_qfi(double lambda) const {
    if (std::abs(params_.phi - M_PI / 4.0) > 1e-12) return std::nullopt;
    return perturbation_qfi_paper_printed(params_, lambda);
}

// ------------------------------- Rabi model ----------------------------------

void RabiParams::validate() const {
    if (!(omega0 > 0.0)) throw ConfigError("rabi: omega0 must be > 0");
    if (!(omega > 0.0)) throw ConfigError("rabi: omega must be > 0");
}

namespace {

double rabi_delta(const RabiParams& p, double omega_rabi) {
    return p.convention == RabiDeltaConvention::kPaper
               ? omega_rabi - 2.0 * p.omega
               : p.omega - 0.5 * omega_rabi;
}

}  // namespace

CoefficientBundle rabi_coefficients(const RabiParams& p, double lambda) {
    if (lambda < 0.0) throw Error("rabi_coefficients: lambda must be >= 0");
    const double det = p.omega - p.omega0;
    const double omega_rabi = std::hypot(lambda, det);
    CoefficientBundle c;
    c.omega0 = p.omega;
    if (omega_rabi == 0.0) {
        // exact resonance, lambda = 0: gamma(lambda) = -lambda/4 -> 0
        c.gamma = 0.0;
        c.delta = rabi_delta(p, 0.0);
        return c;
    }
    c.gamma = -(lambda / (4.0 * omega_rabi)) * (omega_rabi + det);
    c.delta = rabi_delta(p, omega_rabi);
    return c;
}

DerivativeBundle rabi_derivatives(const RabiParams& p, double lambda) {
    if (lambda < 0.0) throw Error("rabi_derivatives: lambda must be >= 0");
    const double det = p.omega - p.omega0;
    const double omega_rabi = std::hypot(lambda, det);
    DerivativeBundle d;
    if (omega_rabi == 0.0) {
        // limits along lambda -> 0+ at resonance: Omega = lambda
        d.d_gamma = -0.25;
        d.d_delta = p.convention == RabiDeltaConvention::kPaper ? 1.0 : -0.5;
        return d;
    }
    const double d_omega_rabi = lambda / omega_rabi;
    // gamma = -(lambda/4)·(1 + det/Omega)
    d.d_gamma = -0.25 * (1.0 + det / omega_rabi) +
                0.25 * lambda * det * d_omega_rabi /
                    (omega_rabi * omega_rabi);
    d.d_delta = p.convention == RabiDeltaConvention::kPaper
                    ? d_omega_rabi
                    : -0.5 * d_omega_rabi;
    return d;
}

double rabi_qfi_resonance(const RabiParams& p, double lambda) {
    if (std::abs(p.omega - p.omega0) > 1e-12 * std::max(p.omega, p.omega0))
        throw Error("rabi_qfi_resonance: requires omega == omega0");
    RabiParams at_resonance = p;
    at_resonance.convention = RabiDeltaConvention::kPaper;
    return qfi_ground(rabi_coefficients(at_resonance, lambda),
                      rabi_derivatives(at_resonance, lambda));
}

RabiModel::RabiModel(RabiParams params, std::pair<double, double> domain)
    : params_(params), domain_(domain) {
    params_.validate();
    if (!(domain_.first < domain_.second) || domain_.first < 0.0)
        throw ConfigError("rabi: domain must be a nonempty subinterval of [0, inf)");
}

CoefficientBundle RabiModel::coefficients(double lambda) const {
    require_inside(lambda);
    return rabi_coefficients(params_, lambda);
}

DerivativeBundle RabiModel::derivatives(double lambda) const {
    require_inside(lambda);
    return rabi_derivatives(params_, lambda);
}

std::optional<double> RabiModel::paper_printed_qfi(double lambda) const {
    // printed closed form is the near-resonance expression
    if (std::abs(params_.omega - params_.omega0) >
        1e-12 * std::max(params_.omega, params_.omega0))
        return std::nullopt;
    const double y = lambda / params_.omega0;
    const double f = 1.0 - y + (17.0 / 64.0) * y * y;
    return 1.0 / (64.0 * params_.omega0 * params_.omega0 * f * f);
}

// ----------------------------- three-level model -----------------------------

void ThreeLevelParams::validate() const {
    if (!base) throw ConfigError("three-level: missing base model");
    if (g < 0.0) throw ConfigError("three-level: g must be >= 0");
    if (!(eps_gap > 0.0)) throw ConfigError("three-level: eps_gap must be > 0");
}

CoefficientBundle three_level_effective(const ThreeLevelParams& p, double lambda) {
    const double kappa = p.kappa();
    CoefficientBundle c = p.base->coefficients(lambda);
    c.omega0 += kappa;
    c.gamma += kappa;
    return c;
}

double three_level_qfi_first_order(const CoefficientBundle& c,
                                   const DerivativeBundle& d, double kappa) {
    if (c.degenerate())
        throw DegenerateBundleError("three_level_qfi_first_order: gamma = delta = 0");
    const double w2 = c.gamma * c.gamma + c.delta * c.delta;
    const double n = c.delta * d.d_gamma - c.gamma * d.d_delta;
    if (n == 0.0)
        throw ZeroQfiError("three_level_qfi_first_order: H0 = 0, expansion ill-defined");
    const double h0 = n * n / (w2 * w2);
    const double bracket = 2.0 * c.gamma * c.delta * d.d_gamma +
                           d.d_delta * (c.delta * c.delta - c.gamma * c.gamma);
    return h0 - 2.0 * kappa * (n / w2) * bracket / (w2 * w2);
}

ThreeLevelModel::ThreeLevelModel(ThreeLevelParams params)
    : params_(std::move(params)) {
    params_.validate();
}

CoefficientBundle ThreeLevelModel::coefficients(double lambda) const {
    require_inside(lambda);
    return three_level_effective(params_, lambda);
}

DerivativeBundle ThreeLevelModel::derivatives(double lambda) const {
    // kappa is lambda-independent, so the base derivatives carry over
    return params_.base->derivatives(lambda);
}

std::vector<std::string> ThreeLevelModel::validation_warnings() const {
    std::vector<std::string> warnings = TwoLevelModel::validation_warnings();
    const auto [lo, hi] = domain();
    double max_level = 0.0;
    constexpr int kSamples = 64;
    for (int i = 0; i < kSamples; ++i) {
        const double lambda =
            i == kSamples - 1 ? hi : lo + (hi - lo) * i / (kSamples - 1);
        const CoefficientBundle c = params_.base->coefficients(lambda);
        max_level = std::max({max_level, std::abs(c.omega0 - c.delta),
                              std::abs(c.omega0 + c.delta)});
    }
    if (params_.eps_gap <= 10.0 * max_level) {
        std::ostringstream msg;
        msg << "eps_gap = " << params_.eps_gap
            << " is not large against the level energies (max |omega_k| = "
            << max_level << "); effective reduction assumes eps_gap >> omega_k";
        warnings.push_back(msg.str());
    }
    if (params_.g >= 0.3) {
        std::ostringstream msg;
        msg << "g = " << params_.g << " is not weak; reduction assumes g << 1";
        warnings.push_back(msg.str());
    }
    return warnings;
}

}  // namespace anticross
