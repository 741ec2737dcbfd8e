// hamiltonian.hpp — Spectral decomposition, equilibrium states, and the
// parametric two-level model interface.

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "anticross/types.hpp"

namespace anticross {

// --------------------------- spectral decomposition --------------------------

// h± = omega0 ± sqrt(gamma² + delta²).  Total: the degenerate bundle
// (gamma, delta) = (0, 0) yields gap 0 with the degeneracy flag set.
SpectralData eigenvalues(const CoefficientBundle& c);

// Bloch vectors of the eigenprojectors, returned as (ground, excited):
//   ground  n- = ( gamma, 0, -delta)/sqrt(gamma²+delta²)
//   excited n+ = (-gamma, 0,  delta)/sqrt(gamma²+delta²)
// Both pure, independent of omega0.  Throws DegenerateBundleError at
// gamma = delta = 0.
std::pair<BlochState, BlochState> eigenprojectors(const CoefficientBundle& c);

// Real unit 2-vectors of the ground/excited eigenstates in the fixed matrix
// frame (H = omega0·I + delta·s3 - gamma·s1), gauge-fixed to a nonnegative
// first component (second component positive when the first vanishes).
// Stable against cancellation for |gamma| << delta.
std::pair<std::array<double, 2>, std::array<double, 2>>
eigenvector_pair(const CoefficientBundle& c);

// Gibbs state at inverse temperature beta >= 0 (beta may be +inf):
//   n = tanh(beta·sqrt(gamma²+delta²)) · (gamma, 0, -delta)/sqrt(gamma²+delta²).
// beta = 0 gives the maximally mixed state; beta -> inf the ground projector.
// A degenerate bundle has e^{-beta H} ∝ I, so the maximally mixed state is
// returned for any beta (flagged degenerate via eigenvalues()).
BlochState thermal_state(const CoefficientBundle& c, double beta);

// Ground-state populations p- >= p+ of the Gibbs state, p∓ = e^{-beta·h∓}/Z.
std::pair<double, double> thermal_populations(const CoefficientBundle& c, double beta);

// mu = ½(1 + |n|²) ∈ [½, 1].
double purity(const BlochState& s);

// ------------------------------- model interface -----------------------------

// A parameter-dependent two-level Hamiltonian: lambda -> coefficients on a
// real interval domain.  Models without analytic derivatives fall back to
// central differences with a recorded step.
class TwoLevelModel {
public:
    virtual ~TwoLevelModel() = default;

    virtual std::string name() const = 0;
    virtual std::pair<double, double> domain() const = 0;
    virtual CoefficientBundle coefficients(double lambda) const = 0;

    virtual bool has_analytic_derivatives() const { return false; }
    virtual DerivativeBundle derivatives(double lambda) const;

    // Literature closed-form QFI for models that carry one, emitted next to
    // the pipeline value in scan artifacts (H_paper_printed column); nullopt
    // otherwise.
    virtual std::optional<double> paper_printed_qfi(double /*lambda*/) const {
        return std::nullopt;
    }

    // Non-fatal conditions (delta <= 0 somewhere on the domain, regime
    // assumptions violated, ...).  Default implementation samples the domain.
    virtual std::vector<std::string> validation_warnings() const;

    bool contains(double lambda) const {
        auto [lo, hi] = domain();
        return lambda >= lo && lambda <= hi;
    }

    void require_inside(double lambda) const;
};

using ModelPtr = std::shared_ptr<const TwoLevelModel>;

// Ad-hoc model from callables; analytic derivatives optional.
class FunctionModel final : public TwoLevelModel {
public:
    using Eval = std::function<CoefficientBundle(double)>;
    using Deriv = std::function<DerivativeBundle(double)>;

    FunctionModel(std::string name, std::pair<double, double> domain, Eval eval,
                  Deriv deriv = nullptr)
        : name_(std::move(name)), domain_(domain), eval_(std::move(eval)),
          deriv_(std::move(deriv)) {
        if (!(domain_.first < domain_.second))
            throw ConfigError("FunctionModel: empty domain");
    }

    std::string name() const override { return name_; }
    std::pair<double, double> domain() const override { return domain_; }
    CoefficientBundle coefficients(double lambda) const override {
        require_inside(lambda);
        return eval_(lambda);
    }
    bool has_analytic_derivatives() const override { return deriv_ != nullptr; }
    DerivativeBundle derivatives(double lambda) const override {
        if (!deriv_) return TwoLevelModel::derivatives(lambda);
        require_inside(lambda);
        return deriv_(lambda);
    }

private:
    std::string name_;
    std::pair<double, double> domain_;
    Eval eval_;
    Deriv deriv_;
};

// ------------------------------ finite differences ---------------------------

// Default central-difference step, balancing truncation against rounding for
// order-unity coefficients.
inline double default_fd_step(double lambda) {
    return std::max(1e-6, 1e-6 * std::abs(lambda));
}

// (f(lambda+h) - f(lambda-h)) / 2h per coefficient; records h.
// Throws DomainError when lambda ± h leaves the model domain.
DerivativeBundle finite_difference_derivatives(const TwoLevelModel& model,
                                               double lambda, double h);

}  // namespace anticross
