#include "anticross/hamiltonian.hpp"

#include <cmath>
#include <sstream>

namespace anticross {

SpectralData eigenvalues(const CoefficientBundle& c) {
    SpectralData s;
    const double w = c.coupling_norm();
    s.h_minus = c.omega0 - w;
    s.h_plus = c.omega0 + w;
    s.gap = 2.0 * w;
    s.degenerate = c.degenerate();
    if (c.delta != 0.0)
        s.x = c.gamma / c.delta;
    else
        s.x = s.degenerate ? 0.0 : kInf;
    return s;
}

std::pair<BlochState, BlochState> eigenprojectors(const CoefficientBundle& c) {
    const double w = c.coupling_norm();
    if (w == 0.0)
        throw DegenerateBundleError("eigenprojectors: gamma = delta = 0");
    const BlochState ground{c.gamma / w, 0.0, -c.delta / w};
    const BlochState excited{-c.gamma / w, 0.0, c.delta / w};
    return {ground, excited};
}

std::pair<std::array<double, 2>, std::array<double, 2>>
eigenvector_pair(const CoefficientBundle& c) {
    const double w = c.coupling_norm();
    if (w == 0.0)
        throw DegenerateBundleError("eigenvector_pair: gamma = delta = 0");
    if (c.gamma == 0.0) {
        if (c.delta > 0.0)
            return {{{0.0, 1.0}}, {{1.0, 0.0}}};
        return {{{1.0, 0.0}}, {{0.0, 1.0}}};
    }
    // ground ∝ (w - delta, gamma); w - delta rewritten to avoid cancellation
    const double t = (c.delta > 0.0) ? c.gamma * c.gamma / (w + c.delta)
                                     : w - c.delta;
    const double norm = std::hypot(t, c.gamma);
    std::array<double, 2> ground{t / norm, c.gamma / norm};
    std::array<double, 2> excited{-c.gamma / norm, t / norm};
    if (excited[0] < 0.0) {
        excited[0] = -excited[0];
        excited[1] = -excited[1];
    }
    return {ground, excited};
}

BlochState thermal_state(const CoefficientBundle& c, double beta) {
    if (beta < 0.0) throw Error("thermal_state: beta must be >= 0");
    const double w = c.coupling_norm();
    if (w == 0.0) return BlochState{};  // e^{-beta H} ∝ I
    const double th = std::isinf(beta) ? 1.0 : std::tanh(beta * w);
    return BlochState{th * c.gamma / w, 0.0, -th * c.delta / w};
}

std::pair<double, double> thermal_populations(const CoefficientBundle& c, double beta) {
    if (beta < 0.0) throw Error("thermal_populations: beta must be >= 0");
    const double w = c.coupling_norm();
    const double th = std::isinf(beta) ? (w == 0.0 ? 0.0 : 1.0) : std::tanh(beta * w);
    return {0.5 * (1.0 + th), 0.5 * (1.0 - th)};
}

double purity(const BlochState& s) { return 0.5 * (1.0 + s.norm2()); }

DerivativeBundle TwoLevelModel::derivatives(double lambda) const {
    return finite_difference_derivatives(*this, lambda, default_fd_step(lambda));
}

void TwoLevelModel::require_inside(double lambda) const {
    if (!contains(lambda)) {
        std::ostringstream msg;
        auto [lo, hi] = domain();
        msg << name() << ": lambda = " << lambda << " outside domain [" << lo
            << ", " << hi << "]";
        throw DomainError(msg.str());
    }
}

std::vector<std::string> TwoLevelModel::validation_warnings() const {
    std::vector<std::string> warnings;
    const auto [lo, hi] = domain();
    constexpr int kSamples = 101;
    int nonpositive_delta = 0;
    int degenerate = 0;
    for (int i = 0; i < kSamples; ++i) {
        const double lambda =
            i == kSamples - 1 ? hi : lo + (hi - lo) * i / (kSamples - 1);
        const CoefficientBundle c = coefficients(lambda);
        if (c.delta <= 0.0) ++nonpositive_delta;
        if (c.degenerate()) ++degenerate;
    }
    if (nonpositive_delta > 0) {
        std::ostringstream msg;
        msg << "delta <= 0 at " << nonpositive_delta << "/" << kSamples
            << " sampled points (omega2 > omega1 convention violated)";
        warnings.push_back(msg.str());
    }
    if (degenerate > 0) {
        std::ostringstream msg;
        msg << "gamma = delta = 0 (level crossing) at " << degenerate << "/"
            << kSamples << " sampled points";
        warnings.push_back(msg.str());
    }
    return warnings;
}

DerivativeBundle finite_difference_derivatives(const TwoLevelModel& model,
                                               double lambda, double h) {
    if (!(h > 0.0)) throw Error("finite_difference_derivatives: h must be > 0");
    if (!model.contains(lambda - h) || !model.contains(lambda + h)) {
        std::ostringstream msg;
        msg << "finite_difference_derivatives: lambda ± h = " << lambda << " ± "
            << h << " leaves the domain of " << model.name();
        throw DomainError(msg.str());
    }
    const CoefficientBundle up = model.coefficients(lambda + h);
    const CoefficientBundle dn = model.coefficients(lambda - h);
    DerivativeBundle d;
    d.d_omega0 = (up.omega0 - dn.omega0) / (2.0 * h);
    d.d_delta = (up.delta - dn.delta) / (2.0 * h);
    d.d_gamma = (up.gamma - dn.gamma) / (2.0 * h);
    d.fd_step = h;
    return d;
}

}  // namespace anticross
