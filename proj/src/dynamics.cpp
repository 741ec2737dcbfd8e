#include "anticross/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "anticross/metrology.hpp"

namespace anticross {

namespace {

// sin(z)/z, series below the switch point to avoid 0/0
double sinc(double z) {
    const double az = std::abs(z);
    if (az < 1e-4) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

StateVector assemble(const CoefficientBundle& c, Complex a_minus, Complex a_plus) {
    const auto [g, e] = eigenvector_pair(c);
    return {a_minus * g[0] + a_plus * e[0], a_minus * g[1] + a_plus * e[1]};
}

BlochState bloch_of(const StateVector& v) {
    const Complex cross = std::conj(v[0]) * v[1];
    return BlochState{2.0 * cross.real(), 2.0 * cross.imag(),
                      std::norm(v[0]) - std::norm(v[1])};
}

void validate(const SuperpositionSpec& s) {
    if (!(s.theta >= 0.0 && s.theta <= M_PI))
        throw Error("SuperpositionSpec: theta must lie in [0, pi]");
    if (!(s.phi >= 0.0 && s.phi < 2.0 * M_PI))
        throw Error("SuperpositionSpec: phi must lie in [0, 2 pi)");
}

// Eigenbasis with the signs aligned against a reference pair, so that the
// family stays differentiable across the branch cut of the position-based
// gauge (the cut sits on gamma = 0, delta > 0).
struct AlignedBasis {
    std::array<double, 2> ground;
    std::array<double, 2> excited;
};

AlignedBasis aligned_basis(const CoefficientBundle& c, const AlignedBasis* ref) {
    auto [g, e] = eigenvector_pair(c);
    if (ref) {
        if (g[0] * ref->ground[0] + g[1] * ref->ground[1] < 0.0) {
            g[0] = -g[0];
            g[1] = -g[1];
        }
        if (e[0] * ref->excited[0] + e[1] * ref->excited[1] < 0.0) {
            e[0] = -e[0];
            e[1] = -e[1];
        }
    }
    return AlignedBasis{g, e};
}

StateVector evolved_vector(const TwoLevelModel& model, double lambda,
                           const SuperpositionSpec& spec, const AlignedBasis* ref,
                           AlignedBasis* basis_out = nullptr) {
    const CoefficientBundle c = model.coefficients(lambda);
    const SpectralData s = eigenvalues(c);
    if (s.degenerate)
        throw DegenerateBundleError("qfi_evolved: degenerate bundle at lambda");
    const Complex i(0.0, 1.0);
    const Complex a_minus =
        std::cos(0.5 * spec.theta) * std::exp(-i * s.h_minus * spec.time);
    const Complex a_plus = std::sin(0.5 * spec.theta) *
                           std::exp(i * spec.phi) *
                           std::exp(-i * s.h_plus * spec.time);
    const AlignedBasis basis = aligned_basis(c, ref);
    if (basis_out) *basis_out = basis;
    return {a_minus * basis.ground[0] + a_plus * basis.excited[0],
            a_minus * basis.ground[1] + a_plus * basis.excited[1]};
}

// stable 1 - |<u|w>|² for unit complex 2-vectors: project out the overlap and
// use the Pythagorean residual, 1 - |z|² = ||w - z·u||² exactly.
double one_minus_abs_overlap_sq(const StateVector& u, const StateVector& w) {
    const Complex z = std::conj(u[0]) * w[0] + std::conj(u[1]) * w[1];
    const Complex r0 = w[0] - z * u[0];
    const Complex r1 = w[1] - z * u[1];
    return std::norm(r0) + std::norm(r1);
}

}  // namespace

double QubitUnitary::unitarity_error() const {
    // rows of U·U†
    const Complex a = u[0] * std::conj(u[0]) + u[1] * std::conj(u[1]);
    const Complex b = u[0] * std::conj(u[2]) + u[1] * std::conj(u[3]);
    const Complex cc = u[2] * std::conj(u[0]) + u[3] * std::conj(u[1]);
    const Complex d = u[2] * std::conj(u[2]) + u[3] * std::conj(u[3]);
    return std::max({std::abs(a - 1.0), std::abs(b), std::abs(cc),
                     std::abs(d - 1.0)});
}

QubitUnitary evolution_operator(const CoefficientBundle& c, double t) {
    const double w = c.coupling_norm();
    const Complex i(0.0, 1.0);
    const Complex phase = std::exp(-i * c.omega0 * t);
    const double cosw = std::cos(t * w);
    const double ts = t * sinc(t * w);  // sin(t w)/w, regular at w = 0
    // e^{-i H t} = phase · [cos(t w)·I - i·ts·(delta·s3 - gamma·s1)]
    QubitUnitary out;
    out.u[0] = phase * (cosw - i * ts * c.delta);
    out.u[1] = phase * (i * ts * c.gamma);
    out.u[2] = phase * (i * ts * c.gamma);
    out.u[3] = phase * (cosw + i * ts * c.delta);
    return out;
}

EvolvedState evolve_superposition(const CoefficientBundle& c,
                                  const SuperpositionSpec& spec) {
    validate(spec);
    const SpectralData s = eigenvalues(c);
    if (s.degenerate)
        throw DegenerateBundleError("evolve_superposition: gamma = delta = 0");
    const Complex i(0.0, 1.0);
    EvolvedState out;
    out.amp_ground =
        std::cos(0.5 * spec.theta) * std::exp(-i * s.h_minus * spec.time);
    out.amp_excited = std::sin(0.5 * spec.theta) * std::exp(i * spec.phi) *
                      std::exp(-i * s.h_plus * spec.time);
    out.vector = assemble(c, out.amp_ground, out.amp_excited);
    out.bloch = bloch_of(out.vector);
    return out;
}

double qfi_evolved(const TwoLevelModel& model, double lambda,
                   const SuperpositionSpec& spec, double dlambda) {
    validate(spec);
    if (!(dlambda > 0.0)) throw Error("qfi_evolved: dlambda must be > 0");
    if (!model.contains(lambda - dlambda) || !model.contains(lambda + dlambda)) {
        std::ostringstream msg;
        msg << "qfi_evolved: lambda ± dlambda = " << lambda << " ± " << dlambda
            << " leaves the domain of " << model.name();
        throw DomainError(msg.str());
    }
    AlignedBasis center_basis{};
    const StateVector center =
        evolved_vector(model, lambda, spec, nullptr, &center_basis);
    const auto estimate = [&](double dl) {
        const StateVector up = evolved_vector(model, lambda + dl, spec, &center_basis);
        const StateVector dn = evolved_vector(model, lambda - dl, spec, &center_basis);
        const double hp = 4.0 * one_minus_abs_overlap_sq(center, up) / (dl * dl);
        const double hm = 4.0 * one_minus_abs_overlap_sq(center, dn) / (dl * dl);
        return 0.5 * (hp + hm);
    };
    const double coarse = estimate(dlambda);
    const double fine = estimate(0.5 * dlambda);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    if (std::abs(coarse - fine) <= 1e-4 * scale) return fine;
    return (4.0 * fine - coarse) / 3.0;
}

double qfi_evolved(const TwoLevelModel& model, double lambda,
                   const SuperpositionSpec& spec) {
    return qfi_evolved(model, lambda, spec, default_fidelity_step(lambda));
}

}  // namespace anticross
