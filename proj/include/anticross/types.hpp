// types.hpp — Domain value types shared by every anticross module.
//
// Conventions (fixed once, used everywhere):
//   * A two-level Hamiltonian is the coefficient triple (omega0, delta, gamma)
//     with eigenvalues  h± = omega0 ± sqrt(gamma² + delta²).
//   * Bloch map: rho = ½(I + n1·s1 + n2·s2 + n3·s3).  The Bloch frame is fixed
//     so that the ground state sits at n = (gamma, 0, -delta)/sqrt(gamma²+delta²);
//     the Hamiltonian matrix in this frame is  omega0·I + delta·s3 - gamma·s1.
//   * hbar = 1, all energies in one arbitrary unit, beta and t in its inverse.

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace anticross {

// ----------------------------- error taxonomy -------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// gamma = delta = 0: eigenvectors (and everything built on them) undefined.
struct DegenerateBundleError : Error {
    using Error::Error;
};

// Measurement outcome probability is 0 or 1: Fisher information undefined,
// reported as a typed condition rather than ±inf.
struct DeterministicOutcomeError : Error {
    using Error::Error;
};

// An evaluation point (or point ± step) left the model domain.
struct DomainError : Error {
    using Error::Error;
};

// The lambda -> q map is not invertible on the requested search interval.
struct NonIdentifiableError : Error {
    using Error::Error;
};

struct ZeroDerivativeError : Error {
    using Error::Error;
};

// First-order kappa expansion requested at a point with vanishing QFI.
struct ZeroQfiError : Error {
    using Error::Error;
};

// Two algebraically equivalent routes disagreed beyond numerical slack.
struct InternalConsistencyError : Error {
    using Error::Error;
};

// Malformed model configuration / CLI input.
struct ConfigError : Error {
    using Error::Error;
};

// ------------------------------- value types ---------------------------------

// Hamiltonian coefficients at one value of the estimated parameter.
struct CoefficientBundle {
    double omega0 = 0.0;  // ½(omega2 + omega1)
    double delta = 0.0;   // ½(omega2 - omega1)
    double gamma = 0.0;   // transverse coupling, real

    // sqrt(gamma² + delta²), half the spectral gap
    double coupling_norm() const { return std::hypot(gamma, delta); }
    bool degenerate() const { return gamma == 0.0 && delta == 0.0; }
};

// d/dlambda of the coefficients; fd_step records the central-difference step
// when the values were produced numerically.
struct DerivativeBundle {
    double d_omega0 = 0.0;
    double d_delta = 0.0;
    double d_gamma = 0.0;
    std::optional<double> fd_step{};
};

// Eigenvalues and derived spectral quantities.
struct SpectralData {
    double h_minus = 0.0;
    double h_plus = 0.0;
    double gap = 0.0;   // h_plus - h_minus
    double x = 0.0;     // gamma/delta; +inf sentinel when delta == 0, gamma != 0
    bool degenerate = false;  // gamma == delta == 0 (gap 0)
};

// Qubit state as a Bloch vector, rho = ½(I + n·sigma).
struct BlochState {
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;

    double norm() const { return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3); }
    double norm2() const { return n1 * n1 + n2 * n2 + n3 * n3; }
    bool pure(double tol = 1e-12) const { return std::abs(norm2() - 1.0) <= tol; }
};

// Hermitian 2x2 operator in the Pauli basis: c0·I + c1·s1 + c2·s2 + c3·s3.
struct PauliOperator {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    double vector_norm() const { return std::sqrt(c1 * c1 + c2 * c2 + c3 * c3); }
    double eig_low() const { return c0 - vector_norm(); }
    double eig_high() const { return c0 + vector_norm(); }
};

// Unit Bloch vector defining the projective pair {Pi, I - Pi},
// Pi = ½(I + r·sigma).  Normalized on construction.
struct MeasurementDirection {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 1.0;

    MeasurementDirection() = default;

    MeasurementDirection(double a1, double a2, double a3) {
        const double n = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
        if (!(n > 0.0) || !std::isfinite(n))
            throw Error("MeasurementDirection: zero or non-finite vector");
        r1 = a1 / n;
        r2 = a2 / n;
        r3 = a3 / n;
    }
};

// Finite-temperature QFI split into population (classical) and eigenvector
// (quantum) contributions; h_total == h_classical + h_quantum by construction.
struct FisherBreakdown {
    double h_total = 0.0;
    double h_classical = 0.0;
    double h_quantum = 0.0;
    double k_c = 0.0;  // beta²/cosh²(beta·sqrt(gamma²+delta²))
    double k_q = 0.0;  // tanh²(beta·sqrt(gamma²+delta²)), in [0, 1]
};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace anticross
