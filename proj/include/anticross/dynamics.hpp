// dynamics.hpp — Unitary evolution under the time-independent Hamiltonian and
// the QFI of dynamically evolved superpositions.

#pragma once

#include <array>
#include <complex>

#include "anticross/hamiltonian.hpp"
#include "anticross/types.hpp"

namespace anticross {

using Complex = std::complex<double>;
using StateVector = std::array<Complex, 2>;

// 2x2 unitary, stored densely.  Entries are in the fixed matrix frame of
// eigenvector_pair (Hamiltonian matrix omega0·I + delta·s3 - gamma·s1).
struct QubitUnitary {
    // row-major: u[0] u[1] / u[2] u[3]
    std::array<Complex, 4> u{Complex(1, 0), Complex(0, 0), Complex(0, 0),
                             Complex(1, 0)};

    StateVector apply(const StateVector& v) const {
        return {u[0] * v[0] + u[1] * v[1], u[2] * v[0] + u[3] * v[1]};
    }

    // max | (U·U†)_jk - I_jk |
    double unitarity_error() const;
};

// Initial superposition cos(theta/2)|psi-> + e^{i phi} sin(theta/2)|psi+>,
// evolved for the given time.
struct SuperpositionSpec {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
    double time = 0.0;
};

// U = e^{-i H t} for H = omega0·I + delta·s3 - gamma·s1:
//   U = e^{-i omega0 t} [cos(t w)·I - i·t·sinc(t w)·(delta·s3 - gamma·s1)],
// with w = sqrt(gamma²+delta²) and sinc evaluated by series for small t·w.
// w = 0 gives the pure phase e^{-i omega0 t}·I.
QubitUnitary evolution_operator(const CoefficientBundle& c, double t);

struct EvolvedState {
    Complex amp_ground;   // coefficient of |psi-> : cos(theta/2)·e^{-i h- t}
    Complex amp_excited;  // coefficient of |psi+> : e^{i phi} sin(theta/2)·e^{-i h+ t}
    StateVector vector;   // assembled in the fixed matrix frame
    BlochState bloch;
};

// Evolved superposition; norm preserved to machine precision.
// Throws DegenerateBundleError when the eigenbasis is undefined.
EvolvedState evolve_superposition(const CoefficientBundle& c,
                                  const SuperpositionSpec& spec);

// QFI of the evolved family lambda -> |psi_theta(t; lambda)>, with eigenbasis
// and dynamical phases both differentiated, computed by the symmetric
// fidelity method (step policy of qfi_fidelity_oracle).
//
// The evolved-family QFI coincides with the ground QFI for theta ∈ {0, pi}
// and, more generally, whenever the gap derivative d_lambda(h+ - h-) vanishes
// and sin(phi - gap·t) = 0; away from that set the dynamical phase winding
// contributes (or removes) information and the two differ.
double qfi_evolved(const TwoLevelModel& model, double lambda,
                   const SuperpositionSpec& spec);
double qfi_evolved(const TwoLevelModel& model, double lambda,
                   const SuperpositionSpec& spec, double dlambda);

}  // namespace anticross
