// metrology.hpp — SLD, quantum Fisher information (zero and finite
// temperature), and the classical Fisher information of projective
// measurements, with the ground-state-fidelity oracle.
//
// All quantities are written in the delta-safe forms (gamma, delta) rather
// than x = gamma/delta, so delta = 0 points are regular wherever the physics
// is; only the degenerate bundle gamma = delta = 0 is rejected.

#pragma once

#include "anticross/hamiltonian.hpp"
#include "anticross/types.hpp"

namespace anticross {

// Symmetric logarithmic derivative of the ground-state family,
//   L = (delta·d_gamma - gamma·d_delta)/(gamma²+delta²)^{3/2} · (delta·s1 + gamma·s3),
// the unique traceless solution of  d_lambda rho = ½(L rho + rho L)  for the
// pure ground state.  For delta > 0 this is d_x/(1+x²)^{3/2}·(s1 + x·s3).
PauliOperator sld_ground(const CoefficientBundle& c, const DerivativeBundle& d);

// Zero-temperature QFI of the ground state,
//   H = (delta·d_gamma - gamma·d_delta)² / (gamma²+delta²)²
//     = (d_lambda x)²/(1+x²)²  for delta > 0.
// Independent of omega0 and d_omega0.
double qfi_ground(const CoefficientBundle& c, const DerivativeBundle& d);

// Independent ground truth for qfi_ground: the fidelity limit
//   H = lim 4·[1 - |<psi-(lambda+dl)|psi-(lambda)>|]/dl²
// evaluated symmetrically over ±dlambda, with Richardson refinement
// (dlambda, dlambda/2) when the two estimates disagree by > 1e-4 relative.
double qfi_fidelity_oracle(const TwoLevelModel& model, double lambda,
                           double dlambda);

// Default oracle step policy: 1e-4 · max(1, |lambda|).
inline double default_fidelity_step(double lambda) {
    return 1e-4 * std::max(1.0, std::abs(lambda));
}
inline double qfi_fidelity_oracle(const TwoLevelModel& model, double lambda) {
    return qfi_fidelity_oracle(model, lambda, default_fidelity_step(lambda));
}

// Probability of the Pi outcome on the zero-temperature ground state,
//   q = ½·[1 + (gamma·r1 - delta·r3)/sqrt(gamma²+delta²)] ∈ [0, 1].
// The complementary outcome has probability 1 - q.
double outcome_probability(const CoefficientBundle& c, const MeasurementDirection& r);

// d_lambda q, analytic.
double outcome_probability_derivative(const CoefficientBundle& c,
                                      const DerivativeBundle& d,
                                      const MeasurementDirection& r);

// Measurement efficiency g = F/H as a function of x = gamma/delta:
//   g = (r1 + x·r3)² / [1 + x² - (x·r1 - r3)²]  ∈ [0, 1],
// evaluated through the stable equivalent
//   g = N / [(1+x²)·r2² + N],  N = (r1 + x·r3)²,
// so that g == 1 exactly on the r2 = 0 circle.  x may be ±inf (delta = 0
// limit).  Throws DeterministicOutcomeError when q ∈ {0, 1} (denominator 0).
double g_function(double x, const MeasurementDirection& r);

// Disk parametrization used by the g-surface artifact: r2² = 1 - r1² - r3²
// (requires r1² + r3² <= 1).
double g_function_disk(double x, double r1, double r3);

// Fisher information of the projective pair {Pi, I - Pi}:
//   F = (d_lambda q)² / [q(1-q)],
// cross-checked against the algebraically identical H·g route
// (InternalConsistencyError above 1e-8 relative).  F <= H always.
double fisher_projective(const CoefficientBundle& c, const DerivativeBundle& d,
                         const MeasurementDirection& r);

// Finite-temperature QFI split,  H_beta = H_C + H_Q:
//   H_C = (gamma·d_gamma + delta·d_delta)²/(gamma²+delta²) · k_C,
//   k_C = beta²/cosh²(beta·w),   w = sqrt(gamma²+delta²),
//   H_Q = H0 · k_Q,  k_Q = tanh²(beta·w).
// beta may be +inf (k_C = 0, k_Q = 1, H -> H0).
FisherBreakdown thermal_qfi(const CoefficientBundle& c, const DerivativeBundle& d,
                            double beta);

// q_beta = ½ + [q - ½]·tanh(beta·w); reduces to q at beta -> inf, ½ at beta = 0.
double thermal_outcome_probability(const CoefficientBundle& c, double beta,
                                   const MeasurementDirection& r);

struct ThermalFisher {
    double value = 0.0;               // exact F_beta from analytic d_lambda q_beta
    double small_beta_coefficient = 0.0;  // (r1·d_gamma - r3·d_delta)², F_beta ~ coeff·beta²
};

// Exact finite-temperature Fisher information of the projective pair, plus
// the leading small-beta coefficient for comparison.  F_beta <= H_beta.
ThermalFisher thermal_fisher(const CoefficientBundle& c, const DerivativeBundle& d,
                             double beta, const MeasurementDirection& r);

// Maximizer of the small-beta leading coefficient (r1·d_gamma - r3·d_delta)²
// over unit directions: r ∝ (d_gamma, 0, -d_delta).  With this direction
// F_beta/H_beta -> 1 as beta -> 0.
MeasurementDirection optimal_direction_highT(const DerivativeBundle& d);

}  // namespace anticross
