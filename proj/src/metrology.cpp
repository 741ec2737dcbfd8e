#include "anticross/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace anticross {

namespace {

void require_nondegenerate(const CoefficientBundle& c, const char* where) {
    if (c.degenerate()) {
        std::ostringstream msg;
        msg << where << ": degenerate bundle (gamma = delta = 0)";
        throw DegenerateBundleError(msg.str());
    }
}

// numerator of the QFI square root: delta·d_gamma - gamma·d_delta
double qfi_numerator(const CoefficientBundle& c, const DerivativeBundle& d) {
    return c.delta * d.d_gamma - c.gamma * d.d_delta;
}

// tanh(beta·w) with the beta = inf sentinel
double thermal_tanh(double beta, double w) {
    if (std::isinf(beta)) return w == 0.0 ? 0.0 : 1.0;
    return std::tanh(beta * w);
}

// 1/cosh²(z), overflow-free
double sech2(double z) {
    const double e = std::exp(-std::abs(z));
    const double s = 2.0 * e / (1.0 + e * e);
    return s * s;
}

// stable 1 - <u|v>² for real unit 2-vectors: 1 - c = ||u - v||²/2 after sign
// alignment, then 1 - c² = (1 - c)(1 + c) without cancellation
double one_minus_overlap_sq(const std::array<double, 2>& u, std::array<double, 2> v) {
    double dot = u[0] * v[0] + u[1] * v[1];
    if (dot < 0.0) {
        v[0] = -v[0];
        v[1] = -v[1];
        dot = -dot;
    }
    const double d0 = u[0] - v[0];
    const double d1 = u[1] - v[1];
    const double one_minus_c = 0.5 * (d0 * d0 + d1 * d1);
    return one_minus_c * (1.0 + dot);
}

// Symmetric fidelity estimate at one step.  The overlap enters squared: for a
// pure family |<psi(l)|psi(l+dl)>|² = 1 - (H/4)·dl², so
// H = 4·[1 - |<·>|²]/dl² (the unsquared magnitude would give H/2).
double fidelity_estimate(const TwoLevelModel& model, double lambda, double dl) {
    const auto center = eigenvector_pair(model.coefficients(lambda)).first;
    const auto up = eigenvector_pair(model.coefficients(lambda + dl)).first;
    const auto dn = eigenvector_pair(model.coefficients(lambda - dl)).first;
    const double hp = 4.0 * one_minus_overlap_sq(center, up) / (dl * dl);
    const double hm = 4.0 * one_minus_overlap_sq(center, dn) / (dl * dl);
    return 0.5 * (hp + hm);
}

}  // namespace

PauliOperator sld_ground(const CoefficientBundle& c, const DerivativeBundle& d) {
    require_nondegenerate(c, "sld_ground");
    const double w2 = c.gamma * c.gamma + c.delta * c.delta;
    const double k = qfi_numerator(c, d) / (w2 * std::sqrt(w2));
    return PauliOperator{0.0, k * c.delta, 0.0, k * c.gamma};
}

double qfi_ground(const CoefficientBundle& c, const DerivativeBundle& d) {
    require_nondegenerate(c, "qfi_ground");
    const double w2 = c.gamma * c.gamma + c.delta * c.delta;
    const double n = qfi_numerator(c, d);
    return (n * n) / (w2 * w2);
}

double qfi_fidelity_oracle(const TwoLevelModel& model, double lambda,
                           double dlambda) {
    if (!(dlambda > 0.0)) throw Error("qfi_fidelity_oracle: dlambda must be > 0");
    if (!model.contains(lambda - dlambda) || !model.contains(lambda + dlambda)) {
        std::ostringstream msg;
        msg << "qfi_fidelity_oracle: lambda ± dlambda = " << lambda << " ± "
            << dlambda << " leaves the domain of " << model.name();
        throw DomainError(msg.str());
    }
    const double coarse = fidelity_estimate(model, lambda, dlambda);
    const double fine = fidelity_estimate(model, lambda, 0.5 * dlambda);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    if (std::abs(coarse - fine) <= 1e-4 * scale) return fine;
    // Richardson step: the estimate has O(dl²) error
    return (4.0 * fine - coarse) / 3.0;
}

double outcome_probability(const CoefficientBundle& c, const MeasurementDirection& r) {
    require_nondegenerate(c, "outcome_probability");
    const double w = c.coupling_norm();
    const double q = 0.5 * (1.0 + (c.gamma * r.r1 - c.delta * r.r3) / w);
    return std::clamp(q, 0.0, 1.0);
}

double outcome_probability_derivative(const CoefficientBundle& c,
                                      const DerivativeBundle& d,
                                      const MeasurementDirection& r) {
    require_nondegenerate(c, "outcome_probability_derivative");
    const double w = c.coupling_norm();
    const double proj = c.gamma * r.r1 - c.delta * r.r3;
    const double dproj = d.d_gamma * r.r1 - d.d_delta * r.r3;
    const double dw = (c.gamma * d.d_gamma + c.delta * d.d_delta) / w;
    return 0.5 * (dproj - proj * dw / w) / w;
}

double g_function(double x, const MeasurementDirection& r) {
    const double r22 = r.r2 * r.r2;
    double num, den;
    if (std::isinf(x)) {
        // delta -> 0 limit: g = r3²/(r2² + r3²)
        num = r.r3 * r.r3;
        den = r22 + num;
    } else {
        num = (r.r1 + x * r.r3) * (r.r1 + x * r.r3);
        den = (1.0 + x * x) * r22 + num;
    }
    if (den <= 0.0)
        throw DeterministicOutcomeError(
            "g_function: deterministic outcome (q ∈ {0,1}), Fisher information undefined");
    return num / den;
}

double g_function_disk(double x, double r1, double r3) {
    const double r22 = 1.0 - r1 * r1 - r3 * r3;
    if (r22 < -1e-9)
        throw Error("g_function_disk: (r1, r3) outside the unit disk");
    MeasurementDirection r;
    r.r1 = r1;
    r.r2 = std::sqrt(std::max(r22, 0.0));
    r.r3 = r3;
    return g_function(x, r);
}

double fisher_projective(const CoefficientBundle& c, const DerivativeBundle& d,
                         const MeasurementDirection& r) {
    const double q = outcome_probability(c, r);
    const double qvar = q * (1.0 - q);
    if (qvar <= 0.0)
        throw DeterministicOutcomeError(
            "fisher_projective: deterministic outcome (q ∈ {0,1})");
    const double dq = outcome_probability_derivative(c, d, r);
    const double direct = dq * dq / qvar;

    // second route: F = H·g in the delta-safe form
    const double w2 = c.gamma * c.gamma + c.delta * c.delta;
    const double m = c.delta * r.r1 + c.gamma * r.r3;
    const double gden = w2 * r.r2 * r.r2 + m * m;
    const double h = qfi_ground(c, d);
    const double via_g = gden > 0.0 ? h * (m * m / gden) : direct;

    const double scale = std::max({std::abs(direct), std::abs(via_g), 1e-300});
    if (std::abs(direct - via_g) > 1e-8 * scale) {
        std::ostringstream msg;
        msg << "fisher_projective: (dq)²/q(1-q) = " << direct
            << " disagrees with H·g = " << via_g;
        throw InternalConsistencyError(msg.str());
    }
    return direct;
}

FisherBreakdown thermal_qfi(const CoefficientBundle& c, const DerivativeBundle& d,
                            double beta) {
    require_nondegenerate(c, "thermal_qfi");
    if (beta < 0.0) throw Error("thermal_qfi: beta must be >= 0");
    const double w = c.coupling_norm();
    const double h0 = qfi_ground(c, d);
    FisherBreakdown out;
    if (std::isinf(beta)) {
        out.k_c = 0.0;
        out.k_q = 1.0;
    } else {
        out.k_c = beta * beta * sech2(beta * w);
        const double th = std::tanh(beta * w);
        out.k_q = th * th;
    }
    const double dw_num = c.gamma * d.d_gamma + c.delta * d.d_delta;
    out.h_classical = (dw_num * dw_num) / (w * w) * out.k_c;
    out.h_quantum = h0 * out.k_q;
    out.h_total = out.h_classical + out.h_quantum;
    return out;
}

double thermal_outcome_probability(const CoefficientBundle& c, double beta,
                                   const MeasurementDirection& r) {
    if (beta < 0.0) throw Error("thermal_outcome_probability: beta must be >= 0");
    const double q = outcome_probability(c, r);
    const double th = thermal_tanh(beta, c.coupling_norm());
    return 0.5 + (q - 0.5) * th;
}

ThermalFisher thermal_fisher(const CoefficientBundle& c, const DerivativeBundle& d,
                             double beta, const MeasurementDirection& r) {
    require_nondegenerate(c, "thermal_fisher");
    if (beta < 0.0) throw Error("thermal_fisher: beta must be >= 0");

    ThermalFisher out;
    const double lead = r.r1 * d.d_gamma - r.r3 * d.d_delta;
    out.small_beta_coefficient = lead * lead;

    if (beta == 0.0) return out;  // q_beta ≡ ½ carries no information

    const double w = c.coupling_norm();
    const double q = outcome_probability(c, r);
    const double th = thermal_tanh(beta, w);
    const double wbeta = 2.0 * (q - 0.5) * th;  // 2·(q_beta - ½)
    const double qb_var = 0.25 * (1.0 - wbeta) * (1.0 + wbeta);
    if (qb_var <= 0.0)
        throw DeterministicOutcomeError("thermal_fisher: deterministic outcome");

    const double dq = outcome_probability_derivative(c, d, r);
    const double dw = (c.gamma * d.d_gamma + c.delta * d.d_delta) / w;
    const double dtanh = std::isinf(beta) ? 0.0 : beta * sech2(beta * w) * dw;
    const double dqb = dq * th + (q - 0.5) * dtanh;
    out.value = dqb * dqb / qb_var;
    return out;
}

MeasurementDirection optimal_direction_highT(const DerivativeBundle& d) {
    if (d.d_gamma == 0.0 && d.d_delta == 0.0)
        throw ZeroDerivativeError(
            "optimal_direction_highT: d_gamma = d_delta = 0");
    return MeasurementDirection(d.d_gamma, 0.0, -d.d_delta);
}

}  // namespace anticross
