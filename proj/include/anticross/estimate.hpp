// estimate.hpp — Simulated measurement records, maximum-likelihood and
// Bayesian estimates, and Cramér-Rao benchmarking of the empirical variance.

#pragma once

#include <cstdint>
#include <vector>

#include "anticross/hamiltonian.hpp"
#include "anticross/metrology.hpp"
#include "anticross/types.hpp"

namespace anticross {

// Binary outcomes reduced to their sufficient statistic.
struct OutcomeRecord {
    std::uint64_t m_total = 0;
    std::uint64_t n_success = 0;
    std::uint64_t seed = 0;
    double q_true = 0.0;
};

enum class EstimatorMethod { kMle, kBayesPosteriorMean };

struct EstimatorConfig {
    EstimatorMethod method = EstimatorMethod::kMle;
    std::pair<double, double> search_interval{0.0, 1.0};
    std::size_t grid_points = 512;  // >= 64
    double tolerance = 1e-10;

    void validate() const;
};

struct MleResult {
    double lambda_hat = 0.0;
    bool clamped = false;  // empirical frequency outside the range of q_beta(Lambda)
};

struct BayesResult {
    double lambda_hat = 0.0;
    bool degenerate_posterior = false;  // mass concentrated within one grid cell
};

struct EstimationReport {
    double lambda_true = 0.0;
    std::vector<double> estimates;
    double mean = 0.0;
    double bias = 0.0;
    double empirical_variance = 0.0;  // unbiased sample variance of the estimates
    double crb_classical = 0.0;       // 1/(m·F_beta) at lambda_true
    double crb_quantum = 0.0;         // 1/(m·H_beta) at lambda_true
    std::uint64_t m_per_batch = 0;
    std::uint64_t batches = 0;
    std::uint64_t seed = 0;
    std::uint64_t clamped_batches = 0;
};

// n_success ~ Binomial(m, q), drawn Bernoulli-by-Bernoulli from the
// counter-based stream of `seed`; identical (seed, m, q) always reproduce the
// same counts, on any machine and any scheduling.
OutcomeRecord sample_outcomes(double q, std::uint64_t m, std::uint64_t seed);

// lambda -> q_beta(lambda; r), with the search-interval grid evaluated once.
// The MLE additionally requires strict monotonicity on the grid; the Bayes
// estimator does not.
class ProbabilityCurve {
public:
    ProbabilityCurve(const TwoLevelModel& model, const MeasurementDirection& r,
                     double beta, const EstimatorConfig& config);

    double q(double lambda) const;
    void require_monotone() const;  // throws NonIdentifiableError
    bool monotone() const { return monotone_; }
    bool increasing() const { return increasing_; }
    double q_min() const { return q_lo_; }
    double q_max() const { return q_hi_; }
    const EstimatorConfig& config() const { return config_; }
    const std::vector<double>& grid_lambdas() const { return lambdas_; }
    const std::vector<double>& grid_q() const { return qs_; }

private:
    const TwoLevelModel& model_;
    MeasurementDirection r_;
    double beta_;
    EstimatorConfig config_;
    std::vector<double> lambdas_;
    std::vector<double> qs_;
    bool monotone_ = true;
    bool increasing_ = true;
    double q_lo_ = 0.0;
    double q_hi_ = 1.0;
};

// Exact binomial MLE under monotone q_beta: the bisection solution of
// q_beta(lambda) = n/m, clamped (and flagged) when the empirical frequency
// lies outside the closure of q_beta(Lambda).
// Throws NonIdentifiableError when the monotonicity check fails.
MleResult mle_estimate(const ProbabilityCurve& curve, const OutcomeRecord& record);
MleResult mle_estimate(const TwoLevelModel& model, const MeasurementDirection& r,
                       double beta, const OutcomeRecord& record,
                       const EstimatorConfig& config);

// Posterior mean under the uniform prior on the search interval, binomial
// likelihood accumulated in the log domain, trapezoidal quadrature.
BayesResult bayes_estimate(const ProbabilityCurve& curve, const OutcomeRecord& record);
BayesResult bayes_estimate(const TwoLevelModel& model, const MeasurementDirection& r,
                           double beta, const OutcomeRecord& record,
                           const EstimatorConfig& config);

// `batches` independent experiments of m shots each; batch b draws from the
// stream key (seed, b), so reports are identical for any worker count.
// n_threads = 0 reads ANTICROSS_THREADS (default: hardware concurrency).
EstimationReport run_experiment(const TwoLevelModel& model, double lambda_true,
                                const MeasurementDirection& r, double beta,
                                std::uint64_t m, std::uint64_t batches,
                                std::uint64_t seed, const EstimatorConfig& config,
                                unsigned n_threads = 0);

}  // namespace anticross
