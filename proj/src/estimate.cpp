#include "anticross/estimate.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "anticross/parallel.hpp"
#include "anticross/rng.hpp"

namespace anticross {

void EstimatorConfig::validate() const {
    if (!(search_interval.first < search_interval.second))
        throw ConfigError("EstimatorConfig: empty search interval");
    if (grid_points < 64) throw ConfigError("EstimatorConfig: grid_points must be >= 64");
    if (!(tolerance > 0.0)) throw ConfigError("EstimatorConfig: tolerance must be > 0");
}

OutcomeRecord sample_outcomes(double q, std::uint64_t m, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0))
        throw Error("sample_outcomes: q must be a probability");
    if (m < 1) throw Error("sample_outcomes: m must be >= 1");
    const std::uint64_t key = stream_key(seed, 0);
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < m; ++i)
        if (counter_uniform(key, i) < q) ++n;
    return OutcomeRecord{m, n, seed, q};
}

ProbabilityCurve::ProbabilityCurve(const TwoLevelModel& model,
                                   const MeasurementDirection& r, double beta,
                                   const EstimatorConfig& config)
    : model_(model), r_(r), beta_(beta), config_(config) {
    config_.validate();
    const auto [lo, hi] = config_.search_interval;
    const auto [dlo, dhi] = model.domain();
    if (lo < dlo || hi > dhi)
        throw ConfigError("ProbabilityCurve: search interval outside the model domain");

    const std::size_t n = config_.grid_points;
    lambdas_.resize(n);
    qs_.resize(n);
    int sign = 0;
    for (std::size_t i = 0; i < n; ++i) {
        lambdas_[i] = i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
        qs_[i] = q(lambdas_[i]);
        if (i == 0) {
            q_lo_ = q_hi_ = qs_[0];
            continue;
        }
        q_lo_ = std::min(q_lo_, qs_[i]);
        q_hi_ = std::max(q_hi_, qs_[i]);
        const double step = qs_[i] - qs_[i - 1];
        const int s = step > 0.0 ? 1 : (step < 0.0 ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) monotone_ = false;
        if (s != 0 && sign == 0) sign = s;
    }
    increasing_ = sign >= 0;
}

double ProbabilityCurve::q(double lambda) const {
    return thermal_outcome_probability(model_.coefficients(lambda), beta_, r_);
}

void ProbabilityCurve::require_monotone() const {
    if (!monotone_) {
        std::ostringstream msg;
        msg << "lambda -> q is not strictly monotone on ["
            << config_.search_interval.first << ", "
            << config_.search_interval.second << "]";
        throw NonIdentifiableError(msg.str());
    }
}

MleResult mle_estimate(const ProbabilityCurve& curve, const OutcomeRecord& record) {
    curve.require_monotone();
    const double freq = static_cast<double>(record.n_success) /
                        static_cast<double>(record.m_total);
    const auto [lo, hi] = curve.config().search_interval;

    if (freq <= curve.q_min())
        return MleResult{curve.increasing() ? lo : hi, freq < curve.q_min()};
    if (freq >= curve.q_max())
        return MleResult{curve.increasing() ? hi : lo, freq > curve.q_max()};

    double a = lo, b = hi;
    double fa = curve.q(a) - freq;
    while (b - a > curve.config().tolerance) {
        const double mid = 0.5 * (a + b);
        const double fm = curve.q(mid) - freq;
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return MleResult{0.5 * (a + b), false};
}

MleResult mle_estimate(const TwoLevelModel& model, const MeasurementDirection& r,
                       double beta, const OutcomeRecord& record,
                       const EstimatorConfig& config) {
    return mle_estimate(ProbabilityCurve(model, r, beta, config), record);
}

BayesResult bayes_estimate(const ProbabilityCurve& curve, const OutcomeRecord& record) {
    const auto& lambdas = curve.grid_lambdas();
    const auto& qs = curve.grid_q();
    const std::size_t n = lambdas.size();
    const double m = static_cast<double>(record.m_total);
    const double k = static_cast<double>(record.n_success);
    const auto [lo, hi] = curve.config().search_interval;

    if (record.m_total == 0) return BayesResult{0.5 * (lo + hi), false};

    std::vector<double> loglik(n);
    double logmax = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = qs[i];
        double ll;
        if ((q == 0.0 && k > 0.0) || (q == 1.0 && k < m))
            ll = -kInf;
        else
            ll = (k > 0.0 ? k * std::log(q) : 0.0) +
                 (m - k > 0.0 ? (m - k) * std::log1p(-q) : 0.0);
        loglik[i] = ll;
        logmax = std::max(logmax, ll);
    }
    if (!std::isfinite(logmax))
        throw NonIdentifiableError("bayes_estimate: likelihood vanishes on the whole grid");

    // trapezoid weights; the uniform prior cancels in the normalized mean
    double mass = 0.0, first_moment = 0.0, cell_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        const double p = w * std::exp(loglik[i] - logmax);
        mass += p;
        first_moment += p * lambdas[i];
        cell_max = std::max(cell_max, p);
    }
    BayesResult out;
    out.lambda_hat = first_moment / mass;
    out.degenerate_posterior = cell_max / mass > 0.99;
    return out;
}

BayesResult bayes_estimate(const TwoLevelModel& model, const MeasurementDirection& r,
                           double beta, const OutcomeRecord& record,
                           const EstimatorConfig& config) {
    return bayes_estimate(ProbabilityCurve(model, r, beta, config), record);
}

EstimationReport run_experiment(const TwoLevelModel& model, double lambda_true,
                                const MeasurementDirection& r, double beta,
                                std::uint64_t m, std::uint64_t batches,
                                std::uint64_t seed, const EstimatorConfig& config,
                                unsigned n_threads) {
    if (batches < 2) throw Error("run_experiment: need at least 2 batches");
    model.require_inside(lambda_true);

    const CoefficientBundle c_true = model.coefficients(lambda_true);
    const DerivativeBundle d_true = model.derivatives(lambda_true);
    const double q_true = thermal_outcome_probability(c_true, beta, r);
    const double fisher = thermal_fisher(c_true, d_true, beta, r).value;
    const double qfi = thermal_qfi(c_true, d_true, beta).h_total;

    const ProbabilityCurve curve(model, r, beta, config);
    if (config.method == EstimatorMethod::kMle) curve.require_monotone();

    std::vector<double> estimates(batches, 0.0);
    std::vector<unsigned char> clamped(batches, 0);
    std::vector<std::string> batch_errors(batches);

    parallel_for(
        batches,
        [&](std::size_t b) {
            const std::uint64_t key = stream_key(seed, b);
            std::uint64_t n = 0;
            for (std::uint64_t i = 0; i < m; ++i)
                if (counter_uniform(key, i) < q_true) ++n;
            const OutcomeRecord record{m, n, key, q_true};
            try {
                if (config.method == EstimatorMethod::kMle) {
                    const MleResult res = mle_estimate(curve, record);
                    estimates[b] = res.lambda_hat;
                    clamped[b] = res.clamped ? 1 : 0;
                } else {
                    estimates[b] = bayes_estimate(curve, record).lambda_hat;
                }
            } catch (const std::exception& e) {
                batch_errors[b] = e.what();
            }
        },
        n_threads);

    for (std::uint64_t b = 0; b < batches; ++b)
        if (!batch_errors[b].empty()) {
            std::ostringstream msg;
            msg << "run_experiment: batch " << b << ": " << batch_errors[b];
            throw Error(msg.str());
        }

    EstimationReport report;
    report.lambda_true = lambda_true;
    report.estimates = estimates;
    report.m_per_batch = m;
    report.batches = batches;
    report.seed = seed;
    double mean = 0.0;
    for (double v : estimates) mean += v;
    mean /= static_cast<double>(batches);
    double ss = 0.0;
    for (double v : estimates) ss += (v - mean) * (v - mean);
    report.mean = mean;
    report.bias = mean - lambda_true;
    report.empirical_variance = ss / static_cast<double>(batches - 1);
    report.crb_classical = 1.0 / (static_cast<double>(m) * fisher);
    report.crb_quantum = 1.0 / (static_cast<double>(m) * qfi);
    for (auto flag : clamped) report.clamped_batches += flag;
    return report;
}

}  // namespace anticross
