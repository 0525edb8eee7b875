#include "optilik/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace optilik {

Observation ClassModel::transform(const Observation& x) const {
    if (feature_shift.empty()) return x;
    if (x.dimension() != feature_shift.size())
        throw std::invalid_argument("observation dimension does not match the fitted model");
    Vector out(x.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (x.value()[i] - feature_shift[i]) / feature_scale[i];
    return Observation(std::move(out));
}

void validate_class_model(const ClassModel& model) {
    const std::size_t c = model.labels.size();
    if (c < 2) throw std::invalid_argument("class model needs at least two classes");
    if (model.prior.size() != c || model.engines.size() != c)
        throw std::invalid_argument("class model fields disagree on the class count");
    for (std::size_t i = 0; i < c; ++i) {
        if (!(model.prior[i] > 0.0)) throw std::invalid_argument("prior must be strictly positive");
    }
}

std::vector<double> class_likelihoods(const ClassModel& model, const Observation& x) {
    const Observation z = model.transform(x);
    std::vector<double> out(model.engines.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = model.engines[i].likelihood(z);
    return out;
}

std::pair<ProbabilityVector, double> surrogate_posterior(const ProbabilityVector& prior,
                                                         const std::vector<double>& likelihoods) {
    if (prior.size() != likelihoods.size())
        throw std::invalid_argument("surrogate_posterior: length mismatch");
    double evidence = 0.0;
    for (std::size_t i = 0; i < likelihoods.size(); ++i) {
        if (!(likelihoods[i] >= 0.0)) throw std::invalid_argument("likelihoods must be nonnegative");
        evidence += prior[i] * likelihoods[i];
    }
    if (evidence <= 0.0) throw std::invalid_argument("posterior undefined: zero evidence");
    std::vector<double> q(likelihoods.size());
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = prior[i] * likelihoods[i] / evidence;
    return {ProbabilityVector(std::move(q)), -std::log(evidence)};
}

std::pair<ProbabilityVector, double> surrogate_posterior(const ClassModel& model, const Observation& x) {
    return surrogate_posterior(model.prior, class_likelihoods(model, x));
}

double elbo_objective(const ProbabilityVector& q, const ProbabilityVector& prior,
                      const std::vector<double>& log_likelihoods) {
    if (q.size() != prior.size() || q.size() != log_likelihoods.size())
        throw std::invalid_argument("elbo_objective: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0.0) continue;  // 0 log 0 := 0
        if (prior[i] == 0.0) throw std::invalid_argument("elbo_objective: q is not absolutely continuous w.r.t. the prior");
        acc += q[i] * (std::log(q[i]) - std::log(prior[i])) - q[i] * log_likelihoods[i];
    }
    return acc;
}

double wasserstein_radius(const ConcentrationParams& params, int num_classes, int num_samples) {
    if (!(params.k1 > 0.0) || !(params.k2 > 0.0)) throw std::invalid_argument("constants k1, k2 must be positive");
    if (!(params.a > 1.0)) throw std::invalid_argument("tail exponent a must exceed 1");
    if (!(params.confidence > 0.0 && params.confidence < 1.0))
        throw std::invalid_argument("confidence must lie in (0, 1)");
    if (params.dimension == 2) throw std::invalid_argument("radius schedule is unavailable for dimension 2");
    if (num_classes < 1 || num_samples < 1) throw std::invalid_argument("class and sample counts must be positive");

    const double log_term =
        std::log(params.k1 * static_cast<double>(num_classes) / params.confidence);
    if (log_term <= 0.0) return 0.0;
    const double threshold = log_term / params.k2;
    const double exponent = static_cast<double>(num_samples) >= threshold
                                ? 1.0 / static_cast<double>(std::max(params.dimension, 2))
                                : 1.0 / params.a;
    return std::pow(log_term / (params.k2 * static_cast<double>(num_samples)), exponent);
}

double disappointment_rate(const DisappointmentSetup& setup, int trials, std::uint64_t seed, Execution mode) {
    if (trials < 1) throw std::invalid_argument("disappointment_rate: trials must be positive");
    const std::size_t c = setup.prior.size();
    if (setup.exact_likelihood.size() != c || setup.sample_counts.size() != c || setup.radii.size() != c)
        throw std::invalid_argument("disappointment_rate: per-class fields disagree on the class count");
    if (!setup.sampler) throw std::invalid_argument("disappointment_rate: sampler is required");

    double exact_evidence = 0.0;
    for (std::size_t i = 0; i < c; ++i) exact_evidence += setup.prior[i] * setup.exact_likelihood[i];
    if (!(exact_evidence > 0.0)) throw std::invalid_argument("disappointment_rate: exact evidence is zero");
    const double j_true = -std::log(exact_evidence);

    std::vector<char> violated(static_cast<std::size_t>(trials), 0);
    parallel_for(
        static_cast<std::size_t>(trials),
        [&](std::size_t trial) {
            RngStream stream(derive_seed(seed, trial));
            double evidence = 0.0;
            for (std::size_t i = 0; i < c; ++i) {
                std::vector<Vector> samples;
                samples.reserve(static_cast<std::size_t>(setup.sample_counts[i]));
                for (int s = 0; s < setup.sample_counts[i]; ++s)
                    samples.push_back(setup.sampler(static_cast<int>(i), stream));
                const DiscreteMeasure nu = empirical_measure(samples);
                double likelihood = 0.0;
                switch (setup.family) {
                    case AmbiguityFamily::KL:
                        likelihood = optimistic_likelihood_divergence({DivergenceFamily::KL, nu, setup.radii[i]}, setup.x);
                        break;
                    case AmbiguityFamily::Hellinger:
                        likelihood = optimistic_likelihood_divergence({DivergenceFamily::Hellinger, nu, setup.radii[i]}, setup.x);
                        break;
                    case AmbiguityFamily::ChiSquared:
                        likelihood = optimistic_likelihood_divergence({DivergenceFamily::ChiSquared, nu, setup.radii[i]}, setup.x);
                        break;
                    case AmbiguityFamily::TotalVariation:
                        likelihood =
                            optimistic_likelihood_divergence({DivergenceFamily::TotalVariation, nu, setup.radii[i]}, setup.x);
                        break;
                    case AmbiguityFamily::Moment:
                        likelihood = optimistic_likelihood_moment(moment_summary(nu), setup.x);
                        break;
                    case AmbiguityFamily::Wasserstein:
                        likelihood = optimistic_likelihood_wasserstein({nu, setup.radii[i], setup.metric}, setup.x).first;
                        break;
                }
                evidence += setup.prior[i] * likelihood;
            }
            const double j_hat = evidence > 0.0 ? -std::log(evidence) : std::numeric_limits<double>::infinity();
            violated[trial] = j_true < j_hat ? 1 : 0;
        },
        mode);

    long count = 0;
    for (char v : violated) count += v;
    return static_cast<double>(count) / static_cast<double>(trials);
}

}  // namespace optilik
