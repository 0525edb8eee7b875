#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "optilik/ambiguity.hpp"
#include "optilik/measures.hpp"
#include "optilik/parallel.hpp"
#include "optilik/rng.hpp"

namespace optilik {

// Finite parameter set with a strictly positive prior and one fitted
// likelihood engine per class. Feature standardization, when enabled at fit
// time, is stored here and applied to incoming observations.
struct ClassModel {
    std::vector<std::string> labels;
    ProbabilityVector prior;
    std::vector<LikelihoodEngine> engines;
    std::vector<double> feature_shift;  // empty when standardization is off
    std::vector<double> feature_scale;

    Observation transform(const Observation& x) const;
};

void validate_class_model(const ClassModel& model);

// Per-class likelihood values at x.
std::vector<double> class_likelihoods(const ClassModel& model, const Observation& x);

// Minimizer and optimal value of the posterior surrogate program
// min_q sum_i q_i (log q_i - log pi_i) - sum_i q_i log L_i over the simplex:
// q_i = pi_i L_i / sum_k pi_k L_k and value -log sum_k pi_k L_k. Classes with
// zero likelihood receive zero posterior mass.
std::pair<ProbabilityVector, double> surrogate_posterior(const ProbabilityVector& prior,
                                                         const std::vector<double>& likelihoods);
std::pair<ProbabilityVector, double> surrogate_posterior(const ClassModel& model, const Observation& x);

// Objective sum_i q_i (log q_i - log pi_i) - sum_i q_i logL_i (0 log 0 := 0).
double elbo_objective(const ProbabilityVector& q, const ProbabilityVector& prior,
                      const std::vector<double>& log_likelihoods);

// Concentration constants for the finite-sample radius schedule.
struct ConcentrationParams {
    double k1 = 1.0;          // > 0
    double k2 = 1.0;          // > 0
    double a = 2.0;           // tail exponent, > 1
    double confidence = 0.1;  // beta in (0, 1)
    int dimension = 1;        // m, must differ from 2
};

// Radius (log(k1 C / beta) / (k2 N))^e with e = 1/max(m,2) for
// N >= log(k1 C / beta)/k2 and e = 1/a below that threshold.
double wasserstein_radius(const ConcentrationParams& params, int num_classes, int num_samples);

// Monte-Carlo estimate of the probability that the surrogate optimum
// overshoots the exact objective when ambiguity sets are rebuilt from fresh
// samples. Deterministic for fixed (setup, trials, seed) in both execution
// modes.
struct DisappointmentSetup {
    ProbabilityVector prior;
    std::vector<double> exact_likelihood;  // p(x | theta_i) at the observation
    Observation x;
    std::vector<int> sample_counts;  // per-class training set sizes
    AmbiguityFamily family = AmbiguityFamily::Wasserstein;
    GroundMetric metric{MetricKind::L2};
    std::vector<double> radii;  // per-class
    std::function<Vector(int klass, RngStream&)> sampler;
};

double disappointment_rate(const DisappointmentSetup& setup, int trials, std::uint64_t seed,
                           Execution mode = Execution::Parallel);

}  // namespace optilik
