#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "optilik/classify.hpp"
#include "optilik/io.hpp"

namespace optilik {

// Beta prior density at theta.
double beta_pdf(double theta, double alpha, double beta);

// Binomial probability mass, evaluated in log space.
double binomial_pmf(int successes, int trials, double theta);

struct BetaBinomialConfig {
    double alpha = 1.0;
    double beta = 1.0;
    int draws = 20;           // binomial trial count M
    int grid_size = 20;       // number of parameter grid points C
    double theta_true = 0.6;
    std::vector<int> sample_counts = {1, 2, 4, 8, 10};
    std::vector<double> radius_grid = {0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    int repetitions = 100;
    std::uint64_t seed = 1;
};

enum class BetaBinomialMethod { KL, Wasserstein, ExponentialKernel };

BetaBinomialMethod beta_binomial_method_from_name(const std::string& name);
std::string beta_binomial_method_name(BetaBinomialMethod method);

// Synthetic inference study: repeatedly draws an observation and per-class
// training samples, solves the posterior surrogate, and reports the mean KL
// divergence to the discretized exact posterior per (radius-or-width, N_i).
// Columns: method, eps_or_h, n_i, mean_kl.
ExperimentReport run_beta_binomial(const BetaBinomialConfig& config, BetaBinomialMethod method,
                                   Execution mode = Execution::Parallel);

struct ClassificationConfig {
    std::vector<MethodSpec> methods;
    int folds = 5;
    int trials = 10;
    double train_fraction = 0.75;
    bool standardize = false;
    std::optional<TuningGrid> grid;  // absent: default radius grid for the dataset dimension
    std::uint64_t seed = 1;
};

// Repeated stratified train/test evaluation. Methods with a radius/width are
// tuned by stratified cross-validation on the training split; the moment
// method has no hyper-parameter and is fitted directly.
// Columns: method, trial, metric, value (AUPRC x 100 per trial plus a mean).
ExperimentReport run_classification(const LabeledDataset& dataset, const ClassificationConfig& config,
                                    Execution mode = Execution::Parallel);

struct CurveConfig {
    std::vector<MethodSpec> methods;
    double grid_min = -3.0;
    double grid_max = 3.0;
    double grid_step = 0.01;
};

// Tabulates each method's likelihood over a one-dimensional observation grid.
// Columns: method, x, value.
ExperimentReport likelihood_curve(const DiscreteMeasure& center, const CurveConfig& config,
                                  Execution mode = Execution::Parallel);

}  // namespace optilik
