#include "optilik/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optilik {

double beta_pdf(double theta, double alpha, double beta) {
    if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("beta_pdf: theta must lie in (0, 1)");
    if (!(alpha > 0.0 && beta > 0.0)) throw std::invalid_argument("beta_pdf: shape parameters must be positive");
    const double log_norm = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    return std::exp((alpha - 1.0) * std::log(theta) + (beta - 1.0) * std::log(1.0 - theta) - log_norm);
}

double binomial_pmf(int successes, int trials, double theta) {
    if (trials < 0 || successes < 0 || successes > trials)
        throw std::invalid_argument("binomial_pmf: need 0 <= successes <= trials");
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("binomial_pmf: theta must lie in [0, 1]");
    if (theta == 0.0) return successes == 0 ? 1.0 : 0.0;
    if (theta == 1.0) return successes == trials ? 1.0 : 0.0;
    const double log_choose = std::lgamma(static_cast<double>(trials) + 1.0) -
                              std::lgamma(static_cast<double>(successes) + 1.0) -
                              std::lgamma(static_cast<double>(trials - successes) + 1.0);
    return std::exp(log_choose + successes * std::log(theta) +
                    (trials - successes) * std::log(1.0 - theta));
}

BetaBinomialMethod beta_binomial_method_from_name(const std::string& name) {
    if (name == "kl") return BetaBinomialMethod::KL;
    if (name == "wasserstein") return BetaBinomialMethod::Wasserstein;
    if (name == "kernel-exp" || name == "kernel-exponential") return BetaBinomialMethod::ExponentialKernel;
    throw std::invalid_argument("unknown beta-binomial method: " + name);
}

std::string beta_binomial_method_name(BetaBinomialMethod method) {
    switch (method) {
        case BetaBinomialMethod::KL: return "kl";
        case BetaBinomialMethod::Wasserstein: return "wasserstein";
        case BetaBinomialMethod::ExponentialKernel: return "kernel-exp";
    }
    return "kl";
}

namespace {

void validate_beta_binomial(const BetaBinomialConfig& config) {
    if (!(config.alpha > 0.0 && config.beta > 0.0))
        throw std::invalid_argument("beta-binomial: prior shape parameters must be positive");
    if (!(config.theta_true > 0.0 && config.theta_true < 1.0))
        throw std::invalid_argument("beta-binomial: theta_true must lie in (0, 1)");
    if (config.grid_size < 2) throw std::invalid_argument("beta-binomial: grid size must be at least 2");
    if (config.draws < 1) throw std::invalid_argument("beta-binomial: draw count must be positive");
    if (config.repetitions < 1) throw std::invalid_argument("beta-binomial: repetitions must be positive");
    if (config.sample_counts.empty()) throw std::invalid_argument("beta-binomial: sample_counts is empty");
    for (int n : config.sample_counts) {
        if (n < 1) throw std::invalid_argument("beta-binomial: sample counts must be positive");
    }
    if (config.radius_grid.empty()) throw std::invalid_argument("beta-binomial: radius grid is empty");
    for (double r : config.radius_grid) {
        if (!(r > 0.0)) throw std::invalid_argument("beta-binomial: radii must be positive");
    }
}

nlohmann::json beta_binomial_config_json(const BetaBinomialConfig& config, BetaBinomialMethod method) {
    return {{"experiment", "beta-binomial"},
            {"method", beta_binomial_method_name(method)},
            {"alpha", config.alpha},
            {"beta", config.beta},
            {"draws", config.draws},
            {"grid_size", config.grid_size},
            {"theta_true", config.theta_true},
            {"sample_counts", config.sample_counts},
            {"radius_grid", config.radius_grid},
            {"repetitions", config.repetitions},
            {"seed", config.seed}};
}

}  // namespace

ExperimentReport run_beta_binomial(const BetaBinomialConfig& config, BetaBinomialMethod method,
                                   Execution mode) {
    validate_beta_binomial(config);
    const int c = config.grid_size;
    const int m = config.draws;

    // parameter grid theta_i = i / (C + 1) and its prior weights
    std::vector<double> thetas(static_cast<std::size_t>(c));
    std::vector<double> prior_raw(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
        thetas[static_cast<std::size_t>(i)] = static_cast<double>(i + 1) / static_cast<double>(c + 1);
        prior_raw[static_cast<std::size_t>(i)] = beta_pdf(thetas[static_cast<std::size_t>(i)], config.alpha, config.beta);
    }
    const double prior_total = std::accumulate(prior_raw.begin(), prior_raw.end(), 0.0);
    for (double& v : prior_raw) v /= prior_total;
    const ProbabilityVector prior(prior_raw);

    // discretized exact posterior for every possible observation
    std::vector<ProbabilityVector> discretized;
    discretized.reserve(static_cast<std::size_t>(m + 1));
    for (int x = 0; x <= m; ++x) {
        std::vector<double> raw(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) {
            raw[static_cast<std::size_t>(i)] =
                beta_pdf(thetas[static_cast<std::size_t>(i)], x + config.alpha, m - x + config.beta);
        }
        const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
        for (double& v : raw) v /= total;
        discretized.emplace_back(std::move(raw));
    }

    const std::size_t num_counts = config.sample_counts.size();
    const std::size_t num_radii = config.radius_grid.size();
    const std::size_t reps = static_cast<std::size_t>(config.repetitions);
    const GroundMetric metric{MetricKind::L1};

    // kl_values[(ni * reps + rep) * num_radii + ri]
    std::vector<double> kl_values(num_counts * reps * num_radii, 0.0);
    parallel_for(
        num_counts * reps,
        [&](std::size_t task) {
            const std::size_t ni = task / reps;
            const std::size_t rep = task % reps;
            RngStream stream(derive_seed(derive_seed(config.seed, ni), rep));

            const int x_obs = stream.binomial(m, config.theta_true);
            const Observation x({static_cast<double>(x_obs)});

            std::vector<DiscreteMeasure> centers;
            centers.reserve(static_cast<std::size_t>(c));
            for (int i = 0; i < c; ++i) {
                std::vector<Vector> samples;
                samples.reserve(static_cast<std::size_t>(config.sample_counts[ni]));
                for (int s = 0; s < config.sample_counts[ni]; ++s) {
                    samples.push_back({static_cast<double>(stream.binomial(m, thetas[static_cast<std::size_t>(i)]))});
                }
                centers.push_back(empirical_measure(samples));
            }

            for (std::size_t ri = 0; ri < num_radii; ++ri) {
                const double radius = config.radius_grid[ri];
                std::vector<double> likelihoods(static_cast<std::size_t>(c));
                for (int i = 0; i < c; ++i) {
                    const auto& center = centers[static_cast<std::size_t>(i)];
                    switch (method) {
                        case BetaBinomialMethod::KL:
                            likelihoods[static_cast<std::size_t>(i)] =
                                optimistic_likelihood_divergence({DivergenceFamily::KL, center, radius}, x);
                            break;
                        case BetaBinomialMethod::Wasserstein:
                            likelihoods[static_cast<std::size_t>(i)] =
                                optimistic_likelihood_wasserstein({center, radius, metric}, x).first;
                            break;
                        case BetaBinomialMethod::ExponentialKernel:
                            likelihoods[static_cast<std::size_t>(i)] =
                                kernel_likelihood({KernelKind::Exponential, radius}, center, metric, x);
                            break;
                    }
                }
                const auto [posterior, objective] = surrogate_posterior(prior, likelihoods);
                (void)objective;
                kl_values[(ni * reps + rep) * num_radii + ri] =
                    kl_discrete(posterior, discretized[static_cast<std::size_t>(x_obs)]);
            }
        },
        mode);

    ExperimentReport report;
    report.columns = {"method", "eps_or_h", "n_i", "mean_kl"};
    report.config = beta_binomial_config_json(config, method);
    const std::string name = beta_binomial_method_name(method);
    for (std::size_t ni = 0; ni < num_counts; ++ni) {
        for (std::size_t ri = 0; ri < num_radii; ++ri) {
            double mean = 0.0;
            for (std::size_t rep = 0; rep < reps; ++rep) mean += kl_values[(ni * reps + rep) * num_radii + ri];
            mean /= static_cast<double>(reps);
            report.rows.push_back({name, format_double(config.radius_grid[ri]),
                                   std::to_string(config.sample_counts[ni]), format_double(mean)});
        }
    }
    return report;
}

namespace {

LabeledDataset subset(const LabeledDataset& dataset, const std::vector<std::size_t>& rows) {
    LabeledDataset out;
    out.label_names = dataset.label_names;
    out.features.reserve(rows.size());
    out.labels.reserve(rows.size());
    for (std::size_t r : rows) {
        out.features.push_back(dataset.features[r]);
        out.labels.push_back(dataset.labels[r]);
    }
    return out;
}

}  // namespace

ExperimentReport run_classification(const LabeledDataset& dataset, const ClassificationConfig& config,
                                    Execution mode) {
    validate_dataset(dataset);
    if (dataset.num_classes() != 2) throw std::invalid_argument("classification study requires binary labels");
    if (config.methods.empty()) throw std::invalid_argument("classification study needs at least one method");
    if (config.trials < 1) throw std::invalid_argument("classification study needs at least one trial");

    const TuningGrid grid = config.grid ? *config.grid : default_radius_grid(dataset.dimension());
    const std::size_t trials = static_cast<std::size_t>(config.trials);
    const std::size_t num_methods = config.methods.size();

    std::vector<double> auprc_values(num_methods * trials, 0.0);
    parallel_for(
        num_methods * trials,
        [&](std::size_t task) {
            const std::size_t mi = task / trials;
            const std::size_t trial = task % trials;
            const auto [train_rows, test_rows] =
                stratified_split(dataset.labels, config.train_fraction, derive_seed(config.seed, trial));
            const LabeledDataset train = subset(dataset, train_rows);

            FitOptions options;
            options.folds = config.folds;
            options.seed = derive_seed(derive_seed(config.seed, trial), mi);
            options.standardize = config.standardize;
            options.execution = Execution::Serial;  // outer loop already parallel
            if (method_has_hyperparameter(config.methods[mi])) options.grid = grid;
            const ClassModel model = fit(train, config.methods[mi], options);

            std::vector<double> scores;
            std::vector<bool> positives;
            scores.reserve(test_rows.size());
            positives.reserve(test_rows.size());
            for (std::size_t r : test_rows) {
                const Observation x(dataset.features[r]);
                const auto posterior = predict_proba(model, x);
                scores.push_back(posterior[1]);
                positives.push_back(dataset.labels[r] == 1);
            }
            auprc_values[task] = auprc(scores, positives);
        },
        mode);

    ExperimentReport report;
    report.columns = {"method", "trial", "metric", "value"};
    report.config = {{"experiment", "classify"},
                     {"folds", config.folds},
                     {"trials", config.trials},
                     {"train_fraction", config.train_fraction},
                     {"standardize", config.standardize},
                     {"seed", config.seed}};
    for (std::size_t mi = 0; mi < num_methods; ++mi) {
        const std::string name = method_name(config.methods[mi]);
        double mean = 0.0;
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const double value = 100.0 * auprc_values[mi * trials + trial];
            mean += value;
            report.rows.push_back({name, std::to_string(trial), "auprc_x100", format_double(value)});
        }
        report.rows.push_back(
            {name, "mean", "mean_auprc_x100", format_double(mean / static_cast<double>(trials))});
    }
    return report;
}

ExperimentReport likelihood_curve(const DiscreteMeasure& center, const CurveConfig& config, Execution mode) {
    if (center.dimension() != 1) throw std::invalid_argument("likelihood_curve requires one-dimensional support");
    if (config.methods.empty()) throw std::invalid_argument("likelihood_curve needs at least one method");
    if (!(config.grid_step > 0.0) || !(config.grid_max >= config.grid_min))
        throw std::invalid_argument("likelihood_curve: invalid grid");

    const std::size_t grid_points =
        static_cast<std::size_t>(std::floor((config.grid_max - config.grid_min) / config.grid_step + 1e-9)) + 1;

    std::vector<LikelihoodEngine> engines;
    engines.reserve(config.methods.size());
    for (const auto& method : config.methods) engines.emplace_back(method, center);

    std::vector<double> values(config.methods.size() * grid_points, 0.0);
    parallel_for(
        config.methods.size() * grid_points,
        [&](std::size_t task) {
            const std::size_t mi = task / grid_points;
            const std::size_t gi = task % grid_points;
            const double x = config.grid_min + static_cast<double>(gi) * config.grid_step;
            values[task] = engines[mi].likelihood(Observation({x}));
        },
        mode);

    ExperimentReport report;
    report.columns = {"method", "x", "value"};
    report.config = {{"experiment", "curve"},
                     {"grid_min", config.grid_min},
                     {"grid_max", config.grid_max},
                     {"grid_step", config.grid_step}};
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const std::string name = method_name(config.methods[mi]);
        for (std::size_t gi = 0; gi < grid_points; ++gi) {
            const double x = config.grid_min + static_cast<double>(gi) * config.grid_step;
            report.rows.push_back({name, format_double(x), format_double(values[mi * grid_points + gi])});
        }
    }
    return report;
}

}  // namespace optilik
