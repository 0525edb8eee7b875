#include "optilik/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optilik {

namespace {

struct Standardization {
    std::vector<double> shift;
    std::vector<double> scale;
};

Standardization standardization_stats(const std::vector<Vector>& features,
                                      const std::vector<std::size_t>& rows) {
    const std::size_t dim = features.front().size();
    Standardization stats;
    stats.shift.assign(dim, 0.0);
    stats.scale.assign(dim, 0.0);
    for (std::size_t r : rows)
        for (std::size_t i = 0; i < dim; ++i) stats.shift[i] += features[r][i];
    for (double& v : stats.shift) v /= static_cast<double>(rows.size());
    for (std::size_t r : rows)
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = features[r][i] - stats.shift[i];
            stats.scale[i] += d * d;
        }
    for (double& v : stats.scale) {
        v = std::sqrt(v / static_cast<double>(rows.size()));
        if (v < 1e-12) v = 1.0;
    }
    return stats;
}

Vector apply_standardization(const Standardization& stats, const Vector& x) {
    Vector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - stats.shift[i]) / stats.scale[i];
    return out;
}

// Per-class empirical measures over the selected rows.
std::vector<DiscreteMeasure> class_measures(const LabeledDataset& dataset,
                                            const std::vector<std::size_t>& rows,
                                            const Standardization* stats) {
    std::vector<std::vector<Vector>> per_class(dataset.num_classes());
    for (std::size_t r : rows) {
        per_class[static_cast<std::size_t>(dataset.labels[r])].push_back(
            stats ? apply_standardization(*stats, dataset.features[r]) : dataset.features[r]);
    }
    std::vector<DiscreteMeasure> measures;
    measures.reserve(per_class.size());
    for (auto& samples : per_class) {
        if (samples.empty()) throw std::invalid_argument("a class is absent from the training rows");
        measures.push_back(empirical_measure(samples));
    }
    return measures;
}

ProbabilityVector prior_from_rows(const LabeledDataset& dataset, const std::vector<std::size_t>& rows) {
    std::vector<double> counts(dataset.num_classes(), 0.0);
    for (std::size_t r : rows) counts[static_cast<std::size_t>(dataset.labels[r])] += 1.0;
    for (double& v : counts) v /= static_cast<double>(rows.size());
    return ProbabilityVector(std::move(counts));
}

// Mean validation AUPRC of one candidate on prepared fold data. The positive
// class is index 1; scores are its posterior probabilities.
struct FoldData {
    std::vector<DiscreteMeasure> measures;
    ProbabilityVector prior;
    std::vector<Observation> validation;
    std::vector<bool> validation_positive;
};

double fold_auprc(const MethodSpec& candidate_spec, const FoldData& fold) {
    std::vector<LikelihoodEngine> engines;
    engines.reserve(fold.measures.size());
    for (const auto& center : fold.measures) engines.emplace_back(candidate_spec, center);

    std::vector<double> scores;
    scores.reserve(fold.validation.size());
    for (const auto& x : fold.validation) {
        std::vector<double> likelihoods(engines.size());
        for (std::size_t i = 0; i < engines.size(); ++i) likelihoods[i] = engines[i].likelihood(x);
        double evidence = 0.0;
        for (std::size_t i = 0; i < engines.size(); ++i) evidence += fold.prior[i] * likelihoods[i];
        // zero evidence carries no ranking information; score the prior
        scores.push_back(evidence > 0.0 ? fold.prior[1] * likelihoods[1] / evidence : fold.prior[1]);
    }
    return auprc(scores, fold.validation_positive);
}

}  // namespace

void validate_dataset(const LabeledDataset& dataset) {
    if (dataset.features.empty()) throw std::invalid_argument("dataset is empty");
    if (dataset.features.size() != dataset.labels.size())
        throw std::invalid_argument("dataset features/labels length mismatch");
    if (dataset.num_classes() < 2) throw std::invalid_argument("dataset needs at least two classes");
    const std::size_t dim = dataset.features.front().size();
    std::vector<bool> present(dataset.num_classes(), false);
    for (std::size_t r = 0; r < dataset.features.size(); ++r) {
        if (dataset.features[r].size() != dim)
            throw std::invalid_argument("dataset rows have ragged dimensions");
        for (double v : dataset.features[r]) {
            if (!std::isfinite(v)) throw std::invalid_argument("dataset features must be finite");
        }
        const int label = dataset.labels[r];
        if (label < 0 || static_cast<std::size_t>(label) >= dataset.num_classes())
            throw std::invalid_argument("dataset label out of range");
        present[static_cast<std::size_t>(label)] = true;
    }
    for (bool p : present) {
        if (!p) throw std::invalid_argument("every class must appear in the dataset");
    }
}

std::vector<std::size_t> class_counts(const LabeledDataset& dataset) {
    std::vector<std::size_t> counts(dataset.num_classes(), 0);
    for (int label : dataset.labels) ++counts[static_cast<std::size_t>(label)];
    return counts;
}

TuningGrid make_tuning_grid(std::vector<double> candidates) {
    if (candidates.empty()) throw std::invalid_argument("tuning grid must be nonempty");
    for (double c : candidates) {
        if (!(c > 0.0)) throw std::invalid_argument("tuning grid candidates must be positive");
    }
    if (!std::is_sorted(candidates.begin(), candidates.end()))
        throw std::invalid_argument("tuning grid candidates must be sorted ascending");
    return {std::move(candidates)};
}

TuningGrid default_radius_grid(std::size_t dimension) {
    const double root_m = std::sqrt(static_cast<double>(dimension));
    std::vector<double> candidates;
    for (int b = -3; b <= -1; ++b) {
        for (int a = 1; a <= 9; ++a) {
            candidates.push_back(static_cast<double>(a) * root_m * std::pow(10.0, b));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    return {std::move(candidates)};
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> stratified_kfold(
    const std::vector<int>& labels, int folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("folds must be at least 2");
    if (labels.empty()) throw std::invalid_argument("labels are empty");
    const int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;

    std::vector<int> fold_of(labels.size(), -1);
    for (int c = 0; c < num_classes; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == c) members.push_back(i);
        }
        if (members.size() < static_cast<std::size_t>(folds)) throw std::invalid_argument("cannot stratify");
        RngStream stream(derive_seed(seed, static_cast<std::uint64_t>(c)));
        shuffle(members, stream);
        for (std::size_t i = 0; i < members.size(); ++i)
            fold_of[members[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }

    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out(
        static_cast<std::size_t>(folds));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (int f = 0; f < folds; ++f) {
            if (fold_of[i] == f) {
                out[static_cast<std::size_t>(f)].second.push_back(i);
            } else {
                out[static_cast<std::size_t>(f)].first.push_back(i);
            }
        }
    }
    return out;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie in (0, 1)");
    const int num_classes = *std::max_element(labels.begin(), labels.end()) + 1;
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (int c = 0; c < num_classes; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == c) members.push_back(i);
        }
        if (members.size() < 2) throw std::invalid_argument("each class needs at least two members to split");
        RngStream stream(derive_seed(seed, static_cast<std::uint64_t>(c) + 1000003));
        shuffle(members, stream);
        std::size_t train_count =
            static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(members.size())));
        train_count = std::clamp<std::size_t>(train_count, 1, members.size() - 1);
        for (std::size_t i = 0; i < members.size(); ++i) {
            (i < train_count ? out.first : out.second).push_back(members[i]);
        }
    }
    std::sort(out.first.begin(), out.first.end());
    std::sort(out.second.begin(), out.second.end());
    return out;
}

double auprc(const std::vector<double>& scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size()) throw std::invalid_argument("auprc: length mismatch");
    const std::size_t positives =
        static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
    if (positives == 0) throw std::invalid_argument("auprc: no positive labels");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    double ap = 0.0;
    double recall_prev = 0.0;
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t group_tp = 0, group_fp = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            if (labels[order[j]]) {
                ++group_tp;
            } else {
                ++group_fp;
            }
            ++j;
        }
        tp += group_tp;
        fp += group_fp;
        if (group_tp > 0) {
            const double recall = static_cast<double>(tp) / static_cast<double>(positives);
            const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
            ap += (recall - recall_prev) * precision;
            recall_prev = recall;
        }
        i = j;
    }
    return ap;
}

ClassModel fit(const LabeledDataset& dataset, const MethodSpec& method, const FitOptions& options) {
    validate_dataset(dataset);

    std::vector<std::size_t> all_rows(dataset.size());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

    MethodSpec chosen = method;
    const bool tune = options.grid.has_value() && method_has_hyperparameter(method) &&
                      !options.per_class_hyper.has_value();
    if (tune) {
        if (options.folds < 2) throw std::invalid_argument("tuning requires at least two folds");
        if (dataset.num_classes() != 2)
            throw std::invalid_argument("AUPRC tuning requires binary labels");
        const auto& candidates = options.grid->candidates;

        const auto folds = stratified_kfold(dataset.labels, options.folds, derive_seed(options.seed, 17));
        std::vector<FoldData> fold_data;
        fold_data.reserve(folds.size());
        for (const auto& [train_rows, validation_rows] : folds) {
            FoldData fold{class_measures(dataset, train_rows, nullptr),
                          prior_from_rows(dataset, train_rows),
                          {},
                          {}};
            std::optional<Standardization> stats;
            if (options.standardize) {
                stats = standardization_stats(dataset.features, train_rows);
                fold.measures = class_measures(dataset, train_rows, &*stats);
            }
            for (std::size_t r : validation_rows) {
                fold.validation.emplace_back(stats ? apply_standardization(*stats, dataset.features[r])
                                                   : dataset.features[r]);
                fold.validation_positive.push_back(dataset.labels[r] == 1);
            }
            fold_data.push_back(std::move(fold));
        }

        // candidate x fold score matrix filled independently; reduction runs
        // in index order so both execution modes agree bitwise
        std::vector<double> scores(candidates.size() * fold_data.size(), 0.0);
        parallel_for(
            scores.size(),
            [&](std::size_t task) {
                const std::size_t ci = task / fold_data.size();
                const std::size_t fi = task % fold_data.size();
                scores[task] = fold_auprc(method_with_hyperparameter(method, candidates[ci]), fold_data[fi]);
            },
            options.execution);

        std::size_t best = 0;
        double best_mean = -1.0;
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            double mean = 0.0;
            for (std::size_t fi = 0; fi < fold_data.size(); ++fi) mean += scores[ci * fold_data.size() + fi];
            mean /= static_cast<double>(fold_data.size());
            if (mean > best_mean) {  // ties keep the smallest candidate
                best_mean = mean;
                best = ci;
            }
        }
        chosen = method_with_hyperparameter(method, candidates[best]);
    }

    ClassModel model{dataset.label_names, prior_from_rows(dataset, all_rows), {}, {}, {}};
    std::optional<Standardization> stats;
    if (options.standardize) {
        stats = standardization_stats(dataset.features, all_rows);
        model.feature_shift = stats->shift;
        model.feature_scale = stats->scale;
    }
    const auto measures = class_measures(dataset, all_rows, stats ? &*stats : nullptr);
    for (std::size_t i = 0; i < measures.size(); ++i) {
        MethodSpec spec = chosen;
        if (options.per_class_hyper) {
            if (options.per_class_hyper->size() != measures.size())
                throw std::invalid_argument("per-class hyper-parameter list has the wrong length");
            spec = method_with_hyperparameter(method, (*options.per_class_hyper)[i]);
        }
        model.engines.emplace_back(std::move(spec), measures[i]);
    }
    validate_class_model(model);
    return model;
}

ProbabilityVector predict_proba(const ClassModel& model, const Observation& x) {
    return surrogate_posterior(model, x).first;
}

}  // namespace optilik
