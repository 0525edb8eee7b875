#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "optilik/inference.hpp"

namespace optilik {

// Feature matrix with class indices; every class must occur at least once and
// all features must be finite.
struct LabeledDataset {
    std::vector<Vector> features;
    std::vector<int> labels;               // values in [0, C)
    std::vector<std::string> label_names;  // size C

    std::size_t size() const { return features.size(); }
    std::size_t dimension() const { return features.empty() ? 0 : features.front().size(); }
    std::size_t num_classes() const { return label_names.size(); }
};

void validate_dataset(const LabeledDataset& dataset);
std::vector<std::size_t> class_counts(const LabeledDataset& dataset);

// Positive ascending radius/width candidates.
struct TuningGrid {
    std::vector<double> candidates;
};

TuningGrid make_tuning_grid(std::vector<double> candidates);
// Default sweep {a sqrt(m) 10^b : a in 1..9, b in {-3,-2,-1}}.
TuningGrid default_radius_grid(std::size_t dimension);

// One (train, validation) index pair per fold; class proportions per fold are
// within one member of proportional, every index validates exactly once.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> stratified_kfold(
    const std::vector<int>& labels, int folds, std::uint64_t seed);

// Seeded stratified train/test split with the given training fraction.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> stratified_split(
    const std::vector<int>& labels, double train_fraction, std::uint64_t seed);

// Average precision with step interpolation; tied scores are processed as one
// group using the precision at the group end.
double auprc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct FitOptions {
    std::optional<TuningGrid> grid;  // absent: no hyper-parameter search
    int folds = 5;
    std::uint64_t seed = 0;
    bool standardize = false;
    std::optional<std::vector<double>> per_class_hyper;  // overrides the shared value
    Execution execution = Execution::Parallel;
};

// Builds per-class empirical measures and the prior from class counts; when a
// grid is present, selects the shared radius/width maximizing mean validation
// area under the precision-recall curve over stratified folds (smallest
// candidate wins ties). Moment methods carry no hyper-parameter and skip the
// search.
ClassModel fit(const LabeledDataset& dataset, const MethodSpec& method, const FitOptions& options = {});

// Posterior over classes at x under the fitted model.
ProbabilityVector predict_proba(const ClassModel& model, const Observation& x);

}  // namespace optilik
