#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optilik/classify.hpp"
#include "optilik/rng.hpp"

using namespace optilik;

namespace {

LabeledDataset two_blob_dataset(int per_class, double gap, std::uint64_t seed, double spread = 0.5) {
    RngStream rng(seed);
    LabeledDataset dataset;
    dataset.label_names = {"0", "1"};
    for (int i = 0; i < per_class; ++i) {
        dataset.features.push_back({-gap + spread * rng.normal(), -gap + spread * rng.normal()});
        dataset.labels.push_back(0);
        dataset.features.push_back({gap + spread * rng.normal(), gap + spread * rng.normal()});
        dataset.labels.push_back(1);
    }
    return dataset;
}

}  // namespace

TEST_CASE("stratified folds validate every index once with proportional classes") {
    {
        const std::vector<int> labels(10, 0);
        const auto folds = stratified_kfold(labels, 5, 3);
        REQUIRE(folds.size() == 5);
        std::vector<int> seen(10, 0);
        for (const auto& [train, validation] : folds) {
            CHECK(validation.size() == 2);
            CHECK(train.size() == 8);
            for (std::size_t i : validation) ++seen[i];
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
    }
    {
        std::vector<int> labels(10, 0);
        std::fill(labels.begin() + 6, labels.end(), 1);
        const auto folds = stratified_kfold(labels, 2, 3);
        for (const auto& [train, validation] : folds) {
            const auto count = [&](int klass, const std::vector<std::size_t>& rows) {
                return std::count_if(rows.begin(), rows.end(), [&](std::size_t r) { return labels[r] == klass; });
            };
            CHECK(count(0, validation) == 3);
            CHECK(count(1, validation) == 2);
        }
    }
}

TEST_CASE("fold assignment is deterministic in the seed") {
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i % 2);
    const auto a = stratified_kfold(labels, 5, 11);
    const auto b = stratified_kfold(labels, 5, 11);
    const auto c = stratified_kfold(labels, 5, 12);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("stratification requires enough members per class") {
    std::vector<int> labels = {0, 0, 0, 1, 1};
    CHECK_THROWS_WITH_AS(stratified_kfold(labels, 3, 0), "cannot stratify", std::invalid_argument);
    CHECK_THROWS_AS(stratified_kfold(labels, 1, 0), std::invalid_argument);
}

TEST_CASE("average precision on the stated rankings") {
    CHECK(auprc({0.9, 0.8, 0.2, 0.1}, {true, true, false, false}) == 1.0);
    CHECK(auprc({0.1, 0.2, 0.3, 0.4}, {true, false, false, false}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(auprc({0.9, 0.8, 0.7, 0.6}, {true, false, true, false}) ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK_THROWS_WITH_AS(auprc({0.5}, {false}), "auprc: no positive labels", std::invalid_argument);
}

TEST_CASE("average precision ignores monotone transformations of the scores") {
    RngStream rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 5 + rng.uniform_index(20);
        std::vector<double> scores(n);
        std::vector<bool> labels(n);
        bool any_positive = false;
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = rng.uniform(-3.0, 3.0);
            labels[i] = rng.bernoulli(0.4);
            any_positive = any_positive || labels[i];
        }
        if (!any_positive) labels[0] = true;
        std::vector<double> mapped(n);
        for (std::size_t i = 0; i < n; ++i) mapped[i] = std::exp(2.0 * scores[i]) + 1.0;
        CHECK(auprc(scores, labels) == doctest::Approx(auprc(mapped, labels)).epsilon(1e-12));
    }
}

TEST_CASE("prior comes from the class counts") {
    LabeledDataset dataset;
    dataset.label_names = {"a", "b"};
    for (int i = 0; i < 30; ++i) {
        dataset.features.push_back({static_cast<double>(i), 0.0});
        dataset.labels.push_back(0);
    }
    for (int i = 0; i < 10; ++i) {
        dataset.features.push_back({static_cast<double>(i), 5.0});
        dataset.labels.push_back(1);
    }
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Moment, 0.0, {MetricKind::L2}});
    CHECK(model.prior[0] == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(model.prior[1] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("default grid spans the documented sweep") {
    const TuningGrid grid = default_radius_grid(4);
    REQUIRE(grid.candidates.size() == 27);
    CHECK(grid.candidates.front() == doctest::Approx(0.002).epsilon(1e-12));
    CHECK(grid.candidates.back() == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(std::is_sorted(grid.candidates.begin(), grid.candidates.end()));
}

TEST_CASE("a single-candidate grid is selected without search effects") {
    const LabeledDataset dataset = two_blob_dataset(20, 1.5, 5);
    FitOptions options;
    options.grid = make_tuning_grid({0.3});
    options.seed = 2;
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.0, {MetricKind::L2}}, options);
    CHECK(method_hyperparameter(model.engines[0].spec()) == 0.3);
}

TEST_CASE("tuning is deterministic for a fixed seed") {
    const LabeledDataset dataset = two_blob_dataset(25, 0.8, 9, 1.0);
    FitOptions options;
    options.grid = default_radius_grid(2);
    options.seed = 31;
    const auto pick = [&] {
        const ClassModel model =
            fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.0, {MetricKind::L2}}, options);
        return method_hyperparameter(model.engines[0].spec());
    };
    const double first = pick();
    CHECK(first == pick());
}

TEST_CASE("posterior favors the class owning the observed training point") {
    LabeledDataset dataset;
    dataset.label_names = {"0", "1"};
    dataset.features = {{0.0}, {0.4}, {3.0}, {3.6}};
    dataset.labels = {0, 0, 1, 1};
    FitOptions options;
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.01, {MetricKind::L2}}, options);
    const ProbabilityVector posterior = predict_proba(model, Observation({3.0}));
    CHECK(posterior[1] > 0.5);
}

TEST_CASE("mirror-image classes at the midpoint split evenly") {
    LabeledDataset dataset;
    dataset.label_names = {"0", "1"};
    dataset.features = {{-2.0}, {-1.0}, {1.0}, {2.0}};
    dataset.labels = {0, 0, 1, 1};
    for (const MethodSpec& method :
         {MethodSpec{AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.5, {MetricKind::L1}}},
          MethodSpec{AmbiguitySpec{AmbiguityFamily::Moment, 0.0, {MetricKind::L2}}},
          MethodSpec{KernelMethod{{KernelKind::Exponential, 1.0}, {MetricKind::L1}}}}) {
        const ClassModel model = fit(dataset, method);
        const ProbabilityVector posterior = predict_proba(model, Observation({0.0}));
        CHECK(posterior[0] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(posterior[1] == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("moment engine assigns the class whose mean is hit") {
    LabeledDataset dataset;
    dataset.label_names = {"0", "1"};
    dataset.features = {{-2.0, 0.2}, {-2.0, -0.2}, {-1.6, 0.0}, {2.0, 0.2}, {2.0, -0.2}, {1.6, 0.0}};
    dataset.labels = {0, 0, 0, 1, 1, 1};
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Moment, 0.0, {MetricKind::L2}});
    const ProbabilityVector at_positive_mean = predict_proba(model, Observation({1.8666666666666667, 0.0}));
    CHECK(at_positive_mean[1] > at_positive_mean[0]);
}

TEST_CASE("posterior sums to one and tracks class relabeling") {
    const LabeledDataset dataset = two_blob_dataset(15, 1.0, 21);
    LabeledDataset swapped = dataset;
    std::swap(swapped.label_names[0], swapped.label_names[1]);
    for (auto& label : swapped.labels) label = 1 - label;

    const MethodSpec method = AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.2, {MetricKind::L2}};
    const ClassModel model = fit(dataset, method);
    const ClassModel mirrored = fit(swapped, method);
    RngStream rng(13);
    for (int probe = 0; probe < 20; ++probe) {
        const Observation x({rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
        const auto p = predict_proba(model, x);
        const auto q = predict_proba(mirrored, x);
        CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p[0] == doctest::Approx(q[1]).epsilon(1e-12));
        CHECK(p[1] == doctest::Approx(q[0]).epsilon(1e-12));
    }
}

TEST_CASE("a saturating radius washes the posterior back to the prior") {
    LabeledDataset dataset;
    dataset.label_names = {"0", "1"};
    dataset.features = {{0.0}, {0.5}, {1.0}, {2.0}, {2.5}, {3.0}};
    dataset.labels = {0, 0, 0, 1, 1, 1};
    FitOptions options;
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 1e6, {MetricKind::L2}}, options);
    const ProbabilityVector posterior = predict_proba(model, Observation({1.7}));
    CHECK(posterior[0] == doctest::Approx(model.prior[0]).epsilon(1e-9));
    CHECK(posterior[1] == doctest::Approx(model.prior[1]).epsilon(1e-9));
}

TEST_CASE("per-class hyper-parameter override bypasses tuning") {
    const LabeledDataset dataset = two_blob_dataset(10, 1.5, 77);
    FitOptions options;
    options.grid = default_radius_grid(2);  // would tune without the override
    options.per_class_hyper = std::vector<double>{0.1, 0.4};
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.0, {MetricKind::L2}}, options);
    CHECK(method_hyperparameter(model.engines[0].spec()) == 0.1);
    CHECK(method_hyperparameter(model.engines[1].spec()) == 0.4);
}

TEST_CASE("standardization is learned from the data it is fitted on") {
    LabeledDataset dataset = two_blob_dataset(20, 1.0, 41);
    for (auto& row : dataset.features) row[1] *= 1000.0;  // wildly different scales
    FitOptions options;
    options.standardize = true;
    const ClassModel model = fit(dataset, AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.1, {MetricKind::L2}}, options);
    CHECK(model.feature_shift.size() == 2);
    const auto posterior = predict_proba(model, Observation({1.0, 1000.0}));
    CHECK(posterior[1] > 0.5);
}
