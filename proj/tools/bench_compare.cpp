// Times the OpenMP harness loops against the serial reference path and checks
// that both produce identical reports.

#include <chrono>
#include <cstdio>
#include <string>

#include "optilik/bench.hpp"
#include "optilik/parallel.hpp"

namespace {

using namespace optilik;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
void compare(const std::string& name, F&& run) {
    const auto serial_start = std::chrono::steady_clock::now();
    const ExperimentReport serial = run(Execution::Serial);
    const double serial_time = seconds_since(serial_start);

    const auto parallel_start = std::chrono::steady_clock::now();
    const ExperimentReport parallel = run(Execution::Parallel);
    const double parallel_time = seconds_since(parallel_start);

    const bool identical = serial.to_csv() == parallel.to_csv();
    std::printf("%-28s serial %8.3fs  openmp %8.3fs  speedup %5.2fx  results %s\n", name.c_str(),
                serial_time, parallel_time, serial_time / parallel_time,
                identical ? "identical" : "DIFFER");
}

}  // namespace

int main() {
    std::printf("worker threads: %d\n", worker_threads());

    compare("beta-binomial (25 reps)", [](Execution mode) {
        BetaBinomialConfig config;
        config.repetitions = 25;
        return run_beta_binomial(config, BetaBinomialMethod::Wasserstein, mode);
    });

    compare("likelihood curve (fine)", [](Execution mode) {
        std::vector<Vector> samples;
        RngStream stream(7);
        for (int i = 0; i < 4000; ++i) samples.push_back({stream.normal()});
        const DiscreteMeasure center = empirical_measure(samples);
        CurveConfig config;
        config.grid_min = -4.0;
        config.grid_max = 4.0;
        config.grid_step = 0.002;
        config.methods = {AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.1, {MetricKind::L1}},
                          KernelMethod{{KernelKind::Exponential, 0.5}, {MetricKind::L1}},
                          AmbiguitySpec{AmbiguityFamily::Moment, 0.0, {MetricKind::L2}}};
        return likelihood_curve(center, config, mode);
    });

    compare("classification (synthetic)", [](Execution mode) {
        RngStream stream(11);
        LabeledDataset dataset;
        dataset.label_names = {"neg", "pos"};
        for (int i = 0; i < 240; ++i) {
            const int label = i % 2;
            const double shift = label == 0 ? -1.0 : 1.0;
            dataset.features.push_back({shift + 0.8 * stream.normal(), shift + 0.8 * stream.normal()});
            dataset.labels.push_back(label);
        }
        ClassificationConfig config;
        config.trials = 6;
        config.methods = {AmbiguitySpec{AmbiguityFamily::Wasserstein, 0.0, {MetricKind::L2}},
                          AmbiguitySpec{AmbiguityFamily::Moment, 0.0, {MetricKind::L2}}};
        return run_classification(dataset, config, mode);
    });

    return 0;
}
