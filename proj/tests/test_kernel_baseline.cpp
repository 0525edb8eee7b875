#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "optilik/kernel_baseline.hpp"
#include "optilik/rng.hpp"

using namespace optilik;

namespace {
const GroundMetric kL1{MetricKind::L1};
}

TEST_CASE("kernel values at the stated points") {
    const DiscreteMeasure center = empirical_measure({{-1.0}, {1.0}});
    CHECK(kernel_likelihood({KernelKind::Exponential, 1.0}, center, kL1, Observation({0.0})) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(kernel_likelihood({KernelKind::Uniform, 1.0}, center, kL1, Observation({3.0})) == 0.0);
    // at a support point: 1/2 * 3/4 from the zero-distance atom, zero from the far one
    CHECK(kernel_likelihood({KernelKind::Epanechnikov, 1.0}, center, kL1, Observation({1.0})) ==
          doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("width must be positive") {
    const DiscreteMeasure center = empirical_measure({{0.0}});
    CHECK_THROWS_AS(kernel_likelihood({KernelKind::Exponential, 0.0}, center, kL1, Observation({0.0})),
                    std::invalid_argument);
}

TEST_CASE("bounded-support kernels vanish beyond the window, exponential never does") {
    RngStream rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const double h = rng.uniform(0.2, 2.0);
        const DiscreteMeasure center = empirical_measure({{rng.uniform(-1.0, 1.0)}, {rng.uniform(-1.0, 1.0)}});
        const Observation far({10.0 + rng.uniform(0.0, 5.0)});
        CHECK(kernel_likelihood({KernelKind::Uniform, h}, center, kL1, far) == 0.0);
        CHECK(kernel_likelihood({KernelKind::Epanechnikov, h}, center, kL1, far) == 0.0);
        const double exp_value = kernel_likelihood({KernelKind::Exponential, h}, center, kL1, far);
        CHECK(exp_value > 0.0);
        CHECK(exp_value <= 1.0);
    }
}

TEST_CASE("symmetric centers give symmetric curves") {
    const DiscreteMeasure center = empirical_measure({{-1.0}, {1.0}});
    for (KernelKind kind : {KernelKind::Exponential, KernelKind::Uniform, KernelKind::Epanechnikov}) {
        for (double x = 0.0; x <= 3.0 + 1e-12; x += 0.1) {
            const double right = kernel_likelihood({kind, 1.0}, center, kL1, Observation({x}));
            const double left = kernel_likelihood({kind, 1.0}, center, kL1, Observation({-x}));
            CHECK(right == doctest::Approx(left).epsilon(1e-12));
        }
    }
}
