#pragma once

#include <utility>
#include <vector>

#include "optilik/measures.hpp"

namespace optilik {

struct WassersteinBall {
    DiscreteMeasure center;
    double radius = 0.0;
    GroundMetric metric{MetricKind::L2};
};

// Mass moved onto the observation(s): an N-vector for a single observation or
// a row-major N x L matrix for a batch. Row j is capped by the center's j-th
// weight; total transport cost is capped by the ball radius.
struct TransportAllocation {
    std::size_t rows = 0;
    std::size_t cols = 1;
    std::vector<double> values;  // rows * cols, row-major

    double& at(std::size_t j, std::size_t l) { return values[j * cols + l]; }
    double at(std::size_t j, std::size_t l) const { return values[j * cols + l]; }
    double total() const;
};

// Optimal value and allocation for the single-observation transport program:
// maximize the mass delivered to x subject to the cost budget. Solved greedily
// by filling atoms in ascending distance order (ties by ascending support
// index); zero-distance atoms are taken in full first. O(N log N).
std::pair<double, TransportAllocation> optimistic_likelihood_wasserstein(const WassersteinBall& ball,
                                                                         const Observation& x);

// Precomputed sorted-distance profile for one (center, x) pair; evaluates the
// optimal value for many radii in O(log N) each. Values agree with the greedy
// solver bit-for-bit at zero-distance handling and full-budget saturation.
class TransportProfile {
public:
    TransportProfile(const DiscreteMeasure& center, GroundMetric metric, const Observation& x);

    double value(double radius) const;
    // Budget at which the value saturates at 1.
    double saturation_cost() const { return cost_prefix_.back(); }

private:
    std::vector<double> dist_sorted_;
    std::vector<double> mass_prefix_;  // mass_prefix_[k]: mass of the k nearest atoms
    std::vector<double> cost_prefix_;  // cost_prefix_[k]: cost of taking them in full
};

// Exact optimum of the single-observation linear program by vertex
// enumeration; test-scale oracle, guarded to N <= 12.
double lp_oracle_single(const WassersteinBall& ball, const Observation& x);

// Optimistic batch log-likelihood: maximize sum_l log(sum_j T_{jl}) over the
// transport polytope. Projected gradient ascent with Dykstra projections;
// requires a strictly positive radius unless every observation sits on the
// support.
std::pair<double, TransportAllocation> batch_log_likelihood(const WassersteinBall& ball,
                                                            const std::vector<Observation>& xs);

}  // namespace optilik
