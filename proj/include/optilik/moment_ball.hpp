#pragma once

#include <Eigen/Dense>

#include "optilik/measures.hpp"

namespace optilik {

// First two moments of a sample set; the covariance is kept symmetric
// positive definite (ridged when the raw estimate is singular).
struct MomentSummary {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
};

// Sample mean and covariance (denominator N) plus regularization * identity;
// a default ridge max(1e-8, 1e-8 * trace/m) is added whenever the minimum
// eigenvalue falls at or below 1e-12 * trace/m.
MomentSummary moment_summary(const std::vector<Vector>& samples, double regularization = 0.0);

MomentSummary moment_summary(const DiscreteMeasure& measure, double regularization = 0.0);

// Largest probability mass any measure matching the summary's mean and
// covariance can place on x: 1 / (1 + squared Mahalanobis distance).
double optimistic_likelihood_moment(const MomentSummary& summary, const Observation& x);

}  // namespace optilik
