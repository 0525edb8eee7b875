#include "optilik/moment_ball.hpp"

#include <stdexcept>

namespace optilik {

namespace {

MomentSummary summarize(const std::vector<Vector>& points, const std::vector<double>& weights,
                        double regularization) {
    if (points.empty()) throw std::invalid_argument("moment_summary: empty sample set");
    if (regularization < 0.0) throw std::invalid_argument("moment_summary: negative regularization");
    const auto m = static_cast<Eigen::Index>(points.front().size());

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(m);
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (static_cast<Eigen::Index>(points[j].size()) != m)
            throw std::invalid_argument("moment_summary: ragged dimensions");
        mean += weights[j] * Eigen::Map<const Eigen::VectorXd>(points[j].data(), m);
    }

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t j = 0; j < points.size(); ++j) {
        const Eigen::VectorXd centered = Eigen::Map<const Eigen::VectorXd>(points[j].data(), m) - mean;
        cov.noalias() += weights[j] * centered * centered.transpose();
    }
    cov = 0.5 * (cov + cov.transpose());
    cov += regularization * Eigen::MatrixXd::Identity(m, m);

    const double trace_scale = cov.trace() / static_cast<double>(m);
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(cov).eigenvalues().minCoeff();
    if (min_eig <= 1e-12 * trace_scale) {
        const double ridge = std::max(1e-8, 1e-8 * trace_scale);
        cov += ridge * Eigen::MatrixXd::Identity(m, m);
    }
    return {std::move(mean), std::move(cov)};
}

}  // namespace

MomentSummary moment_summary(const std::vector<Vector>& samples, double regularization) {
    if (samples.empty()) throw std::invalid_argument("moment_summary: empty sample set");
    const std::vector<double> weights(samples.size(), 1.0 / static_cast<double>(samples.size()));
    return summarize(samples, weights, regularization);
}

MomentSummary moment_summary(const DiscreteMeasure& measure, double regularization) {
    return summarize(measure.points(), measure.weights(), regularization);
}

double optimistic_likelihood_moment(const MomentSummary& summary, const Observation& x) {
    const auto m = summary.mean.size();
    if (static_cast<Eigen::Index>(x.dimension()) != m)
        throw std::invalid_argument("optimistic_likelihood_moment: dimension mismatch");
    const Eigen::LLT<Eigen::MatrixXd> llt(summary.covariance);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("optimistic_likelihood_moment: covariance is not positive definite");
    const Eigen::VectorXd delta = Eigen::Map<const Eigen::VectorXd>(x.value().data(), m) - summary.mean;
    const double mahalanobis_sq = delta.dot(llt.solve(delta));
    return 1.0 / (1.0 + mahalanobis_sq);
}

}  // namespace optilik
