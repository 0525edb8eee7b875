#include "optilik/measures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace optilik {

namespace {

// Kahan-compensated sum; keeps the weight-sum check meaningful for measures
// with millions of atoms.
double stable_sum(const std::vector<double>& values) {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace

GroundMetric metric_from_name(const std::string& name) {
    if (name == "l1" || name == "L1") return {MetricKind::L1};
    if (name == "l2" || name == "L2") return {MetricKind::L2};
    if (name == "linf" || name == "Linf") return {MetricKind::Linf};
    throw std::invalid_argument("unknown metric: " + name);
}

std::string metric_name(GroundMetric metric) {
    switch (metric.kind) {
        case MetricKind::L1: return "l1";
        case MetricKind::L2: return "l2";
        case MetricKind::Linf: return "linf";
    }
    return "l2";
}

Observation::Observation(Vector value) : value_(std::move(value)) {
    if (value_.empty()) throw std::invalid_argument("observation must have at least one coordinate");
    for (double v : value_) {
        if (!std::isfinite(v)) throw std::invalid_argument("observation entries must be finite");
    }
}

DiscreteMeasure::DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights) {
    if (points.empty()) throw std::invalid_argument("measure needs at least one support point");
    if (points.size() != weights.size())
        throw std::invalid_argument("points/weights length mismatch");
    const std::size_t dim = points.front().size();
    if (dim == 0) throw std::invalid_argument("support points must have at least one coordinate");

    std::map<Vector, std::size_t> seen;
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != dim) throw std::invalid_argument("support points have ragged dimensions");
        for (double v : points[j]) {
            if (!std::isfinite(v)) throw std::invalid_argument("support points must be finite");
        }
        if (!(weights[j] > 0.0)) throw std::invalid_argument("weights must be strictly positive");
        auto [it, inserted] = seen.emplace(points[j], points_.size());
        if (inserted) {
            points_.push_back(std::move(points[j]));
            weights_.push_back(weights[j]);
        } else {
            weights_[it->second] += weights[j];
        }
    }
    if (std::abs(stable_sum(weights_) - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
}

std::size_t DiscreteMeasure::support_index(const Observation& x) const {
    for (std::size_t j = 0; j < points_.size(); ++j) {
        if (points_[j] == x.value()) return j;
    }
    return npos;
}

double DiscreteMeasure::mass_at(const Observation& x) const {
    const std::size_t j = support_index(x);
    return j == npos ? 0.0 : weights_[j];
}

DiscreteMeasure empirical_measure(const std::vector<Vector>& samples) {
    if (samples.empty()) throw std::invalid_argument("empty sample set");
    const double w = 1.0 / static_cast<double>(samples.size());
    return DiscreteMeasure(samples, std::vector<double>(samples.size(), w));
}

double distance(GroundMetric metric, const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("distance: dimension mismatch");
    double acc = 0.0;
    switch (metric.kind) {
        case MetricKind::L1:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        case MetricKind::L2:
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        case MetricKind::Linf:
            for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
            return acc;
    }
    return acc;
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("probability vector must be nonempty");
    for (double v : entries_) {
        if (!(v >= 0.0)) throw std::invalid_argument("probability vector entries must be nonnegative");
    }
    if (std::abs(stable_sum(entries_) - 1.0) > 1e-12) throw std::invalid_argument("probability vector must sum to 1");
}

double kl_discrete(const ProbabilityVector& p, const ProbabilityVector& q) {
    if (p.size() != q.size()) throw std::invalid_argument("kl_discrete: length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;  // 0 log 0 := 0
        if (q[i] == 0.0) throw std::invalid_argument("KL undefined: not absolutely continuous");
        acc += p[i] * std::log(p[i] / q[i]);
    }
    return acc;
}

}  // namespace optilik
