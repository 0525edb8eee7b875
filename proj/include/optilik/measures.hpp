#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace optilik {

using Vector = std::vector<double>;

enum class MetricKind { L1, L2, Linf };

struct GroundMetric {
    MetricKind kind = MetricKind::L2;
};

GroundMetric metric_from_name(const std::string& name);
std::string metric_name(GroundMetric metric);

// A single observed sample point; entries must be finite.
class Observation {
public:
    explicit Observation(Vector value);
    Observation(std::initializer_list<double> value) : Observation(Vector(value)) {}

    const Vector& value() const { return value_; }
    std::size_t dimension() const { return value_.size(); }

private:
    Vector value_;
};

// Finitely supported probability measure: distinct support points with
// strictly positive weights summing to one. Duplicate points passed to the
// constructor are merged by summing their weights; equality is the exact
// vector comparison, no epsilon clustering.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<Vector> points, std::vector<double> weights);

    std::size_t size() const { return points_.size(); }
    std::size_t dimension() const { return points_.front().size(); }
    const std::vector<Vector>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    const Vector& point(std::size_t j) const { return points_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }

    // Index of the support point equal to x, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t support_index(const Observation& x) const;
    double mass_at(const Observation& x) const;

private:
    std::vector<Vector> points_;
    std::vector<double> weights_;
};

// Empirical distribution of a sample set; duplicates collapse to one atom of
// weight multiplicity/N.
DiscreteMeasure empirical_measure(const std::vector<Vector>& samples);

// p-norm distance for the chosen metric kind.
double distance(GroundMetric metric, const Vector& a, const Vector& b);
inline double distance(GroundMetric metric, const Observation& a, const Observation& b) {
    return distance(metric, a.value(), b.value());
}

// Probability vector over a finite label set: nonnegative entries summing to
// one within 1e-12.
class ProbabilityVector {
public:
    explicit ProbabilityVector(std::vector<double> entries);

    std::size_t size() const { return entries_.size(); }
    const std::vector<double>& entries() const { return entries_; }
    double operator[](std::size_t i) const { return entries_[i]; }

private:
    std::vector<double> entries_;
};

// Discrete Kullback-Leibler divergence of p from q, requiring p absolutely
// continuous w.r.t. q; 0 log 0 := 0.
double kl_discrete(const ProbabilityVector& p, const ProbabilityVector& q);

}  // namespace optilik
