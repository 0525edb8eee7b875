#include "optilik/wasserstein_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace optilik {

namespace {

struct SortedAtoms {
    std::vector<std::size_t> order;  // support indices, ascending (distance, index)
    std::vector<double> dist;        // distances in that order
};

SortedAtoms sort_by_distance(const DiscreteMeasure& center, GroundMetric metric, const Observation& x) {
    const std::size_t n = center.size();
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = distance(metric, x.value(), center.point(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (d[a] != d[b]) return d[a] < d[b];
        return a < b;
    });
    SortedAtoms out;
    out.dist.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.dist[k] = d[order[k]];
    out.order = std::move(order);
    return out;
}

}  // namespace

double TransportAllocation::total() const {
    double sum = 0.0, carry = 0.0;
    for (double v : values) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::pair<double, TransportAllocation> optimistic_likelihood_wasserstein(const WassersteinBall& ball,
                                                                         const Observation& x) {
    if (ball.radius < 0.0) throw std::invalid_argument("negative radius");
    const DiscreteMeasure& center = ball.center;
    const SortedAtoms sorted = sort_by_distance(center, ball.metric, x);

    TransportAllocation alloc;
    alloc.rows = center.size();
    alloc.cols = 1;
    alloc.values.assign(center.size(), 0.0);

    double cost_so_far = 0.0;
    double value = 0.0;
    bool saturated = true;
    for (std::size_t k = 0; k < sorted.order.size(); ++k) {
        const std::size_t j = sorted.order[k];
        const double cap = center.weight(j);
        const double d = sorted.dist[k];
        const double full_cost = cost_so_far + d * cap;
        if (full_cost <= ball.radius) {
            alloc.values[j] = cap;
            value += cap;
            cost_so_far = full_cost;
            continue;
        }
        const double take = (ball.radius - cost_so_far) / d;  // d > 0 here
        if (take > 0.0) {
            alloc.values[j] = take;
            value += take;
        }
        saturated = false;
        break;
    }
    if (saturated) {
        // every atom moved in full: the delivered mass is the whole measure
        return {1.0, std::move(alloc)};
    }
    return {value, std::move(alloc)};
}

TransportProfile::TransportProfile(const DiscreteMeasure& center, GroundMetric metric, const Observation& x) {
    const SortedAtoms sorted = sort_by_distance(center, metric, x);
    const std::size_t n = sorted.order.size();
    dist_sorted_ = sorted.dist;
    mass_prefix_.assign(n + 1, 0.0);
    cost_prefix_.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double cap = center.weight(sorted.order[k]);
        mass_prefix_[k + 1] = mass_prefix_[k] + cap;
        cost_prefix_[k + 1] = cost_prefix_[k] + sorted.dist[k] * cap;
    }
}

double TransportProfile::value(double radius) const {
    if (radius < 0.0) throw std::invalid_argument("negative radius");
    if (radius >= cost_prefix_.back()) return 1.0;
    // last prefix affordable in full; ties on equal cost resolve to the
    // largest index, so the next atom has a strictly positive distance
    const auto it = std::upper_bound(cost_prefix_.begin(), cost_prefix_.end(), radius);
    const std::size_t k = static_cast<std::size_t>(it - cost_prefix_.begin()) - 1;
    const double partial = std::min(mass_prefix_[k + 1] - mass_prefix_[k],
                                    (radius - cost_prefix_[k]) / dist_sorted_[k]);
    return mass_prefix_[k] + partial;
}

double lp_oracle_single(const WassersteinBall& ball, const Observation& x) {
    if (ball.radius < 0.0) throw std::invalid_argument("negative radius");
    const std::size_t n = ball.center.size();
    if (n > 12) throw std::invalid_argument("oracle is test-scale only");

    std::vector<double> d(n), w(n);
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = distance(ball.metric, x.value(), ball.center.point(j));
        w[j] = ball.center.weight(j);
    }

    // Vertices of the budgeted box polytope: every coordinate at a bound with
    // at most one fractional coordinate determined by the tight budget.
    double best = 0.0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        double cost = 0.0, mass = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) {
                cost += d[j] * w[j];
                mass += w[j];
            }
        }
        if (cost > ball.radius) continue;
        best = std::max(best, mass);
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) continue;
            if (d[j] > 0.0) {
                best = std::max(best, mass + std::min(w[j], (ball.radius - cost) / d[j]));
            } else {
                best = std::max(best, mass + w[j]);
            }
        }
    }
    return best;
}

namespace {

// Dykstra's alternating projections onto the intersection of the nonnegative
// orthant, the transport-budget half-space, and the per-row cap half-spaces.
class PolytopeProjector {
public:
    PolytopeProjector(std::vector<double> costs, std::vector<double> caps, double budget,
                      std::size_t rows, std::size_t cols)
        : costs_(std::move(costs)),
          caps_(std::move(caps)),
          budget_(budget),
          rows_(rows),
          cols_(cols),
          cost_norm_sq_(0.0) {
        for (double c : costs_) cost_norm_sq_ += c * c;
    }

    void project(std::vector<double>& t) const {
        const std::size_t size = t.size();
        std::vector<double> corr_orthant(size, 0.0);
        std::vector<double> corr_budget(size, 0.0);
        std::vector<std::vector<double>> corr_rows(rows_, std::vector<double>(cols_, 0.0));
        std::vector<double> previous(size);

        for (int cycle = 0; cycle < 2000; ++cycle) {
            previous = t;
            // orthant
            for (std::size_t i = 0; i < size; ++i) {
                const double z = t[i] + corr_orthant[i];
                const double y = std::max(0.0, z);
                corr_orthant[i] = z - y;
                t[i] = y;
            }
            // budget half-space
            if (cost_norm_sq_ > 0.0) {
                double dot = 0.0;
                for (std::size_t i = 0; i < size; ++i) {
                    t[i] += corr_budget[i];
                    dot += costs_[i] * t[i];
                }
                if (dot > budget_) {
                    const double scale = (dot - budget_) / cost_norm_sq_;
                    for (std::size_t i = 0; i < size; ++i) {
                        const double y = t[i] - scale * costs_[i];
                        corr_budget[i] = t[i] - y;
                        t[i] = y;
                    }
                } else {
                    std::fill(corr_budget.begin(), corr_budget.end(), 0.0);
                }
            }
            // row caps
            for (std::size_t j = 0; j < rows_; ++j) {
                double row_sum = 0.0;
                for (std::size_t l = 0; l < cols_; ++l) {
                    t[j * cols_ + l] += corr_rows[j][l];
                    row_sum += t[j * cols_ + l];
                }
                if (row_sum > caps_[j]) {
                    const double shift = (row_sum - caps_[j]) / static_cast<double>(cols_);
                    for (std::size_t l = 0; l < cols_; ++l) {
                        const double y = t[j * cols_ + l] - shift;
                        corr_rows[j][l] = t[j * cols_ + l] - y;
                        t[j * cols_ + l] = y;
                    }
                } else {
                    std::fill(corr_rows[j].begin(), corr_rows[j].end(), 0.0);
                }
            }
            // converged when a full cycle is a fixpoint AND the point is
            // feasible; feasibility alone says nothing about the projection
            double cycle_delta = 0.0;
            for (std::size_t i = 0; i < size; ++i) cycle_delta = std::max(cycle_delta, std::abs(t[i] - previous[i]));
            if (cycle_delta <= 1e-15 && violation(t) <= 1e-13) break;
        }
        for (double& v : t) v = std::max(0.0, v);
    }

    double violation(const std::vector<double>& t) const {
        double v = 0.0;
        double dot = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            v = std::max(v, -t[i]);
            dot += costs_[i] * t[i];
        }
        v = std::max(v, dot - budget_);
        for (std::size_t j = 0; j < rows_; ++j) {
            double row_sum = 0.0;
            for (std::size_t l = 0; l < cols_; ++l) row_sum += t[j * cols_ + l];
            v = std::max(v, row_sum - caps_[j]);
        }
        return v;
    }

private:
    std::vector<double> costs_;
    std::vector<double> caps_;
    double budget_;
    std::size_t rows_;
    std::size_t cols_;
    double cost_norm_sq_;
};

double batch_objective(const std::vector<double>& t, std::size_t rows, std::size_t cols) {
    double obj = 0.0;
    for (std::size_t l = 0; l < cols; ++l) {
        double col_sum = 0.0;
        for (std::size_t j = 0; j < rows; ++j) col_sum += t[j * cols + l];
        obj += std::log(std::max(col_sum, 1e-300));
    }
    return obj;
}

}  // namespace

std::pair<double, TransportAllocation> batch_log_likelihood(const WassersteinBall& ball,
                                                            const std::vector<Observation>& xs) {
    if (xs.empty()) throw std::invalid_argument("batch_log_likelihood: empty observation batch");
    if (ball.radius < 0.0) throw std::invalid_argument("negative radius");
    const DiscreteMeasure& center = ball.center;
    const std::size_t n = center.size();
    const std::size_t l_count = xs.size();

    TransportAllocation alloc;
    alloc.rows = n;
    alloc.cols = l_count;
    alloc.values.assign(n * l_count, 0.0);

    if (ball.radius == 0.0) {
        // no transport budget: every observation must sit on an atom, whose
        // cap is split evenly among the observations that share it
        std::vector<std::size_t> atom(l_count);
        std::vector<std::size_t> multiplicity(n, 0);
        for (std::size_t l = 0; l < l_count; ++l) {
            const std::size_t k = center.support_index(xs[l]);
            if (k == DiscreteMeasure::npos) throw std::invalid_argument("log-likelihood is -inf");
            atom[l] = k;
            ++multiplicity[k];
        }
        double value = 0.0;
        for (std::size_t l = 0; l < l_count; ++l) {
            const double share = center.weight(atom[l]) / static_cast<double>(multiplicity[atom[l]]);
            alloc.at(atom[l], l) = share;
            value += std::log(share);
        }
        return {value, std::move(alloc)};
    }

    std::vector<double> costs(n * l_count);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < l_count; ++l) {
            costs[j * l_count + l] = distance(ball.metric, center.point(j), xs[l].value());
        }
    }

    // start from a strictly feasible interior point
    std::vector<double>& t = alloc.values;
    for (std::size_t l = 0; l < l_count; ++l) {
        double col_cost = 0.0;
        for (std::size_t j = 0; j < n; ++j) col_cost += costs[j * l_count + l];
        for (std::size_t j = 0; j < n; ++j) {
            const double cap_share = center.weight(j) / static_cast<double>(l_count);
            const double budget_share = ball.radius / (static_cast<double>(l_count) * col_cost + 1e-12);
            t[j * l_count + l] = 0.99 * std::min(cap_share, budget_share);
        }
    }

    const PolytopeProjector projector(costs, center.weights(), ball.radius, n, l_count);
    double objective = batch_objective(t, n, l_count);
    double step = 0.25;
    std::vector<double> trial(t.size());
    std::vector<double> direction(t.size());

    const auto try_step = [&](double s) {
        for (std::size_t i = 0; i < t.size(); ++i) trial[i] = t[i] + s * direction[i];
        projector.project(trial);
        return batch_objective(trial, n, l_count);
    };

    for (int iter = 0; iter < 50000; ++iter) {
        std::vector<double> col_sum(l_count, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < l_count; ++l) col_sum[l] += t[j * l_count + l];
        // normalized ascent direction so the step carries mass units
        double grad_max = 0.0;
        for (std::size_t l = 0; l < l_count; ++l) grad_max = std::max(grad_max, 1.0 / std::max(col_sum[l], 1e-300));
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < l_count; ++l)
                direction[j * l_count + l] = 1.0 / std::max(col_sum[l], 1e-300) / grad_max;

        // contract until the step improves, then expand while it keeps improving
        double best_objective = objective;
        double best_step = 0.0;
        while (step >= 1e-15) {
            const double candidate = try_step(step);
            if (candidate > objective) {
                best_objective = candidate;
                best_step = step;
                break;
            }
            step *= 0.5;
        }
        if (best_step == 0.0) break;
        for (double grown = best_step * 2.0; grown <= 4.0; grown *= 2.0) {
            const double candidate = try_step(grown);
            if (candidate <= best_objective) break;
            best_objective = candidate;
            best_step = grown;
        }
        try_step(best_step);
        t.swap(trial);
        const double change = best_objective - objective;
        objective = best_objective;
        step = best_step;
        if (change < 1e-10 * std::max(1.0, std::abs(objective))) break;
    }

    // land exactly inside the polytope: clip, honor row caps, honor the budget
    for (double& v : t) v = std::max(0.0, v);
    for (std::size_t j = 0; j < n; ++j) {
        double row_sum = 0.0;
        for (std::size_t l = 0; l < l_count; ++l) row_sum += t[j * l_count + l];
        if (row_sum > center.weight(j)) {
            const double scale = center.weight(j) / row_sum;
            for (std::size_t l = 0; l < l_count; ++l) t[j * l_count + l] *= scale;
        }
    }
    double total_cost = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) total_cost += costs[i] * t[i];
    if (total_cost > ball.radius) {
        const double scale = ball.radius / total_cost;
        for (double& v : t) v *= scale;
    }

    for (std::size_t l = 0; l < l_count; ++l) {
        double col_sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) col_sum += t[j * l_count + l];
        if (!(col_sum > 0.0)) throw std::runtime_error("batch_log_likelihood: zero mass on an observation");
    }
    return {batch_objective(t, n, l_count), std::move(alloc)};
}

}  // namespace optilik
