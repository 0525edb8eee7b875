#include "optilik/divergence_ball.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace optilik {

namespace {

constexpr int kBisectionIterations = 200;
constexpr double kBisectionTol = 1e-12;

// Solves equation(c) = 0 for the unique root of a strictly monotone function
// on (lo, hi], where the sign at lo is known to be sign_at_lo (conceptually;
// lo itself is never evaluated, which permits singular endpoints).
double bisect(const std::function<double(double)>& equation, double lo, double hi, double sign_at_lo) {
    double f_hi = equation(hi);
    if (sign_at_lo * f_hi >= 0.0) return hi;
    for (int it = 0; it < kBisectionIterations && hi - lo > kBisectionTol * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = equation(mid);
        if (f_mid == 0.0) return mid;
        if (sign_at_lo * f_mid > 0.0) {
            lo = mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    return 0.5 * (lo + hi);
}

// On-support optima share one structure: the mass not placed on atom k stays
// proportional to the center's weights, which collapses each program to a
// monotone equation in the proportionality factor c in (0, 1].

double on_support_hellinger(const DiscreteMeasure& center, double radius, std::size_t k) {
    const double wk = center.weight(k);
    const double rest = 1.0 - wk;
    if (rest <= 0.0) return 1.0;
    if (radius >= 1.0 - std::sqrt(wk)) return 1.0;  // budget admits the full point mass in the limit
    // constraint value c*rest + sqrt(wk (1 - c^2 rest)) rises to 1 at c = 1
    const auto eq = [&](double c) { return c * rest + std::sqrt(wk * (1.0 - c * c * rest)) - (1.0 - radius); };
    const double c = bisect(eq, 0.0, 1.0, -1.0);
    return 1.0 - c * c * rest;
}

double on_support_chi_squared(const DiscreteMeasure& center, double radius, std::size_t k) {
    const double wk = center.weight(k);
    const double rest = 1.0 - wk;
    if (rest <= 0.0) return 1.0;
    // rest/c + wk^2 / (1 - c*rest) falls to rest + wk^2 < 1 at c = 1
    const auto eq = [&](double c) { return rest / c + wk * wk / (1.0 - c * rest) - (1.0 + radius); };
    const double c = bisect(eq, 0.0, 1.0, +1.0);
    return 1.0 - c * rest;
}

double on_support_total_variation(const DiscreteMeasure& center, double radius, std::size_t k) {
    return std::min(1.0, center.weight(k) + 0.5 * radius);
}

}  // namespace

DivergenceFamily divergence_family_from_name(const std::string& name) {
    if (name == "kl") return DivergenceFamily::KL;
    if (name == "hellinger") return DivergenceFamily::Hellinger;
    if (name == "chi2") return DivergenceFamily::ChiSquared;
    if (name == "tv") return DivergenceFamily::TotalVariation;
    throw std::invalid_argument("unknown divergence family: " + name);
}

std::string divergence_family_name(DivergenceFamily family) {
    switch (family) {
        case DivergenceFamily::KL: return "kl";
        case DivergenceFamily::Hellinger: return "hellinger";
        case DivergenceFamily::ChiSquared: return "chi2";
        case DivergenceFamily::TotalVariation: return "tv";
    }
    return "kl";
}

double divergence_generator(DivergenceFamily family, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("generator domain is t >= 0");
    switch (family) {
        case DivergenceFamily::KL:
            return t == 0.0 ? 1.0 : t * std::log(t) - t + 1.0;
        case DivergenceFamily::Hellinger:
            return 1.0 - std::sqrt(t);
        case DivergenceFamily::ChiSquared:
            return (t - 1.0) * (t - 1.0);
        case DivergenceFamily::TotalVariation:
            return std::abs(t - 1.0);
    }
    return 0.0;
}

double f_divergence(DivergenceFamily family, const std::vector<double>& nominal,
                    const std::vector<double>& candidate) {
    if (nominal.size() != candidate.size()) throw std::invalid_argument("f_divergence: length mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < nominal.size(); ++j) {
        const double p = nominal[j];
        const double q = candidate[j];
        if (q == 0.0) {
            if (p == 0.0) continue;
            return std::numeric_limits<double>::infinity();
        }
        acc += q * divergence_generator(family, p / q);
    }
    return acc;
}

double solve_on_support_kl(const DiscreteMeasure& center, double radius, std::size_t k) {
    if (!(radius > 0.0)) throw std::invalid_argument("solve_on_support_kl requires a positive radius");
    if (k >= center.size()) throw std::invalid_argument("support index out of range");
    const double wk = center.weight(k);
    const double rest = 1.0 - wk;
    if (rest <= 0.0) return 1.0;
    // divergence along the reduction: -rest*log c + wk*log(wk / (1 - c*rest)),
    // strictly decreasing from +inf to 0 on (0, 1]
    const auto eq = [&](double c) {
        return -rest * std::log(c) + wk * std::log(wk / (1.0 - c * rest)) - radius;
    };
    const double c = bisect(eq, 0.0, 1.0, +1.0);
    return 1.0 - c * rest;
}

double off_support_divergence_value(DivergenceFamily family, double radius) {
    if (radius < 0.0) throw std::invalid_argument("negative radius");
    switch (family) {
        case DivergenceFamily::KL:
            return 1.0 - std::exp(-radius);
        case DivergenceFamily::Hellinger:
            return radius >= 1.0 ? 1.0 : 1.0 - (1.0 - radius) * (1.0 - radius);
        case DivergenceFamily::ChiSquared:
            return 1.0 - 1.0 / (1.0 + radius);
        case DivergenceFamily::TotalVariation:
            return std::min(0.5 * radius, 1.0);
    }
    return 0.0;
}

double optimistic_likelihood_divergence(const DivergenceBall& ball, const Observation& x) {
    if (ball.radius < 0.0) throw std::invalid_argument("negative radius");
    const std::size_t k = ball.center.support_index(x);
    if (k == DiscreteMeasure::npos) return off_support_divergence_value(ball.family, ball.radius);
    if (ball.radius == 0.0) return ball.center.weight(k);
    switch (ball.family) {
        case DivergenceFamily::KL: return solve_on_support_kl(ball.center, ball.radius, k);
        case DivergenceFamily::Hellinger: return on_support_hellinger(ball.center, ball.radius, k);
        case DivergenceFamily::ChiSquared: return on_support_chi_squared(ball.center, ball.radius, k);
        case DivergenceFamily::TotalVariation: return on_support_total_variation(ball.center, ball.radius, k);
    }
    return 0.0;
}

}  // namespace optilik
