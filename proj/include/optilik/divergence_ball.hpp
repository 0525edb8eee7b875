#pragma once

#include <string>

#include "optilik/measures.hpp"

namespace optilik {

enum class DivergenceFamily { KL, Hellinger, ChiSquared, TotalVariation };

DivergenceFamily divergence_family_from_name(const std::string& name);
std::string divergence_family_name(DivergenceFamily family);

// Generator f of the divergence D_f(p || q) = sum_z q(z) f(p(z)/q(z)); each
// family's f is convex with f(1) = 0 and f(0) finite.
double divergence_generator(DivergenceFamily family, double t);

// Divergence of the nominal measure from a candidate weight vector over the
// same support (both vectors indexed alike; zero candidate entries are only
// valid where the generator stays finite).
double f_divergence(DivergenceFamily family, const std::vector<double>& nominal,
                    const std::vector<double>& candidate);

struct DivergenceBall {
    DivergenceFamily family = DivergenceFamily::KL;
    DiscreteMeasure center;
    double radius = 0.0;
};

// Largest probability mass any measure within the ball can place on x.
// Off the support of the center the value has a closed form per family; on
// the support it is the optimum of a finite convex program solved by a
// one-dimensional reduction.
double optimistic_likelihood_divergence(const DivergenceBall& ball, const Observation& x);

// On-support optimum for the KL ball: maximizes the mass at support point k
// subject to the divergence budget. Requires radius > 0.
double solve_on_support_kl(const DiscreteMeasure& center, double radius, std::size_t k);

// Off-support closed-form values (exposed for direct evaluation and tests).
double off_support_divergence_value(DivergenceFamily family, double radius);

}  // namespace optilik
