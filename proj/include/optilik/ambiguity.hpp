#pragma once

#include <optional>
#include <string>
#include <variant>

#include "optilik/divergence_ball.hpp"
#include "optilik/kernel_baseline.hpp"
#include "optilik/measures.hpp"
#include "optilik/moment_ball.hpp"
#include "optilik/wasserstein_ball.hpp"

namespace optilik {

enum class AmbiguityFamily { KL, Hellinger, ChiSquared, TotalVariation, Moment, Wasserstein };

AmbiguityFamily ambiguity_family_from_name(const std::string& name);
std::string ambiguity_family_name(AmbiguityFamily family);

// Neighborhood description for the likelihood solvers: which family of
// ambiguity sets, how large, and (where relevant) under which ground metric.
struct AmbiguitySpec {
    AmbiguityFamily family = AmbiguityFamily::Wasserstein;
    double radius = 0.0;
    GroundMetric metric{MetricKind::L2};
};

// Kernel baseline method: kernel shape/width plus the ground metric.
struct KernelMethod {
    KernelSpec kernel;
    GroundMetric metric{MetricKind::L2};
};

using MethodSpec = std::variant<AmbiguitySpec, KernelMethod>;

// Whether the method carries a radius/width hyper-parameter to tune.
bool method_has_hyperparameter(const MethodSpec& spec);
// Returns a copy of the spec with its radius/width replaced.
MethodSpec method_with_hyperparameter(const MethodSpec& spec, double value);
double method_hyperparameter(const MethodSpec& spec);
std::string method_name(const MethodSpec& spec);

// One fitted likelihood evaluator: a method bound to a nominal measure (and
// the derived moment summary when the method needs one).
class LikelihoodEngine {
public:
    LikelihoodEngine(MethodSpec spec, DiscreteMeasure center);

    double likelihood(const Observation& x) const;
    const MethodSpec& spec() const { return spec_; }
    const DiscreteMeasure& center() const { return center_; }

private:
    MethodSpec spec_;
    DiscreteMeasure center_;
    std::optional<MomentSummary> moments_;
};

}  // namespace optilik
