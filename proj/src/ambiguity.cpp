#include "optilik/ambiguity.hpp"

#include <stdexcept>

namespace optilik {

AmbiguityFamily ambiguity_family_from_name(const std::string& name) {
    if (name == "kl") return AmbiguityFamily::KL;
    if (name == "hellinger") return AmbiguityFamily::Hellinger;
    if (name == "chi2") return AmbiguityFamily::ChiSquared;
    if (name == "tv") return AmbiguityFamily::TotalVariation;
    if (name == "moment") return AmbiguityFamily::Moment;
    if (name == "wasserstein") return AmbiguityFamily::Wasserstein;
    throw std::invalid_argument("unknown ambiguity family: " + name);
}

std::string ambiguity_family_name(AmbiguityFamily family) {
    switch (family) {
        case AmbiguityFamily::KL: return "kl";
        case AmbiguityFamily::Hellinger: return "hellinger";
        case AmbiguityFamily::ChiSquared: return "chi2";
        case AmbiguityFamily::TotalVariation: return "tv";
        case AmbiguityFamily::Moment: return "moment";
        case AmbiguityFamily::Wasserstein: return "wasserstein";
    }
    return "wasserstein";
}

bool method_has_hyperparameter(const MethodSpec& spec) {
    if (const auto* ambiguity = std::get_if<AmbiguitySpec>(&spec)) {
        return ambiguity->family != AmbiguityFamily::Moment;
    }
    return true;  // kernel width
}

MethodSpec method_with_hyperparameter(const MethodSpec& spec, double value) {
    MethodSpec out = spec;
    if (auto* ambiguity = std::get_if<AmbiguitySpec>(&out)) {
        ambiguity->radius = value;
    } else {
        std::get<KernelMethod>(out).kernel.width = value;
    }
    return out;
}

double method_hyperparameter(const MethodSpec& spec) {
    if (const auto* ambiguity = std::get_if<AmbiguitySpec>(&spec)) return ambiguity->radius;
    return std::get<KernelMethod>(spec).kernel.width;
}

std::string method_name(const MethodSpec& spec) {
    if (const auto* ambiguity = std::get_if<AmbiguitySpec>(&spec)) {
        return ambiguity_family_name(ambiguity->family);
    }
    return "kernel-" + kernel_kind_name(std::get<KernelMethod>(spec).kernel.kind);
}

LikelihoodEngine::LikelihoodEngine(MethodSpec spec, DiscreteMeasure center)
    : spec_(std::move(spec)), center_(std::move(center)) {
    if (const auto* ambiguity = std::get_if<AmbiguitySpec>(&spec_)) {
        if (ambiguity->family == AmbiguityFamily::Moment) {
            moments_ = moment_summary(center_);
        }
    }
}

double LikelihoodEngine::likelihood(const Observation& x) const {
    if (const auto* ambiguity = std::get_if<AmbiguitySpec>(&spec_)) {
        switch (ambiguity->family) {
            case AmbiguityFamily::KL:
                return optimistic_likelihood_divergence({DivergenceFamily::KL, center_, ambiguity->radius}, x);
            case AmbiguityFamily::Hellinger:
                return optimistic_likelihood_divergence({DivergenceFamily::Hellinger, center_, ambiguity->radius}, x);
            case AmbiguityFamily::ChiSquared:
                return optimistic_likelihood_divergence({DivergenceFamily::ChiSquared, center_, ambiguity->radius}, x);
            case AmbiguityFamily::TotalVariation:
                return optimistic_likelihood_divergence(
                    {DivergenceFamily::TotalVariation, center_, ambiguity->radius}, x);
            case AmbiguityFamily::Moment:
                return optimistic_likelihood_moment(*moments_, x);
            case AmbiguityFamily::Wasserstein:
                return optimistic_likelihood_wasserstein({center_, ambiguity->radius, ambiguity->metric}, x).first;
        }
        return 0.0;
    }
    const auto& kernel = std::get<KernelMethod>(spec_);
    return kernel_likelihood(kernel.kernel, center_, kernel.metric, x);
}

}  // namespace optilik
