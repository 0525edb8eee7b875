#include "optilik/kernel_baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace optilik {

KernelKind kernel_kind_from_name(const std::string& name) {
    if (name == "exp" || name == "exponential") return KernelKind::Exponential;
    if (name == "uni" || name == "uniform") return KernelKind::Uniform;
    if (name == "epa" || name == "epanechnikov") return KernelKind::Epanechnikov;
    throw std::invalid_argument("unknown kernel kind: " + name);
}

std::string kernel_kind_name(KernelKind kind) {
    switch (kind) {
        case KernelKind::Exponential: return "exponential";
        case KernelKind::Uniform: return "uniform";
        case KernelKind::Epanechnikov: return "epanechnikov";
    }
    return "exponential";
}

double kernel_profile(KernelKind kind, double y) {
    switch (kind) {
        case KernelKind::Exponential: return std::exp(-y);
        case KernelKind::Uniform: return std::abs(y) <= 1.0 ? 1.0 : 0.0;
        case KernelKind::Epanechnikov: return std::abs(y) <= 1.0 ? 0.75 * (1.0 - y * y) : 0.0;
    }
    return 0.0;
}

double kernel_likelihood(const KernelSpec& spec, const DiscreteMeasure& center, GroundMetric metric,
                         const Observation& x) {
    if (!(spec.width > 0.0)) throw std::invalid_argument("kernel width must be positive");
    double acc = 0.0;
    for (std::size_t j = 0; j < center.size(); ++j) {
        acc += center.weight(j) * kernel_profile(spec.kind, distance(metric, x.value(), center.point(j)) / spec.width);
    }
    return acc;
}

}  // namespace optilik
