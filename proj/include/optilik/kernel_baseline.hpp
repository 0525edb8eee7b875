#pragma once

#include <string>

#include "optilik/measures.hpp"

namespace optilik {

enum class KernelKind { Exponential, Uniform, Epanechnikov };

KernelKind kernel_kind_from_name(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

struct KernelSpec {
    KernelKind kind = KernelKind::Exponential;
    double width = 1.0;  // h > 0
};

// Kernel profile K(y): exp(-y), 1[|y| <= 1], or (3/4)(1 - y^2) 1[|y| <= 1].
double kernel_profile(KernelKind kind, double y);

// Sample-average kernel likelihood score sum_j w_j K(d(x, x_j) / h).
double kernel_likelihood(const KernelSpec& spec, const DiscreteMeasure& center, GroundMetric metric,
                         const Observation& x);

}  // namespace optilik
