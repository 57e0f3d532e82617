#ifndef BOUNDARYLAB_CLASSIFIER_REGISTRY_HPP
#define BOUNDARYLAB_CLASSIFIER_REGISTRY_HPP

#include <memory>
#include <string>
#include <utility>

#include "boundarylab/core.hpp"
#include "boundarylab/features.hpp"

namespace boundarylab {

// Builds a classifier from a registry spec:
//   threshold1d                     1-D, label = x0 > 0.5
//   halfplane2d                     2-D, label = x0 > 0.5
//   mean:<d>                        d-D, label = mean of coordinates > 0.5
//   constant:<d>                    d-D, always label 0
//   paper_filter_bank               the demo bank, L1 winner
//   paper_filter_bank:dot           the demo bank, dot-product winner
//   linear:<w0,w1,...>:<bias>:<activation>
// Unknown specs throw std::invalid_argument naming the spec.
std::unique_ptr<DecisionFunction> make_classifier(const std::string& spec);

// Scalar features by name for the usefulness commands:
//   smooth0     2*x0 - 1
//   sign0       sign(x0 - 0.5)
//   zero        constant 0
//   coord:<i>   x_i
std::pair<std::string, ScalarFeature> make_feature(const std::string& name);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_CLASSIFIER_REGISTRY_HPP
