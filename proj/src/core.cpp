#include "boundarylab/core.hpp"

#include <cmath>
#include <stdexcept>

namespace boundarylab {

Point::Point(std::vector<double> c) : coords(std::move(c)) {
    if (coords.empty()) throw std::invalid_argument("point must have dimension >= 1");
    for (double v : coords) {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("point coordinate outside [0,1]");
    }
}

double distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

Point clip_to_cube(std::vector<double> coords) {
    for (double& v : coords) {
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
    return Point(std::move(coords));
}

Label::Label(int index_, int cardinality_) : index(index_), cardinality(cardinality_) {
    if (cardinality < 1) throw std::invalid_argument("label cardinality must be >= 1");
    if (index < 0 || index >= cardinality)
        throw std::invalid_argument("label index outside [0, cardinality)");
}

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::kIdentity;
    if (name == "logistic") return Activation::kLogistic;
    if (name == "tanh") return Activation::kTanh;
    throw std::invalid_argument("unknown activation: " + name);
}

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::kIdentity: return "identity";
        case Activation::kLogistic: return "logistic";
        case Activation::kTanh: return "tanh";
    }
    return "identity";
}

double apply_activation(Activation a, double v) {
    switch (a) {
        case Activation::kIdentity: return v;
        case Activation::kLogistic: return 1.0 / (1.0 + std::exp(-v));
        case Activation::kTanh: return std::tanh(v);
    }
    return v;
}

LinearFeatureClassifier::LinearFeatureClassifier(std::vector<Feature> features,
                                                 std::vector<double> weights,
                                                 double bias,
                                                 Activation activation,
                                                 int input_dim)
    : features_(std::move(features)),
      weights_(std::move(weights)),
      bias_(bias),
      activation_(activation),
      input_dim_(input_dim) {
    if (features_.size() != weights_.size())
        throw std::invalid_argument("feature/weight count mismatch");
    if (features_.empty()) throw std::invalid_argument("need at least one feature");
    if (input_dim_ < 1) throw std::invalid_argument("input dimension must be >= 1");
    for (const auto& f : features_) {
        if (!f) throw std::invalid_argument("feature must be callable");
    }
}

double LinearFeatureClassifier::decision_value(const Point& x) const {
    if (x.dim() != input_dim_) throw std::invalid_argument("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < features_.size(); ++i)
        s += weights_[i] * features_[i](x);
    return bias_ + apply_activation(activation_, s);
}

Label LinearFeatureClassifier::evaluate(const Point& x) const {
    return Label(decision_value(x) > 0.0 ? 1 : 0, 2);
}

LinearFeatureClassifier::Feature coordinate_feature(int index) {
    if (index < 0) throw std::invalid_argument("coordinate index must be >= 0");
    return [index](const Point& x) {
        if (index >= x.dim()) throw std::invalid_argument("coordinate index out of range");
        return x[index];
    };
}

}  // namespace boundarylab
