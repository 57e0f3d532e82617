#ifndef BOUNDARYLAB_CORE_HPP
#define BOUNDARYLAB_CORE_HPP

#include <functional>
#include <string>
#include <vector>

namespace boundarylab {

// A point in the unit cube [0,1]^d, d >= 1. Coordinates outside the cube are
// rejected at construction; code that perturbs points clips back into the
// cube before building a Point.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c);

    int dim() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

    bool operator==(const Point& other) const { return coords == other.coords; }
};

// Euclidean distance between two points of equal dimension.
double distance(const Point& a, const Point& b);

// Clamps every coordinate into [0,1] and wraps the result as a Point.
Point clip_to_cube(std::vector<double> coords);

// A class index together with the size of the label alphabet it came from.
struct Label {
    int index = 0;
    int cardinality = 1;

    Label() = default;
    Label(int index_, int cardinality_);

    bool operator==(const Label& other) const {
        return index == other.index && cardinality == other.cardinality;
    }
    bool operator!=(const Label& other) const { return !(*this == other); }
};

// Deterministic hard classifier over the unit cube.
class DecisionFunction {
public:
    virtual ~DecisionFunction() = default;
    virtual int dim() const = 0;
    virtual int label_count() const = 0;
    virtual Label evaluate(const Point& x) const = 0;
};

// Per-class scores instead of a single winner; rows need not be normalised.
class SoftDecisionFunction {
public:
    virtual ~SoftDecisionFunction() = default;
    virtual int dim() const = 0;
    virtual int label_count() const = 0;
    virtual std::vector<double> evaluate(const Point& x) const = 0;
};

enum class Activation { kIdentity, kLogistic, kTanh };

// Accepts "identity", "logistic", "tanh".
Activation activation_from_name(const std::string& name);
const char* activation_name(Activation a);
double apply_activation(Activation a, double v);

// Binary classifier of the form label = [ bias + act(sum_i w_i f_i(x)) > 0 ].
// A decision value of exactly zero maps to label 0, so with identity or tanh
// activation a negative bias of large magnitude forces the constant-0 map.
class LinearFeatureClassifier : public DecisionFunction {
public:
    using Feature = std::function<double(const Point&)>;

    LinearFeatureClassifier(std::vector<Feature> features,
                            std::vector<double> weights,
                            double bias,
                            Activation activation,
                            int input_dim);

    int dim() const override { return input_dim_; }
    int label_count() const override { return 2; }
    Label evaluate(const Point& x) const override;

    // bias + act(weighted feature sum); evaluate() thresholds this at zero.
    double decision_value(const Point& x) const;

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    Activation activation() const { return activation_; }

private:
    std::vector<Feature> features_;
    std::vector<double> weights_;
    double bias_;
    Activation activation_;
    int input_dim_;
};

// Feature that reads a single coordinate.
LinearFeatureClassifier::Feature coordinate_feature(int index);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_CORE_HPP
