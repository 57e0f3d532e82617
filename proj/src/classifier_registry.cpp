#include "boundarylab/classifier_registry.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "boundarylab/filterbank.hpp"

namespace boundarylab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + ": '" + s + "'");
    }
}

int parse_count(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 1) throw std::invalid_argument(s);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + ": '" + s + "'");
    }
}

std::unique_ptr<DecisionFunction> make_threshold(int d) {
    std::vector<LinearFeatureClassifier::Feature> features;
    std::vector<double> weights;
    features.push_back(coordinate_feature(0));
    weights.push_back(1.0);
    return std::make_unique<LinearFeatureClassifier>(
        std::move(features), std::move(weights), -0.5, Activation::kIdentity, d);
}

std::unique_ptr<DecisionFunction> make_mean(int d) {
    std::vector<LinearFeatureClassifier::Feature> features;
    std::vector<double> weights;
    for (int i = 0; i < d; ++i) {
        features.push_back(coordinate_feature(i));
        weights.push_back(1.0 / static_cast<double>(d));
    }
    return std::make_unique<LinearFeatureClassifier>(
        std::move(features), std::move(weights), -0.5, Activation::kIdentity, d);
}

std::unique_ptr<DecisionFunction> make_constant(int d) {
    std::vector<LinearFeatureClassifier::Feature> features;
    features.push_back(coordinate_feature(0));
    return std::make_unique<LinearFeatureClassifier>(
        std::move(features), std::vector<double>{0.0}, -1.0, Activation::kIdentity, d);
}

std::unique_ptr<DecisionFunction> make_linear(const std::vector<std::string>& parts,
                                              const std::string& spec) {
    if (parts.size() != 4)
        throw std::invalid_argument(
            "linear spec must be linear:<w0,w1,...>:<bias>:<activation>, got '" + spec +
            "'");
    std::vector<std::string> weight_strs = split(parts[1], ',');
    if (weight_strs.empty()) throw std::invalid_argument("linear spec has no weights");
    std::vector<LinearFeatureClassifier::Feature> features;
    std::vector<double> weights;
    for (std::size_t i = 0; i < weight_strs.size(); ++i) {
        features.push_back(coordinate_feature(static_cast<int>(i)));
        weights.push_back(parse_real(weight_strs[i], "weight"));
    }
    double bias = parse_real(parts[2], "linear bias");
    Activation act;
    try {
        act = activation_from_name(parts[3]);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad linear activation: '" + parts[3] + "'");
    }
    int d = static_cast<int>(weights.size());
    return std::make_unique<LinearFeatureClassifier>(std::move(features),
                                                     std::move(weights), bias, act, d);
}

}  // namespace

std::unique_ptr<DecisionFunction> make_classifier(const std::string& spec) {
    std::vector<std::string> parts = split(spec, ':');
    if (parts.empty()) throw std::invalid_argument("empty classifier spec");
    const std::string& head = parts[0];

    if (head == "threshold1d") {
        if (parts.size() != 1) throw std::invalid_argument("threshold1d takes no arguments");
        return make_threshold(1);
    }
    if (head == "halfplane2d") {
        if (parts.size() != 1) throw std::invalid_argument("halfplane2d takes no arguments");
        return make_threshold(2);
    }
    if (head == "mean") {
        if (parts.size() != 2) throw std::invalid_argument("mean spec must be mean:<dim>");
        return make_mean(parse_count(parts[1], "mean dimension"));
    }
    if (head == "constant") {
        if (parts.size() != 2)
            throw std::invalid_argument("constant spec must be constant:<dim>");
        return make_constant(parse_count(parts[1], "constant dimension"));
    }
    if (head == "paper_filter_bank") {
        FilterBank::Mode mode = FilterBank::Mode::kL1Distance;
        if (parts.size() == 2) {
            if (parts[1] == "dot")
                mode = FilterBank::Mode::kDotProduct;
            else if (parts[1] != "l1")
                throw std::invalid_argument("paper_filter_bank mode must be l1 or dot");
        } else if (parts.size() != 1) {
            throw std::invalid_argument("paper_filter_bank takes at most one mode");
        }
        return std::make_unique<FilterBank>(demo_filter_bank(mode));
    }
    if (head == "linear") return make_linear(parts, spec);

    throw std::invalid_argument("unknown classifier spec: '" + spec + "'");
}

std::pair<std::string, ScalarFeature> make_feature(const std::string& name) {
    if (name == "smooth0")
        return {name, [](const Point& x) { return 2.0 * x[0] - 1.0; }};
    if (name == "sign0")
        return {name, [](const Point& x) {
                    double t = x[0] - 0.5;
                    return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
                }};
    if (name == "zero")
        return {name, [](const Point&) { return 0.0; }};
    std::vector<std::string> parts = split(name, ':');
    if (parts.size() == 2 && parts[0] == "coord") {
        int idx;
        try {
            std::size_t used = 0;
            long v = std::stol(parts[1], &used);
            if (used != parts[1].size() || v < 0) throw std::invalid_argument(parts[1]);
            idx = static_cast<int>(v);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coordinate index: '" + parts[1] + "'");
        }
        return {name, [idx](const Point& x) {
                    if (idx >= x.dim())
                        throw std::invalid_argument("coordinate index out of range");
                    return x[idx];
                }};
    }
    throw std::invalid_argument("unknown feature: '" + name + "'");
}

}  // namespace boundarylab
