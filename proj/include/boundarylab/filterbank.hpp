#ifndef BOUNDARYLAB_FILTERBANK_HPP
#define BOUNDARYLAB_FILTERBANK_HPP

#include <utility>
#include <vector>

#include "boundarylab/core.hpp"

namespace boundarylab {

// Nearest-prototype classifier. Each prototype is a vector in the input
// space; a point is labelled by the index of the prototype that wins under
// the configured score. Ties go to the lowest index, which makes the label
// map deterministic even on the measure-zero tie set.
class FilterBank : public DecisionFunction {
public:
    enum class Mode {
        kL1Distance,   // winner minimises sum_i |x_i - p_i|
        kDotProduct,   // winner maximises sum_i x_i * p_i
    };

    FilterBank(std::vector<std::vector<double>> prototypes, Mode mode);

    int dim() const override { return static_cast<int>(prototypes_[0].size()); }
    int label_count() const override { return static_cast<int>(prototypes_.size()); }

    Label evaluate(const Point& x) const override;

    // Winning label plus its raw score (an L1 distance or a dot product,
    // depending on mode).
    std::pair<Label, double> winner(const Point& x) const;

    // Per-prototype scores oriented so that larger is better in both modes;
    // L1 distances are negated. Feeds the softmax rasteriser.
    std::vector<double> scores(const Point& x) const;

    Mode mode() const { return mode_; }
    const std::vector<std::vector<double>>& prototypes() const { return prototypes_; }

private:
    std::vector<std::vector<double>> prototypes_;
    Mode mode_;
};

// Temperature-softened view of a bank: softmax of temperature-scaled scores,
// a proper probability vector per point. Low temperatures flatten toward
// uniform, high temperatures approach the hard winner indicator.
class SoftmaxBank : public SoftDecisionFunction {
public:
    SoftmaxBank(FilterBank bank, double temperature);
    int dim() const override { return bank_.dim(); }
    int label_count() const override { return bank_.label_count(); }
    std::vector<double> evaluate(const Point& x) const override;
    double temperature() const { return temperature_; }

private:
    FilterBank bank_;
    double temperature_;
};

// The four-filter 2-D bank used throughout the demos: prototypes
// (1/2,1/2), (2/3,1/3), (1/3,2/3), (1/4,3/4).
FilterBank demo_filter_bank(FilterBank::Mode mode = FilterBank::Mode::kL1Distance);

}  // namespace boundarylab

#endif  // BOUNDARYLAB_FILTERBANK_HPP
