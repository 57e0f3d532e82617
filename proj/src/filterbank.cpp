#include "boundarylab/filterbank.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace boundarylab {

FilterBank::FilterBank(std::vector<std::vector<double>> prototypes, Mode mode)
    : prototypes_(std::move(prototypes)), mode_(mode) {
    if (prototypes_.size() < 2)
        throw std::invalid_argument("filter bank needs at least two prototypes");
    std::size_t d = prototypes_[0].size();
    if (d == 0) throw std::invalid_argument("prototype dimension must be >= 1");
    for (const auto& p : prototypes_) {
        if (p.size() != d)
            throw std::invalid_argument("prototypes must share one dimension");
    }
}

std::pair<Label, double> FilterBank::winner(const Point& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    int best = 0;
    double best_score = 0.0;
    for (int k = 0; k < label_count(); ++k) {
        const auto& p = prototypes_[static_cast<std::size_t>(k)];
        double s = 0.0;
        if (mode_ == Mode::kL1Distance) {
            for (int i = 0; i < dim(); ++i) s += std::fabs(x[i] - p[static_cast<std::size_t>(i)]);
        } else {
            for (int i = 0; i < dim(); ++i) s += x[i] * p[static_cast<std::size_t>(i)];
        }
        bool better = (mode_ == Mode::kL1Distance) ? s < best_score : s > best_score;
        if (k == 0 || better) {
            best = k;
            best_score = s;
        }
    }
    return {Label(best, label_count()), best_score};
}

Label FilterBank::evaluate(const Point& x) const { return winner(x).first; }

std::vector<double> FilterBank::scores(const Point& x) const {
    if (x.dim() != dim()) throw std::invalid_argument("dimension mismatch");
    std::vector<double> out(static_cast<std::size_t>(label_count()));
    for (int k = 0; k < label_count(); ++k) {
        const auto& p = prototypes_[static_cast<std::size_t>(k)];
        double s = 0.0;
        if (mode_ == Mode::kL1Distance) {
            for (int i = 0; i < dim(); ++i) s -= std::fabs(x[i] - p[static_cast<std::size_t>(i)]);
        } else {
            for (int i = 0; i < dim(); ++i) s += x[i] * p[static_cast<std::size_t>(i)];
        }
        out[static_cast<std::size_t>(k)] = s;
    }
    return out;
}

SoftmaxBank::SoftmaxBank(FilterBank bank, double temperature)
    : bank_(std::move(bank)), temperature_(temperature) {
    if (!(temperature > 0.0)) throw std::invalid_argument("temperature must be > 0");
}

std::vector<double> SoftmaxBank::evaluate(const Point& x) const {
    std::vector<double> s = bank_.scores(x);
    double m = s[0] * temperature_;
    for (std::size_t k = 1; k < s.size(); ++k)
        m = std::max(m, s[k] * temperature_);
    double z = 0.0;
    for (auto& v : s) {
        v = std::exp(v * temperature_ - m);
        z += v;
    }
    for (auto& v : s) v /= z;
    return s;
}

FilterBank demo_filter_bank(FilterBank::Mode mode) {
    return FilterBank({{1.0 / 2.0, 1.0 / 2.0},
                       {2.0 / 3.0, 1.0 / 3.0},
                       {1.0 / 3.0, 2.0 / 3.0},
                       {1.0 / 4.0, 3.0 / 4.0}},
                      mode);
}

}  // namespace boundarylab
