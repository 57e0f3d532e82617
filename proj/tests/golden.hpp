#pragma once
#include <cstdint>

// Frozen outputs of the demo filter bank on the unit square.
// Regenerate with the golden_gen tool; do not edit by hand.
namespace golden {

inline constexpr std::int64_t k512Histogram_l1[4] = {112711, 76587, 33671, 39175};
inline constexpr std::int64_t k512UnstableCount_l1 = 3487;
inline constexpr double kBoxDimension_l1 = 1.0028961510903096;

inline constexpr std::int64_t k512Histogram_dot[4] = {512, 130816, 0, 130816};
inline constexpr std::int64_t k512UnstableCount_dot = 2554;
inline constexpr double kBoxDimension_dot = 1.0014111791662996;

}  // namespace golden
