#pragma once

// Frozen factors absorbing the unnamed generic constants of the filter and
// attractor estimates. Produced by `nsalpha-calibrate` on its calibration
// seed set; every other seed must respect the frozen bounds.

namespace nsalpha::calibration {

inline constexpr double kH2BoundFactor = 1.0;
inline constexpr double kH2DependenceFactor = 1.0;

}  // namespace nsalpha::calibration
