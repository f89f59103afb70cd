#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "roadprio/scenario.hpp"

namespace roadprio {

inline constexpr std::size_t kFeatureCount = 16;

/// The 16 static road features of a scenario, indexed F1..F16:
///   F1 direct start-finish distance, F2 road length,
///   F3/F4/F5 counts of left/right/straight segments,
///   F6 total turned angle, F7-F11 median/std/max/min/mean turn angle,
///   F12-F16 median/std/max/min/mean pivot radius.
/// Angle and pivot statistics are taken over turn segments only; a
/// scenario without turns has F6..F16 all zero.
struct FeatureVector {
    std::array<double, kFeatureCount> values{};

    /// 1-based accessor matching the F1..F16 naming.
    double f(std::size_t index) const { return values.at(index - 1); }
};

/// Pure function of the scenario; segment order never changes the result.
FeatureVector extract_features(const RoadScenario& scenario);

/// Feature names "F1".."F16" in column order.
const std::array<std::string, kFeatureCount>& feature_names();

/// Suite-level m x 16 matrix, one row per scenario.
struct FeatureMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> ids;

    Eigen::Index rows() const { return values.rows(); }
};

FeatureMatrix build_feature_matrix(std::span<const RoadScenario> corpus);

/// CSV export: header `id,F1,...,F16`, full double precision.
void write_features_csv(const FeatureMatrix& matrix, std::ostream& out);

} // namespace roadprio
