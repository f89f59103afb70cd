#pragma once

#include <span>
#include <string>
#include <vector>

#include "roadprio/distance.hpp"
#include "roadprio/features.hpp"
#include "roadprio/pca.hpp"
#include "roadprio/scenario.hpp"

namespace roadprio {

/// Everything the prioritizers consume, fitted on one corpus:
/// features -> z-score -> PCA (98% rule) -> pairwise distances.
struct Pipeline {
    FeatureMatrix features;
    PcaModel model;
    ReducedMatrix reduced;
    DistanceMatrix distances;
    std::vector<double> costs;
    std::vector<std::string> ids;
    std::vector<Eigen::Index> constant_feature_columns;
};

Pipeline build_pipeline(std::span<const RoadScenario> corpus);

} // namespace roadprio
