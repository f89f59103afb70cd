#include "roadprio/pipeline.hpp"

namespace roadprio {

Pipeline build_pipeline(std::span<const RoadScenario> corpus) {
    if (corpus.size() < 2) {
        throw ValidationError("pipeline needs a corpus of at least 2 scenarios");
    }
    Pipeline p;
    p.features = build_feature_matrix(corpus);
    ZscoreResult z = zscore_fit_apply(p.features.values);
    p.constant_feature_columns = z.constant_columns;
    p.model = pca_fit(z);
    p.reduced.values = pca_project(p.model, z.z);
    p.reduced.ids = p.features.ids;
    p.distances = pairwise(p.reduced.values);
    p.costs.reserve(corpus.size());
    p.ids.reserve(corpus.size());
    for (const RoadScenario& s : corpus) {
        p.costs.push_back(s.cost_s);
        p.ids.push_back(s.id);
    }
    return p;
}

} // namespace roadprio
