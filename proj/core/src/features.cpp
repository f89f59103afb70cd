#include "roadprio/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace roadprio {

namespace {

double median_sorted(const std::vector<double>& v) {
    const std::size_t n = v.size();
    if (n % 2 == 1) {
        return v[n / 2];
    }
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// Population formula (divide by n), matching the z-score convention.
double popn_std(const std::vector<double>& v) {
    const double mu = mean(v);
    double acc = 0.0;
    for (double x : v) {
        acc += (x - mu) * (x - mu);
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

} // namespace

FeatureVector extract_features(const RoadScenario& s) {
    FeatureVector out;
    auto& f = out.values;

    const double dx = s.end_point[0] - s.start_point[0];
    const double dy = s.end_point[1] - s.start_point[1];
    f[0] = std::hypot(dx, dy); // F1 direct distance

    std::vector<double> lengths;
    std::vector<double> angles;
    std::vector<double> pivots;
    int left = 0, right = 0, straight = 0;
    for (const RoadSegment& seg : s.segments) {
        lengths.push_back(seg.length);
        switch (seg.kind) {
            case SegmentKind::LeftTurn: ++left; break;
            case SegmentKind::RightTurn: ++right; break;
            case SegmentKind::Straight: ++straight; break;
        }
        if (seg.is_turn()) {
            angles.push_back(seg.angle_deg);
            pivots.push_back(seg.pivot_radius);
        }
    }
    // Aggregates are accumulated in sorted order so that reordering the
    // segments leaves every feature bitwise unchanged.
    std::sort(lengths.begin(), lengths.end());
    std::sort(angles.begin(), angles.end());
    std::sort(pivots.begin(), pivots.end());

    f[1] = std::accumulate(lengths.begin(), lengths.end(), 0.0); // F2
    f[2] = static_cast<double>(left);      // F3
    f[3] = static_cast<double>(right);     // F4
    f[4] = static_cast<double>(straight);  // F5

    // Angle/pivot statistics cover turn segments only; with no turns the
    // whole family is zero so vectors stay total.
    if (!angles.empty()) {
        f[5] = std::accumulate(angles.begin(), angles.end(), 0.0); // F6
        f[6] = median_sorted(angles);                              // F7
        f[7] = popn_std(angles);                                   // F8
        f[8] = angles.back();                                      // F9
        f[9] = angles.front();                                     // F10
        f[10] = mean(angles);                                      // F11
        f[11] = median_sorted(pivots);                             // F12
        f[12] = popn_std(pivots);                                  // F13
        f[13] = pivots.back();                                     // F14
        f[14] = pivots.front();                                    // F15
        f[15] = mean(pivots);                                      // F16
    }
    return out;
}

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8",
        "F9", "F10", "F11", "F12", "F13", "F14", "F15", "F16"};
    return names;
}

FeatureMatrix build_feature_matrix(std::span<const RoadScenario> corpus) {
    FeatureMatrix m;
    m.values.resize(static_cast<Eigen::Index>(corpus.size()),
                    static_cast<Eigen::Index>(kFeatureCount));
    m.ids.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const FeatureVector fv = extract_features(corpus[i]);
        for (std::size_t j = 0; j < kFeatureCount; ++j) {
            m.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = fv.values[j];
        }
        m.ids.push_back(corpus[i].id);
    }
    return m;
}

void write_features_csv(const FeatureMatrix& matrix, std::ostream& out) {
    out << "id";
    for (const auto& name : feature_names()) {
        out << ',' << name;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
        out << matrix.ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
            out << ',' << format_double(matrix.values(i, j));
        }
        out << '\n';
    }
}

} // namespace roadprio
