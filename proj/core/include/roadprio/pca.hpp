#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "roadprio/common.hpp"
#include "roadprio/features.hpp"

namespace roadprio {

/// z-score statistics plus the normalized matrix. Columns with zero
/// standard deviation are mapped to all zeros and listed in
/// `constant_columns` so callers can surface a warning.
struct ZscoreResult {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;   // population formula (divide by m)
    std::vector<Eigen::Index> constant_columns;
    Eigen::MatrixXd z;
};

ZscoreResult zscore_fit_apply(const Eigen::MatrixXd& m);

/// Applies previously fitted statistics to new rows (constant columns,
/// i.e. stddev == 0, map to zero).
Eigen::MatrixXd zscore_apply(const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& stddev,
                             const Eigen::MatrixXd& m);

/// Fitted normalization + principal directions.
///
/// `components` is n x k with orthonormal columns sorted by eigenvalue,
/// descending. Each column's sign is fixed so that its largest-magnitude
/// entry is positive; exact eigenvalue ties are ordered by the first index
/// of that entry. `h` is the smallest count whose cumulative explained
/// variance reaches `variance_target`.
struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::VectorXd stddev;
    Eigen::MatrixXd components;
    Eigen::VectorXd explained_ratio;
    int h = 0;

    Eigen::Index feature_count() const { return components.rows(); }
    Eigen::Index component_count() const { return components.cols(); }
};

inline constexpr double kDefaultVarianceTarget = 0.98;

/// Eigendecomposition of the covariance of an already z-scored matrix.
/// Throws NumericError naming the offending cell on non-finite input.
/// The returned model carries neutral normalization (mean 0, stddev 1).
PcaModel pca_fit(const Eigen::MatrixXd& zscored,
                 double variance_target = kDefaultVarianceTarget);

/// Same, but embeds the z-score statistics that produced the input.
PcaModel pca_fit(const ZscoreResult& zscore,
                 double variance_target = kDefaultVarianceTarget);

/// Scores of each row on the top-h components: M' = Z * V[:, 1..h].
/// Throws ValidationError on a column-count mismatch.
Eigen::MatrixXd pca_project(const PcaModel& model, const Eigen::MatrixXd& zscored);

/// M x h scores with row labels, the space all distances are computed in.
struct ReducedMatrix {
    Eigen::MatrixXd values;
    std::vector<std::string> ids;
};

/// CSV export: header `id,C1,...,Ch`.
void write_reduced_csv(const ReducedMatrix& reduced, std::ostream& out);

std::string pca_model_to_json(const PcaModel& model);
PcaModel pca_model_from_json(std::string_view json_text);

} // namespace roadprio
