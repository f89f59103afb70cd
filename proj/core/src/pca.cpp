#include "roadprio/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <json.hpp>

namespace roadprio {

namespace {

using nlohmann::json;

// First index of the largest-magnitude entry; breaks eigenvalue ties and
// anchors the sign convention.
Eigen::Index argmax_abs(const Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best_abs) {
            best_abs = std::abs(v(i));
            best = i;
        }
    }
    return best;
}

void check_finite(const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(m(i, j))) {
                throw NumericError("non-finite value at row " + std::to_string(i) +
                                   ", column " + std::to_string(j));
            }
        }
    }
}

} // namespace

ZscoreResult zscore_fit_apply(const Eigen::MatrixXd& m) {
    if (m.rows() < 2) {
        throw ValidationError("z-score normalization needs at least 2 rows, got " +
                              std::to_string(m.rows()));
    }
    check_finite(m);

    ZscoreResult r;
    const auto rows = static_cast<double>(m.rows());
    r.mean = m.colwise().mean();
    Eigen::MatrixXd centered = m.rowwise() - r.mean.transpose();
    r.stddev = (centered.array().square().colwise().sum() / rows).sqrt();
    for (Eigen::Index j = 0; j < r.stddev.size(); ++j) {
        if (r.stddev(j) == 0.0) {
            r.constant_columns.push_back(j);
        }
    }
    r.z = zscore_apply(r.mean, r.stddev, m);
    return r;
}

Eigen::MatrixXd zscore_apply(const Eigen::VectorXd& mean,
                             const Eigen::VectorXd& stddev,
                             const Eigen::MatrixXd& m) {
    if (m.cols() != mean.size() || m.cols() != stddev.size()) {
        throw ValidationError("z-score statistics cover " + std::to_string(mean.size()) +
                              " columns, matrix has " + std::to_string(m.cols()));
    }
    Eigen::MatrixXd z(m.rows(), m.cols());
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (stddev(j) == 0.0) {
            z.col(j).setZero();
        } else {
            z.col(j) = (m.col(j).array() - mean(j)) / stddev(j);
        }
    }
    return z;
}

PcaModel pca_fit(const Eigen::MatrixXd& zscored, double variance_target) {
    if (zscored.rows() < 2) {
        throw ValidationError("PCA needs at least 2 rows, got " +
                              std::to_string(zscored.rows()));
    }
    check_finite(zscored);

    const Eigen::Index n = zscored.cols();
    const Eigen::MatrixXd cov =
        (zscored.transpose() * zscored) / static_cast<double>(zscored.rows());

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw NumericError("eigendecomposition of the covariance matrix failed");
    }

    struct Component {
        double eigenvalue;
        Eigen::VectorXd direction;
        Eigen::Index anchor;
    };
    std::vector<Component> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        Component c;
        c.eigenvalue = std::max(solver.eigenvalues()(i), 0.0); // clamp fp noise
        c.direction = solver.eigenvectors().col(i);
        c.anchor = argmax_abs(c.direction);
        if (c.direction(c.anchor) < 0.0) {
            c.direction = -c.direction;
        }
        comps.push_back(std::move(c));
    }
    std::stable_sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.eigenvalue != b.eigenvalue) {
            return a.eigenvalue > b.eigenvalue;
        }
        return a.anchor < b.anchor;
    });

    PcaModel model;
    model.mean = Eigen::VectorXd::Zero(n);
    model.stddev = Eigen::VectorXd::Ones(n);
    model.components.resize(n, n);
    model.explained_ratio.resize(n);
    double total = 0.0;
    for (const Component& c : comps) {
        total += c.eigenvalue;
    }
    if (total <= 0.0) {
        throw NumericError("covariance matrix has zero total variance");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        model.components.col(i) = comps[static_cast<std::size_t>(i)].direction;
        model.explained_ratio(i) = comps[static_cast<std::size_t>(i)].eigenvalue / total;
    }

    // h = smallest count whose cumulative ratio reaches the target.
    model.h = static_cast<int>(n);
    double cumulative = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += model.explained_ratio(i);
        if (cumulative >= variance_target) {
            model.h = static_cast<int>(i + 1);
            break;
        }
    }
    return model;
}

PcaModel pca_fit(const ZscoreResult& zscore, double variance_target) {
    PcaModel model = pca_fit(zscore.z, variance_target);
    model.mean = zscore.mean;
    model.stddev = zscore.stddev;
    return model;
}

Eigen::MatrixXd pca_project(const PcaModel& model, const Eigen::MatrixXd& zscored) {
    if (zscored.cols() != model.feature_count()) {
        throw ValidationError("projection input has " + std::to_string(zscored.cols()) +
                              " columns, model expects " +
                              std::to_string(model.feature_count()));
    }
    return zscored * model.components.leftCols(model.h);
}

void write_reduced_csv(const ReducedMatrix& reduced, std::ostream& out) {
    out << "id";
    for (Eigen::Index j = 0; j < reduced.values.cols(); ++j) {
        out << ",C" << (j + 1);
    }
    out << '\n';
    for (Eigen::Index i = 0; i < reduced.values.rows(); ++i) {
        out << reduced.ids[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < reduced.values.cols(); ++j) {
            out << ',' << format_double(reduced.values(i, j));
        }
        out << '\n';
    }
}

std::string pca_model_to_json(const PcaModel& model) {
    json doc;
    doc["mean"] = std::vector<double>(model.mean.begin(), model.mean.end());
    doc["std"] = std::vector<double>(model.stddev.begin(), model.stddev.end());
    json components = json::array();
    for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < model.components.cols(); ++j) {
            row.push_back(model.components(i, j));
        }
        components.push_back(std::move(row));
    }
    doc["components"] = std::move(components);
    doc["explained_ratio"] =
        std::vector<double>(model.explained_ratio.begin(), model.explained_ratio.end());
    doc["h"] = model.h;
    return doc.dump(2) + "\n";
}

PcaModel pca_model_from_json(std::string_view json_text) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw ValidationError("PCA model: not a valid JSON object");
    }
    try {
        PcaModel model;
        const auto mean = doc.at("mean").get<std::vector<double>>();
        const auto stddev = doc.at("std").get<std::vector<double>>();
        model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(),
                                                       static_cast<Eigen::Index>(mean.size()));
        model.stddev = Eigen::Map<const Eigen::VectorXd>(
            stddev.data(), static_cast<Eigen::Index>(stddev.size()));
        const auto& components = doc.at("components");
        const auto n = static_cast<Eigen::Index>(components.size());
        if (n == 0) {
            throw ValidationError("PCA model: empty components matrix");
        }
        const auto k = static_cast<Eigen::Index>(components[0].size());
        model.components.resize(n, k);
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto row = components[static_cast<std::size_t>(i)].get<std::vector<double>>();
            if (static_cast<Eigen::Index>(row.size()) != k) {
                throw ValidationError("PCA model: ragged components matrix");
            }
            for (Eigen::Index j = 0; j < k; ++j) {
                model.components(i, j) = row[static_cast<std::size_t>(j)];
            }
        }
        const auto ratio = doc.at("explained_ratio").get<std::vector<double>>();
        model.explained_ratio = Eigen::Map<const Eigen::VectorXd>(
            ratio.data(), static_cast<Eigen::Index>(ratio.size()));
        model.h = doc.at("h").get<int>();
        if (model.h < 1 || model.h > static_cast<int>(k)) {
            throw ValidationError("PCA model: h out of range");
        }
        return model;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("PCA model: ") + e.what());
    }
}

} // namespace roadprio
