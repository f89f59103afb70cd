#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "roadprio/common.hpp"

namespace roadprio {

/// Symmetric m x m Euclidean distance matrix with zero diagonal,
/// materialized once and read-shared by every prioritizer.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t m) : m_(m), d_(m * m, 0.0) {}

    DistanceMatrix(std::size_t m, std::vector<double> values) : m_(m), d_(std::move(values)) {
        if (d_.size() != m_ * m_) {
            throw ValidationError("distance matrix storage size does not match m*m");
        }
    }

    std::size_t size() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * m_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return d_[i * m_ + j]; }

    std::span<const double> flat() const { return d_; }

private:
    std::size_t m_ = 0;
    std::vector<double> d_; // row-major
};

/// sqrt of the summed squared coordinate differences.
/// Throws ValidationError on a length mismatch.
double euclidean(std::span<const double> a, std::span<const double> b);

/// Pairwise distances between the rows of a reduced matrix (m >= 2).
DistanceMatrix pairwise(const Eigen::MatrixXd& rows);

/// FNV-1a 64-bit hash, used to key distance caches by corpus content.
std::uint64_t content_hash(std::string_view bytes);

/// Binary cache: magic + version + key + m + row-major 64-bit floats.
void write_distance_cache(const std::filesystem::path& path,
                          const DistanceMatrix& d, std::uint64_t key);

/// Returns the cached matrix, or nullopt when the file is absent or its
/// header (magic, version, key) does not match.
std::optional<DistanceMatrix> read_distance_cache(const std::filesystem::path& path,
                                                  std::uint64_t expected_key);

} // namespace roadprio
