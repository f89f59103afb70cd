#include "roadprio/distance.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

namespace roadprio {

namespace {

constexpr char kCacheMagic[4] = {'R', 'P', 'D', 'M'};
constexpr std::uint32_t kCacheVersion = 1;

} // namespace

double euclidean(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError("euclidean: length mismatch (" + std::to_string(a.size()) +
                              " vs " + std::to_string(b.size()) + ")");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

DistanceMatrix pairwise(const Eigen::MatrixXd& rows) {
    const auto m = static_cast<std::size_t>(rows.rows());
    if (m < 2) {
        throw ValidationError("pairwise distances need at least 2 rows, got " +
                              std::to_string(m));
    }
    DistanceMatrix d(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dist = (rows.row(static_cast<Eigen::Index>(i)) -
                                 rows.row(static_cast<Eigen::Index>(j)))
                                    .norm();
            d(i, j) = dist;
            d(j, i) = dist;
        }
    }
    return d;
}

std::uint64_t content_hash(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_distance_cache(const std::filesystem::path& path, const DistanceMatrix& d,
                          std::uint64_t key) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write distance cache: " + path.string());
    }
    out.write(kCacheMagic, sizeof(kCacheMagic));
    out.write(reinterpret_cast<const char*>(&kCacheVersion), sizeof(kCacheVersion));
    out.write(reinterpret_cast<const char*>(&key), sizeof(key));
    const std::uint64_t m = d.size();
    out.write(reinterpret_cast<const char*>(&m), sizeof(m));
    out.write(reinterpret_cast<const char*>(d.flat().data()),
              static_cast<std::streamsize>(d.flat().size() * sizeof(double)));
}

std::optional<DistanceMatrix> read_distance_cache(const std::filesystem::path& path,
                                                  std::uint64_t expected_key) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    char magic[4];
    std::uint32_t version = 0;
    std::uint64_t key = 0;
    std::uint64_t m = 0;
    in.read(magic, sizeof(magic));
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    in.read(reinterpret_cast<char*>(&key), sizeof(key));
    in.read(reinterpret_cast<char*>(&m), sizeof(m));
    if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0 ||
        version != kCacheVersion || key != expected_key) {
        return std::nullopt;
    }
    std::vector<double> values(m * m);
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) {
        return std::nullopt;
    }
    return DistanceMatrix(m, std::move(values));
}

} // namespace roadprio
