#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace nnlaw {

/// An ordered collection of points in R^d, stored row-major.
///
/// Every point has exactly dim() coordinates and all of them are finite.
/// Duplicate points are allowed.
class PointSet {
public:
    explicit PointSet(std::size_t dim);
    PointSet(std::size_t dim, std::vector<double> coords);

    static PointSet from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / dim_; }
    bool empty() const noexcept { return coords_.empty(); }

    std::span<const double> operator[](std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }

    void push_back(std::span<const double> point);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

    /// First n points, in order.
    PointSet prefix(std::size_t n) const;

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// Squared Euclidean distance, summed in coordinate order. All distances in
/// the library come from here.
inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

/// CSV: one point per row, one column per coordinate, no header.
PointSet read_csv(std::istream& in);
PointSet read_csv(const std::filesystem::path& path);
void write_csv(std::ostream& out, const PointSet& points);

}  // namespace nnlaw
