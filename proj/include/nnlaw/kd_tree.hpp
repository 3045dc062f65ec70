#pragma once

#include <cstddef>
#include <vector>

#include "nnlaw/point_set.hpp"

namespace nnlaw {

/// Static kd-tree for exact j-th nearest neighbour queries among the indexed
/// points themselves.
///
/// Nodes split at the median of the coordinate with the widest spread; leaves
/// hold at most kLeafSize points. The tree keeps its own copy of the
/// coordinates, so it does not borrow the PointSet it was built from.
class KdTree {
public:
    static constexpr std::size_t kLeafSize = 16;

    explicit KdTree(const PointSet& points);

    std::size_t size() const noexcept { return order_.size(); }
    std::size_t dim() const noexcept { return dim_; }

    /// Squared distances from point `index` to its k nearest other points,
    /// ascending. Fewer than k values when the set is too small.
    std::vector<double> nearest_squared(std::size_t index, std::size_t k) const;

    /// j-th nearest neighbour distance of point `index`; 0 when size() <= j.
    double jth_distance(std::size_t index, std::size_t j) const;

    /// jth_distance for every point, in input order.
    std::vector<double> jth_distances(std::size_t j) const;

private:
    struct Node {
        std::size_t begin;
        std::size_t end;
        std::size_t axis;
        double split;
        int left;   // -1 for leaves
        int right;
    };

    int build(std::size_t begin, std::size_t end);
    void search(int node, const double* query, std::size_t skip, std::size_t k,
                std::vector<double>& heap) const;
    const double* packed_point(std::size_t pos) const noexcept { return packed_.data() + pos * dim_; }

    std::size_t dim_;
    std::vector<double> source_;       // input order
    std::vector<std::size_t> order_;   // tree position -> input index
    std::vector<double> packed_;       // tree order
    std::vector<Node> nodes_;
};

}  // namespace nnlaw
