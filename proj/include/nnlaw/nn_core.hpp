#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nnlaw/kd_tree.hpp"
#include "nnlaw/point_set.hpp"

namespace nnlaw {

/// Which neighbour (rank j >= 1) of which point (by index).
struct NeighborQuery {
    std::size_t j;
    std::size_t index;
};

/// Distance from point q.index to its q.j-th nearest other point, by scanning
/// all pairs. Returns 0 when the set has at most j points.
double nn_distance_bruteforce(const PointSet& xs, NeighborQuery q);

/// Same value as nn_distance_bruteforce, answered from a prebuilt index.
double nn_distance_indexed(const KdTree& index, NeighborQuery q);

/// j-th nearest neighbour distance of every point (kd-tree path).
std::vector<double> nn_distances(const PointSet& xs, std::size_t j);
std::vector<double> nn_distances_bruteforce(const PointSet& xs, std::size_t j);

/// S = sum_i (n^{1/d} D_j(X_i))^alpha with n = card(xs); 0 when n <= j.
/// Throws DegenerateStatistic when alpha < 0 and some D_j is zero.
double statistic_power(const PointSet& xs, std::size_t j, double alpha);

/// Sum of phi(n^{1/d} D_j(X_i)); 0 when n <= j. Throws DegenerateStatistic
/// if phi returns a non-finite value.
double statistic_phi(const PointSet& xs, std::size_t j, const std::function<double(double)>& phi);

/// statistic_power over precomputed j-NN distances (one per point) of a set
/// in R^dim.
double power_sum(std::span<const double> distances, std::size_t dim, std::size_t j, double alpha);

}  // namespace nnlaw
