#include "nnlaw/nn_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nnlaw/errors.hpp"

namespace nnlaw {

namespace {

void check_query(std::size_t n, NeighborQuery q) {
    if (q.j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    if (q.index >= n) throw std::out_of_range("query index out of range");
}

double scale_factor(std::size_t n, std::size_t dim) {
    return std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim));
}

}  // namespace

double nn_distance_bruteforce(const PointSet& xs, NeighborQuery q) {
    check_query(xs.size(), q);
    if (xs.size() <= q.j) return 0.0;
    std::vector<double> d2;
    d2.reserve(xs.size() - 1);
    const auto query = xs[q.index];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i != q.index) d2.push_back(squared_distance(xs[i], query));
    }
    const auto kth = d2.begin() + static_cast<std::ptrdiff_t>(q.j - 1);
    std::nth_element(d2.begin(), kth, d2.end());
    return std::sqrt(*kth);
}

double nn_distance_indexed(const KdTree& index, NeighborQuery q) {
    check_query(index.size(), q);
    return index.jth_distance(q.index, q.j);
}

std::vector<double> nn_distances(const PointSet& xs, std::size_t j) {
    if (j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    if (xs.size() <= j) return std::vector<double>(xs.size(), 0.0);
    return KdTree(xs).jth_distances(j);
}

std::vector<double> nn_distances_bruteforce(const PointSet& xs, std::size_t j) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = nn_distance_bruteforce(xs, {j, i});
    return out;
}

double power_sum(std::span<const double> distances, std::size_t dim, std::size_t j, double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
    const std::size_t n = distances.size();
    if (n <= j) return 0.0;
    const double scale = scale_factor(n, dim);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha < 0.0 && distances[i] == 0.0) {
            throw DegenerateStatistic("zero nearest-neighbour distance at point " + std::to_string(i) +
                                      " with negative alpha");
        }
        sum += std::pow(scale * distances[i], alpha);
    }
    return sum;
}

double statistic_power(const PointSet& xs, std::size_t j, double alpha) {
    if (j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    if (xs.size() <= j) return 0.0;
    return power_sum(nn_distances(xs, j), xs.dim(), j, alpha);
}

double statistic_phi(const PointSet& xs, std::size_t j, const std::function<double(double)>& phi) {
    if (j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    const std::size_t n = xs.size();
    if (n <= j) return 0.0;
    const double scale = scale_factor(n, xs.dim());
    double sum = 0.0;
    for (double d : nn_distances(xs, j)) {
        const double v = phi(scale * d);
        if (!std::isfinite(v)) throw DegenerateStatistic("phi returned a non-finite value");
        sum += v;
    }
    return sum;
}

}  // namespace nnlaw
