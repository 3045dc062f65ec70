#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "nnlaw/point_set.hpp"

namespace nnlaw {

struct Edge {
    std::size_t u;  // u < v
    std::size_t v;
    double length;
};

using EdgeList = std::vector<Edge>;

/// Euclidean minimal spanning tree by Prim's algorithm, O(n^2) time and O(n)
/// memory. Edges are ordered by (squared length, smaller index, larger
/// index), a strict total order, so the tree is unique and deterministic.
/// Returned edges appear in the order they were added.
EdgeList build_mst(const PointSet& xs);

double total_length(const EdgeList& edges);

/// Sum of phi(|e|) over the MST edges.
double l_phi(const PointSet& xs, const std::function<double(double)>& phi);
double l_phi(const EdgeList& edges, const std::function<double(double)>& phi);

/// n^{-1} sum of phi(n^{1/d} |e|): the MST functional on the rescaled sample,
/// per point.
double normalized_l_phi(const PointSet& xs, const std::function<double(double)>& phi);

/// L^b(X) = sum over x of D_j(x, X)^b, without the n^{1/d} rescaling.
/// Zero when card(X) <= j.
double l_power_nn(const PointSet& xs, double b, std::size_t j = 1);

/// Largest pairwise distance.
double diameter(const PointSet& xs);

/// CSV rows "i,j,length".
void write_edges_csv(std::ostream& out, const EdgeList& edges);

}  // namespace nnlaw
