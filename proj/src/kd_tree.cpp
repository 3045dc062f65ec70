#include "nnlaw/kd_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nnlaw/errors.hpp"

namespace nnlaw {

KdTree::KdTree(const PointSet& points)
    : dim_(points.dim()), source_(points.coords().begin(), points.coords().end()), order_(points.size()) {
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    if (!order_.empty()) {
        nodes_.reserve(2 * (order_.size() / kLeafSize + 1));
        build(0, order_.size());
    }
    packed_.resize(source_.size());
    for (std::size_t pos = 0; pos < order_.size(); ++pos) {
        std::copy_n(source_.data() + order_[pos] * dim_, dim_, packed_.data() + pos * dim_);
    }
}

int KdTree::build(std::size_t begin, std::size_t end) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{begin, end, 0, 0.0, -1, -1});
    if (end - begin <= kLeafSize) return id;

    std::size_t axis = 0;
    double widest = -1.0;
    for (std::size_t a = 0; a < dim_; ++a) {
        double lo = source_[order_[begin] * dim_ + a];
        double hi = lo;
        for (std::size_t i = begin + 1; i < end; ++i) {
            const double v = source_[order_[i] * dim_ + a];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > widest) {
            widest = hi - lo;
            axis = a;
        }
    }

    const std::size_t mid = begin + (end - begin) / 2;
    const auto coord = [&](std::size_t idx) { return source_[idx * dim_ + axis]; };
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) { return coord(a) < coord(b); });
    // [begin, mid) <= split <= [mid, end)
    const double split = coord(order_[mid]);

    const int left = build(begin, mid);
    const int right = build(mid, end);
    Node& node = nodes_[static_cast<std::size_t>(id)];
    node.axis = axis;
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
}

void KdTree::search(int node_id, const double* query, std::size_t skip, std::size_t k,
                    std::vector<double>& heap) const {
    const Node& node = nodes_[static_cast<std::size_t>(node_id)];
    if (node.left < 0) {
        const std::span<const double> q(query, dim_);
        for (std::size_t pos = node.begin; pos < node.end; ++pos) {
            if (order_[pos] == skip) continue;
            const double d2 = squared_distance(std::span<const double>(packed_point(pos), dim_), q);
            if (heap.size() < k) {
                heap.push_back(d2);
                std::push_heap(heap.begin(), heap.end());
            } else if (d2 < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = d2;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }
    const double diff = query[node.axis] - node.split;
    const int near = diff < 0.0 ? node.left : node.right;
    const int far = diff < 0.0 ? node.right : node.left;
    search(near, query, skip, k, heap);
    // Points beyond the split differ from the query by at least |diff| along
    // the split axis; rounding of a - b is monotone, so the bound is exact.
    if (heap.size() < k || diff * diff < heap.front()) search(far, query, skip, k, heap);
}

std::vector<double> KdTree::nearest_squared(std::size_t index, std::size_t k) const {
    if (index >= size()) throw std::out_of_range("KdTree: query index out of range");
    std::vector<double> heap;
    if (k == 0 || size() < 2) return heap;
    heap.reserve(k);
    search(0, source_.data() + index * dim_, index, k, heap);
    std::sort_heap(heap.begin(), heap.end());
    return heap;
}

double KdTree::jth_distance(std::size_t index, std::size_t j) const {
    if (j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    if (index >= size()) throw std::out_of_range("KdTree: query index out of range");
    if (size() <= j) return 0.0;
    return std::sqrt(nearest_squared(index, j).back());
}

std::vector<double> KdTree::jth_distances(std::size_t j) const {
    if (j == 0) throw std::invalid_argument("neighbour rank j must be >= 1");
    std::vector<double> out(size(), 0.0);
    if (size() <= j) return out;
    std::vector<double> heap;
    heap.reserve(j);
    for (std::size_t i = 0; i < size(); ++i) {
        heap.clear();
        search(0, source_.data() + i * dim_, i, j, heap);
        out[i] = std::sqrt(heap.front());
    }
    return out;
}

}  // namespace nnlaw
