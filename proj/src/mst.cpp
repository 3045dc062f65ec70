#include "nnlaw/mst.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <tuple>

#include "nnlaw/nn_core.hpp"

namespace nnlaw {

namespace {

struct Candidate {
    double d2 = std::numeric_limits<double>::infinity();
    std::size_t a = 0;  // smaller endpoint
    std::size_t b = 0;

    bool operator<(const Candidate& o) const { return std::tie(d2, a, b) < std::tie(o.d2, o.a, o.b); }
};

}  // namespace

EdgeList build_mst(const PointSet& xs) {
    const std::size_t n = xs.size();
    EdgeList edges;
    if (n < 2) return edges;
    edges.reserve(n - 1);

    std::vector<Candidate> best(n);
    std::vector<bool> in_tree(n, false);
    in_tree[0] = true;
    for (std::size_t v = 1; v < n; ++v) best[v] = {squared_distance(xs[0], xs[v]), 0, v};

    for (std::size_t step = 1; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (pick == n || best[v] < best[pick])) pick = v;
        }
        in_tree[pick] = true;
        edges.push_back({best[pick].a, best[pick].b, std::sqrt(best[pick].d2)});
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const Candidate c{squared_distance(xs[pick], xs[v]), std::min(pick, v), std::max(pick, v)};
            if (c < best[v]) best[v] = c;
        }
    }
    return edges;
}

double total_length(const EdgeList& edges) {
    double total = 0.0;
    for (const auto& e : edges) total += e.length;
    return total;
}

double l_phi(const EdgeList& edges, const std::function<double(double)>& phi) {
    double total = 0.0;
    for (const auto& e : edges) total += phi(e.length);
    return total;
}

double l_phi(const PointSet& xs, const std::function<double(double)>& phi) { return l_phi(build_mst(xs), phi); }

double normalized_l_phi(const PointSet& xs, const std::function<double(double)>& phi) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double scale = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(xs.dim()));
    return l_phi(xs, [&](double t) { return phi(scale * t); }) / static_cast<double>(n);
}

double l_power_nn(const PointSet& xs, double b, std::size_t j) {
    if (xs.size() <= j) return 0.0;
    double total = 0.0;
    for (double d : nn_distances(xs, j)) total += std::pow(d, b);
    return total;
}

double diameter(const PointSet& xs) {
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t k = i + 1; k < xs.size(); ++k) best = std::max(best, squared_distance(xs[i], xs[k]));
    }
    return std::sqrt(best);
}

void write_edges_csv(std::ostream& out, const EdgeList& edges) {
    char buf[32];
    for (const auto& e : edges) {
        const auto res = std::to_chars(buf, buf + sizeof buf, e.length);
        out << e.u << ',' << e.v << ',';
        out.write(buf, res.ptr - buf);
        out << '\n';
    }
}

}  // namespace nnlaw
