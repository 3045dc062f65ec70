#include "nnlaw/point_set.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "nnlaw/errors.hpp"

namespace nnlaw {

namespace {

void check_finite(std::span<const double> coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) throw InvalidPointSet("point coordinates must be finite");
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw InvalidPointSet("dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
    if (dim == 0) throw InvalidPointSet("dimension must be positive");
    if (coords_.size() % dim != 0) throw InvalidPointSet("coordinate count is not a multiple of the dimension");
    check_finite(coords_);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw InvalidPointSet("cannot infer dimension from an empty row list");
    PointSet out(rows.front().size());
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row);
    return out;
}

void PointSet::push_back(std::span<const double> point) {
    if (point.size() != dim_) throw InvalidPointSet("point has wrong number of coordinates");
    check_finite(point);
    coords_.insert(coords_.end(), point.begin(), point.end());
}

PointSet PointSet::prefix(std::size_t n) const {
    if (n > size()) n = size();
    return PointSet(dim_, std::vector<double>(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(n * dim_)));
}

PointSet read_csv(std::istream& in) {
    std::vector<double> coords;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest = trim(line);
        if (rest.empty()) continue;
        std::size_t columns = 0;
        while (true) {
            const auto comma = rest.find(',');
            std::string_view field = trim(rest.substr(0, comma));
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
            if (ec != std::errc() || ptr != field.data() + field.size()) {
                throw InvalidPointSet("line " + std::to_string(line_no) + ": cannot parse '" + std::string(field) + "'");
            }
            coords.push_back(value);
            ++columns;
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (dim == 0) {
            dim = columns;
        } else if (columns != dim) {
            throw InvalidPointSet("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                                  " columns, found " + std::to_string(columns));
        }
    }
    if (dim == 0) throw InvalidPointSet("no points in CSV input");
    return PointSet(dim, std::move(coords));
}

PointSet read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidPointSet("cannot open " + path.string());
    return read_csv(in);
}

void write_csv(std::ostream& out, const PointSet& points) {
    char buf[32];
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points[i];
        for (std::size_t c = 0; c < p.size(); ++c) {
            const auto res = std::to_chars(buf, buf + sizeof buf, p[c]);
            if (c) out << ',';
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
}

}  // namespace nnlaw
