#include "nnlaw/density.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "nnlaw/errors.hpp"
#include "nnlaw/limits.hpp"

namespace nnlaw {

namespace {

constexpr double kBodyTol = 1e-10;

double sphere_area(int d) { return d * unit_ball_volume(d); }

void uniform_in_unit_ball(Rng& rng, std::span<double> out) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    if (out.size() <= 6) {
        while (true) {
            double norm2 = 0.0;
            for (double& c : out) {
                c = unif(rng);
                norm2 += c * c;
            }
            if (norm2 <= 1.0) return;
        }
    }
    std::normal_distribution<double> normal;
    double norm2 = 0.0;
    for (double& c : out) {
        c = normal(rng);
        norm2 += c * c;
    }
    const double radius = std::pow(std::uniform_real_distribution<double>(0.0, 1.0)(rng),
                                   1.0 / static_cast<double>(out.size()));
    const double scale = radius / std::sqrt(norm2);
    for (double& c : out) c *= scale;
}

void uniform_direction(Rng& rng, std::span<double> out) {
    std::normal_distribution<double> normal;
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (double& c : out) {
            c = normal(rng);
            norm2 += c * c;
        }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : out) c *= inv;
}

double norm(std::span<const double> x) { return std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0)); }

// A body restricted to the coordinates [axis, d). Balls shrink as they are
// sliced; boxes keep their extents.
struct BodySlice {
    const Body* body;
    std::size_t axis;
    double radius;  // current radius for balls
};

std::size_t body_dim(const Body& b) {
    return std::visit([](const auto& v) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, Box>) return v.lo.size();
        else return v.center.size();
    }, b);
}

// Closest and farthest distance from the origin over the slice.
std::pair<double, double> distance_range(const BodySlice& s) {
    if (const auto* box = std::get_if<Box>(s.body)) {
        double near2 = 0.0;
        double far2 = 0.0;
        for (std::size_t a = s.axis; a < box->lo.size(); ++a) {
            const double lo = box->lo[a];
            const double hi = box->hi[a];
            const double n = lo > 0.0 ? lo : (hi < 0.0 ? -hi : 0.0);
            const double f = std::max(std::abs(lo), std::abs(hi));
            near2 += n * n;
            far2 += f * f;
        }
        return {std::sqrt(near2), std::sqrt(far2)};
    }
    const auto& ball = std::get<Ball>(*s.body);
    double c2 = 0.0;
    for (std::size_t a = s.axis; a < ball.center.size(); ++a) c2 += ball.center[a] * ball.center[a];
    const double c = std::sqrt(c2);
    return {std::max(0.0, c - s.radius), c + s.radius};
}

double slice_volume(const BodySlice& s) {
    if (const auto* box = std::get_if<Box>(s.body)) {
        double v = 1.0;
        for (std::size_t a = s.axis; a < box->lo.size(); ++a) v *= box->hi[a] - box->lo[a];
        return v;
    }
    const int m = static_cast<int>(body_dim(*s.body) - s.axis);
    return unit_ball_volume(m) * std::pow(s.radius, m);
}

std::pair<double, double> axis_extent(const BodySlice& s) {
    if (const auto* box = std::get_if<Box>(s.body)) return {box->lo[s.axis], box->hi[s.axis]};
    const double c = std::get<Ball>(*s.body).center[s.axis];
    return {c - s.radius, c + s.radius};
}

BodySlice slice_at(const BodySlice& s, double t) {
    BodySlice next{s.body, s.axis + 1, s.radius};
    if (std::holds_alternative<Ball>(*s.body)) {
        const double off = t - std::get<Ball>(*s.body).center[s.axis];
        next.radius = std::sqrt(std::max(0.0, s.radius * s.radius - off * off));
    }
    return next;
}

// Volume of slice intersected with the ball of radius R about the origin.
double clipped_volume(const BodySlice& s, double R) {
    const auto [near, far] = distance_range(s);
    if (R <= near) return 0.0;
    if (R >= far) return slice_volume(s);
    auto [a, b] = axis_extent(s);
    a = std::max(a, -R);
    b = std::min(b, R);
    if (a >= b) return 0.0;
    if (s.axis + 1 == body_dim(*s.body)) return b - a;
    const auto inner = [&](double t) { return clipped_volume(slice_at(s, t), std::sqrt(std::max(0.0, R * R - t * t))); };
    return integrate_kronrod(inner, a, b, kBodyTol, 12).value;
}

// Integral of h(offset + |x|^2) over the slice.
double integrate_radial_weight(const BodySlice& s, const RealFunction& h, double offset) {
    const auto [a, b] = axis_extent(s);
    if (s.axis + 1 == body_dim(*s.body)) {
        return integrate_finite([&](double t) { return h(offset + t * t); }, a, b, kBodyTol).value;
    }
    const auto inner = [&](double t) {
        const BodySlice next = slice_at(s, t);
        if (std::holds_alternative<Ball>(*s.body) && next.radius == 0.0) return 0.0;
        return integrate_radial_weight(next, h, offset + t * t);
    };
    return integrate_finite(inner, a, b, kBodyTol).value;
}

bool bodies_overlap(const Body& x, const Body& y) {
    const auto box_ball = [](const Box& box, const Ball& ball) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < box.lo.size(); ++a) {
            const double c = ball.center[a];
            const double g = c < box.lo[a] ? box.lo[a] - c : (c > box.hi[a] ? c - box.hi[a] : 0.0);
            d2 += g * g;
        }
        return d2 < ball.radius * ball.radius;
    };
    if (const auto* bx = std::get_if<Box>(&x)) {
        if (const auto* by = std::get_if<Box>(&y)) {
            for (std::size_t a = 0; a < bx->lo.size(); ++a) {
                if (!(bx->lo[a] < by->hi[a] && by->lo[a] < bx->hi[a])) return false;
            }
            return true;
        }
        return box_ball(*bx, std::get<Ball>(y));
    }
    const auto& ball = std::get<Ball>(x);
    if (const auto* by = std::get_if<Box>(&y)) return box_ball(*by, ball);
    const auto& other = std::get<Ball>(y);
    double d2 = 0.0;
    for (std::size_t a = 0; a < ball.center.size(); ++a) {
        const double g = ball.center[a] - other.center[a];
        d2 += g * g;
    }
    const double rsum = ball.radius + other.radius;
    return d2 < rsum * rsum;
}

void check_rho(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw std::domain_error("rho must be positive and finite");
}

}  // namespace

DensityModel::DensityModel(int dim) : dim_(dim) {
    if (dim < 1) throw InvalidModel("dimension must be >= 1");
}

double body_volume(const Body& body) {
    return slice_volume(BodySlice{&body, 0, std::holds_alternative<Ball>(body) ? std::get<Ball>(body).radius : 0.0});
}

// ---------------------------------------------------------------------------
// UniformConvexUnion

UniformConvexUnion::UniformConvexUnion(std::vector<Body> bodies)
    : DensityModel(bodies.empty() ? 0 : static_cast<int>(body_dim(bodies.front()))), bodies_(std::move(bodies)) {
    const std::size_t d = static_cast<std::size_t>(dim());
    for (const auto& b : bodies_) {
        if (body_dim(b) != d) throw InvalidModel("all bodies must have the same dimension");
        if (const auto* box = std::get_if<Box>(&b)) {
            if (box->hi.size() != d) throw InvalidModel("box lo/hi dimension mismatch");
            for (std::size_t a = 0; a < d; ++a) {
                if (!std::isfinite(box->lo[a]) || !std::isfinite(box->hi[a]) || !(box->hi[a] > box->lo[a])) {
                    throw InvalidModel("box must have finite bounds and nonempty interior");
                }
            }
        } else {
            const auto& ball = std::get<Ball>(b);
            if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) throw InvalidModel("ball radius must be positive");
            for (double c : ball.center) {
                if (!std::isfinite(c)) throw InvalidModel("ball centre must be finite");
            }
        }
    }
    for (std::size_t i = 0; i < bodies_.size(); ++i) {
        for (std::size_t k = i + 1; k < bodies_.size(); ++k) {
            if (bodies_overlap(bodies_[i], bodies_[k])) throw InvalidModel("bodies must be pairwise disjoint");
        }
    }
    volume_ = 0.0;
    for (const auto& b : bodies_) {
        volume_ += body_volume(b);
        cumulative_.push_back(volume_);
    }
    for (double& c : cumulative_) c /= volume_;
}

UniformConvexUnion UniformConvexUnion::unit_cube(int d) {
    if (d < 1) throw InvalidModel("dimension must be >= 1");
    const auto n = static_cast<std::size_t>(d);
    return UniformConvexUnion({Box{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)}});
}

double UniformConvexUnion::volume_within(double radius) const {
    if (radius <= 0.0) return 0.0;
    double v = 0.0;
    for (const auto& b : bodies_) {
        const double r0 = std::holds_alternative<Ball>(b) ? std::get<Ball>(b).radius : 0.0;
        v += clipped_volume(BodySlice{&b, 0, r0}, radius);
    }
    return v;
}

double UniformConvexUnion::pdf(std::span<const double> x) const {
    for (const auto& b : bodies_) {
        if (const auto* box = std::get_if<Box>(&b)) {
            bool inside = true;
            for (std::size_t a = 0; a < x.size() && inside; ++a) inside = x[a] >= box->lo[a] && x[a] <= box->hi[a];
            if (inside) return 1.0 / volume_;
        } else {
            const auto& ball = std::get<Ball>(b);
            if (squared_distance(x, ball.center) <= ball.radius * ball.radius) return 1.0 / volume_;
        }
    }
    return 0.0;
}

void UniformConvexUnion::sample(Rng& rng, std::span<double> out) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), bodies_.size() - 1);
    const Body& b = bodies_[idx];
    if (const auto* box = std::get_if<Box>(&b)) {
        for (std::size_t a = 0; a < out.size(); ++a) {
            out[a] = std::uniform_real_distribution<double>(box->lo[a], box->hi[a])(rng);
        }
        return;
    }
    const auto& ball = std::get<Ball>(b);
    uniform_in_unit_ball(rng, out);
    for (std::size_t a = 0; a < out.size(); ++a) out[a] = ball.center[a] + ball.radius * out[a];
}

double UniformConvexUnion::i_rho(double rho) const { return std::pow(volume_, 1.0 - rho); }

double UniformConvexUnion::moment(double r) const {
    const auto h = [r](double s) { return std::pow(s, 0.5 * r); };
    double total = 0.0;
    for (const auto& b : bodies_) {
        const double r0 = std::holds_alternative<Ball>(b) ? std::get<Ball>(b).radius : 0.0;
        total += integrate_radial_weight(BodySlice{&b, 0, r0}, h, 0.0);
    }
    return total / volume_;
}

double UniformConvexUnion::annulus_mass(int k) const {
    if (k < 0) return 0.0;
    const double outer = std::ldexp(1.0, k + 1);
    const double inner = k == 0 ? 0.0 : std::ldexp(1.0, k);
    return (volume_within(outer) - volume_within(inner)) / volume_;
}

QuadResult UniformConvexUnion::integrate_density_functional(const RealFunction& g, double) const {
    return {g(1.0 / volume_), 0.0};
}

nlohmann::json UniformConvexUnion::to_json() const {
    nlohmann::json bodies = nlohmann::json::array();
    for (const auto& b : bodies_) {
        if (const auto* box = std::get_if<Box>(&b)) {
            bodies.push_back({{"type", "box"}, {"lo", box->lo}, {"hi", box->hi}});
        } else {
            const auto& ball = std::get<Ball>(b);
            bodies.push_back({{"type", "ball"}, {"center", ball.center}, {"radius", ball.radius}});
        }
    }
    return {{"model", name()}, {"d", dim()}, {"bodies", bodies}};
}

// ---------------------------------------------------------------------------
// GaussianStandard

GaussianStandard::GaussianStandard(int d) : DensityModel(d) {
    const double mass = integrate_density_functional([](double) { return 1.0; }, 1e-10).value;
    if (std::abs(mass - 1.0) > 1e-6) throw InvalidModel("gaussian normalisation check failed");
}

double GaussianStandard::pdf(std::span<const double> x) const {
    const double r2 = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
    return pdf_sup() * std::exp(-0.5 * r2);
}

void GaussianStandard::sample(Rng& rng, std::span<double> out) const {
    std::normal_distribution<double> normal;
    for (double& c : out) c = normal(rng);
}

double GaussianStandard::i_rho(double rho) const {
    const double d = dim();
    return std::pow(rho, -0.5 * d) * std::pow(2.0 * std::numbers::pi, 0.5 * d * (1.0 - rho));
}

double GaussianStandard::moment(double r) const {
    const double d = dim();
    return std::exp(0.5 * r * std::log(2.0) + std::lgamma(0.5 * (d + r)) - std::lgamma(0.5 * d));
}

double GaussianStandard::annulus_mass(int k) const {
    if (k < 0) return 0.0;
    const double a = 0.5 * dim();
    const double outer = 0.5 * std::ldexp(1.0, 2 * (k + 1));
    if (k == 0) return boost::math::gamma_p(a, outer);
    const double inner = 0.5 * std::ldexp(1.0, 2 * k);
    return boost::math::gamma_q(a, inner) - boost::math::gamma_q(a, outer);
}

double GaussianStandard::pdf_sup() const { return std::pow(2.0 * std::numbers::pi, -0.5 * dim()); }

QuadResult GaussianStandard::integrate_density_functional(const RealFunction& g, double tol) const {
    const int d = dim();
    const double area = sphere_area(d);
    const double peak = pdf_sup();
    const auto radial = [&](double r) {
        const double f = peak * std::exp(-0.5 * r * r);
        if (f == 0.0) return 0.0;
        return area * std::pow(r, d - 1) * f * g(f);
    };
    return integrate_half_line(radial, 0.0, tol);
}

nlohmann::json GaussianStandard::to_json() const { return {{"model", name()}, {"d", dim()}}; }

// ---------------------------------------------------------------------------
// PowerLawTail

PowerLawTail::PowerLawTail(int d, double beta) : DensityModel(d), beta_(beta) {
    if (!(beta > d) || !std::isfinite(beta)) throw InvalidModel("power_law requires beta > d");
    c_ = 1.0 / (sphere_area(d) * boost::math::beta(static_cast<double>(d), beta - d));
    const double mass = integrate_density_functional([](double) { return 1.0; }, 1e-10).value;
    if (std::abs(mass - 1.0) > 1e-6) throw InvalidModel("power_law normalisation check failed");
}

double PowerLawTail::pdf(std::span<const double> x) const { return c_ * std::pow(1.0 + norm(x), -beta_); }

double PowerLawTail::radial_cdf(double r) const {
    if (r <= 0.0) return 0.0;
    // P[|X| > r] = I_{1/(1+r)}(beta - d, d); the complement form keeps the tail accurate.
    return 1.0 - boost::math::ibeta(beta_ - dim(), static_cast<double>(dim()), 1.0 / (1.0 + r));
}

double PowerLawTail::radial_quantile(double p) const {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInfinite;
    // v = 1/(1+r) solves I_v(beta - d, d) = 1 - p
    const double v = boost::math::ibeta_inv(beta_ - dim(), static_cast<double>(dim()), 1.0 - p);
    return (1.0 - v) / v;
}

void PowerLawTail::sample(Rng& rng, std::span<double> out) const {
    uniform_direction(rng, out);
    const double radius = radial_quantile(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    for (double& c : out) c *= radius;
}

double PowerLawTail::i_rho(double rho) const {
    const double d = dim();
    if (!(beta_ * rho > d)) return kInfinite;
    return std::pow(c_, rho) * sphere_area(dim()) * boost::math::beta(d, beta_ * rho - d);
}

double PowerLawTail::moment(double r) const {
    const double d = dim();
    if (!(r < beta_ - d)) return kInfinite;
    return c_ * sphere_area(dim()) * boost::math::beta(d + r, beta_ - d - r);
}

double PowerLawTail::annulus_mass(int k) const {
    if (k < 0) return 0.0;
    const double a = dim();
    const double b = beta_ - dim();
    const auto tail = [&](double r) { return boost::math::ibeta(b, a, 1.0 / (1.0 + r)); };
    const double outer = std::ldexp(1.0, k + 1);
    if (k == 0) return 1.0 - tail(outer);
    return tail(std::ldexp(1.0, k)) - tail(outer);
}

std::optional<RegularityCertificate> PowerLawTail::analytic_regularity() const {
    // Ratios converge to 2^{d - beta}; bound them over the representable range
    // together with that limit.
    const double limit = std::pow(2.0, dim() - beta_);
    double lo = limit;
    double hi = limit;
    double prev = annulus_mass(0);
    for (int k = 1; k < 1000; ++k) {
        const double cur = annulus_mass(k);
        if (cur < 1e-290 || prev < 1e-290) break;
        lo = std::min(lo, cur / prev);
        hi = std::max(hi, cur / prev);
        prev = cur;
    }
    return RegularityCertificate{1, lo, hi};
}

QuadResult PowerLawTail::integrate_density_functional(const RealFunction& g, double tol) const {
    // r = u / (1 - u): dr = du / (1-u)^2, f = c (1-u)^beta.
    const int d = dim();
    const double area = sphere_area(d);
    const auto integrand = [&](double u) {
        const double w = 1.0 - u;
        const double f = c_ * std::pow(w, beta_);
        if (f == 0.0 || u <= 0.0) return 0.0;
        return area * std::pow(u, d - 1) * std::pow(w, beta_ - d - 1.0) * c_ * g(f);
    };
    return integrate_finite(integrand, 0.0, 1.0, tol);
}

nlohmann::json PowerLawTail::to_json() const { return {{"model", name()}, {"d", dim()}, {"beta", beta_}}; }

// ---------------------------------------------------------------------------
// AnnulusBallCounterexample

AnnulusBallCounterexample::AnnulusBallCounterexample(int d, double r) : DensityModel(d), r_(r) {
    // Shell indices are geometric with ratio 2^{-r}; small r would push ball
    // centres past the double range.
    if (!(r >= 0.05) || !std::isfinite(r)) throw InvalidModel("counterexample decay rate r must be >= 0.05");
    c_ = (1.0 - std::exp2(-r)) / (unit_ball_volume(d) * std::exp2(-2.0 * r));
    double mass = 0.0;
    for (int k = 2; k < 20000; ++k) {
        const double term = unit_ball_volume(d) * c_ * std::exp2(-r * k);
        mass += term;
        if (term < 1e-18) break;
    }
    if (std::abs(mass - 1.0) > 1e-6) throw InvalidModel("counterexample normalisation check failed");
}

double AnnulusBallCounterexample::pdf(std::span<const double> x) const {
    const double t = x[0];
    if (t < 1.0) return 0.0;
    const int guess = static_cast<int>(std::floor(std::log2(t / 3.0))) + 1;
    for (int k = std::max(2, guess - 1); k <= guess + 1; ++k) {
        double d2 = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            const double g = x[a] - (a == 0 ? center_offset(k) : 0.0);
            d2 += g * g;
        }
        if (d2 <= 1.0) return c_ * std::exp2(-r_ * k);
    }
    return 0.0;
}

void AnnulusBallCounterexample::sample(Rng& rng, std::span<double> out) const {
    std::geometric_distribution<int> shells(1.0 - std::exp2(-r_));
    const int k = 2 + shells(rng);
    uniform_in_unit_ball(rng, out);
    out[0] += center_offset(k);
}

double AnnulusBallCounterexample::i_rho(double rho) const {
    return unit_ball_volume(dim()) * std::pow(c_, rho) * std::exp2(-2.0 * r_ * rho) / (1.0 - std::exp2(-r_ * rho));
}

namespace {

// E|c e_1 + U|^s for U uniform on the unit ball in R^d.
double shifted_ball_moment(int d, double c, double s) {
    if (c > 1e4) {
        // Second-order expansion in 1/c; relative error O(c^-4).
        return std::pow(c, s) * (1.0 + s * (d + s - 2.0) / (2.0 * (d + 2.0) * c * c));
    }
    if (d == 1) {
        return 0.5 * integrate_finite([&](double u) { return std::pow(std::abs(c + u), s); }, -1.0, 1.0, 1e-12).value;
    }
    const double perp_area = (d - 1) * unit_ball_volume(d - 1);
    const auto outer = [&](double u1) {
        const double h = std::sqrt(std::max(0.0, 1.0 - u1 * u1));
        if (h == 0.0) return 0.0;
        const double a2 = (c + u1) * (c + u1);
        const auto inner = [&](double rho) { return std::pow(a2 + rho * rho, 0.5 * s) * std::pow(rho, d - 2); };
        return perp_area * integrate_finite(inner, 0.0, h, 1e-12).value;
    };
    return integrate_finite(outer, -1.0, 1.0, 1e-11).value / unit_ball_volume(d);
}

}  // namespace

double AnnulusBallCounterexample::moment(double s) const {
    if (!(s < r_)) return kInfinite;
    double total = 0.0;
    int k = 2;
    for (; k < 60; ++k) total += annulus_mass(k) * shifted_ball_moment(dim(), center_offset(k), s);
    // Remaining shells: F(A_k) |c_k|^s is geometric with ratio 2^{s - r}.
    const double q = std::exp2(s - r_);
    const double next = annulus_mass(k) * std::pow(center_offset(k), s);
    return total + next / (1.0 - q);
}

double AnnulusBallCounterexample::annulus_mass(int k) const {
    if (k < 2) return 0.0;
    return (1.0 - std::exp2(-r_)) * std::exp2(-r_ * (k - 2));
}

double AnnulusBallCounterexample::pdf_sup() const { return c_ * std::exp2(-2.0 * r_); }

std::optional<RegularityCertificate> AnnulusBallCounterexample::analytic_regularity() const {
    const double ratio = std::exp2(-r_);
    return RegularityCertificate{3, ratio, ratio};
}

QuadResult AnnulusBallCounterexample::integrate_density_functional(const RealFunction& g, double tol) const {
    double sum = 0.0;
    double prev = 0.0;
    double tail = kInfinite;
    for (int k = 2; k < 20000; ++k) {
        const double level = c_ * std::exp2(-r_ * k);
        if (level == 0.0) {
            tail = 0.0;
            break;
        }
        const double term = annulus_mass(k) * g(level);
        sum += term;
        if (k > 8 && prev != 0.0) {
            const double q = std::abs(term / prev);
            if (q < 1.0) {
                tail = std::abs(term) * q / (1.0 - q);
                if (tail <= 0.01 * tol * std::abs(sum)) break;
            }
        }
        prev = term;
    }
    return {sum, tail};
}

nlohmann::json AnnulusBallCounterexample::to_json() const {
    return {{"model", name()}, {"d", dim()}, {"r", r_}};
}

// ---------------------------------------------------------------------------

PointSet sample_n(const DensityModel& model, std::size_t n, Rng& rng) {
    const auto d = static_cast<std::size_t>(model.dim());
    std::vector<double> coords(n * d);
    for (std::size_t i = 0; i < n; ++i) model.sample(rng, std::span<double>(coords.data() + i * d, d));
    return PointSet(d, std::move(coords));
}

PointSet sample_n(const DensityModel& model, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_n(model, n, rng);
}

double analytic_i_rho(const DensityModel& model, double rho) {
    check_rho(rho);
    return model.i_rho(rho);
}

double analytic_moment(const DensityModel& model, double r) {
    if (!(r > 0.0)) throw std::domain_error("moment order must be positive");
    return model.moment(r);
}

namespace {

std::vector<double> vec_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw InvalidModel(std::string("body needs array '") + key + "'");
    return j.at(key).get<std::vector<double>>();
}

Body body_from_json(const nlohmann::json& j) {
    const std::string type = j.value("type", "");
    if (type == "box") {
        auto lo = vec_field(j, "lo");
        auto hi = vec_field(j, "hi");
        if (lo.size() != hi.size()) throw InvalidModel("box lo/hi dimension mismatch");
        return Box{std::move(lo), std::move(hi)};
    }
    if (type == "ball") {
        if (!j.contains("radius")) throw InvalidModel("ball needs 'radius'");
        return Ball{vec_field(j, "center"), j.at("radius").get<double>()};
    }
    throw InvalidModel("unknown body type '" + type + "' (expected box or ball)");
}

double number_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) throw InvalidModel(std::string("model needs numeric '") + key + "'");
    return j.at(key).get<double>();
}

}  // namespace

std::unique_ptr<DensityModel> make_model(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("model")) throw InvalidModel("model spec needs a 'model' key");
    const std::string name = spec.at("model").get<std::string>();
    if (!spec.contains("d") || !spec.at("d").is_number_integer()) throw InvalidModel("model spec needs integer 'd'");
    const int d = spec.at("d").get<int>();
    if (d < 1) throw InvalidModel("'d' must be >= 1");
    if (name == "uniform_union") {
        if (!spec.contains("bodies")) return std::make_unique<UniformConvexUnion>(UniformConvexUnion::unit_cube(d));
        std::vector<Body> bodies;
        for (const auto& b : spec.at("bodies")) bodies.push_back(body_from_json(b));
        if (bodies.empty()) throw InvalidModel("'bodies' must not be empty");
        auto model = std::make_unique<UniformConvexUnion>(std::move(bodies));
        if (model->dim() != d) throw InvalidModel("body dimension does not match 'd'");
        return model;
    }
    if (name == "gaussian") return std::make_unique<GaussianStandard>(d);
    if (name == "power_law") return std::make_unique<PowerLawTail>(d, number_field(spec, "beta"));
    if (name == "counterexample") return std::make_unique<AnnulusBallCounterexample>(d, number_field(spec, "r"));
    throw InvalidModel("unknown model '" + name + "'");
}

}  // namespace nnlaw
