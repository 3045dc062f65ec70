#include "nnlaw/limits.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nnlaw/density.hpp"
#include "nnlaw/errors.hpp"

namespace nnlaw {

namespace {

constexpr double kTailCut = 1e-13;

void check_gamma_argument(int d, int j, double alpha) {
    if (d < 1 || j < 1) throw std::invalid_argument("d and j must be >= 1");
    if (!(j + alpha / d > 0.0)) {
        throw InvalidGammaArgument("j + alpha/d must be positive (j=" + std::to_string(j) +
                                   ", alpha=" + std::to_string(alpha) + ", d=" + std::to_string(d) + ")");
    }
}

}  // namespace

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    switch (d) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
        default: return std::exp(0.5 * d * std::log(std::numbers::pi) - std::lgamma(1.0 + 0.5 * d));
    }
}

double gamma_constant(const LimitConstantSpec& spec) {
    check_gamma_argument(spec.d, spec.j, spec.alpha);
    if (spec.alpha == 0.0) return 1.0;
    const double shape = spec.j + spec.alpha / spec.d;
    return std::exp(-spec.alpha / spec.d * std::log(unit_ball_volume(spec.d)) + std::lgamma(shape) -
                    std::lgamma(static_cast<double>(spec.j)));
}

double poisson_nn_tail(double tau, int d, int j, double t) {
    if (!(tau > 0.0)) throw std::domain_error("Poisson intensity must be positive");
    if (d < 1 || j < 1) throw std::invalid_argument("d and j must be >= 1");
    if (t <= 0.0) return 1.0;
    const double mean_count = tau * unit_ball_volume(d) * std::pow(t, d);
    return boost::math::gamma_q(static_cast<double>(j), mean_count);
}

double poisson_nn_moment(double tau, int d, int j, double alpha) {
    if (!(tau > 0.0)) throw std::domain_error("Poisson intensity must be positive");
    check_gamma_argument(d, j, alpha);
    if (alpha == 0.0) return 1.0;
    return std::exp(-alpha / d * std::log(tau * unit_ball_volume(d)) + std::lgamma(j + alpha / d) -
                    std::lgamma(static_cast<double>(j)));
}

QuadResult poisson_nn_expectation(const RealFunction& phi, double tau, int d, int j, double tol) {
    if (!(tau > 0.0)) throw std::domain_error("Poisson intensity must be positive");
    if (d < 1 || j < 1) throw std::invalid_argument("d and j must be >= 1");
    const double jd = j;
    const double scale = 1.0 / (tau * unit_ball_volume(d));
    const double log_norm = std::lgamma(jd);
    const double inv_d = 1.0 / d;
    const auto distance = [&](double v) { return std::pow(v * scale, inv_d); };
    const auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        return phi(distance(v)) * std::exp((jd - 1.0) * std::log(v) - v - log_norm);
    };
    const double upper = boost::math::gamma_q_inv(jd, kTailCut);
    QuadResult res = integrate_finite(integrand, 0.0, upper, tol);
    // Neglected mass beyond `upper`, weighted by phi a little further out.
    res.error += kTailCut * std::abs(phi(distance(2.0 * upper)));
    return res;
}

double sample_poisson_nn_distance(double tau, int d, int j, double radius, std::mt19937_64& rng) {
    const double mean = tau * unit_ball_volume(d) * std::pow(radius, d);
    const auto count = std::poisson_distribution<long long>(mean)(rng);
    if (count < j) return radius;
    // Only the norms matter: the norm of a uniform point in the ball is radius * U^{1/d}.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> norms(static_cast<std::size_t>(count));
    for (double& r : norms) r = radius * std::pow(unif(rng), 1.0 / d);
    const auto kth = norms.begin() + (j - 1);
    std::nth_element(norms.begin(), kth, norms.end());
    return *kth;
}

QuadResult limit_functional(const RealFunction& phi, const DensityModel& density, int j, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const int d = density.dim();
    double inner_rel_error = 0.0;
    const auto inner = [&](double level) {
        const QuadResult e = poisson_nn_expectation(phi, level, d, j, 0.1 * tolerance);
        if (e.value != 0.0) inner_rel_error = std::max(inner_rel_error, e.error / std::abs(e.value));
        return e.value;
    };
    QuadResult out = density.integrate_density_functional(inner, 0.5 * tolerance);
    out.error += inner_rel_error * std::abs(out.value);
    if (!std::isfinite(out.value) || out.error > tolerance * std::max(std::abs(out.value), 1e-300)) {
        throw QuadratureBudgetExceeded("limit functional error estimate " + std::to_string(out.error) +
                                       " exceeds tolerance for value " + std::to_string(out.value));
    }
    return out;
}

EntropyValue entropy_from_integral(double rho, double i_rho) {
    if (!(rho > 0.0) || rho == 1.0 || !std::isfinite(rho)) throw InvalidRho("rho must be positive and different from 1");
    if (!(i_rho > 0.0)) throw std::domain_error("I_rho must be positive");
    return {rho, i_rho, (1.0 - i_rho) / (1.0 - rho), std::log(i_rho) / (1.0 - rho)};
}

}  // namespace nnlaw
