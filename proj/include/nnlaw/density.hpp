#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nnlaw/point_set.hpp"
#include "nnlaw/quadrature.hpp"

namespace nnlaw {

using Rng = std::mt19937_64;

/// Marker for divergent integrals and moments.
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

enum class ModelKind { UniformConvexUnion, GaussianStandard, PowerLawTail, AnnulusBallCounterexample };

/// Bounds on F(A_k) / F(A_{k-1}) valid for all k >= k0.
struct RegularityCertificate {
    int k0;
    double inf_ratio;
    double sup_ratio;
};

/// A probability density on R^d with exact sampling and the analytic
/// quantities the convergence theory is stated in.
///
/// Shells: A_0 is the ball of radius 2 about the origin and, for k >= 1,
/// A_k = {2^k <= |x| < 2^{k+1}}.
class DensityModel {
public:
    explicit DensityModel(int dim);
    virtual ~DensityModel() = default;

    int dim() const noexcept { return dim_; }

    virtual ModelKind kind() const = 0;
    virtual std::string name() const = 0;

    virtual double pdf(std::span<const double> x) const = 0;
    /// Writes one draw into `out` (length dim()).
    virtual void sample(Rng& rng, std::span<double> out) const = 0;

    /// I_rho(f) = integral of f^rho; kInfinite when the integral diverges.
    virtual double i_rho(double rho) const = 0;
    /// M_r(f) = E|X|^r; kInfinite when divergent.
    virtual double moment(double r) const = 0;
    /// sup{r >= 0 : M_r(f) < inf}, possibly kInfinite.
    virtual double critical_moment() const = 0;
    /// F(A_k).
    virtual double annulus_mass(int k) const = 0;

    virtual double pdf_sup() const = 0;
    /// Infimum of f over its support (0 when f is not bounded away from zero).
    virtual double pdf_inf_on_support() const = 0;
    virtual bool bounded_support() const = 0;
    virtual std::optional<RegularityCertificate> analytic_regularity() const { return std::nullopt; }

    /// Integral of g(f(x)) f(x) dx, using the model's own geometry
    /// (radial, piecewise constant, ...). `tol` is relative.
    virtual QuadResult integrate_density_functional(const RealFunction& g, double tol) const = 0;

    virtual nlohmann::json to_json() const = 0;

private:
    int dim_;
};

struct Box {
    std::vector<double> lo;
    std::vector<double> hi;
};

struct Ball {
    std::vector<double> center;
    double radius;
};

using Body = std::variant<Box, Ball>;

double body_volume(const Body& body);

/// Uniform density on a finite union of pairwise disjoint balls and
/// axis-aligned boxes.
class UniformConvexUnion final : public DensityModel {
public:
    explicit UniformConvexUnion(std::vector<Body> bodies);
    static UniformConvexUnion unit_cube(int d);

    const std::vector<Body>& bodies() const noexcept { return bodies_; }
    double total_volume() const noexcept { return volume_; }
    /// Volume of the union intersected with the closed ball of radius R about 0.
    double volume_within(double radius) const;

    ModelKind kind() const override { return ModelKind::UniformConvexUnion; }
    std::string name() const override { return "uniform_union"; }
    double pdf(std::span<const double> x) const override;
    void sample(Rng& rng, std::span<double> out) const override;
    double i_rho(double rho) const override;
    double moment(double r) const override;
    double critical_moment() const override { return kInfinite; }
    double annulus_mass(int k) const override;
    double pdf_sup() const override { return 1.0 / volume_; }
    double pdf_inf_on_support() const override { return 1.0 / volume_; }
    bool bounded_support() const override { return true; }
    QuadResult integrate_density_functional(const RealFunction& g, double tol) const override;
    nlohmann::json to_json() const override;

private:
    std::vector<Body> bodies_;
    std::vector<double> cumulative_;  // normalised cumulative body volumes
    double volume_;
};

/// Standard normal density on R^d.
class GaussianStandard final : public DensityModel {
public:
    explicit GaussianStandard(int d);

    ModelKind kind() const override { return ModelKind::GaussianStandard; }
    std::string name() const override { return "gaussian"; }
    double pdf(std::span<const double> x) const override;
    void sample(Rng& rng, std::span<double> out) const override;
    double i_rho(double rho) const override;
    double moment(double r) const override;
    double critical_moment() const override { return kInfinite; }
    double annulus_mass(int k) const override;
    double pdf_sup() const override;
    double pdf_inf_on_support() const override { return 0.0; }
    bool bounded_support() const override { return false; }
    QuadResult integrate_density_functional(const RealFunction& g, double tol) const override;
    nlohmann::json to_json() const override;
};

/// f(x) = c (1 + |x|)^{-beta} with beta > d, c = 1 / (d omega_d B(d, beta - d)).
class PowerLawTail final : public DensityModel {
public:
    PowerLawTail(int d, double beta);

    double beta() const noexcept { return beta_; }
    double normalizer() const noexcept { return c_; }
    /// P[|X| <= r].
    double radial_cdf(double r) const;
    /// Inverse of radial_cdf through the inverse incomplete Beta function.
    double radial_quantile(double p) const;

    ModelKind kind() const override { return ModelKind::PowerLawTail; }
    std::string name() const override { return "power_law"; }
    double pdf(std::span<const double> x) const override;
    void sample(Rng& rng, std::span<double> out) const override;
    double i_rho(double rho) const override;
    double moment(double r) const override;
    double critical_moment() const override { return beta_ - dim(); }
    double annulus_mass(int k) const override;
    double pdf_sup() const override { return c_; }
    double pdf_inf_on_support() const override { return 0.0; }
    bool bounded_support() const override { return false; }
    std::optional<RegularityCertificate> analytic_regularity() const override;
    QuadResult integrate_density_functional(const RealFunction& g, double tol) const override;
    nlohmann::json to_json() const override;

private:
    double beta_;
    double c_;
};

/// Piecewise constant density C 2^{-rk} on unit balls B_k centred at
/// (3 * 2^{k-1}, 0, ..., 0), k >= 2. B_k lies inside A_k, so F(A_k) = C omega_d 2^{-rk},
/// r_c(f) = r, and every I_rho is finite.
class AnnulusBallCounterexample final : public DensityModel {
public:
    AnnulusBallCounterexample(int d, double r);

    double decay_rate() const noexcept { return r_; }
    double normalizer() const noexcept { return c_; }
    static double center_offset(int k) { return 3.0 * std::ldexp(1.0, k - 1); }

    ModelKind kind() const override { return ModelKind::AnnulusBallCounterexample; }
    std::string name() const override { return "counterexample"; }
    double pdf(std::span<const double> x) const override;
    void sample(Rng& rng, std::span<double> out) const override;
    double i_rho(double rho) const override;
    double moment(double s) const override;
    double critical_moment() const override { return r_; }
    double annulus_mass(int k) const override;
    double pdf_sup() const override;
    double pdf_inf_on_support() const override { return 0.0; }
    bool bounded_support() const override { return false; }
    std::optional<RegularityCertificate> analytic_regularity() const override;
    QuadResult integrate_density_functional(const RealFunction& g, double tol) const override;
    nlohmann::json to_json() const override;

private:
    double r_;
    double c_;
};

PointSet sample_n(const DensityModel& model, std::size_t n, Rng& rng);
PointSet sample_n(const DensityModel& model, std::size_t n, std::uint64_t seed);

/// Validating front ends: rho > 0, r > 0.
double analytic_i_rho(const DensityModel& model, double rho);
double analytic_moment(const DensityModel& model, double r);

/// {"model": "uniform_union" | "gaussian" | "power_law" | "counterexample",
///  "d": int, "beta": ..., "r": ..., "bodies": [...]}.
std::unique_ptr<DensityModel> make_model(const nlohmann::json& spec);

}  // namespace nnlaw
