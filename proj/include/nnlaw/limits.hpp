#pragma once

#include <random>

#include "nnlaw/quadrature.hpp"

namespace nnlaw {

class DensityModel;

/// Volume of the unit Euclidean ball in R^d.
double unit_ball_volume(int d);

/// Parameters of the limit constant; requires j + alpha/d > 0.
struct LimitConstantSpec {
    int d;
    int j;
    double alpha;
};

/// omega_d^{-alpha/d} Gamma(j + alpha/d) / Gamma(j): the factor in front of
/// I_{1-alpha/d}(f) in the limit of n^{-1} S_{n,alpha}. Equal to
/// E[D_j(0, P_1)^alpha]. Throws InvalidGammaArgument when j + alpha/d <= 0.
double gamma_constant(const LimitConstantSpec& spec);

/// P[D_j(0, P_tau) > t] for a homogeneous Poisson process of intensity tau:
/// the probability that the ball of radius t holds fewer than j points.
double poisson_nn_tail(double tau, int d, int j, double t);

/// E[D_j(0, P_tau)^alpha] = (tau omega_d)^{-alpha/d} Gamma(j + alpha/d) / Gamma(j).
double poisson_nn_moment(double tau, int d, int j, double alpha);

/// E[phi(D_j(0, P_tau))] by quadrature. The volume tau*omega_d*D^d of the
/// neighbour ball is Gamma(j, 1) distributed; the integral runs over that
/// variable up to the point where the remaining mass is below 1e-13.
QuadResult poisson_nn_expectation(const RealFunction& phi, double tau, int d, int j, double tol);

/// One draw of D_j(0, P_tau): Poisson points in the ball of radius `radius`,
/// returning the j-th smallest norm, or `radius` when fewer than j points
/// land inside (pick radius so that this is negligible).
double sample_poisson_nn_distance(double tau, int d, int j, double radius, std::mt19937_64& rng);

/// The limit of n^{-1} S_{n,phi}: integral of E[phi(D_j(0, P_{f(x)}))] f(x) dx.
/// `tolerance` is relative; throws QuadratureBudgetExceeded when the error
/// estimate is larger than tolerance * |value|.
QuadResult limit_functional(const RealFunction& phi, const DensityModel& density, int j, double tolerance = 1e-6);

struct EntropyValue {
    double rho;
    double i_rho;
    double tsallis;  // (1 - I) / (1 - rho)
    double renyi;    // log(I) / (1 - rho)
};

/// Throws InvalidRho for rho <= 0 or rho == 1.
EntropyValue entropy_from_integral(double rho, double i_rho);

}  // namespace nnlaw
