#include "nnlaw/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace nnlaw {

QuadResult integrate_finite(const RealFunction& f, double a, double b, double tol) {
    if (a == b) return {};
    static boost::math::quadrature::tanh_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(f, a, b, tol, &error, &l1);
    return {value, error};
}

QuadResult integrate_half_line(const RealFunction& f, double a, double tol) {
    static boost::math::quadrature::exp_sinh<double> integrator;
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate([&](double t) { return f(a + t); }, 0.0,
                                              std::numeric_limits<double>::infinity(), tol, &error, &l1);
    return {value, error};
}

QuadResult integrate_kronrod(const RealFunction& f, double a, double b, double tol, unsigned max_depth) {
    if (a == b) return {};
    double error = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &error);
    return {value, error};
}

}  // namespace nnlaw
