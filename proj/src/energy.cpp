// Stored and complementary energy densities.
//
//   W(u, v)  = (gamma/2) int_0^Q  (1 - t^{p/2})^{-1/p} dt
//   W*(m, n) = (1/2)     int_0^Q* (gamma^p + t^{p/2})^{-1/p} dt
//
// p = 2 has elementary antiderivatives; other exponents go through tanh-sinh
// quadrature. Once Q^{p/2} > 1/2 the W integral is taken in the variable
// tau = log(1 - t^{p/2}):
//   W = (gamma/p) int_{log(1 - Q^{p/2})}^0 e^{(1-1/p) tau} (1 - e^tau)^{2/p-1} dtau,
// which stays smooth as Q approaches 1 where the original integrand blows up.

#include "slrod/constitutive.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace slrod {

namespace {

constexpr double kQuadratureTolerance = 1e-15;

boost::math::quadrature::tanh_sinh<double> &integrator() {
    static boost::math::quadrature::tanh_sinh<double> instance(18);
    return instance;
}

} // namespace

namespace detail {

double stored_energy_quadrature(const Material &mat, double Q) {
    if (Q <= 0.0) return 0.0;
    if (!(Q < 1.0)) throw StrainOutOfRange(Q);
    const double p = mat.p();
    const double gap = saturation_gap(mat, Q);
    if (gap >= 0.5) {
        auto integrand = [p](double t) { return std::exp(-std::log(-std::expm1(0.5 * p * std::log(t))) / p); };
        return 0.5 * mat.gamma() * integrator().integrate(integrand, 0.0, Q, kQuadratureTolerance);
    }
    // The second argument is the distance to the nearer endpoint, which keeps
    // 1 - e^tau accurate next to tau = 0.
    auto integrand = [p](double tau, double complement) {
        const double depth = complement > 0.0 ? complement : -tau;
        return std::exp((1.0 - 1.0 / p) * tau) * std::pow(-std::expm1(-depth), 2.0 / p - 1.0);
    };
    return mat.gamma() / p * integrator().integrate(integrand, std::log(gap), 0.0, kQuadratureTolerance);
}

double complementary_energy_quadrature(const Material &mat, double Qstar) {
    if (Qstar <= 0.0) return 0.0;
    const double p = mat.p();
    const double log_gp = p * std::log(mat.gamma());
    auto integrand = [p, log_gp](double t) {
        const double a = log_gp, b = 0.5 * p * std::log(t);
        const double lse = std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
        return std::exp(-lse / p);
    };
    return 0.5 * integrator().integrate(integrand, 0.0, Qstar, kQuadratureTolerance);
}

} // namespace detail

double stored_energy(const Material &mat, const Strains &strains) {
    const double Q = quad_form_Q(mat, strains);
    if (!(Q < 1.0)) throw StrainOutOfRange(Q);
    if (mat.p() == 2.0) return mat.gamma() * Q / (1.0 + std::sqrt(1.0 - Q));
    return detail::stored_energy_quadrature(mat, Q);
}

double complementary_energy(const Material &mat, const Loads &loads) {
    const double Qstar = quad_form_Qstar(mat, loads);
    if (mat.p() == 2.0) {
        const double g = mat.gamma();
        return Qstar / (std::sqrt(g * g + Qstar) + g);
    }
    return detail::complementary_energy_quadrature(mat, Qstar);
}

} // namespace slrod
