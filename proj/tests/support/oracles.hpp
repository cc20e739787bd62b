// Independent reference computations and random generators shared by the
// unit and acceptance tests. Nothing here calls into the library's numerics
// except where a test compares against it explicitly.
#ifndef SLROD_TESTS_ORACLES_HPP
#define SLROD_TESTS_ORACLES_HPP

#include "slrod/constitutive.hpp"

#include <cmath>
#include <functional>
#include <random>

namespace slrod::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng &rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng &rng, double lo, double hi) {
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline double random_sign(Rng &rng) { return uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0; }

// Uniform direction on the unit sphere of R^6.
inline Vec6 random_direction(Rng &rng) {
    std::normal_distribution<double> g;
    Vec6 x;
    for (int k = 0; k < 6; ++k) x[k] = g(rng);
    return x.normalized();
}

// Admissible parameters in the L = gamma = 1 gauge. p is drawn from
// {1, 2, 3, 4} half the time and from [0.5, 5] otherwise.
inline MaterialParams random_params(Rng &rng) {
    MaterialParams m;
    m.alpha = log_uniform(rng, 0.2, 5.0);
    m.beta = log_uniform(rng, 0.2, 5.0);
    m.zeta = log_uniform(rng, 0.2, 5.0);
    m.eta = log_uniform(rng, 0.2, 5.0);
    m.iota = uniform(rng, -0.95, 0.95) * m.beta * m.eta;
    m.p = uniform(rng, 0.0, 1.0) < 0.5 ? double(std::uniform_int_distribution<int>(1, 4)(rng))
                                       : uniform(rng, 0.5, 5.0);
    return m;
}

inline MaterialParams with_p(MaterialParams m, double p) {
    m.p = p;
    return m;
}

// Strain deviation with Q(x) = q exactly up to rounding.
inline Strains strains_with_Q(const Material &mat, const Vec6 &direction, double q) {
    const double base = quad_form(mat, direction);
    return Strains::from_deviation(std::sqrt(q / base) * direction);
}

// Loads with Q*(y) = qs.
inline Loads loads_with_Qstar(const Material &mat, const Vec6 &direction, double qs) {
    const Mat6 Ainv = strain_metric(mat).inverse();
    const double base = direction.dot(Ainv * direction);
    return Loads::from_stacked(std::sqrt(qs / base) * direction);
}

// Adaptive Simpson quadrature with Richardson correction.
inline double adaptive_simpson(const std::function<double(double)> &f, double a, double b, double tol,
                               int depth = 40) {
    std::function<double(double, double, double, double, double, double, double, int)> step =
        [&](double lo, double hi, double flo, double fmid, double fhi, double whole, double eps,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        const double delta = left + right - whole;
        const double floor = 1e-15 * std::abs(left + right);
        if (d <= 0 || std::abs(delta) <= 15.0 * std::max(eps, floor)) return left + right + delta / 15.0;
        return step(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) +
               step(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
    };
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return step(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// W = (gamma/2) int_0^Q (1 - t^{p/2})^{-1/p} dt with t = s^2, gamma = 1.
inline double stored_energy_oracle(double p, double Q) {
    auto g = [p](double s) { return 2.0 * s * std::pow(1.0 - std::pow(s, p), -1.0 / p); };
    return 0.5 * adaptive_simpson(g, 0.0, std::sqrt(Q), 1e-14);
}

// W* = (1/2) int_0^Q* (1 + t^{p/2})^{-1/p} dt with t = s^2, gamma = 1.
inline double complementary_energy_oracle(double p, double Qstar) {
    auto g = [p](double s) { return 2.0 * s * std::pow(1.0 + std::pow(s, p), -1.0 / p); };
    return 0.5 * adaptive_simpson(g, 0.0, std::sqrt(Qstar), 1e-14);
}

// Central difference gradient of a scalar function of six variables.
inline Vec6 fd_gradient(const std::function<double(const Vec6 &)> &f, const Vec6 &x, double h) {
    Vec6 g;
    for (int k = 0; k < 6; ++k) {
        Vec6 xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        g[k] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

// Central difference Jacobian, column k = d map / d x_k.
inline Mat6 fd_jacobian(const std::function<Vec6(const Vec6 &)> &map, const Vec6 &x, double h) {
    Mat6 J;
    for (int k = 0; k < 6; ++k) {
        Vec6 xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        J.col(k) = (map(xp) - map(xm)) / (2.0 * h);
    }
    return J;
}

inline double rel_error(const Vec6 &a, const Vec6 &b) { return (a - b).norm() / b.norm(); }

// Radius of the circle through three points of the plane.
inline double circumradius(double ax, double ay, double bx, double by, double cx, double cy) {
    const double ab = std::hypot(ax - bx, ay - by);
    const double bc = std::hypot(bx - cx, by - cy);
    const double ca = std::hypot(cx - ax, cy - ay);
    const double twice_area = std::abs((bx - ax) * (cy - ay) - (cx - ax) * (by - ay));
    return ab * bc * ca / (2.0 * twice_area);
}

} // namespace slrod::testing

#endif // SLROD_TESTS_ORACLES_HPP
