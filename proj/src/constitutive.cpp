#include "slrod/constitutive.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace slrod {

Vec6 Strains::deviation() const {
    Vec6 x;
    x << u, v - Vec3::UnitZ();
    return x;
}

Strains Strains::from_deviation(const Vec6 &x) {
    Strains s;
    s.u = x.head<3>();
    s.v = x.tail<3>() + Vec3::UnitZ();
    return s;
}

std::array<double, 6> Strains::as_array() const { return {u[0], u[1], u[2], v[0], v[1], v[2]}; }

Strains Strains::from_array(const std::array<double, 6> &a) {
    Strains s;
    s.u = Vec3(a[0], a[1], a[2]);
    s.v = Vec3(a[3], a[4], a[5]);
    return s;
}

Vec6 Loads::stacked() const {
    Vec6 y;
    y << m, n;
    return y;
}

Loads Loads::from_stacked(const Vec6 &y) { return {y.head<3>(), y.tail<3>()}; }

std::array<double, 6> Loads::as_array() const { return {m[0], m[1], m[2], n[0], n[1], n[2]}; }

Loads Loads::from_array(const std::array<double, 6> &a) {
    return {Vec3(a[0], a[1], a[2]), Vec3(a[3], a[4], a[5])};
}

StrainOutOfRange::StrainOutOfRange(double Q)
    : std::domain_error("StrainOutOfRange: Q(u, v) = " + std::to_string(Q) + " must be < 1") {}

Mat6 strain_metric(const Material &mat) {
    const double a2 = mat.alpha() * mat.alpha();
    const double b2 = mat.beta() * mat.beta();
    const double z2 = mat.zeta() * mat.zeta();
    const double e2 = mat.eta() * mat.eta();
    Mat6 A = Mat6::Zero();
    A.diagonal() << a2, a2, b2, z2, z2, e2;
    A(2, 5) = A(5, 2) = mat.iota();
    return A;
}

double quad_form(const Material &mat, const Vec6 &x) {
    const double a2 = mat.alpha() * mat.alpha();
    const double b2 = mat.beta() * mat.beta();
    const double z2 = mat.zeta() * mat.zeta();
    const double e2 = mat.eta() * mat.eta();
    return a2 * (x[0] * x[0] + x[1] * x[1]) + b2 * x[2] * x[2] + z2 * (x[3] * x[3] + x[4] * x[4]) +
           e2 * x[5] * x[5] + 2.0 * mat.iota() * x[2] * x[5];
}

double quad_form_Q(const Material &mat, const Strains &strains) {
    return quad_form(mat, strains.deviation());
}

double quad_form_Qstar(const Material &mat, const Loads &loads) {
    const double a2 = mat.alpha() * mat.alpha();
    const double b2 = mat.beta() * mat.beta();
    const double z2 = mat.zeta() * mat.zeta();
    const double e2 = mat.eta() * mat.eta();
    const double det = mat.coupling_det();
    const Vec3 &m = loads.m;
    const Vec3 &n = loads.n;
    return (m[0] * m[0] + m[1] * m[1]) / a2 + (n[0] * n[0] + n[1] * n[1]) / z2 +
           (e2 * m[2] * m[2] + b2 * n[2] * n[2] - 2.0 * mat.iota() * m[2] * n[2]) / det;
}

double compliance_factor(const Material &mat, double Qstar) {
    const double p = mat.p();
    if (Qstar <= 0.0) return 1.0 / mat.gamma();
    // log(gamma^p + Qstar^{p/2}) as a log-sum-exp.
    const double a = p * std::log(mat.gamma());
    const double b = 0.5 * p * std::log(Qstar);
    const double hi = std::max(a, b);
    const double lse = hi + std::log1p(std::exp(-std::abs(a - b)));
    return std::exp(-lse / p);
}

double saturation_gap(const Material &mat, double Q) {
    if (Q <= 0.0) return 1.0;
    return -std::expm1(0.5 * mat.p() * std::log(Q));
}

StrainBounds strain_bounds(const Material &mat) {
    const double root = std::sqrt(mat.coupling_det());
    return {1.0 / mat.alpha(), mat.eta() / root, 1.0 / mat.zeta(), mat.beta() / root};
}

StrainMagnitudes strain_magnitudes(const Strains &s) {
    return {std::hypot(s.u[0], s.u[1]), std::abs(s.u[2]), std::hypot(s.v[0], s.v[1]),
            std::abs(s.v[2] - 1.0)};
}

bool strictly_admissible(const Material &mat, const Strains &strains) {
    const StrainBounds b = strain_bounds(mat);
    const StrainMagnitudes g = strain_magnitudes(strains);
    return quad_form_Q(mat, strains) < 1.0 && g.flexure < b.flexure && g.twist < b.twist &&
           g.shear < b.shear && g.dilatation < b.dilatation;
}

Strains strains_from_loads(const Material &mat, const Loads &loads) {
    const double F = compliance_factor(mat, quad_form_Qstar(mat, loads));
    const double a2 = mat.alpha() * mat.alpha();
    const double b2 = mat.beta() * mat.beta();
    const double z2 = mat.zeta() * mat.zeta();
    const double e2 = mat.eta() * mat.eta();
    const double det = mat.coupling_det();
    const double iota = mat.iota();
    const Vec3 &m = loads.m;
    const Vec3 &n = loads.n;

    Vec6 x;
    x << F * m[0] / a2, F * m[1] / a2, F * (e2 * m[2] - iota * n[2]) / det,
         F * n[0] / z2, F * n[1] / z2, F * (-iota * m[2] + b2 * n[2]) / det;

    Strains out = Strains::from_deviation(x);

    // Saturated loads put the exact image within an ulp or two of the limiting
    // surface Q = 1, where rounding can land on or outside it. Contract the
    // deviation by a few ulps until the strict bounds hold for the stored values.
    double shrink = 4.0 * std::numeric_limits<double>::epsilon();
    for (int k = 0; k < 60 && !strictly_admissible(mat, out); ++k, shrink *= 2.0)
        out = Strains::from_deviation((1.0 - shrink) * x);
    return out;
}

Loads loads_from_strains(const Material &mat, const Strains &strains) {
    const Vec6 x = strains.deviation();
    const double Q = quad_form(mat, x);
    if (!(Q < 1.0)) throw StrainOutOfRange(Q);
    const double G = mat.gamma() * std::exp(-std::log(saturation_gap(mat, Q)) / mat.p());
    return Loads::from_stacked(G * (strain_metric(mat) * x));
}

HessianMatrix hessian(const Material &mat, const Strains &strains) {
    const Vec6 x = strains.deviation();
    const double Q = quad_form(mat, x);
    if (!(Q < 1.0)) throw StrainOutOfRange(Q);
    const Mat6 A = strain_metric(mat);
    if (Q == 0.0) return mat.gamma() * A;

    const double p = mat.p();
    const double gap = saturation_gap(mat, Q);
    const double prefactor = mat.gamma() * std::pow(gap, -1.0 / p - 1.0);
    // Q^{p/2-1} (Ax)(Ax)^T as an outer product of Q^{p/4-1/2} Ax, finite as Q -> 0.
    const Vec6 w = std::pow(Q, 0.25 * p - 0.5) * (A * x);
    return prefactor * (gap * A + w * w.transpose());
}

Strains symmetry_transform(const SymmetryAction &action, const Strains &strains) {
    Strains out = strains;
    switch (action.kind) {
    case SymmetryKind::Rotation: {
        const double c = std::cos(action.angle), s = std::sin(action.angle);
        Mat3 R;
        R << c, s, 0, -s, c, 0, 0, 0, 1;
        out.u = R * strains.u;
        out.v = R * strains.v;
        break;
    }
    case SymmetryKind::Flip:
        out.u[1] = -strains.u[1];
        out.v[1] = -strains.v[1];
        break;
    case SymmetryKind::FlipReflect:
        out.u[1] = -strains.u[1];
        out.v[0] = -strains.v[0];
        out.v[2] = 1.0 - (strains.v[2] - 1.0);
        break;
    }
    return out;
}

} // namespace slrod
