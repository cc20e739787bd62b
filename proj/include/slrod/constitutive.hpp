////////////////////////////////////////////////////////////////////////////////
// constitutive.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Strain-limiting constitutive relations between the geometrically exact
//  strains (u, v) and the director components of the contact couple and force
//  (m, n).
//
//  Q(u, v) is the positive definite quadratic form in the strain deviation
//  x = (u1, u2, u3, v1, v2, v3 - 1):
//      Q = alpha^2 (u1^2 + u2^2) + beta^2 u3^2 + zeta^2 (v1^2 + v2^2)
//        + eta^2 (v3 - 1)^2 + 2 iota u3 (v3 - 1) = x^T A x,
//  and Q*(m, n) = y^T A^{-1} y is its dual on y = (m, n).
//
//  Forward map:  x = (gamma^p + Q*^{p/2})^{-1/p} A^{-1} y,   Q(x) < 1.
//  Inverse map:  y = gamma (1 - Q^{p/2})^{-1/p} A x,         for Q(x) < 1.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SLROD_CONSTITUTIVE_HPP
#define SLROD_CONSTITUTIVE_HPP

#include "material.hpp"

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

namespace slrod {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Flexural/torsional strains u (Darboux components) and tangent components v.
// The reference (unstrained) state is u = 0, v = (0, 0, 1).
struct Strains {
    Vec3 u = Vec3::Zero();
    Vec3 v = Vec3::UnitZ();

    static Strains reference() { return {}; }

    // (u1, u2, u3, v1, v2, v3 - 1)
    Vec6 deviation() const;
    static Strains from_deviation(const Vec6 &x);

    // (u1, u2, u3, v1, v2, v3), the serialized field order.
    std::array<double, 6> as_array() const;
    static Strains from_array(const std::array<double, 6> &a);
};

// Director components of the contact couple m and contact force n.
struct Loads {
    Vec3 m = Vec3::Zero();
    Vec3 n = Vec3::Zero();

    Vec6 stacked() const;
    static Loads from_stacked(const Vec6 &y);

    // (m1, m2, m3, n1, n2, n3)
    std::array<double, 6> as_array() const;
    static Loads from_array(const std::array<double, 6> &a);
};

// D^2 W, ordered (u1, u2, u3, v1, v2, v3).
using HessianMatrix = Mat6;

struct StrainOutOfRange : std::domain_error {
    explicit StrainOutOfRange(double Q);
};

// Open upper bounds implied by Q < 1.
struct StrainBounds {
    double flexure;    // on (u1^2 + u2^2)^{1/2}
    double twist;      // on |u3|
    double shear;      // on (v1^2 + v2^2)^{1/2}
    double dilatation; // on |v3 - 1|
};

// The quantities bounded by StrainBounds, in the same order.
struct StrainMagnitudes {
    double flexure, twist, shear, dilatation;
};

// The constant 6x6 matrix A with Q(x) = x^T A x.
Mat6 strain_metric(const Material &mat);

// Quadratic form on an arbitrary deviation vector (no shift of v3).
double quad_form(const Material &mat, const Vec6 &x);

double quad_form_Q(const Material &mat, const Strains &strains);
double quad_form_Qstar(const Material &mat, const Loads &loads);

// F = (gamma^p + Q*^{p/2})^{-1/p}, evaluated in log space so that it stays
// finite and accurate for arbitrarily large Q*.
double compliance_factor(const Material &mat, double Qstar);

// 1 - Q^{p/2} computed without cancellation for small Q.
double saturation_gap(const Material &mat, double Q);

Strains strains_from_loads(const Material &mat, const Loads &loads);
Loads   loads_from_strains(const Material &mat, const Strains &strains);

double stored_energy(const Material &mat, const Strains &strains);
double complementary_energy(const Material &mat, const Loads &loads);

HessianMatrix hessian(const Material &mat, const Strains &strains);

StrainBounds strain_bounds(const Material &mat);
StrainMagnitudes strain_magnitudes(const Strains &strains);

// Q < 1 and each StrainBounds inequality holds strictly.
bool strictly_admissible(const Material &mat, const Strains &strains);

////////////////////////////////////////////////////////////////////////////////
// Transverse symmetry group actions.
//  Rotation(psi):  (u, v) -> (R_psi u, R_psi v)
//  Flip:           (u, v) -> (E u, E v)
//  FlipReflect:    (u, v - e3) -> (E u, -E (v - e3))
// with E = diag(1, -1, 1) and R_psi = [[c, s, 0], [-s, c, 0], [0, 0, 1]].
// FlipReflect acts on the deviation of v from the reference tangent so that it
// fixes the reference state.
////////////////////////////////////////////////////////////////////////////////
enum class SymmetryKind { Rotation, Flip, FlipReflect };

struct SymmetryAction {
    SymmetryKind kind = SymmetryKind::Rotation;
    double angle = 0.0;

    static SymmetryAction rotation(double psi) { return {SymmetryKind::Rotation, psi}; }
    static SymmetryAction flip() { return {SymmetryKind::Flip, 0.0}; }
    static SymmetryAction flip_reflect() { return {SymmetryKind::FlipReflect, 0.0}; }
};

Strains symmetry_transform(const SymmetryAction &action, const Strains &strains);

namespace detail {
// Quadrature evaluations of the energy integrals, bypassing the p = 2 closed
// forms. Exposed for testing.
double stored_energy_quadrature(const Material &mat, double Q);
double complementary_energy_quadrature(const Material &mat, double Qstar);
} // namespace detail

} // namespace slrod

#endif // SLROD_CONSTITUTIVE_HPP
