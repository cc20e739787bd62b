////////////////////////////////////////////////////////////////////////////////
// kinematics.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Director frames, Euler-angle charts, sampled rod configurations and the
//  reduced (Euler-angle) form of the moment balance under an end thrust N g3.
//
//  Euler angles (phi, theta, psi):
//      d3 = sin(theta) (cos(phi) g1 + sin(phi) g2) + cos(theta) g3
//      e2 = -sin(phi) g1 + cos(phi) g2,   e1 = e2 x d3
//      d1 = cos(psi) e1 + sin(psi) e2,    d2 = -sin(psi) e1 + cos(psi) e2
//  At theta in {0, pi} only phi + psi (resp. psi - phi) is determined; callers
//  use phi = 0 there.
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SLROD_KINEMATICS_HPP
#define SLROD_KINEMATICS_HPP

#include "constitutive.hpp"

#include <array>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace slrod {

struct EulerAngles {
    double phi   = 0.0;
    double theta = 0.0;
    double psi   = 0.0;
};

// Right-handed orthonormal director triad expressed in the fixed basis {g_k}.
struct Frame {
    Vec3 d1 = Vec3::UnitX();
    Vec3 d2 = Vec3::UnitY();
    Vec3 d3 = Vec3::UnitZ();

    static Frame identity() { return {}; }

    const Vec3 &operator[](int k) const { return k == 0 ? d1 : (k == 1 ? d2 : d3); }

    // Columns d1, d2, d3.
    Mat3 matrix() const;
    // (w . d1, w . d2, w . d3)
    Vec3 components(const Vec3 &w) const { return matrix().transpose() * w; }
    // c1 d1 + c2 d2 + c3 d3
    Vec3 from_components(const Vec3 &c) const { return matrix() * c; }

    // |d_i . d_j - delta_ij| <= tol and d1 x d2 = d3 to tol.
    bool is_orthonormal(double tol = 1e-10) const;
};

struct NonOrthonormalFrame : std::domain_error {
    explicit NonOrthonormalFrame(std::size_t sample);
};

struct ConfigurationSample {
    double s = 0.0;
    Vec3 r = Vec3::Zero();
    Frame frame;
};

// Centerline and directors sampled on a uniform grid of [0, 1].
class Configuration {
public:
    // Requires at least three samples, s_0 = 0, s_end = 1 and uniform spacing.
    explicit Configuration(std::vector<ConfigurationSample> samples);

    const std::vector<ConfigurationSample> &samples() const noexcept { return m_samples; }
    std::size_t size() const noexcept { return m_samples.size(); }
    double spacing() const noexcept { return m_h; }
    const ConfigurationSample &operator[](std::size_t i) const { return m_samples[i]; }

private:
    std::vector<ConfigurationSample> m_samples;
    double m_h;
};

// Number of grid intervals used for a requested spacing h in (0, 0.1]; the
// realized spacing is 1 / intervals.
std::size_t grid_intervals(double h);

// Couple and force components in the {e_k} basis of the Euler chart, for a
// rod carrying the end thrust n = N g3.
struct FrameLoads {
    Vec3 M = Vec3::Zero();
    Vec3 N = Vec3::Zero();
    double thrust = 0.0;
};

struct ShearFactors {
    double u_factor; // u_mu = u_factor * m_mu
    double v_factor; // v_mu = v_factor * n_mu
};

using ReducedResidual = std::array<double, 6>;

Frame directors_from_euler(const EulerAngles &angles);

// Euler angles of a frame, with phi = 0 where theta is 0 or pi.
EulerAngles euler_from_directors(const Frame &frame);

// Darboux vector components (u . d_k) at every sample, from
// u = 1/2 sum_k d_k x d_k' with second-order differences.
std::vector<Vec3> darboux(const Configuration &config);

// Full strain field (u_k, v_k = r' . d_k) recovered from a sampled configuration.
std::vector<Strains> sampled_strains(const Configuration &config);

// u from the angle rates; v passed through.
Strains strains_from_euler(const EulerAngles &angles, const EulerAngles &rates, const Vec3 &v);

// M_k in the {e_k} basis from the director components m_k, and the thrust
// N g3 as (-N sin theta, 0, N cos theta).
FrameLoads frame_loads(const Loads &loads, const EulerAngles &angles, double thrust);

// Director-frame loads corresponding to frame loads at the given angles.
Loads director_loads(const FrameLoads &loads, const EulerAngles &angles);

ShearFactors shear_factors(const Material &mat, const Loads &loads);

// Residuals of the six first-order equations in (phi, theta, psi, M1, M2, M3):
//   sin(theta) phi' + u M1
//   theta' + u M2
//   psi' + cos(theta) phi' - u3
//   M1' - M2 cos(theta) phi' + theta' M3
//   M2' + (M1 cos(theta) + M3 sin(theta)) phi' - N v3 sin(theta) + N^2 v cos(theta) sin(theta)
//   M3'
// with u, v, u3, v3 from the constitutive relations at the given loads.
ReducedResidual reduced_residual(const Material &mat, const EulerAngles &angles,
                                 const EulerAngles &angle_rates, const FrameLoads &loads,
                                 const Vec3 &couple_rates);

using StrainField = std::function<Strains(double)>;

// Integrates d_k' = u x d_k, r' = v_k d_k over [0, 1] with classical RK4 and
// re-orthonormalizes the frame after each step.
Configuration reconstruct(const StrainField &field, const Vec3 &r0, const Frame &frame0, double h);

// CSV with header s,rx,ry,rz,d1x,...,d3z and 17 significant digits.
void write_configuration_csv(std::ostream &os, const Configuration &config);

struct CsvFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Configuration read_configuration_csv(std::istream &is);

} // namespace slrod

#endif // SLROD_KINEMATICS_HPP
