////////////////////////////////////////////////////////////////////////////////
// equilibrium.hpp
////////////////////////////////////////////////////////////////////////////////
/*! @file
//  Explicit equilibrium families of the strain-limiting rod with no body
//  loads:
//    - straight tensile branch under an end thrust N g3 (theta = 0),
//    - sheared tensile branch bifurcating from it at N_thresh,
//    - pure twist under an isolated couple M3 d3 (Poynting effect when
//      -iota M3 > 0),
//    - helices under M2 = 0, M1 != 0, M3 = -M1 cot(theta),
//    - pure bending circles (the helix with theta = pi/2),
//  plus the threshold/angle computations for the shearing bifurcation and a
//  finite-difference check of the balance laws n' + f = 0,
//  m' + r' x n + l = 0 on sampled configurations.
//
//  All families have Euler angles affine in s (phi = phi' s, theta constant,
//  psi = psi0 + psi' s) and strains of the form
//      u = (a cos psi, -a sin psi, u3),  v = (-b cos psi, b sin psi, v3)
//  with constants a (flexure amplitude) and b (shear amplitude).
*/
////////////////////////////////////////////////////////////////////////////////
#ifndef SLROD_EQUILIBRIUM_HPP
#define SLROD_EQUILIBRIUM_HPP

#include "kinematics.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slrod {

////////////////////////////////////////////////////////////////////////////////
// Shearing bifurcation
////////////////////////////////////////////////////////////////////////////////
enum class BifurcationCondition {
    ModuliOrdering,     // eta^2 > zeta^2 + iota^2 / beta^2
    LimitExceedsBranch, // sheared-branch dilatation below its thrust limit
};

std::string describe(BifurcationCondition condition);

struct NoBifurcation : std::domain_error {
    explicit NoBifurcation(BifurcationCondition failed);
    BifurcationCondition failed;
};

struct BelowThreshold : std::domain_error {
    BelowThreshold(double thrust, double threshold);
};

struct DegenerateCouple : std::invalid_argument {
    DegenerateCouple();
};

struct ShearThreshold {
    std::optional<double> value;                 // N_thresh when both conditions hold
    std::optional<BifurcationCondition> failed;  // first condition that fails otherwise

    explicit operator bool() const { return value.has_value(); }
};

ShearThreshold shear_threshold(const Material &mat);

// (beta^2 eta^2 - iota^2) / (beta^2 zeta^2) - 1; the sheared branch has
// v3 - 1 = 1 / shear_branch_modulus.
double shear_branch_modulus(const Material &mat);

// f_N(x) = [N^{-p} + ((1 - x^2)/zeta^2 + beta^2 x^2/det)^{p/2}]^{-1/p} beta^2 x / det,
// the dilatation v3 - 1 on a state with cos(theta) = x under thrust N > 0.
double shear_branch_function(const Material &mat, double thrust, double x);
double shear_branch_slope(const Material &mat, double thrust, double x);

// Unique theta in (0, pi/2) with f_N(cos theta) = 1 / shear_branch_modulus,
// found by bisection on cos(theta).
double sheared_angle(const Material &mat, double thrust);

// p = 2 closed form of the same root.
double sheared_angle_closed_form(const Material &mat, double thrust);

// Limit of sheared_angle as N -> infinity.
double theta_infinity(const Material &mat);

// Relative defect of
//   (1 + Q*^{p/2})^{-1/p} = det / (beta^2 N cos(theta)) / shear_branch_modulus
// at a point of the sheared branch.
double bifurcation_identity_defect(const Material &mat, double thrust, double theta);

////////////////////////////////////////////////////////////////////////////////
// Limiting strains
////////////////////////////////////////////////////////////////////////////////
struct LimitingStrains {
    double u3_plus, u3_minus;                 // as the load -> +inf / -inf
    double dilatation_plus, dilatation_minus; // v3 - 1 likewise
};

// Trivial tensile branch, N -> +-inf.
LimitingStrains limiting_strains_thrust(const Material &mat);
// Pure twist, M3 -> +-inf.
LimitingStrains limiting_strains_twist(const Material &mat);

////////////////////////////////////////////////////////////////////////////////
// Equilibrium states
////////////////////////////////////////////////////////////////////////////////
enum class StateFamily { TrivialTensile, ShearedTensile, PureTwist, Helical, PureBending };

std::string to_string(StateFamily family);

struct StateDescriptor {
    StateFamily family = StateFamily::TrivialTensile;
    double thrust = 0.0;          // N
    double twisting_couple = 0.0; // M3
    double bending_couple = 0.0;  // M1
    double theta = 0.0;
    double phi0 = 0.0;
    double psi0 = 0.0;
    double phi_rate = 0.0;
    double psi_rate = 0.0;
    double u3 = 0.0;
    double v3 = 1.0;
    double flexure_amplitude = 0.0;
    double shear_amplitude = 0.0;
    std::optional<double> helix_radius; // |v3| sin(theta) / |phi'|
    std::optional<double> helix_pitch;  // v3 cos(theta), axial rise per unit s
};

class EquilibriumState {
public:
    EquilibriumState(StateDescriptor descriptor, double h);

    const StateDescriptor &descriptor() const noexcept { return m_desc; }
    const Configuration &configuration() const noexcept { return m_config; }
    // Director components of the contact loads at each sample.
    const std::vector<Loads> &loads_field() const noexcept { return m_loads; }

    EulerAngles angles_at(double s) const;
    EulerAngles angle_rates() const;
    FrameLoads frame_loads() const;
    Strains strains_at(double s) const;
    Loads loads_at(double s) const;
    Frame frame_at(double s) const;
    Vec3 position_at(double s) const;

    double spacing() const noexcept { return m_config.spacing(); }

private:
    StateDescriptor m_desc;
    Configuration m_config;
    std::vector<Loads> m_loads;
};

EquilibriumState trivial_tensile_state(const Material &mat, double thrust, double psi0 = 0.0,
                                       double h = 1e-3);

// N > N_thresh; N < -N_thresh is handled by reflection, theta -> pi - theta.
EquilibriumState sheared_tensile_state(const Material &mat, double thrust, double psi0 = 0.0,
                                       double h = 1e-3);

EquilibriumState pure_twist_state(const Material &mat, double twisting_couple, double theta = 0.0,
                                  double psi0 = 0.0, double h = 1e-3);

// theta in (0, pi/2]; throws DegenerateCouple for M1 = 0.
EquilibriumState helical_state(const Material &mat, double bending_couple, double theta,
                               double psi0 = 0.0, double h = 1e-3);

// helical_state with theta = pi/2.
EquilibriumState pure_bending_state(const Material &mat, double bending_couple, double psi0 = 0.0,
                                    double h = 1e-3);

////////////////////////////////////////////////////////////////////////////////
// Tensile branch sweeps
////////////////////////////////////////////////////////////////////////////////
enum class Branch { Trivial, Sheared };

std::string to_string(Branch branch);

// Strains and loads are taken at s = 0 with psi(0) = 0.
struct BranchPoint {
    double thrust;
    double theta;
    Strains strains;
    Loads loads;
    Branch branch;
    double shear_amplitude;
};

BranchPoint trivial_branch_point(const Material &mat, double thrust);
BranchPoint sheared_branch_point(const Material &mat, double thrust);

// count >= 2 evenly spaced thrusts in [N_min, N_max]; a trivial point for
// every thrust and a sheared point for every thrust above N_thresh, ordered
// by (N, branch).
std::vector<BranchPoint> branch_sweep(const Material &mat, double n_min, double n_max,
                                      std::size_t count);

// Header N,theta,u3,v3,v_shear_amplitude,branch; a leading
// "# no bifurcation: ..." line when the material has no sheared branch.
void write_branch_csv(std::ostream &os, const Material &mat, const std::vector<BranchPoint> &points);

////////////////////////////////////////////////////////////////////////////////
// Balance check
////////////////////////////////////////////////////////////////////////////////
using VectorField = std::function<Vec3(double)>;

struct BalanceReport {
    double force_residual;  // max_i |n'(s_i) + f(s_i)|
    double moment_residual; // max_i |m'(s_i) + r'(s_i) x n(s_i) + l(s_i)|
    double spacing;
    double max_load;        // max_i max(|m(s_i)|, |n(s_i)|)
};

// Loads are recovered from the sampled configuration through the recovered
// strains and the inverse constitutive map; derivatives are central
// differences at samples at least two steps from either end. Throws
// StrainOutOfRange if a recovered strain leaves Q < 1.
BalanceReport check_balance(const Material &mat, const Configuration &config,
                            const VectorField &body_force = {},
                            const VectorField &body_couple = {});

inline BalanceReport check_balance(const Material &mat, const EquilibriumState &state) {
    return check_balance(mat, state.configuration());
}

// Flat JSON object echoing the descriptor, the grid spacing and the strains at
// s = 0, with 17 significant digits.
void write_descriptor_json(std::ostream &os, const StateDescriptor &descriptor, double h);

} // namespace slrod

#endif // SLROD_EQUILIBRIUM_HPP
