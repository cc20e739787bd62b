#include "slrod/equilibrium.hpp"
#include "slrod/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace slrod {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// log(exp(a) + exp(b))
double log_sum_exp(double a, double b) {
    return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
}

double cos_exact(double theta) { return theta == kHalfPi ? 0.0 : std::cos(theta); }

// 1/zeta^2 - beta^2/det, positive exactly when the moduli ordering holds.
double transverse_compliance_gap(const Material &mat) {
    const double b2 = mat.beta() * mat.beta();
    return 1.0 / (mat.zeta() * mat.zeta()) - b2 / mat.coupling_det();
}

double require_threshold(const Material &mat) {
    const ShearThreshold t = shear_threshold(mat);
    if (!t) throw NoBifurcation(*t.failed);
    return *t.value;
}

} // namespace

std::string describe(BifurcationCondition condition) {
    switch (condition) {
    case BifurcationCondition::ModuliOrdering:
        return "eta^2 > zeta^2 + iota^2/beta^2 fails";
    case BifurcationCondition::LimitExceedsBranch:
        return "sheared-branch dilatation (det/(beta^2 zeta^2) - 1)^-1 is not below the limit "
               "beta (beta^2 eta^2 - iota^2)^-1/2";
    }
    return {};
}

NoBifurcation::NoBifurcation(BifurcationCondition c)
    : std::domain_error("NoBifurcation: " + describe(c)), failed(c) {}

BelowThreshold::BelowThreshold(double thrust, double threshold)
    : std::domain_error("BelowThreshold: thrust " + format_number(thrust) +
                        " does not exceed N_thresh = " + format_number(threshold)) {}

DegenerateCouple::DegenerateCouple()
    : std::invalid_argument("DegenerateCouple: helical states need M1 != 0; use the pure twist state") {}

////////////////////////////////////////////////////////////////////////////////
// Shearing bifurcation
////////////////////////////////////////////////////////////////////////////////
double shear_branch_modulus(const Material &mat) {
    const double b2 = mat.beta() * mat.beta();
    return mat.coupling_det() / (b2 * mat.zeta() * mat.zeta()) - 1.0;
}

ShearThreshold shear_threshold(const Material &mat) {
    ShearThreshold out;
    const double K = shear_branch_modulus(mat);
    if (!(K > 0.0)) {
        out.failed = BifurcationCondition::ModuliOrdering;
        return out;
    }
    const double p = mat.p();
    const double det = mat.coupling_det();
    const double limit = mat.beta() / std::sqrt(det);
    const double branch_scale = K * mat.beta() * mat.beta() / det; // 1/(v3 - 1) scaled
    const double gap = std::pow(branch_scale, p) - std::pow(limit, p);
    if (!(1.0 / K < limit) || !(gap > 0.0)) {
        out.failed = BifurcationCondition::LimitExceedsBranch;
        return out;
    }
    out.value = std::pow(gap, -1.0 / p);
    return out;
}

double shear_branch_function(const Material &mat, double N, double x) {
    const double p = mat.p();
    const double det = mat.coupling_det();
    const double c = mat.beta() * mat.beta() / det;
    const double X = (1.0 - x * x) / (mat.zeta() * mat.zeta()) + c * x * x;
    const double logS = log_sum_exp(-p * std::log(N), 0.5 * p * std::log(X));
    return std::exp(-logS / p) * c * x;
}

double shear_branch_slope(const Material &mat, double N, double x) {
    const double p = mat.p();
    const double det = mat.coupling_det();
    const double c = mat.beta() * mat.beta() / det;
    const double X = (1.0 - x * x) / (mat.zeta() * mat.zeta()) + c * x * x;
    const double logS = log_sum_exp(-p * std::log(N), 0.5 * p * std::log(X));
    const double D = transverse_compliance_gap(mat);
    const double ratio = std::exp((0.5 * p - 1.0) * std::log(X) - logS); // X^{p/2-1} / S
    return c * std::exp(-logS / p) * (1.0 + x * x * D * ratio);
}

double sheared_angle(const Material &mat, double N) {
    const double threshold = require_threshold(mat);
    if (!(N > threshold)) throw BelowThreshold(N, threshold);

    const double target = 1.0 / shear_branch_modulus(mat);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (shear_branch_function(mat, N, mid) < target ? lo : hi) = mid;
    }
    return std::acos(0.5 * (lo + hi));
}

double sheared_angle_closed_form(const Material &mat, double N) {
    if (mat.p() != 2.0) throw std::invalid_argument("closed-form sheared angle needs p = 2");
    const double threshold = require_threshold(mat);
    if (!(N > threshold)) throw BelowThreshold(N, threshold);
    const double D = transverse_compliance_gap(mat);
    const double z2 = mat.zeta() * mat.zeta();
    return std::acos(std::sqrt((1.0 / (N * N) + 1.0 / z2) / (D * D + D)));
}

double theta_infinity(const Material &mat) {
    require_threshold(mat);
    const double D = transverse_compliance_gap(mat);
    return std::acos(1.0 / (mat.zeta() * std::sqrt(D * D + D)));
}

double bifurcation_identity_defect(const Material &mat, double N, double theta) {
    const double b2 = mat.beta() * mat.beta();
    const double det = mat.coupling_det();
    const double st = std::sin(theta), ct = std::cos(theta);
    const double Qs = N * N * st * st / (mat.zeta() * mat.zeta()) + b2 * N * N * ct * ct / det;
    const double lhs = compliance_factor(mat, Qs);
    const double rhs = det / (b2 * N * ct) / shear_branch_modulus(mat);
    return (lhs - rhs) / rhs;
}

LimitingStrains limiting_strains_thrust(const Material &mat) {
    const double root = std::sqrt(mat.coupling_det());
    const double twist = mat.iota() / (mat.beta() * root);
    const double dil = mat.beta() / root;
    return {-twist, twist, dil, -dil};
}

LimitingStrains limiting_strains_twist(const Material &mat) {
    const double root = std::sqrt(mat.coupling_det());
    const double twist = mat.eta() / root;
    const double dil = mat.iota() / (mat.eta() * root);
    return {twist, -twist, -dil, dil};
}

////////////////////////////////////////////////////////////////////////////////
// States
////////////////////////////////////////////////////////////////////////////////
std::string to_string(StateFamily family) {
    switch (family) {
    case StateFamily::TrivialTensile: return "trivial";
    case StateFamily::ShearedTensile: return "sheared";
    case StateFamily::PureTwist:      return "twist";
    case StateFamily::Helical:        return "helix";
    case StateFamily::PureBending:    return "bending";
    }
    return {};
}

EquilibriumState::EquilibriumState(StateDescriptor descriptor, double h)
    : m_desc(descriptor), m_config([&] {
          const std::size_t n = grid_intervals(h);
          std::vector<ConfigurationSample> samples(n + 1);
          for (std::size_t i = 0; i <= n; ++i) {
              const double s = (i == n) ? 1.0 : double(i) / double(n);
              samples[i] = {s, Vec3::Zero(), Frame{}};
          }
          return Configuration(std::move(samples));
      }()) {
    std::vector<ConfigurationSample> samples = m_config.samples();
    m_loads.reserve(samples.size());
    for (auto &smp : samples) {
        smp.r = position_at(smp.s);
        smp.frame = frame_at(smp.s);
        m_loads.push_back(loads_at(smp.s));
    }
    m_config = Configuration(std::move(samples));
}

EulerAngles EquilibriumState::angles_at(double s) const {
    return {m_desc.phi0 + m_desc.phi_rate * s, m_desc.theta, m_desc.psi0 + m_desc.psi_rate * s};
}

EulerAngles EquilibriumState::angle_rates() const { return {m_desc.phi_rate, 0.0, m_desc.psi_rate}; }

FrameLoads EquilibriumState::frame_loads() const {
    FrameLoads fl;
    fl.M = Vec3(m_desc.bending_couple, 0.0, m_desc.twisting_couple);
    fl.thrust = m_desc.thrust;
    fl.N = Vec3(-m_desc.thrust * std::sin(m_desc.theta), 0.0, m_desc.thrust * cos_exact(m_desc.theta));
    return fl;
}

Strains EquilibriumState::strains_at(double s) const {
    const double psi = m_desc.psi0 + m_desc.psi_rate * s;
    const double c = std::cos(psi), sn = std::sin(psi);
    Strains out;
    out.u = Vec3(m_desc.flexure_amplitude * c, -m_desc.flexure_amplitude * sn, m_desc.u3);
    out.v = Vec3(-m_desc.shear_amplitude * c, m_desc.shear_amplitude * sn, m_desc.v3);
    return out;
}

Loads EquilibriumState::loads_at(double s) const { return director_loads(frame_loads(), angles_at(s)); }

Frame EquilibriumState::frame_at(double s) const { return directors_from_euler(angles_at(s)); }

Vec3 EquilibriumState::position_at(double s) const {
    if (m_desc.phi_rate != 0.0) {
        // r' = v3 d3 with d3 precessing about g3 at rate phi'; phi(0) = phi0.
        const double w = m_desc.phi_rate;
        const double st = std::sin(m_desc.theta), ct = cos_exact(m_desc.theta);
        const double a0 = m_desc.phi0, a1 = m_desc.phi0 + w * s;
        return m_desc.v3 * Vec3(st * (std::sin(a1) - std::sin(a0)) / w,
                                st * (std::cos(a0) - std::cos(a1)) / w, ct * s);
    }
    // Constant tangent r' = v_k d_k.
    return s * frame_at(0.0).from_components(strains_at(0.0).v);
}

EquilibriumState trivial_tensile_state(const Material &mat, double N, double psi0, double h) {
    const double det = mat.coupling_det();
    const double b2 = mat.beta() * mat.beta();
    const double F = compliance_factor(mat, b2 * N * N / det);

    StateDescriptor d;
    d.family = StateFamily::TrivialTensile;
    d.thrust = N;
    d.psi0 = psi0;
    d.u3 = F * (-mat.iota() * N) / det;
    d.v3 = 1.0 + F * b2 * N / det;
    d.psi_rate = d.u3;
    return EquilibriumState(d, h);
}

EquilibriumState sheared_tensile_state(const Material &mat, double N, double psi0, double h) {
    const double threshold = require_threshold(mat);
    if (!(std::abs(N) > threshold)) throw BelowThreshold(N, threshold);

    const double base = sheared_angle(mat, std::abs(N));
    const double theta = N > 0.0 ? base : std::numbers::pi - base;
    const double b2 = mat.beta() * mat.beta();
    const double z2 = mat.zeta() * mat.zeta();
    const double det = mat.coupling_det();
    const double K = shear_branch_modulus(mat);

    if (std::abs(bifurcation_identity_defect(mat, N, theta)) > 1e-9)
        throw std::logic_error("sheared tensile state violates the branch identity");

    StateDescriptor d;
    d.family = StateFamily::ShearedTensile;
    d.thrust = N;
    d.theta = theta;
    d.psi0 = psi0;
    d.u3 = -mat.iota() / (b2 * K);
    d.v3 = 1.0 + 1.0 / K;
    d.shear_amplitude = det / (b2 * z2) / K * std::tan(theta);
    d.psi_rate = d.u3;
    return EquilibriumState(d, h);
}

EquilibriumState pure_twist_state(const Material &mat, double M3, double theta, double psi0, double h) {
    const double det = mat.coupling_det();
    const double e2 = mat.eta() * mat.eta();
    const double F = compliance_factor(mat, e2 * M3 * M3 / det);

    StateDescriptor d;
    d.family = StateFamily::PureTwist;
    d.twisting_couple = M3;
    d.theta = theta;
    d.psi0 = psi0;
    d.u3 = F * e2 * M3 / det;
    d.v3 = 1.0 + F * (-mat.iota() * M3) / det;
    d.psi_rate = d.u3;
    return EquilibriumState(d, h);
}

EquilibriumState helical_state(const Material &mat, double M1, double theta, double psi0, double h) {
    if (M1 == 0.0) throw DegenerateCouple();
    if (!(theta > 0.0 && theta <= kHalfPi))
        throw std::invalid_argument("helical states need theta in (0, pi/2]");

    const double a2 = mat.alpha() * mat.alpha();
    const double e2 = mat.eta() * mat.eta();
    const double det = mat.coupling_det();
    const double st = std::sin(theta);
    const double cot = cos_exact(theta) / st;
    const double F = compliance_factor(mat, M1 * M1 * (1.0 / a2 + e2 * cot * cot / det));

    StateDescriptor d;
    d.family = theta == kHalfPi ? StateFamily::PureBending : StateFamily::Helical;
    d.bending_couple = M1;
    d.twisting_couple = -M1 * cot;
    d.theta = theta;
    d.psi0 = psi0;
    d.flexure_amplitude = F * M1 / a2;
    d.u3 = -F * e2 * M1 * cot / det;
    d.v3 = 1.0 + F * mat.iota() * M1 * cot / det;
    d.phi_rate = -F * M1 / (a2 * st);
    d.psi_rate = -(1.0 - det / (a2 * e2)) * F * e2 / det * M1 * cot;
    d.helix_radius = std::abs(d.v3) * st / std::abs(d.phi_rate);
    d.helix_pitch = d.v3 * cos_exact(theta);
    return EquilibriumState(d, h);
}

EquilibriumState pure_bending_state(const Material &mat, double M1, double psi0, double h) {
    return helical_state(mat, M1, kHalfPi, psi0, h);
}

////////////////////////////////////////////////////////////////////////////////
// Branch sweeps
////////////////////////////////////////////////////////////////////////////////
std::string to_string(Branch branch) { return branch == Branch::Trivial ? "trivial" : "sheared"; }

BranchPoint trivial_branch_point(const Material &mat, double N) {
    const EquilibriumState st = trivial_tensile_state(mat, N, 0.0, 0.1);
    return {N, 0.0, st.strains_at(0.0), st.loads_at(0.0), Branch::Trivial, 0.0};
}

BranchPoint sheared_branch_point(const Material &mat, double N) {
    const EquilibriumState st = sheared_tensile_state(mat, N, 0.0, 0.1);
    const StateDescriptor &d = st.descriptor();
    return {N, d.theta, st.strains_at(0.0), st.loads_at(0.0), Branch::Sheared, d.shear_amplitude};
}

std::vector<BranchPoint> branch_sweep(const Material &mat, double n_min, double n_max, std::size_t count) {
    if (count < 2) throw std::invalid_argument("branch sweeps need at least 2 samples");
    if (!(n_min < n_max) || !std::isfinite(n_min) || !std::isfinite(n_max))
        throw std::invalid_argument("branch sweeps need finite N_min < N_max");

    const ShearThreshold threshold = shear_threshold(mat);
    std::vector<BranchPoint> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double N = (i + 1 == count) ? n_max
                                          : n_min + (n_max - n_min) * double(i) / double(count - 1);
        out.push_back(trivial_branch_point(mat, N));
        if (threshold && N > *threshold.value) out.push_back(sheared_branch_point(mat, N));
    }
    return out;
}

void write_branch_csv(std::ostream &os, const Material &mat, const std::vector<BranchPoint> &points) {
    const ShearThreshold threshold = shear_threshold(mat);
    if (!threshold) os << "# no bifurcation: " << describe(*threshold.failed) << '\n';
    os << "N,theta,u3,v3,v_shear_amplitude,branch\n";
    for (const auto &pt : points) {
        os << format_number(pt.thrust) << ',' << format_number(pt.theta) << ','
           << format_number(pt.strains.u[2]) << ',' << format_number(pt.strains.v[2]) << ','
           << format_number(pt.shear_amplitude) << ',' << to_string(pt.branch) << '\n';
    }
}

////////////////////////////////////////////////////////////////////////////////
// Balance laws
////////////////////////////////////////////////////////////////////////////////
BalanceReport check_balance(const Material &mat, const Configuration &config,
                            const VectorField &body_force, const VectorField &body_couple) {
    const std::vector<Strains> strains = sampled_strains(config);
    const std::size_t n = config.size();
    const double h = config.spacing();

    std::vector<Vec3> m(n), f(n);
    double max_load = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Loads loads = loads_from_strains(mat, strains[i]);
        const Frame &frame = config[i].frame;
        m[i] = frame.from_components(loads.m);
        f[i] = frame.from_components(loads.n);
        max_load = std::max({max_load, m[i].norm(), f[i].norm()});
    }

    // Loads at the two end samples come from one-sided strain recovery; keep
    // them out of the stencils so every residual sees the same O(h^2) error.
    BalanceReport report{0.0, 0.0, h, max_load};
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double s = config[i].s;
        const Vec3 dr = (config[i + 1].r - config[i - 1].r) / (2.0 * h);
        Vec3 force = (f[i + 1] - f[i - 1]) / (2.0 * h);
        Vec3 moment = (m[i + 1] - m[i - 1]) / (2.0 * h) + dr.cross(f[i]);
        if (body_force) force += body_force(s);
        if (body_couple) moment += body_couple(s);
        report.force_residual = std::max(report.force_residual, force.norm());
        report.moment_residual = std::max(report.moment_residual, moment.norm());
    }
    return report;
}

void write_descriptor_json(std::ostream &os, const StateDescriptor &d, double h) {
    auto num = [](double x) { return format_number(x); };
    auto opt = [&](const std::optional<double> &x) { return x ? num(*x) : std::string("null"); };

    Strains s0;
    {
        const double c = std::cos(d.psi0), sn = std::sin(d.psi0);
        s0.u = Vec3(d.flexure_amplitude * c, -d.flexure_amplitude * sn, d.u3);
        s0.v = Vec3(-d.shear_amplitude * c, d.shear_amplitude * sn, d.v3);
    }
    const auto arr = s0.as_array();

    os << "{\n";
    os << "  \"family\": \"" << to_string(d.family) << "\",\n";
    os << "  \"grid_h\": " << num(h) << ",\n";
    os << "  \"thrust\": " << num(d.thrust) << ",\n";
    os << "  \"twisting_couple\": " << num(d.twisting_couple) << ",\n";
    os << "  \"bending_couple\": " << num(d.bending_couple) << ",\n";
    os << "  \"theta\": " << num(d.theta) << ",\n";
    os << "  \"phi0\": " << num(d.phi0) << ",\n";
    os << "  \"psi0\": " << num(d.psi0) << ",\n";
    os << "  \"phi_rate\": " << num(d.phi_rate) << ",\n";
    os << "  \"psi_rate\": " << num(d.psi_rate) << ",\n";
    os << "  \"u3\": " << num(d.u3) << ",\n";
    os << "  \"v3\": " << num(d.v3) << ",\n";
    os << "  \"flexure_amplitude\": " << num(d.flexure_amplitude) << ",\n";
    os << "  \"shear_amplitude\": " << num(d.shear_amplitude) << ",\n";
    os << "  \"helix_radius\": " << opt(d.helix_radius) << ",\n";
    os << "  \"helix_pitch\": " << opt(d.helix_pitch) << ",\n";
    os << "  \"strains_at_origin\": [";
    for (std::size_t k = 0; k < arr.size(); ++k) os << (k ? ", " : "") << num(arr[k]);
    os << "]\n}\n";
}

} // namespace slrod
