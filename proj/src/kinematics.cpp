#include "slrod/kinematics.hpp"
#include "slrod/format.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace slrod {

Mat3 Frame::matrix() const {
    Mat3 R;
    R.col(0) = d1;
    R.col(1) = d2;
    R.col(2) = d3;
    return R;
}

bool Frame::is_orthonormal(double tol) const {
    const Mat3 R = matrix();
    if (!R.allFinite()) return false;
    const Mat3 G = R.transpose() * R - Mat3::Identity();
    if (G.cwiseAbs().maxCoeff() > tol) return false;
    return (d1.cross(d2) - d3).cwiseAbs().maxCoeff() <= tol;
}

NonOrthonormalFrame::NonOrthonormalFrame(std::size_t sample)
    : std::domain_error("NonOrthonormalFrame: director frame at sample " + std::to_string(sample) +
                        " is not orthonormal and right-handed") {}

////////////////////////////////////////////////////////////////////////////////
// Configuration
////////////////////////////////////////////////////////////////////////////////
Configuration::Configuration(std::vector<ConfigurationSample> samples)
    : m_samples(std::move(samples)), m_h(0.0) {
    const std::size_t n = m_samples.size();
    if (n < 3) throw std::invalid_argument("Configuration needs at least 3 samples");
    m_h = 1.0 / double(n - 1);
    if (m_samples.front().s != 0.0 || std::abs(m_samples.back().s - 1.0) > 1e-12)
        throw std::invalid_argument("Configuration samples must span s = 0 to s = 1");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(m_samples[i].s - double(i) * m_h) > 1e-9 * m_h)
            throw std::invalid_argument("Configuration samples must lie on a uniform grid");
        if (!m_samples[i].r.allFinite())
            throw std::invalid_argument("Configuration centerline must be finite");
    }
}

std::size_t grid_intervals(double h) {
    if (!(h > 0.0 && h <= 0.1)) throw std::invalid_argument("grid spacing must lie in (0, 0.1]");
    return std::size_t(std::lround(1.0 / h));
}

////////////////////////////////////////////////////////////////////////////////
// Euler charts
////////////////////////////////////////////////////////////////////////////////
Frame directors_from_euler(const EulerAngles &a) {
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);

    const Vec3 e1(ct * cf, ct * sf, -st);
    const Vec3 e2(-sf, cf, 0.0);
    Frame f;
    f.d3 = Vec3(st * cf, st * sf, ct);
    f.d1 = cp * e1 + sp * e2;
    f.d2 = -sp * e1 + cp * e2;
    return f;
}

EulerAngles euler_from_directors(const Frame &frame) {
    EulerAngles a;
    const Vec3 &d3 = frame.d3;
    a.theta = std::atan2(std::hypot(d3[0], d3[1]), d3[2]);
    a.phi = (std::sin(a.theta) > 1e-14) ? std::atan2(d3[1], d3[0]) : 0.0;
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    const Vec3 e1(ct * cf, ct * sf, -st);
    const Vec3 e2(-sf, cf, 0.0);
    a.psi = std::atan2(frame.d1.dot(e2), frame.d1.dot(e1));
    return a;
}

Strains strains_from_euler(const EulerAngles &a, const EulerAngles &rate, const Vec3 &v) {
    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    const double sp = std::sin(a.psi), cp = std::cos(a.psi);
    Strains s;
    s.u = Vec3(rate.theta * sp - rate.phi * st * cp,
               rate.theta * cp + rate.phi * st * sp,
               rate.psi + rate.phi * ct);
    s.v = v;
    return s;
}

FrameLoads frame_loads(const Loads &loads, const EulerAngles &a, double thrust) {
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);
    const Vec3 &m = loads.m;
    FrameLoads out;
    out.M = Vec3(m[0] * cp - m[1] * sp, m[0] * sp + m[1] * cp, m[2]);
    out.N = Vec3(-thrust * std::sin(a.theta), 0.0, thrust * std::cos(a.theta));
    out.thrust = thrust;
    return out;
}

Loads director_loads(const FrameLoads &fl, const EulerAngles &a) {
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);
    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    const double N = fl.thrust;
    Loads out;
    out.m = Vec3(fl.M[0] * cp + fl.M[1] * sp, -fl.M[0] * sp + fl.M[1] * cp, fl.M[2]);
    out.n = Vec3(-N * st * cp, N * st * sp, N * ct);
    return out;
}

ShearFactors shear_factors(const Material &mat, const Loads &loads) {
    const double F = compliance_factor(mat, quad_form_Qstar(mat, loads));
    return {F / (mat.alpha() * mat.alpha()), F / (mat.zeta() * mat.zeta())};
}

ReducedResidual reduced_residual(const Material &mat, const EulerAngles &a, const EulerAngles &rate,
                                 const FrameLoads &fl, const Vec3 &dM) {
    const Loads loads = director_loads(fl, a);
    const Strains strains = strains_from_loads(mat, loads);
    const ShearFactors sf = shear_factors(mat, loads);
    const double st = std::sin(a.theta), ct = std::cos(a.theta);
    const double N = fl.thrust;
    const Vec3 &M = fl.M;

    return {st * rate.phi + sf.u_factor * M[0],
            rate.theta + sf.u_factor * M[1],
            rate.psi + ct * rate.phi - strains.u[2],
            dM[0] - M[1] * ct * rate.phi + rate.theta * M[2],
            dM[1] + (M[0] * ct + M[2] * st) * rate.phi - N * strains.v[2] * st +
                N * N * sf.v_factor * ct * st,
            dM[2]};
}

////////////////////////////////////////////////////////////////////////////////
// Sampled derivatives
////////////////////////////////////////////////////////////////////////////////
namespace {

// Second-order derivative of a sampled vector field: central in the interior,
// one-sided three-point at the ends.
template <class Get>
Vec3 sample_derivative(std::size_t i, std::size_t n, double h, Get get) {
    if (i == 0) return (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h);
    if (i == n - 1) return (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h);
    return (get(i + 1) - get(i - 1)) / (2.0 * h);
}

void require_orthonormal(const Configuration &config) {
    for (std::size_t i = 0; i < config.size(); ++i)
        if (!config[i].frame.is_orthonormal()) throw NonOrthonormalFrame(i);
}

Vec3 darboux_at(const Configuration &config, std::size_t i) {
    const std::size_t n = config.size();
    const double h = config.spacing();
    Vec3 u = Vec3::Zero();
    for (int k = 0; k < 3; ++k) {
        const Vec3 dk = sample_derivative(i, n, h, [&](std::size_t j) { return config[j].frame[k]; });
        u += config[i].frame[k].cross(dk);
    }
    return config[i].frame.components(0.5 * u);
}

} // namespace

std::vector<Vec3> darboux(const Configuration &config) {
    require_orthonormal(config);
    std::vector<Vec3> out(config.size());
    for (std::size_t i = 0; i < config.size(); ++i) out[i] = darboux_at(config, i);
    return out;
}

std::vector<Strains> sampled_strains(const Configuration &config) {
    require_orthonormal(config);
    const std::size_t n = config.size();
    const double h = config.spacing();
    std::vector<Strains> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].u = darboux_at(config, i);
        const Vec3 dr = sample_derivative(i, n, h, [&](std::size_t j) { return config[j].r; });
        out[i].v = config[i].frame.components(dr);
    }
    return out;
}

////////////////////////////////////////////////////////////////////////////////
// Reconstruction
////////////////////////////////////////////////////////////////////////////////
namespace {

struct RodState {
    Vec3 r;
    Frame frame;
};

RodState axpy(const RodState &y, double a, const RodState &k) {
    return {y.r + a * k.r, {y.frame.d1 + a * k.frame.d1, y.frame.d2 + a * k.frame.d2,
                            y.frame.d3 + a * k.frame.d3}};
}

RodState rate(const StrainField &field, double s, const RodState &y) {
    const Strains st = field(s);
    const Vec3 omega = y.frame.from_components(st.u);
    return {y.frame.from_components(st.v),
            {omega.cross(y.frame.d1), omega.cross(y.frame.d2), omega.cross(y.frame.d3)}};
}

Frame gram_schmidt(const Frame &f) {
    Frame out;
    out.d1 = f.d1.normalized();
    out.d2 = f.d2 - f.d2.dot(out.d1) * out.d1;
    out.d2.normalize();
    out.d3 = f.d3 - f.d3.dot(out.d1) * out.d1;
    out.d3 -= out.d3.dot(out.d2) * out.d2;
    out.d3.normalize();
    return out;
}

} // namespace

Configuration reconstruct(const StrainField &field, const Vec3 &r0, const Frame &frame0, double h) {
    if (!frame0.is_orthonormal()) throw NonOrthonormalFrame(0);
    const std::size_t n = grid_intervals(h);
    const double step = 1.0 / double(n);

    std::vector<ConfigurationSample> samples;
    samples.reserve(n + 1);
    RodState y{r0, frame0};
    samples.push_back({0.0, y.r, y.frame});
    for (std::size_t i = 0; i < n; ++i) {
        const double s = double(i) * step;
        const RodState k1 = rate(field, s, y);
        const RodState k2 = rate(field, s + 0.5 * step, axpy(y, 0.5 * step, k1));
        const RodState k3 = rate(field, s + 0.5 * step, axpy(y, 0.5 * step, k2));
        const RodState k4 = rate(field, s + step, axpy(y, step, k3));
        RodState next = axpy(y, step / 6.0, k1);
        next = axpy(next, step / 3.0, k2);
        next = axpy(next, step / 3.0, k3);
        next = axpy(next, step / 6.0, k4);
        next.frame = gram_schmidt(next.frame);
        y = next;
        samples.push_back({double(i + 1) * step, y.r, y.frame});
    }
    samples.back().s = 1.0;
    return Configuration(std::move(samples));
}

////////////////////////////////////////////////////////////////////////////////
// CSV
////////////////////////////////////////////////////////////////////////////////
namespace {
constexpr const char *kConfigHeader = "s,rx,ry,rz,d1x,d1y,d1z,d2x,d2y,d2z,d3x,d3y,d3z";
}

void write_configuration_csv(std::ostream &os, const Configuration &config) {
    os << kConfigHeader << '\n';
    for (const auto &smp : config.samples()) {
        os << format_number(smp.s);
        for (int k = 0; k < 3; ++k) os << ',' << format_number(smp.r[k]);
        for (int d = 0; d < 3; ++d)
            for (int k = 0; k < 3; ++k) os << ',' << format_number(smp.frame[d][k]);
        os << '\n';
    }
}

Configuration read_configuration_csv(std::istream &is) {
    std::string line;
    if (!std::getline(is, line)) throw CsvFormatError("empty configuration file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kConfigHeader) throw CsvFormatError("unexpected configuration header: " + line);

    std::vector<ConfigurationSample> samples;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<double, 13> vals{};
        std::size_t count = 0;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            if (count == vals.size())
                throw CsvFormatError("too many fields on line " + std::to_string(lineno));
            char *end = nullptr;
            vals[count] = std::strtod(field.c_str(), &end);
            if (field.empty() || *end != '\0' || !std::isfinite(vals[count]))
                throw CsvFormatError("bad number on line " + std::to_string(lineno));
            ++count;
        }
        if (count != vals.size())
            throw CsvFormatError("expected 13 fields on line " + std::to_string(lineno));
        ConfigurationSample smp;
        smp.s = vals[0];
        smp.r = Vec3(vals[1], vals[2], vals[3]);
        smp.frame.d1 = Vec3(vals[4], vals[5], vals[6]);
        smp.frame.d2 = Vec3(vals[7], vals[8], vals[9]);
        smp.frame.d3 = Vec3(vals[10], vals[11], vals[12]);
        samples.push_back(smp);
    }
    try {
        return Configuration(std::move(samples));
    } catch (const std::invalid_argument &e) {
        throw CsvFormatError(e.what());
    }
}

} // namespace slrod
