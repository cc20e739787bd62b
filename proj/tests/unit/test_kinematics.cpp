#include "slrod/equilibrium.hpp"
#include "slrod/kinematics.hpp"
#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

namespace slrod {
namespace {

constexpr double kPi = std::numbers::pi;

void expect_vec_near(const Vec3 &a, const Vec3 &b, double tol) {
    EXPECT_LE((a - b).norm(), tol) << "got " << a.transpose() << " expected " << b.transpose();
}

Configuration sample_frames(const std::function<Frame(double)> &frame, const std::function<Vec3(double)> &r,
                            std::size_t intervals) {
    std::vector<ConfigurationSample> samples;
    for (std::size_t i = 0; i <= intervals; ++i) {
        const double s = double(i) / double(intervals);
        samples.push_back({s, r(s), frame(s)});
    }
    return Configuration(std::move(samples));
}

TEST(Euler, IdentityAndQuarterTurn) {
    const Frame id = directors_from_euler({0, 0, 0});
    expect_vec_near(id.d1, Vec3::UnitX(), 0);
    expect_vec_near(id.d2, Vec3::UnitY(), 0);
    expect_vec_near(id.d3, Vec3::UnitZ(), 0);

    const Frame q = directors_from_euler({0, kPi / 2, 0});
    expect_vec_near(q.d3, Vec3::UnitX(), 1e-16);
    expect_vec_near(q.d1, -Vec3::UnitZ(), 1e-16);
    expect_vec_near(q.d2, Vec3::UnitY(), 1e-16);
}

TEST(Euler, TiltedTangentInTheG1G3Plane) {
    for (double theta : {0.1, 0.7, 1.3}) {
        const Frame f = directors_from_euler({0, theta, 0.4});
        expect_vec_near(f.d3, Vec3(std::sin(theta), 0, std::cos(theta)), 1e-16);
    }
}

TEST(Euler, OrthonormalRightHandedAndInvertible) {
    testing::Rng rng(41);
    for (int i = 0; i < 2000; ++i) {
        const EulerAngles a{testing::uniform(rng, -kPi, kPi), testing::uniform(rng, 1e-3, kPi - 1e-3),
                            testing::uniform(rng, -kPi, kPi)};
        const Frame f = directors_from_euler(a);
        const Mat3 G = f.matrix().transpose() * f.matrix() - Mat3::Identity();
        EXPECT_LT(G.cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_TRUE(f.is_orthonormal(1e-12));
        const EulerAngles b = euler_from_directors(f);
        EXPECT_NEAR(b.theta, a.theta, 1e-12);
        EXPECT_NEAR(std::remainder(b.phi - a.phi, 2 * kPi), 0.0, 1e-10);
        EXPECT_NEAR(std::remainder(b.psi - a.psi, 2 * kPi), 0.0, 1e-10);
    }
}

TEST(Euler, DegenerateChartUsesZeroPhi) {
    const Frame f = directors_from_euler({0, 0, 0.8});
    const EulerAngles a = euler_from_directors(f);
    EXPECT_EQ(a.phi, 0.0);
    EXPECT_NEAR(a.psi, 0.8, 1e-15);
}

TEST(StrainsFromEuler, Examples) {
    const Vec3 v(0, 0, 1);
    EXPECT_EQ(strains_from_euler({0.3, 0.4, 0.5}, {0, 0, 0}, v).u, Vec3::Zero());
    expect_vec_near(strains_from_euler({0.3, 0, 0.5}, {0, 0, 2.5}, v).u, Vec3(0, 0, 2.5), 0);
    expect_vec_near(strains_from_euler({0, kPi / 2, 0}, {1.5, 0, 0}, v).u, Vec3(-1.5, 0, 0), 1e-15);
}

TEST(Darboux, ConstantFrameAndPureTwist) {
    const auto straight = [](double s) { return Vec3(0, 0, s); };
    const Configuration still = sample_frames([](double) { return Frame{}; }, straight, 100);
    for (const Vec3 &u : darboux(still)) EXPECT_EQ(u, Vec3::Zero());

    const double omega = 1.7;
    const auto twist = [&](double s) { return directors_from_euler({0, 0, omega * s}); };
    for (std::size_t n : {100, 200}) {
        const auto u = darboux(sample_frames(twist, straight, n));
        const double h = 1.0 / double(n);
        for (const Vec3 &ui : u) {
            EXPECT_NEAR(ui[0], 0.0, 1e-13);
            EXPECT_NEAR(ui[1], 0.0, 1e-13);
            EXPECT_NEAR(ui[2], omega, omega * omega * omega * h * h);
        }
    }
}

TEST(Darboux, AgreesWithEulerRatesToSecondOrder) {
    // phi = sin(s), theta = 0.6 + 0.3 s^2, psi = 2 s.
    auto angles = [](double s) { return EulerAngles{std::sin(s), 0.6 + 0.3 * s * s, 2 * s}; };
    auto rates = [](double s) { return EulerAngles{std::cos(s), 0.6 * s, 2.0}; };
    double previous = 0.0;
    for (std::size_t n : {50, 100, 200}) {
        const Configuration c =
            sample_frames([&](double s) { return directors_from_euler(angles(s)); }, [](double s) { return Vec3(0, 0, s); }, n);
        const auto u = darboux(c);
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < c.size(); ++i) {
            const Vec3 exact = strains_from_euler(angles(c[i].s), rates(c[i].s), Vec3::UnitZ()).u;
            err = std::max(err, (u[i] - exact).norm());
        }
        if (previous > 0.0) EXPECT_GT(std::log2(previous / err), 1.9);
        previous = err;
    }
}

TEST(Darboux, BendingCircleCurvature) {
    MaterialParams m;
    const Material mat(m);
    const EquilibriumState st = pure_bending_state(mat, 1.0, 0.0, 1e-3);
    const auto u = darboux(st.configuration());
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
        EXPECT_NEAR(std::hypot(u[i][0], u[i][1]), 1.0 / std::sqrt(2.0), 1e-7);
}

TEST(Darboux, RejectsNonOrthonormalFrames) {
    std::vector<ConfigurationSample> samples(5);
    for (std::size_t i = 0; i < 5; ++i) samples[i].s = double(i) / 4.0;
    samples[2].frame.d1 = Vec3(1.1, 0, 0);
    const Configuration c(samples);
    EXPECT_THROW(darboux(c), NonOrthonormalFrame);
}

TEST(FrameLoads, Examples) {
    const Loads l{Vec3(1, 2, 3), Vec3::Zero()};
    expect_vec_near(frame_loads(l, {0, 0.3, 0}, 0).M, l.m, 0);
    expect_vec_near(frame_loads({Vec3(1, 0, 0), Vec3::Zero()}, {0, 0.2, kPi / 2}, 0).M, Vec3(0, 1, 0), 1e-16);
    expect_vec_near(frame_loads(Loads{}, {0, kPi / 3, 0}, 2.0).N, Vec3(-std::sqrt(3.0), 0, 1), 1e-15);
}

TEST(FrameLoads, DirectorLoadsInvertAndMatchThrust) {
    testing::Rng rng(42);
    for (int i = 0; i < 500; ++i) {
        const EulerAngles a{testing::uniform(rng, -3, 3), testing::uniform(rng, 0, kPi), testing::uniform(rng, -3, 3)};
        const double N = testing::uniform(rng, -5, 5);
        FrameLoads fl;
        fl.M = Vec3(testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2), testing::uniform(rng, -2, 2));
        fl.thrust = N;
        const Loads l = director_loads(fl, a);
        expect_vec_near(frame_loads(l, a, N).M, fl.M, 1e-14);
        // n = N g3 expressed in the directors.
        const Frame f = directors_from_euler(a);
        expect_vec_near(f.from_components(l.n), Vec3(0, 0, N), 1e-14);
    }
}

TEST(ShearFactors, Examples) {
    MaterialParams m;
    const ShearFactors unloaded = shear_factors(Material(m), Loads{});
    EXPECT_EQ(unloaded.u_factor, 1.0);
    EXPECT_EQ(unloaded.v_factor, 1.0);
    m.zeta = 2.0;
    const Loads l{Vec3(std::sqrt(3.0), 0, 0), Vec3::Zero()};
    const ShearFactors sf = shear_factors(Material(m), l);
    EXPECT_NEAR(sf.u_factor, 0.5, 1e-15);
    EXPECT_NEAR(sf.v_factor, 0.125, 1e-15);
}

TEST(ReducedResidual, VanishesOnClosedFormStates) {
    MaterialParams m;
    m.alpha = 0.8;
    m.beta = 1.1;
    m.zeta = 0.9;
    m.eta = 2.3;
    m.iota = -0.6;
    m.p = 2.5;
    const Material mat(m);
    EXPECT_EQ(reduced_residual(mat, {}, {}, FrameLoads{}, Vec3::Zero()), ReducedResidual{});

    const std::vector<EquilibriumState> states = {
        trivial_tensile_state(mat, 1.7, 0.2), sheared_tensile_state(mat, 2.0 * *shear_threshold(mat).value, 0.1),
        pure_twist_state(mat, -1.3, 0.0, 0.3), helical_state(mat, 0.9, 0.8, 0.2), pure_bending_state(mat, -2.0, 0.5)};
    for (const auto &st : states) {
        for (double s : {0.0, 0.37, 1.0}) {
            const ReducedResidual r =
                reduced_residual(mat, st.angles_at(s), st.angle_rates(), st.frame_loads(), Vec3::Zero());
            for (double x : r) EXPECT_NEAR(x, 0.0, 1e-10) << to_string(st.descriptor().family);
        }
    }
}

TEST(Reconstruct, StraightAndTwistedRods) {
    const Configuration c = reconstruct([](double) { return Strains{}; }, Vec3::Zero(), Frame{}, 1e-2);
    for (const auto &smp : c.samples()) expect_vec_near(smp.r, Vec3(0, 0, smp.s), 1e-14);

    const double rate = 2.2;
    const Configuration t = reconstruct(
        [&](double) { return Strains{Vec3(0, 0, rate), Vec3::UnitZ()}; }, Vec3::Zero(), Frame{}, 1e-3);
    for (const auto &smp : t.samples()) {
        expect_vec_near(smp.r, Vec3(0, 0, smp.s), 1e-12);
        expect_vec_near(smp.frame.d1, Vec3(std::cos(rate * smp.s), std::sin(rate * smp.s), 0), 1e-10);
    }
}

TEST(Reconstruct, PreservesUnitDirectorsAndRecoversStrains) {
    auto field = [](double s) {
        return Strains{Vec3(std::sin(3 * s), 0.5 * s, 1.0 - s * s), Vec3(0.1 * s, -0.2, 1.0 + 0.3 * std::cos(s))};
    };
    const Configuration c = reconstruct(field, Vec3(1, 2, 3), directors_from_euler({0.3, 0.4, 0.5}), 1e-3);
    for (const auto &smp : c.samples())
        for (int k = 0; k < 3; ++k) EXPECT_NEAR(smp.frame[k].norm(), 1.0, 1e-10);
    const auto recovered = sampled_strains(c);
    for (std::size_t i = 1; i + 1 < c.size(); ++i) {
        const Strains exact = field(c[i].s);
        EXPECT_LT((recovered[i].deviation() - exact.deviation()).norm(), 1e-5);
    }
}

TEST(Reconstruct, HelixGeometry) {
    MaterialParams m;
    m.alpha = 1.3;
    m.eta = 2.0;
    m.iota = 0.4;
    const Material mat(m);
    const EquilibriumState st = helical_state(mat, 0.7, 0.9);
    const StateDescriptor &d = st.descriptor();
    const Configuration c =
        reconstruct([&](double s) { return st.strains_at(s); }, Vec3::Zero(), st.frame_at(0.0), 1e-3);
    // The axis is parallel to g3 through the center of the projected circle.
    const double R = *d.helix_radius;
    const Vec3 r0 = c[0].r;
    const Vec3 t0 = c[0].frame.d3;
    const Vec3 inward = Vec3(0, 0, 1).cross(t0).normalized() * (d.phi_rate > 0 ? 1.0 : -1.0);
    const Vec3 center = r0 + R * inward;
    for (const auto &smp : c.samples()) {
        EXPECT_NEAR(std::hypot(smp.r[0] - center[0], smp.r[1] - center[1]), R, 1e-9);
        EXPECT_NEAR(smp.r[2] - r0[2], *d.helix_pitch * smp.s, 1e-12);
    }
}

TEST(ConfigurationCsv, RoundTripsExactly) {
    const Configuration c = reconstruct(
        [](double s) { return Strains{Vec3(0.3, -0.2 * s, 0.1), Vec3(0, 0.05, 1.1)}; }, Vec3(0.5, 0, 0), Frame{}, 0.01);
    std::stringstream ss;
    write_configuration_csv(ss, c);
    const Configuration back = read_configuration_csv(ss);
    ASSERT_EQ(back.size(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        EXPECT_EQ(back[i].s, c[i].s);
        EXPECT_EQ(back[i].r, c[i].r);
        EXPECT_EQ(back[i].frame.matrix(), c[i].frame.matrix());
    }
}

TEST(ConfigurationCsv, RejectsMalformedInput) {
    const Configuration c = reconstruct([](double) { return Strains{}; }, Vec3::Zero(), Frame{}, 0.1);
    std::stringstream ss;
    write_configuration_csv(ss, c);
    const std::string text = ss.str();

    auto parse = [](const std::string &t) {
        std::istringstream is(t);
        return read_configuration_csv(is);
    };
    EXPECT_THROW(parse(""), CsvFormatError);
    EXPECT_THROW(parse("s,x\n0,1\n"), CsvFormatError);
    EXPECT_THROW(parse(text.substr(0, text.size() / 2)), CsvFormatError);
    const auto last_line = text.rfind('\n', text.size() - 2);
    EXPECT_THROW(parse(text.substr(0, last_line + 1)), CsvFormatError);
    std::string bad = text;
    bad.replace(bad.find("0.10000000000000001"), 3, "abc");
    EXPECT_THROW(parse(bad), CsvFormatError);
}

TEST(Configuration, RequiresUniformUnitGrid) {
    std::vector<ConfigurationSample> s(3);
    s[1].s = 0.5;
    s[2].s = 1.0;
    EXPECT_NO_THROW(Configuration{s});
    s[1].s = 0.4;
    EXPECT_THROW(Configuration{s}, std::invalid_argument);
    s[1].s = 0.5;
    s[2].s = 0.9;
    EXPECT_THROW(Configuration{s}, std::invalid_argument);
    EXPECT_THROW(Configuration(std::vector<ConfigurationSample>(2)), std::invalid_argument);
    EXPECT_THROW(grid_intervals(0.2), std::invalid_argument);
    EXPECT_THROW(grid_intervals(0.0), std::invalid_argument);
    EXPECT_EQ(grid_intervals(1e-3), 1000u);
}

} // namespace
} // namespace slrod
