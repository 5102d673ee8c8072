#include <doctest.h>

#include <ptv/dynamics.hpp>
#include <ptv/errors.hpp>
#include <ptv/oracle.hpp>

#include "sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace ptv;
using ptv::testing::Sampler;

namespace {

constexpr double kPi = std::numbers::pi;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

TranslationVector P(const Vec3& v) { return TranslationVector::new_ptv(v); }
TranslationVector V(const Vec3& v) { return TranslationVector::vtv(v); }
TranslationVector Z(const Vec3& v) { return TranslationVector::savage_ptv(v); }

// No rotation and constant specific force f: sigma'_v = thrust velocity = f t.
InputSource linear_thrust(const Vec3& f) {
    return [f](double t) {
        RateInputs in;
        in.thrust_velocity = f * t;
        in.vtv = V(f * t);
        return in;
    };
}

GroundTruth coning_truth(const ConingMotion& m, int steps) {
    GroundTruthOptions opt;
    opt.coarse_samples = 2 * steps;
    return generate_ground_truth(MotionProfile{m, 1.0}, opt);
}

ConingMotion stressed_coning() {
    ConingMotion m;
    m.half_angle = 0.3;
    m.frequency = 40 * kPi;
    m.thrust_frequency = 20 * kPi;
    return m;
}

}  // namespace

TEST_CASE("formulation names") {
    for (auto f : {Formulation::PtvThrust, Formulation::PtvVtv, Formulation::SavageVtv,
                   Formulation::AttitudeOnly}) {
        CHECK(parse_formulation(name(f)) == f);
    }
    CHECK_FALSE(parse_formulation("ptv").has_value());
}

TEST_CASE("thrust-driven ptv rate") {
    CHECK(max_abs(ptv_rate_thrust(RotationVector(), P(Vec3::Zero()), Vec3(3, -1, 7), Vec3(1, 0, 0)) -
                  Vec3(1, 0, 0)) == 0.0);
    CHECK(max_abs(ptv_rate_thrust(RotationVector(), P(Vec3(0, 1, 0)), Vec3(0, 0, 2), Vec3(1, 0, 0)) -
                  Vec3(2, 0, 0)) == 0.0);
    CHECK_THROWS_AS(ptv_rate_thrust(RotationVector(), Z(Vec3::Zero()), Vec3::Zero(), Vec3::Zero()),
                    KindMismatch);
    CHECK_THROWS_AS(ptv_rate_thrust(RotationVector(0, 0, 3.5), P(Vec3::Zero()), Vec3::Zero(), Vec3::Zero()),
                    DomainError);
}

TEST_CASE("vtv-driven ptv rate") {
    SUBCASE("zero rotation") {
        Sampler s(31);
        for (int i = 0; i < 100; ++i) {
            const Vec3 v = s.ball(10.0), p = s.ball(10.0), w = s.ball(5.0);
            CHECK(max_abs(ptv_rate_vtv(RotationVector(), P(p), w, V(v)) - (v + 0.5 * p.cross(w))) == 0.0);
        }
        CHECK(max_abs(ptv_rate_vtv(RotationVector(), P(Vec3(0, 1, 0)), Vec3(0, 0, 2), V(Vec3(1, 0, 0))) -
                      Vec3(2, 0, 0)) == 0.0);
    }
    SUBCASE("agrees with the thrust-driven rate") {
        Sampler s(32);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const RotationVector sg = s.rotation(3.0);
            const Vec3 p = s.ball(10.0), v = s.ball(10.0), w = s.ball(5.0);
            const Vec3 dt = vtv_to_body_thrust_velocity(sg, V(v));
            worst = std::max(worst, max_abs(ptv_rate_thrust(sg, P(p), w, dt) - ptv_rate_vtv(sg, P(p), w, V(v))));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("kind checks") {
        CHECK_THROWS_AS(ptv_rate_vtv(RotationVector(), P(Vec3::Zero()), Vec3::Zero(), P(Vec3::Zero())),
                        KindMismatch);
    }
}

TEST_CASE("Savage ptv rate") {
    SUBCASE("zero rotation") {
        Sampler s(33);
        for (int i = 0; i < 100; ++i) {
            const Vec3 v = s.ball(10.0), z = s.ball(10.0), w = s.ball(5.0);
            CHECK(max_abs(savage_rate_vtv(RotationVector(), Z(z), w, V(v)) - (v + z.cross(w) / 3.0)) < 1e-13);
        }
    }
    SUBCASE("equals the time derivative of the mapped ptv") {
        // d/dt [M(sigma) p] along sigma' = bortz_rate, p' = ptv_rate_vtv, by a
        // central difference in the direction of motion.
        Sampler s(34);
        for (int i = 0; i < 2000; ++i) {
            const RotationVector sg = s.rotation(3.0);
            const Vec3 p = s.ball(10.0), v = s.ball(10.0), w = s.ball(5.0);
            const Vec3 ds = bortz_rate(sg, w);
            const Vec3 dp = ptv_rate_vtv(sg, P(p), w, V(v));
            const Vec3 zeta = new_ptv_to_savage(sg, P(p)).value();
            const double h = 1e-5;
            auto mapped = [&](double t) {
                return new_ptv_to_savage(RotationVector(sg.vec() + t * ds), P(p + t * dp)).value();
            };
            const Vec3 fd = (mapped(h) - mapped(-h)) / (2 * h);
            const Vec3 rate = savage_rate_vtv(sg, Z(zeta), w, V(v));
            CHECK(max_abs(fd - rate) < 2e-6 * (1.0 + max_abs(rate)));
        }
    }
    SUBCASE("finite differences along an oracle trajectory converge at order 2") {
        const ConingMotion m = stressed_coning();
        double prev = 0.0;
        for (int n : {2000, 4000, 8000}) {
            GroundTruthOptions opt;
            opt.coarse_samples = n;
            const GroundTruth gt = generate_ground_truth(MotionProfile{m, 1.0}, opt);
            const double dt = 1.0 / n;
            double worst = 0.0;
            for (int k = n / 4; k <= 3 * n / 4; k += n / 8) {
                const auto& g = gt.samples[k];
                const Vec3 zp = new_ptv_to_savage(gt.samples[k + 1].sigma, gt.samples[k + 1].sp).value();
                const Vec3 zm = new_ptv_to_savage(gt.samples[k - 1].sigma, gt.samples[k - 1].sp).value();
                const Vec3 zeta = new_ptv_to_savage(g.sigma, g.sp).value();
                const Vec3 omega = evaluate_profile(gt.profile, g.t).omega;
                worst = std::max(worst, max_abs((zp - zm) / (2 * dt) - savage_rate_vtv(g.sigma, Z(zeta), omega, g.sv)));
            }
            if (prev > 0.0) CHECK(std::log2(prev / worst) == doctest::Approx(2.0).epsilon(0.05));
            prev = worst;
        }
    }
}

TEST_CASE("integration without rotation") {
    const Vec3 f(1.5, -2.0, 0.25);
    for (auto form : {Formulation::PtvThrust, Formulation::PtvVtv, Formulation::SavageVtv}) {
        CAPTURE(name(form));
        const Trajectory tr = rk4_integrate(form, linear_thrust(f), 0.0, 2.0, 64);
        REQUIRE(tr.size() == 65);
        double worst = 0.0;
        for (const auto& st : tr) {
            const Vec3 ref = 0.5 * f * st.t * st.t;
            CHECK(st.sigma.angle() == 0.0);
            worst = std::max(worst, max_abs(st.sp.value() - ref));
            worst = std::max(worst, max_abs(st.zeta.value() - ref));
            worst = std::max(worst, max_abs(ptv_to_double_integral(st.sigma, st.sp) - ref));
        }
        CHECK(worst < 1e-14);
        CHECK(tr.back().t == 2.0);
    }
}

TEST_CASE("coning runs") {
    const int steps = 10000;
    const GroundTruth gt = coning_truth(ConingMotion{}, steps);
    const InputSource in = ground_truth_inputs(gt);
    const Trajectory thrust = rk4_integrate(Formulation::PtvThrust, in, 0.0, 1.0, steps);
    const Trajectory vtv = rk4_integrate(Formulation::PtvVtv, in, 0.0, 1.0, steps);
    const Trajectory savage = rk4_integrate(Formulation::SavageVtv, in, 0.0, 1.0, steps);
    const Trajectory attitude = rk4_integrate(Formulation::AttitudeOnly, in, 0.0, 1.0, steps);

    CHECK(max_abs(thrust.back().sp.value() - vtv.back().sp.value()) < 1e-11);
    const Vec3 mapped = new_ptv_to_savage(vtv.back().sigma, vtv.back().sp).value();
    CHECK(max_abs(savage.back().zeta.value() - mapped) / savage.back().zeta.value().norm() < 1e-9);
    CHECK(max_abs(attitude.back().sigma.vec() - vtv.back().sigma.vec()) == 0.0);
    CHECK(max_abs(vtv.back().sigma.vec() - gt.samples.back().sigma.vec()) < 1e-12);
    const Vec3 dint = gt.samples.back().double_integral;
    CHECK(max_abs(ptv_to_double_integral(vtv.back().sigma, vtv.back().sp) - dint) / dint.norm() < 1e-9);
}

TEST_CASE("fourth-order convergence on a stressed coning profile") {
    const ConingMotion m = stressed_coning();
    for (auto form : {Formulation::PtvThrust, Formulation::PtvVtv, Formulation::SavageVtv}) {
        CAPTURE(name(form));
        double prev = 0.0;
        for (int steps : {1250, 2500, 5000}) {
            const GroundTruth gt = coning_truth(m, steps);
            const Trajectory tr = rk4_integrate(form, ground_truth_inputs(gt), 0.0, 1.0, steps);
            const auto& g = gt.samples.back();
            const double err = form == Formulation::SavageVtv
                                   ? (tr.back().zeta.value() - new_ptv_to_savage(g.sigma, g.sp).value()).norm()
                                   : (tr.back().sp.value() - g.sp.value()).norm();
            if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(4.0).epsilon(0.05));
            prev = err;
        }
    }
}

TEST_CASE("restarting from an intermediate state") {
    const GroundTruth gt = coning_truth(stressed_coning(), 2000);
    const InputSource in = ground_truth_inputs(gt);
    for (auto form : {Formulation::PtvVtv, Formulation::SavageVtv}) {
        const Trajectory whole = rk4_integrate(form, in, 0.0, 1.0, 100);
        const Trajectory first = rk4_integrate(form, in, 0.0, 0.5, 50);
        const Trajectory second = rk4_integrate(form, in, first.back(), 1.0, 50);
        CHECK(max_abs(whole.back().sp.value() - second.back().sp.value()) < 1e-14);
        CHECK(max_abs(whole.back().zeta.value() - second.back().zeta.value()) < 1e-14);
    }
}

TEST_CASE("runs are deterministic") {
    const GroundTruth gt = coning_truth(stressed_coning(), 2000);
    const Trajectory a = rk4_integrate(Formulation::SavageVtv, ground_truth_inputs(gt), 0.0, 1.0, 200);
    const Trajectory b = rk4_integrate(Formulation::SavageVtv, ground_truth_inputs(gt), 0.0, 1.0, 200);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].zeta.value() == b[k].zeta.value());
        CHECK(a[k].sigma.vec() == b[k].sigma.vec());
    }
}

TEST_CASE("leaving the domain aborts with the valid prefix") {
    const InputSource spin = [](double) {
        RateInputs in;
        in.omega = Vec3(0, 0, 4);
        in.vtv = V(Vec3::Zero());
        return in;
    };
    try {
        rk4_integrate(Formulation::PtvVtv, spin, 0.0, 1.0, 100);
        FAIL("expected IntegrationAborted");
    } catch (const IntegrationAborted& e) {
        REQUIRE_FALSE(e.partial().empty());
        CHECK(e.partial().back().sigma.in_domain());
        CHECK(e.partial().back().sigma.angle() == doctest::Approx(4.0 * e.partial().back().t));
        CHECK(e.partial().size() < 101);
    }
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(rk4_integrate(Formulation::PtvVtv, linear_thrust(Vec3(1, 0, 0)), 0.0, 1.0, 0),
                    std::invalid_argument);
    const InputSource omega_only = [](double) { return RateInputs{}; };
    CHECK_THROWS_AS(rk4_integrate(Formulation::PtvThrust, omega_only, 0.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(rk4_integrate(Formulation::SavageVtv, omega_only, 0.0, 1.0, 4), std::invalid_argument);
    CHECK_NOTHROW(rk4_integrate(Formulation::AttitudeOnly, omega_only, 0.0, 1.0, 4));
    KinematicState bad;
    bad.sigma = RotationVector(0, 0, 3.5);
    CHECK_THROWS_AS(rk4_integrate(Formulation::PtvVtv, linear_thrust(Vec3(1, 0, 0)), bad, 1.0, 4), DomainError);
}
