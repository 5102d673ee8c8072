#include <doctest.h>

#include <ptv/errors.hpp>
#include <ptv/rotkin.hpp>

#include "sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>

using namespace ptv;
using ptv::testing::Sampler;

namespace {

constexpr double kPi = std::numbers::pi;

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("skew of zero is the zero matrix") { CHECK(max_abs(skew(Vec3::Zero())) == 0.0); }

TEST_CASE("skew reproduces the basis cross product") {
    const Vec3 r = skew(Vec3(1, 0, 0)) * Vec3(0, 1, 0);
    CHECK(max_abs(r - Vec3(0, 0, 1)) == 0.0);
}

TEST_CASE("skew times u equals the cross product") {
    Sampler s(1);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 v = s.box(10.0), u = s.box(10.0);
        CHECK(max_abs(skew(v) * u - v.cross(u)) <= 1e-13);
    }
}

TEST_CASE("rodrigues") {
    SUBCASE("zero rotation is the identity") {
        CHECK(max_abs(rodrigues(RotationVector()) - Mat3::Identity()) == 0.0);
    }
    SUBCASE("quarter turn about x takes y to z") {
        const Vec3 r = rodrigues(RotationVector(kPi / 2, 0, 0)) * Vec3(0, 1, 0);
        CHECK(max_abs(r - Vec3(0, 0, 1)) < 1e-15);
    }
    SUBCASE("matches the quaternion rotation") {
        Sampler s(2);
        for (int i = 0; i < 2000; ++i) {
            const RotationVector sg = s.rotation(3.1);
            const Mat3 from_q = Eigen::AngleAxisd(sg.angle(), sg.vec().normalized()).toRotationMatrix();
            CHECK(max_abs(rodrigues(sg) - from_q) < 1e-12);
            CHECK(max_abs(rodrigues(sg) - quat_from_rotvec(sg).toRotationMatrix()) < 1e-12);
        }
    }
    SUBCASE("tiny angles stay orthonormal") {
        const Mat3 r = rodrigues(RotationVector(1e-9, -2e-9, 3e-9));
        CHECK(max_abs(r * r.transpose() - Mat3::Identity()) < 1e-15);
    }
}

TEST_CASE("quaternion conversions") {
    SUBCASE("identity quaternion gives the zero vector") {
        CHECK(rotvec_from_quat(Quaternion::Identity()).angle() == 0.0);
    }
    SUBCASE("half-angle relation") {
        const Quaternion q(std::cos(kPi / 4), std::sin(kPi / 4), 0, 0);
        const RotationVector sg = rotvec_from_quat(q);
        CHECK(max_abs(sg.vec() - Vec3(kPi / 2, 0, 0)) < 1e-15);
        CHECK(max_abs(rodrigues(sg) - q.toRotationMatrix()) < 1e-15);
    }
    SUBCASE("canonical sign") {
        const Quaternion q = quat_from_rotvec(RotationVector(0, 0, 3.0));
        CHECK(q.w() >= 0.0);
        const Quaternion neg(-q.w(), -q.x(), -q.y(), -q.z());
        CHECK(max_abs(rotvec_from_quat(neg).vec() - Vec3(0, 0, 3.0)) < 1e-14);
    }
    SUBCASE("roundtrip below angle 3") {
        Sampler s(3);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const RotationVector sg(s.direction() * s.uniform(0.0, 3.0));
            worst = std::max(worst, max_abs(rotvec_from_quat(quat_from_rotvec(sg)).vec() - sg.vec()));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("small rotations keep full relative precision") {
        const Vec3 v(1e-12, -3e-12, 2e-12);
        const RotationVector sg = rotvec_from_quat(quat_from_rotvec(RotationVector(v)));
        CHECK(max_abs(sg.vec() - v) < 1e-27);
    }
    SUBCASE("input is normalized first") {
        Quaternion q = quat_from_rotvec(RotationVector(0.3, 0.2, -0.1));
        q.coeffs() *= 2.5;
        CHECK(max_abs(rotvec_from_quat(q).vec() - Vec3(0.3, 0.2, -0.1)) < 1e-15);
    }
    SUBCASE("half turn is out of domain") {
        CHECK_THROWS_AS(rotvec_from_quat(Quaternion(0, 1, 0, 0)), DomainError);
    }
}

TEST_CASE("domain checks") {
    CHECK(RotationVector(0, 0, 3.1).in_domain());
    CHECK_FALSE(RotationVector(0, 0, kPi).in_domain());
    CHECK_FALSE(RotationVector(std::numeric_limits<double>::quiet_NaN(), 0, 0).in_domain());
    CHECK_THROWS_AS(RotationVector(0, 0, kMaxAngle).require_in_domain(), DomainError);
    CHECK_NOTHROW(RotationVector(0, 0, kMaxAngle * (1 - 1e-12)).require_in_domain());
    CHECK_THROWS_AS(bortz_rate(RotationVector(4, 0, 0), Vec3(1, 0, 0)), DomainError);
    CHECK(max_abs((-RotationVector(1, 2, 3)).vec() - Vec3(-1, -2, -3)) == 0.0);
}

TEST_CASE("rotation-vector rate") {
    SUBCASE("zero rotation passes omega through") {
        CHECK(max_abs(bortz_rate(RotationVector(), Vec3(1, 2, 3)) - Vec3(1, 2, 3)) == 0.0);
    }
    SUBCASE("sigma parallel to omega") {
        const Vec3 w(0.3, -0.4, 1.2);
        CHECK(max_abs(bortz_rate(RotationVector(2.0 * w), w) - w) < 1e-15);
    }
    SUBCASE("angle rate equals the axial rate") {
        Sampler s(4);
        for (int i = 0; i < 10000; ++i) {
            const RotationVector sg = s.rotation(3.0);
            const Vec3 w = s.ball(5.0);
            const double lhs = sg.vec().dot(bortz_rate(sg, w));
            const double rhs = sg.vec().dot(w);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
    SUBCASE("agrees with differentiating the quaternion") {
        // d/dt of rotvec_from_quat(q(t)) where q' = q (x) (0, w)/2.
        Sampler s(5);
        for (int i = 0; i < 200; ++i) {
            const RotationVector sg = s.rotation(2.5);
            const Vec3 w = s.ball(2.0);
            const Quaternion q = quat_from_rotvec(sg);
            const double h = 1e-6;
            auto at = [&](double t) {
                Quaternion qt;
                qt.coeffs() = q.coeffs() + t * quat_rate(q, w).coeffs() +
                              0.5 * t * t * quat_rate(Quaternion(quat_rate(q, w).coeffs()), w).coeffs();
                return rotvec_from_quat(qt.normalized()).vec();
            };
            const Vec3 fd = (at(h) - at(-h)) / (2 * h);
            CHECK(max_abs(fd - bortz_rate(sg, w)) < 1e-7);
        }
    }
}

TEST_CASE("quaternion rate is not normalized") {
    const Quaternion d = quat_rate(Quaternion::Identity(), Vec3(2, 0, 0));
    CHECK(d.w() == 0.0);
    CHECK(d.x() == doctest::Approx(1.0));
}
