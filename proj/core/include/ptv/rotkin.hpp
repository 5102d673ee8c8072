// Rotation-vector and SO(3) primitives.
#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <numbers>

namespace ptv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
/// Hamilton quaternion, scalar part w. Canonical form has w >= 0.
using Quaternion = Eigen::Quaterniond;

/// Largest rotation angle accepted by the mapping operations [rad].
inline constexpr double kMaxAngle = std::numbers::pi - 1e-6;

/// Real part of the screw representation: an axis-angle vector [rad].
///
/// Construction never fails, so an integrator can step past the domain edge
/// and report it; operations that need sigma < kMaxAngle call
/// require_in_domain().
class RotationVector {
public:
    RotationVector() : v_(Vec3::Zero()) {}
    explicit RotationVector(const Vec3& v) : v_(v) {}
    RotationVector(double x, double y, double z) : v_(x, y, z) {}

    const Vec3& vec() const { return v_; }
    double angle() const { return v_.norm(); }
    bool in_domain() const;

    /// Throws DomainError unless all components are finite and angle() < kMaxAngle.
    const RotationVector& require_in_domain() const;

    RotationVector operator-() const { return RotationVector(-v_); }

private:
    Vec3 v_;
};

/// Cross-product matrix: skew(v) * u == v.cross(u).
Mat3 skew(const Vec3& v);

/// Exponential map, R = I + (sin s/s) S + ((1 - cos s)/s^2) S^2.
Mat3 rodrigues(const RotationVector& sigma);

/// Unit quaternion of the rotation, canonical (w >= 0).
Quaternion quat_from_rotvec(const RotationVector& sigma);

/// Rotation vector of a unit quaternion. Normalizes and canonicalizes the
/// input first; throws DomainError when the rotation angle is at or beyond
/// kMaxAngle, where the sign of the axis is ambiguous.
RotationVector rotvec_from_quat(const Quaternion& q);

/// Rotation-vector kinematics:
///   d(sigma)/dt = omega + 1/2 sigma x omega + f5(|sigma|) sigma x (sigma x omega).
/// Satisfies sigma . d(sigma)/dt == sigma . omega.
Vec3 bortz_rate(const RotationVector& sigma, const Vec3& omega);

/// Quaternion kinematics q' = 1/2 q (x) (0, omega). The result is a
/// derivative, not a rotation, so it is not normalized.
Quaternion quat_rate(const Quaternion& q, const Vec3& omega);

}  // namespace ptv
