// Algebraic translation-vector maps.
//
// Three different vectors share the name "translation vector" here and are
// easy to confuse: the velocity translation vector (VTV), the new position
// translation vector (the dual part of the inertial-to-thrust-position screw),
// and Savage's position translation vector zeta. TranslationVector carries a
// kind tag and every map checks it.
#pragma once

#include <ptv/rotkin.hpp>

#include <array>
#include <string_view>

namespace ptv {

enum class TranslationKind {
    Vtv,        ///< sigma'_v, dual part of the inertial-to-thrust-frame screw [m/s]
    NewPtv,     ///< sigma'_p, dual part of the inertial-to-thrust-position screw [m]
    SavagePtv,  ///< zeta [m]
};

std::string_view name(TranslationKind k);

class TranslationVector {
public:
    TranslationVector(TranslationKind kind, const Vec3& value) : value_(value), kind_(kind) {}

    static TranslationVector vtv(const Vec3& v) { return {TranslationKind::Vtv, v}; }
    static TranslationVector new_ptv(const Vec3& v) { return {TranslationKind::NewPtv, v}; }
    static TranslationVector savage_ptv(const Vec3& v) { return {TranslationKind::SavagePtv, v}; }

    const Vec3& value() const { return value_; }
    TranslationKind kind() const { return kind_; }

    /// Throws KindMismatch if kind() != expected.
    const TranslationVector& require(TranslationKind expected) const;

private:
    Vec3 value_;
    TranslationKind kind_;
};

/// Dual vector omega + eps * thrust_velocity between the inertial frame and the
/// thrust position frame. The dual unit is structural, never a number.
struct Twist {
    Vec3 angular_rate;     ///< omega, body frame [rad/s]
    Vec3 thrust_velocity;  ///< body-referenced thrust velocity [m/s]

    const Vec3& real() const { return angular_rate; }
    const Vec3& dual() const { return thrust_velocity; }
};

Twist make_twist(const RotationVector& sigma, const Vec3& omega, const TranslationVector& vtv);

/// I - a1 S + a2 S^2: VTV to body-referenced thrust velocity.
Mat3 body_thrust_velocity_matrix(const RotationVector& sigma);
/// I + a1 S + a2 S^2: VTV (or new PTV) to the interval-start-frame quantity.
Mat3 interval_frame_matrix(const RotationVector& sigma);
/// I + w1 S + w2 S^2: new PTV to Savage's PTV.
Mat3 savage_map_matrix(const RotationVector& sigma);

Vec3 vtv_to_body_thrust_velocity(const RotationVector& sigma, const TranslationVector& vtv);
Vec3 vtv_to_interval_thrust_velocity(const RotationVector& sigma, const TranslationVector& vtv);
TranslationVector thrust_velocity_to_vtv(const RotationVector& sigma, const Vec3& thrust_velocity);

/// Double-integrated specific force in the interval-start frame.
Vec3 ptv_to_double_integral(const RotationVector& sigma, const TranslationVector& ptv);
TranslationVector double_integral_to_ptv(const RotationVector& sigma, const Vec3& dint);

TranslationVector new_ptv_to_savage(const RotationVector& sigma, const TranslationVector& ptv);
TranslationVector savage_to_new_ptv(const RotationVector& sigma, const TranslationVector& zeta);

/// Max-norm residuals of the two identities that express sigma x dt and
/// sigma x (sigma x dt) directly in terms of the VTV:
///   sigma x dt            = [b1 S - a1 S^2] vtv
///   sigma x (sigma x dt)  = [(1 - cos s) S + b1 S^2] vtv
/// with dt = vtv_to_body_thrust_velocity(sigma, vtv).
struct ThrustVelocityResiduals {
    double cross = 0.0;
    double double_cross = 0.0;
};
ThrustVelocityResiduals check_thrust_velocity_identities(const RotationVector& sigma,
                                                         const TranslationVector& vtv);

/// Residuals |lhs - rhs|_max / (1 + |lhs|_max) of six vector triple-product
/// identities in (sigma, p, omega) used when reducing the Savage PTV rate.
/// Both sides are evaluated in extended precision.
inline constexpr std::size_t kTripleProductIdentityCount = 6;
std::array<double, kTripleProductIdentityCount> check_triple_product_identities(
    const Vec3& sigma, const Vec3& p, const Vec3& omega);

}  // namespace ptv
