#include <ptv/coeffs.hpp>
#include <ptv/errors.hpp>
#include <ptv/rotkin.hpp>

#include <cmath>
#include <string>

namespace ptv {

bool RotationVector::in_domain() const { return v_.allFinite() && v_.norm() < kMaxAngle; }

const RotationVector& RotationVector::require_in_domain() const {
    if (!in_domain()) {
        throw DomainError("rotation vector magnitude " + std::to_string(v_.norm()) +
                          " outside [0, pi - 1e-6)");
    }
    return *this;
}

Mat3 skew(const Vec3& v) {
    Mat3 s;
    s << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return s;
}

Mat3 rodrigues(const RotationVector& sigma) {
    const double s = sigma.angle();
    const Mat3 S = skew(sigma.vec());
    return Mat3::Identity() + evaluate_unchecked(Coeff::B1, s) * S +
           evaluate_unchecked(Coeff::A1, s) * S * S;
}

Quaternion quat_from_rotvec(const RotationVector& sigma) {
    const double s = sigma.angle();
    const double half = 0.5 * s;
    // sin(s/2)/s = 0.5 * sinc(s/2)
    const Vec3 v = 0.5 * evaluate_unchecked(Coeff::B1, half) * sigma.vec();
    Quaternion q(std::cos(half), v.x(), v.y(), v.z());
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    return q;
}

RotationVector rotvec_from_quat(const Quaternion& q_in) {
    Quaternion q = q_in.normalized();
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    const Vec3 v = q.vec();
    const double n = v.norm();
    const double angle = 2.0 * std::atan2(n, q.w());
    if (!(angle < kMaxAngle)) {
        throw DomainError("quaternion rotation angle " + std::to_string(angle) +
                          " at or beyond pi - 1e-6");
    }
    // angle / n, with atan2(n, w)/n -> (1/w)(1 - n^2/(3 w^2)) for small n
    double scale;
    if (n < 1e-7) {
        const double r = n / q.w();
        scale = 2.0 / q.w() * (1.0 - r * r / 3.0);
    } else {
        scale = angle / n;
    }
    return RotationVector(scale * v);
}

Vec3 bortz_rate(const RotationVector& sigma, const Vec3& omega) {
    sigma.require_in_domain();
    const Vec3& s = sigma.vec();
    const Vec3 sxw = s.cross(omega);
    return omega + 0.5 * sxw + evaluate_unchecked(Coeff::F5, sigma.angle()) * s.cross(sxw);
}

Quaternion quat_rate(const Quaternion& q, const Vec3& omega) {
    Quaternion r = q * Quaternion(0.0, omega.x(), omega.y(), omega.z());
    r.coeffs() *= 0.5;
    return r;
}

}  // namespace ptv
