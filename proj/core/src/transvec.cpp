#include <ptv/coeffs.hpp>
#include <ptv/errors.hpp>
#include <ptv/transvec.hpp>

#include <Eigen/LU>

#include <cmath>
#include <string>

namespace ptv {
namespace {

Vec3 solve3(const Mat3& m, const Vec3& rhs, const char* what) {
    Eigen::FullPivLU<Mat3> lu(m);
    if (!lu.isInvertible()) throw SingularSystem(std::string("singular system in ") + what);
    return lu.solve(rhs);
}

Mat3 operator_matrix(const RotationVector& sigma, double c1, double c2) {
    const Mat3 S = skew(sigma.vec());
    return Mat3::Identity() + c1 * S + c2 * S * S;
}

using Vec3L = Eigen::Matrix<long double, 3, 1>;

double residual(const Vec3L& lhs, const Vec3L& rhs) {
    const long double lmax = lhs.cwiseAbs().maxCoeff();
    return static_cast<double>((lhs - rhs).cwiseAbs().maxCoeff() / (1.0L + lmax));
}

}  // namespace

std::string_view name(TranslationKind k) {
    switch (k) {
        case TranslationKind::Vtv: return "vtv";
        case TranslationKind::NewPtv: return "new-ptv";
        case TranslationKind::SavagePtv: return "savage-ptv";
    }
    return "?";
}

const TranslationVector& TranslationVector::require(TranslationKind expected) const {
    if (kind_ != expected) {
        throw KindMismatch("expected " + std::string(name(expected)) + ", got " +
                           std::string(name(kind_)));
    }
    return *this;
}

Twist make_twist(const RotationVector& sigma, const Vec3& omega, const TranslationVector& vtv) {
    return Twist{omega, vtv_to_body_thrust_velocity(sigma, vtv)};
}

Mat3 body_thrust_velocity_matrix(const RotationVector& sigma) {
    const auto c = eval_matrix_coeffs(sigma.require_in_domain().angle());
    return operator_matrix(sigma, -c.a1, c.a2);
}

Mat3 interval_frame_matrix(const RotationVector& sigma) {
    const auto c = eval_matrix_coeffs(sigma.require_in_domain().angle());
    return operator_matrix(sigma, c.a1, c.a2);
}

Mat3 savage_map_matrix(const RotationVector& sigma) {
    const auto w = eval_w12(sigma.require_in_domain().angle());
    return operator_matrix(sigma, w.w1, w.w2);
}

Vec3 vtv_to_body_thrust_velocity(const RotationVector& sigma, const TranslationVector& vtv) {
    vtv.require(TranslationKind::Vtv);
    return body_thrust_velocity_matrix(sigma) * vtv.value();
}

Vec3 vtv_to_interval_thrust_velocity(const RotationVector& sigma, const TranslationVector& vtv) {
    vtv.require(TranslationKind::Vtv);
    return interval_frame_matrix(sigma) * vtv.value();
}

TranslationVector thrust_velocity_to_vtv(const RotationVector& sigma, const Vec3& thrust_velocity) {
    return TranslationVector::vtv(
        solve3(body_thrust_velocity_matrix(sigma), thrust_velocity, "thrust_velocity_to_vtv"));
}

Vec3 ptv_to_double_integral(const RotationVector& sigma, const TranslationVector& ptv) {
    ptv.require(TranslationKind::NewPtv);
    return interval_frame_matrix(sigma) * ptv.value();
}

TranslationVector double_integral_to_ptv(const RotationVector& sigma, const Vec3& dint) {
    return TranslationVector::new_ptv(
        solve3(interval_frame_matrix(sigma), dint, "double_integral_to_ptv"));
}

TranslationVector new_ptv_to_savage(const RotationVector& sigma, const TranslationVector& ptv) {
    ptv.require(TranslationKind::NewPtv);
    return TranslationVector::savage_ptv(savage_map_matrix(sigma) * ptv.value());
}

TranslationVector savage_to_new_ptv(const RotationVector& sigma, const TranslationVector& zeta) {
    zeta.require(TranslationKind::SavagePtv);
    return TranslationVector::new_ptv(
        solve3(savage_map_matrix(sigma), zeta.value(), "savage_to_new_ptv"));
}

ThrustVelocityResiduals check_thrust_velocity_identities(const RotationVector& sigma,
                                                         const TranslationVector& vtv) {
    const Vec3 dt = vtv_to_body_thrust_velocity(sigma, vtv);
    const Vec3& s = sigma.vec();
    const Vec3& v = vtv.value();
    const auto c = eval_matrix_coeffs(sigma.angle());
    const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * sigma.angle()), 2);

    const Vec3 lhs1 = s.cross(dt);
    const Vec3 lhs2 = s.cross(lhs1);
    const Vec3 sv = s.cross(v);
    const Vec3 ssv = s.cross(sv);
    const Vec3 rhs1 = c.b1 * sv - c.a1 * ssv;
    const Vec3 rhs2 = one_minus_cos * sv + c.b1 * ssv;
    return {(lhs1 - rhs1).cwiseAbs().maxCoeff(), (lhs2 - rhs2).cwiseAbs().maxCoeff()};
}

std::array<double, kTripleProductIdentityCount> check_triple_product_identities(
    const Vec3& sigma_d, const Vec3& p_d, const Vec3& omega_d) {
    const Vec3L s = sigma_d.cast<long double>();
    const Vec3L p = p_d.cast<long double>();
    const Vec3L w = omega_d.cast<long double>();
    const long double s2 = s.squaredNorm();
    const long double sw = s.dot(w), sp = s.dot(p);

    const Vec3L pxw = p.cross(w);
    const Vec3L sxp = s.cross(p);
    const Vec3L sxw = s.cross(w);
    const Vec3L sxsxw = s.cross(sxw);
    const Vec3L triple_s = p.dot(sxw) * s;

    std::array<double, kTripleProductIdentityCount> r{};
    r[0] = residual(s.cross(s.cross(pxw)), sw * sxp - sp * sxw);
    r[1] = residual(w.cross(sxp), p.cross(sxw) - s.cross(pxw));
    r[2] = residual(triple_s, p.cross(sxsxw) + sp * sxw);
    r[3] = residual(triple_s, sw * p.cross(s) - s2 * pxw + sp * sxw);
    r[4] = residual(sxsxw.cross(sxp), sw * s.cross(sxp) - s2 * w.cross(sxp));
    r[5] = residual(sp * sxsxw, sw * s.cross(sxp) + s2 * s.cross(pxw));
    return r;
}

}  // namespace ptv
