// 100-digit reference values for the coefficient functions and the maps
// built from them.
#pragma once

#include <ptv/coeffs.hpp>
#include <ptv/rotkin.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>

namespace ptv::testing {

using hp = boost::multiprecision::cpp_bin_float_100;

inline hp hp_denominator(const hp& s) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    return 2 + s * s - 2 * cos(s) - 2 * s * sin(s);
}

inline hp hp_w1(const hp& s) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    return (2 - 2 * cos(s) - s * sin(s)) / (2 * hp_denominator(s));
}

inline hp hp_w2(const hp& s) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    const hp n = s * cos(s / 2) - 2 * sin(s / 2);
    return n * n / (s * s * hp_denominator(s));
}

// d/ds by a central difference; the step is far below double resolution and
// the truncation error is O(step^2).
template <class F>
hp hp_derivative(F f, const hp& s) {
    const hp step("1e-35");
    return (f(s + step) - f(s - step)) / (2 * step);
}

/// Closed form evaluated in 100-digit arithmetic. Valid for s >= 1e-8.
inline hp hp_coeff(Coeff c, const hp& s) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    switch (c) {
        case Coeff::F5: return (1 - s * sin(s) / (2 * (1 - cos(s)))) / (s * s);
        case Coeff::W1: return hp_w1(s);
        case Coeff::W2: return hp_w2(s);
        case Coeff::W3: return (sin(s) + s) / (2 * s * s * s * (1 - cos(s))) - 2 / (s * s * s * s);
        case Coeff::W4: return hp_derivative(hp_w1, s) / s;
        case Coeff::W5: return hp_derivative(hp_w2, s) / s;
        case Coeff::A1: return (1 - cos(s)) / (s * s);
        case Coeff::A2: return (1 - sin(s) / s) / (s * s);
        case Coeff::B1: return sin(s) / s;
    }
    throw std::logic_error("unknown coefficient");
}

inline double hp_coeff_d(Coeff c, double s) { return static_cast<double>(hp_coeff(c, hp(s))); }

using HpVec3 = Eigen::Matrix<hp, 3, 1>;

inline HpVec3 to_hp(const Vec3& v) { return {hp(v.x()), hp(v.y()), hp(v.z())}; }

inline Vec3 to_double(const HpVec3& v) {
    return {static_cast<double>(v.x()), static_cast<double>(v.y()), static_cast<double>(v.z())};
}

/// (I + c1 S + c2 S^2) p in 100 digits, with S the cross-product matrix of sigma.
inline Vec3 hp_apply(Coeff c1, Coeff c2, double c1_sign, const Vec3& sigma, const Vec3& p) {
    const HpVec3 s = to_hp(sigma);
    const HpVec3 v = to_hp(p);
    const hp angle = boost::multiprecision::sqrt(s.squaredNorm());
    const HpVec3 sv = s.cross(v);
    const HpVec3 ssv = s.cross(sv);
    return to_double(v + c1_sign * hp_coeff(c1, angle) * sv + hp_coeff(c2, angle) * ssv);
}

}  // namespace ptv::testing
