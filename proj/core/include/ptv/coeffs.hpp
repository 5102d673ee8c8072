// Scalar coefficient functions of the rotation angle.
//
// Every coefficient below has a removable singularity at sigma = 0. Each is
// evaluated from its closed form above a per-coefficient threshold and from an
// even Taylor polynomial below it. Thresholds sit where the closed form is
// still accurate to a few ulp; the polynomials are truncated once the tail
// drops under 1e-19 at the threshold, so the two branches agree to ~1e-15.
#pragma once

#include <ptv/rotkin.hpp>

#include <array>
#include <string_view>

namespace ptv {

enum class Coeff {
    F5,  ///< (1/s^2)(1 - s sin s / (2(1 - cos s))), the rotation-vector rate coefficient
    W1,  ///< (2 - 2cos s - s sin s) / (2 D)
    W2,  ///< (s cos(s/2) - 2 sin(s/2))^2 / (s^2 D)
    W3,  ///< (sin s + s) / (2 s^3 (1 - cos s)) - 2/s^4
    W4,  ///< w1'(s)/s
    W5,  ///< w2'(s)/s
    A1,  ///< (1 - cos s)/s^2
    A2,  ///< (1 - sin s/s)/s^2
    B1,  ///< sin s/s
};
// D = 2 + s^2 - 2cos s - 2 s sin s throughout.

inline constexpr std::array<Coeff, 9> kAllCoeffs = {
    Coeff::F5, Coeff::W1, Coeff::W2, Coeff::W3, Coeff::W4,
    Coeff::W5, Coeff::A1, Coeff::A2, Coeff::B1};

std::string_view name(Coeff c);

/// Checked evaluation: throws DomainError unless 0 <= sigma < kMaxAngle.
double evaluate(Coeff c, double sigma);

/// Closed-form branch, no domain check. Loses precision as sigma -> 0.
double closed_form(Coeff c, double sigma);
/// Taylor branch, no domain check. Only accurate near 0.
double series(Coeff c, double sigma);
/// Angle below which evaluate() uses series().
double series_threshold(Coeff c);
/// Branch-selecting evaluation without the domain check.
double evaluate_unchecked(Coeff c, double sigma);

/// All coefficients at one angle.
struct CoeffSet {
    double f5 = 0, w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0, a1 = 0, a2 = 0, b1 = 0;
};

CoeffSet eval_all(double sigma);

double eval_f5(double sigma);

struct W12 {
    double w1, w2;
};
W12 eval_w12(double sigma);

struct W345 {
    double w3, w4, w5;
};
W345 eval_w345(double sigma);

struct MatrixCoeffs {
    double a1, a2, b1;
};
MatrixCoeffs eval_matrix_coeffs(double sigma);

/// Time derivatives of w1(|sigma|) and w2(|sigma|) along sigma' from the
/// rotation-vector rate: ((sigma . omega) w4, (sigma . omega) w5).
struct W12Rate {
    double dw1, dw2;
};
W12Rate dw12_consistency(const RotationVector& sigma, const Vec3& omega);

}  // namespace ptv
