#include <ptv/coeffs.hpp>
#include <ptv/errors.hpp>

#include <cmath>
#include <span>
#include <string>

namespace ptv {
namespace {

// Taylor coefficients in powers of s^2 (c0 + c1 s^2 + c2 s^4 + ...), from the
// exact rational expansions.
constexpr double kF5[] = {
    0.083333333333333329, 0.0013888888888888889, 3.3068783068783071e-05,
    8.2671957671957675e-07, 2.08767569878681e-08, 5.2841901386874932e-10,
    1.3382536530684679e-11, 3.3896802963225827e-13, 8.5860620562778452e-15};
constexpr double kW1[] = {
    0.16666666666666666, -0.0018518518518518519, -3.6743092298647854e-05,
    -5.7155921353452217e-07, -6.3300389089140807e-09, -2.3124016091116053e-11,
    1.0900442714940601e-12, 3.7413277694289646e-14, 7.6261776106888125e-16};
constexpr double kW2[] = {
    0.027777777777777776, 0.00015432098765432098, -2.4495394865765238e-07,
    -4.4227796285409457e-08, -1.1757750261244938e-09, -2.1173097694896781e-11,
    -2.7666624828868618e-13, -2.0039629929008879e-15};
constexpr double kW3[] = {
    0.0027777777777777779, 0.00013227513227513228, 4.9603174603174603e-06,
    1.670140559029448e-07, 5.2841901386874934e-09, 1.6059043836821613e-10,
    4.7455524148516162e-12, 1.3737699290044552e-13, 3.914763657404511e-15,
    1.1018005656720459e-16};
constexpr double kW4[] = {
    -0.0037037037037037038, -0.00014697236919459142, -3.429355281207133e-06,
    -5.0640311271312646e-08, -2.3124016091116055e-10, 1.3080531257928721e-11,
    5.2378588772005507e-13, 1.22018841771021e-14, 2.0397649465685897e-16,
    2.2210605079791198e-18};
constexpr double kW5[] = {
    0.00030864197530864197, -9.798157946306095e-07, -2.6536677771245673e-07,
    -9.4062002089959508e-09, -2.1173097694896781e-10, -3.3199949794642339e-12,
    -2.8055481900612429e-14, 3.1508098893951112e-16, 2.0098193341297625e-17,
    5.265129282423966e-19, 9.6741201021303885e-21};
constexpr double kA1[] = {
    0.5, -0.041666666666666664, 0.0013888888888888889, -2.4801587301587302e-05,
    2.7557319223985888e-07, -2.08767569878681e-09, 1.1470745597729725e-11};
constexpr double kA2[] = {
    0.16666666666666666, -0.0083333333333333332, 0.00019841269841269841,
    -2.7557319223985893e-06, 2.505210838544172e-08, -1.6059043836821613e-10};
constexpr double kB1[] = {
    1.0, -0.16666666666666666, 0.0083333333333333332, -0.00019841269841269841,
    2.7557319223985893e-06, -2.505210838544172e-08, 1.6059043836821613e-10};

double horner_even(std::span<const double> c, double s) {
    const double x = s * s;
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
}

// 1 - cos s without cancellation.
double one_minus_cos(double s) {
    const double h = std::sin(0.5 * s);
    return 2.0 * h * h;
}

double denom_w(double s) { return 2.0 + s * s - 2.0 * std::cos(s) - 2.0 * s * std::sin(s); }

void check_domain(double sigma) {
    if (!(sigma >= 0.0) || !(sigma < kMaxAngle)) {
        throw DomainError("rotation angle " + std::to_string(sigma) +
                          " outside [0, pi - 1e-6)");
    }
}

}  // namespace

std::string_view name(Coeff c) {
    switch (c) {
        case Coeff::F5: return "f5";
        case Coeff::W1: return "w1";
        case Coeff::W2: return "w2";
        case Coeff::W3: return "w3";
        case Coeff::W4: return "w4";
        case Coeff::W5: return "w5";
        case Coeff::A1: return "a1";
        case Coeff::A2: return "a2";
        case Coeff::B1: return "b1";
    }
    return "?";
}

double closed_form(Coeff c, double s) {
    const double s2 = s * s;
    switch (c) {
        case Coeff::F5:
            return (1.0 - s * std::sin(s) / (2.0 * one_minus_cos(s))) / s2;
        case Coeff::W1:
            return (2.0 - 2.0 * std::cos(s) - s * std::sin(s)) / (2.0 * denom_w(s));
        case Coeff::W2: {
            const double h = s * std::cos(0.5 * s) - 2.0 * std::sin(0.5 * s);
            return h * h / (s2 * denom_w(s));
        }
        case Coeff::W3:
            return (std::sin(s) + s) / (2.0 * s2 * s * one_minus_cos(s)) - 2.0 / (s2 * s2);
        case Coeff::W4: {
            const double d = denom_w(s);
            const double num = -6.0 * s + (2.0 + 3.0 * s2) * std::sin(s) -
                               (s2 * s + 2.0 * std::sin(s) - 6.0 * s) * std::cos(s);
            return num / (2.0 * s * d * d);
        }
        case Coeff::W5: {
            const double d = denom_w(s);
            const double h = s * std::cos(0.5 * s) - 2.0 * std::sin(0.5 * s);
            const double sh = std::sin(0.5 * s), s3h = std::sin(1.5 * s);
            const double bracket = -2.0 * s * (3.0 + s2) * std::cos(0.5 * s) +
                                   6.0 * s * std::cos(1.5 * s) + 12.0 * sh + 9.0 * s2 * sh -
                                   s2 * s2 * sh - 4.0 * s3h + s2 * s3h;
            return h / (s2 * s2 * d * d) * bracket;
        }
        case Coeff::A1:
            return one_minus_cos(s) / s2;
        case Coeff::A2:
            return (1.0 - std::sin(s) / s) / s2;
        case Coeff::B1:
            return std::sin(s) / s;
    }
    return 0.0;
}

double series(Coeff c, double s) {
    switch (c) {
        case Coeff::F5: return horner_even(kF5, s);
        case Coeff::W1: return horner_even(kW1, s);
        case Coeff::W2: return horner_even(kW2, s);
        case Coeff::W3: return horner_even(kW3, s);
        case Coeff::W4: return horner_even(kW4, s);
        case Coeff::W5: return horner_even(kW5, s);
        case Coeff::A1: return horner_even(kA1, s);
        case Coeff::A2: return horner_even(kA2, s);
        case Coeff::B1: return horner_even(kB1, s);
    }
    return 0.0;
}

double series_threshold(Coeff c) {
    switch (c) {
        case Coeff::A1:
        case Coeff::A2:
        case Coeff::B1: return 0.25;
        case Coeff::F5:
        case Coeff::W2: return 0.5;
        case Coeff::W1:
        case Coeff::W3: return 0.75;
        case Coeff::W4:
        case Coeff::W5: return 1.25;
    }
    return 0.0;
}

double evaluate_unchecked(Coeff c, double sigma) {
    return sigma < series_threshold(c) ? series(c, sigma) : closed_form(c, sigma);
}

double evaluate(Coeff c, double sigma) {
    check_domain(sigma);
    return evaluate_unchecked(c, sigma);
}

CoeffSet eval_all(double s) {
    check_domain(s);
    return CoeffSet{
        .f5 = evaluate_unchecked(Coeff::F5, s),
        .w1 = evaluate_unchecked(Coeff::W1, s),
        .w2 = evaluate_unchecked(Coeff::W2, s),
        .w3 = evaluate_unchecked(Coeff::W3, s),
        .w4 = evaluate_unchecked(Coeff::W4, s),
        .w5 = evaluate_unchecked(Coeff::W5, s),
        .a1 = evaluate_unchecked(Coeff::A1, s),
        .a2 = evaluate_unchecked(Coeff::A2, s),
        .b1 = evaluate_unchecked(Coeff::B1, s),
    };
}

double eval_f5(double s) { return evaluate(Coeff::F5, s); }

W12 eval_w12(double s) {
    check_domain(s);
    return {evaluate_unchecked(Coeff::W1, s), evaluate_unchecked(Coeff::W2, s)};
}

W345 eval_w345(double s) {
    check_domain(s);
    return {evaluate_unchecked(Coeff::W3, s), evaluate_unchecked(Coeff::W4, s),
            evaluate_unchecked(Coeff::W5, s)};
}

MatrixCoeffs eval_matrix_coeffs(double s) {
    check_domain(s);
    return {evaluate_unchecked(Coeff::A1, s), evaluate_unchecked(Coeff::A2, s),
            evaluate_unchecked(Coeff::B1, s)};
}

W12Rate dw12_consistency(const RotationVector& sigma, const Vec3& omega) {
    sigma.require_in_domain();
    const double s = sigma.angle();
    const double rate = sigma.vec().dot(omega);
    return {rate * evaluate_unchecked(Coeff::W4, s), rate * evaluate_unchecked(Coeff::W5, s)};
}

}  // namespace ptv
