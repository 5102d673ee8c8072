// Analytic motion profiles and the brute-force ground-truth generator.
//
// The generator never touches the rate equations under test. It integrates
// attitude and specific force directly at a high rate:
//   q'   = 1/2 q (x) (0, omega)
//   v_i' = R(q) f_b            (interval-start frame)
//   p_i' = v_i
// and derives every translation vector algebraically from (q, v_i, p_i).
#pragma once

#include <ptv/dynamics.hpp>
#include <ptv/rotkin.hpp>
#include <ptv/transvec.hpp>

#include <array>
#include <numbers>
#include <variant>
#include <vector>

namespace ptv {

/// Constant body rate and specific force.
struct ConstantMotion {
    Vec3 omega = Vec3::Zero();
    Vec3 specific_force = Vec3::Zero();
};

/// Exact coning: the body z axis sweeps a cone of half-angle `half_angle`
/// at `frequency` rad/s. Body rate
///   omega(t) = frequency * (-sin a sin wt, sin a cos wt, -(1 - cos a)),
/// specific force f_b(t) = thrust * cos(thrust_frequency * t).
struct ConingMotion {
    double half_angle = 0.01;
    double frequency = 2.0 * std::numbers::pi;
    Vec3 thrust = Vec3(0.0, 0.0, 9.8);
    double thrust_frequency = std::numbers::pi;
};

/// One scalar channel: sum_k poly[k] t^k + amplitude sin(frequency t + phase).
struct PolySinusoidChannel {
    std::vector<double> poly;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;

    double operator()(double t) const;
};

struct PolySinusoidMotion {
    std::array<PolySinusoidChannel, 3> omega;
    std::array<PolySinusoidChannel, 3> specific_force;
};

struct MotionProfile {
    std::variant<ConstantMotion, ConingMotion, PolySinusoidMotion> motion;
    double horizon = 1.0;  ///< [s]; profiles are defined on [0, horizon]
};

struct ProfileSample {
    Vec3 omega;
    Vec3 specific_force;
};

/// Closed-form evaluation. Throws std::out_of_range for t outside [0, horizon].
ProfileSample evaluate_profile(const MotionProfile& profile, double t);

struct GroundTruthSample {
    double t = 0.0;
    Quaternion attitude = Quaternion::Identity();  ///< body -> interval-start frame
    RotationVector sigma;
    Vec3 thrust_velocity = Vec3::Zero();           ///< body-referenced
    Vec3 interval_thrust_velocity = Vec3::Zero();  ///< interval-start frame
    Vec3 double_integral = Vec3::Zero();           ///< interval-start frame
    TranslationVector sv = TranslationVector::vtv(Vec3::Zero());
    TranslationVector sp = TranslationVector::new_ptv(Vec3::Zero());
};

struct GroundTruthOptions {
    double t1 = 1.0;
    int coarse_samples = 1000;  ///< number of output intervals on [0, t1]
    int refine_factor = 8;      ///< fine RK4 steps per output interval, >= 8
    double refinement_tolerance = 1e-10;
};

struct GroundTruth {
    MotionProfile profile;
    GroundTruthOptions options;
    std::vector<GroundTruthSample> samples;  ///< coarse_samples + 1 entries
    /// Largest trajectory-scaled change of any output when the refine factor
    /// was doubled.
    double refinement_change = 0.0;
};

/// Runs the oracle at refine_factor and 2 * refine_factor and returns the
/// finer run. Throws DomainError if the attitude angle reaches pi - 1e-3 and
/// ConvergenceError if any output moves by more than refinement_tolerance
/// (relative to its largest magnitude over the run) between the two.
GroundTruth generate_ground_truth(const MotionProfile& profile, const GroundTruthOptions& options);

/// Largest trajectory-scaled difference between two runs on the same grid.
double max_scaled_difference(const GroundTruth& a, const GroundTruth& b);

/// Rate inputs drawn from a ground truth: omega from the profile in closed
/// form, VTV and thrust velocity from the samples (exact at sample times,
/// cubic Hermite in between). Sampling at twice the RK4 step rate puts every
/// RK4 stage time on a sample.
InputSource ground_truth_inputs(const GroundTruth& truth);

}  // namespace ptv
