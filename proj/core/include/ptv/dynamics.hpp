// Rate equations for the position translation vectors and a fixed-step RK4
// integrator over the coupled (sigma, translation) state.
#pragma once

#include <ptv/errors.hpp>
#include <ptv/rotkin.hpp>
#include <ptv/transvec.hpp>

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace ptv {

/// Which rate equation drives the translational state.
enum class Formulation {
    PtvThrust,   ///< new PTV driven by the body-referenced thrust velocity
    PtvVtv,      ///< new PTV driven by the VTV
    SavageVtv,   ///< Savage's PTV driven by the VTV
    AttitudeOnly ///< rotation vector only
};

std::string_view name(Formulation f);
/// Parses "ptv-thrust", "ptv-vtv", "savage-vtv", "attitude".
std::optional<Formulation> parse_formulation(std::string_view s);

/// d(sigma'_p)/dt from the body-referenced thrust velocity:
///   dt + 1/2 (s x dt + p x w) + f5 [s x (s x dt) + s x (p x w) + p x (s x w)]
///      + w3 (s . p) s x (s x w)
Vec3 ptv_rate_thrust(const RotationVector& sigma, const TranslationVector& sp, const Vec3& omega,
                     const Vec3& thrust_velocity);

/// d(sigma'_p)/dt from the VTV:
///   v + 1/2 p x w + f5 [s x (p x w) + p x (s x w)] + w3 (s . p) s x (s x w)
Vec3 ptv_rate_vtv(const RotationVector& sigma, const TranslationVector& sp, const Vec3& omega,
                  const TranslationVector& sv);

/// d(zeta)/dt from the VTV. The new PTV appearing in the nine-term rate is
/// recovered from zeta through the inverse of the Savage map.
Vec3 savage_rate_vtv(const RotationVector& sigma, const TranslationVector& zeta, const Vec3& omega,
                     const TranslationVector& sv);

/// Per-time inputs. Formulations read only what they need: PtvThrust needs
/// thrust_velocity, PtvVtv and SavageVtv need vtv.
struct RateInputs {
    Vec3 omega = Vec3::Zero();
    std::optional<Vec3> thrust_velocity;
    std::optional<TranslationVector> vtv;
};

using InputSource = std::function<RateInputs(double t)>;

struct KinematicState {
    double t = 0.0;
    RotationVector sigma;
    TranslationVector sp = TranslationVector::new_ptv(Vec3::Zero());
    TranslationVector zeta = TranslationVector::savage_ptv(Vec3::Zero());
};

/// States at t0, t0 + h, ..., t1. For the PTV formulations zeta is filled in
/// through the Savage map; for SavageVtv sp is filled in through its inverse.
using Trajectory = std::vector<KinematicState>;

/// Thrown when sigma leaves the domain mid-run. Carries the trajectory up to
/// the last valid state.
class IntegrationAborted : public DomainError {
public:
    IntegrationAborted(const std::string& what, Trajectory partial)
        : DomainError(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const { return partial_; }

private:
    Trajectory partial_;
};

/// Classical fixed-step RK4 from `initial` (at initial.t) to t1. sigma is
/// propagated by the rotation-vector rate alongside the translational state.
Trajectory rk4_integrate(Formulation formulation, const InputSource& inputs,
                         const KinematicState& initial, double t1, int steps);

/// Same, starting from the zero state at t0.
Trajectory rk4_integrate(Formulation formulation, const InputSource& inputs, double t0, double t1,
                         int steps);

}  // namespace ptv
