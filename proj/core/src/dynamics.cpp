#include <ptv/coeffs.hpp>
#include <ptv/dynamics.hpp>

#include <stdexcept>
#include <string>

namespace ptv {

std::string_view name(Formulation f) {
    switch (f) {
        case Formulation::PtvThrust: return "ptv-thrust";
        case Formulation::PtvVtv: return "ptv-vtv";
        case Formulation::SavageVtv: return "savage-vtv";
        case Formulation::AttitudeOnly: return "attitude";
    }
    return "?";
}

std::optional<Formulation> parse_formulation(std::string_view s) {
    for (auto f : {Formulation::PtvThrust, Formulation::PtvVtv, Formulation::SavageVtv,
                   Formulation::AttitudeOnly}) {
        if (s == name(f)) return f;
    }
    return std::nullopt;
}

Vec3 ptv_rate_thrust(const RotationVector& sigma, const TranslationVector& sp, const Vec3& omega,
                     const Vec3& dt) {
    sp.require(TranslationKind::NewPtv);
    const double s = sigma.require_in_domain().angle();
    const double f5 = evaluate_unchecked(Coeff::F5, s);
    const double w3 = evaluate_unchecked(Coeff::W3, s);
    const Vec3& sg = sigma.vec();
    const Vec3& p = sp.value();

    const Vec3 sxdt = sg.cross(dt);
    const Vec3 pxw = p.cross(omega);
    const Vec3 sxw = sg.cross(omega);
    return dt + 0.5 * (sxdt + pxw) +
           f5 * (sg.cross(sxdt) + sg.cross(pxw) + p.cross(sxw)) +
           w3 * sg.dot(p) * sg.cross(sxw);
}

Vec3 ptv_rate_vtv(const RotationVector& sigma, const TranslationVector& sp, const Vec3& omega,
                  const TranslationVector& sv) {
    sp.require(TranslationKind::NewPtv);
    sv.require(TranslationKind::Vtv);
    const double s = sigma.require_in_domain().angle();
    const double f5 = evaluate_unchecked(Coeff::F5, s);
    const double w3 = evaluate_unchecked(Coeff::W3, s);
    const Vec3& sg = sigma.vec();
    const Vec3& p = sp.value();

    const Vec3 pxw = p.cross(omega);
    const Vec3 sxw = sg.cross(omega);
    return sv.value() + 0.5 * pxw + f5 * (sg.cross(pxw) + p.cross(sxw)) +
           w3 * sg.dot(p) * sg.cross(sxw);
}

Vec3 savage_rate_vtv(const RotationVector& sigma, const TranslationVector& zeta, const Vec3& omega,
                     const TranslationVector& sv) {
    sv.require(TranslationKind::Vtv);
    const Vec3 p = savage_to_new_ptv(sigma, zeta).value();
    const CoeffSet c = eval_all(sigma.angle());
    const double s2 = sigma.vec().squaredNorm();
    const Vec3& sg = sigma.vec();
    const Vec3& v = sv.value();

    const Vec3 sxv = sg.cross(v);
    const Vec3 pxw = p.cross(omega);
    const Vec3 sxw = sg.cross(omega);
    const Vec3 sxp = sg.cross(p);
    const double sp = sg.dot(p);
    const double sw = sg.dot(omega);

    const double k_pxw = 0.5 - c.w1 - s2 * (0.5 * c.w2 - c.f5 * c.w1);
    const double k_sxpxw = c.f5 + 0.5 * c.w1 - 2.0 * c.w2 + s2 * c.w3 * (1.0 - s2 * c.w2);
    const double k_pxsxw = c.f5 - 0.5 * c.w1 + c.w2 - s2 * c.f5 * c.w2;
    const double k_sp_sxw = 0.5 * c.w2 - 2.0 * c.f5 * c.w1 - s2 * c.w1 * c.w3;
    const double k_sw_sxp = 2.0 * c.f5 * c.w1 + c.w4;
    const double k_sw_sxsxp = c.w5 + c.f5 * c.w2 + c.w3 - s2 * c.w3 * c.w2;

    return v + c.w1 * sxv + c.w2 * sg.cross(sxv) + k_pxw * pxw + k_sxpxw * sg.cross(pxw) +
           k_pxsxw * p.cross(sxw) + k_sp_sxw * sp * sxw + k_sw_sxp * sw * sxp +
           k_sw_sxsxp * sw * sg.cross(sxp);
}

namespace {

struct Derivative {
    Vec3 sigma;
    Vec3 translation;
};

Derivative rates(Formulation f, const Vec3& sigma_v, const Vec3& x, const RateInputs& in) {
    const RotationVector sigma(sigma_v);
    Derivative d{bortz_rate(sigma, in.omega), Vec3::Zero()};
    switch (f) {
        case Formulation::PtvThrust:
            if (!in.thrust_velocity) throw std::invalid_argument("ptv-thrust needs thrust_velocity input");
            d.translation = ptv_rate_thrust(sigma, TranslationVector::new_ptv(x), in.omega,
                                            *in.thrust_velocity);
            break;
        case Formulation::PtvVtv:
            if (!in.vtv) throw std::invalid_argument("ptv-vtv needs vtv input");
            d.translation = ptv_rate_vtv(sigma, TranslationVector::new_ptv(x), in.omega, *in.vtv);
            break;
        case Formulation::SavageVtv:
            if (!in.vtv) throw std::invalid_argument("savage-vtv needs vtv input");
            d.translation =
                savage_rate_vtv(sigma, TranslationVector::savage_ptv(x), in.omega, *in.vtv);
            break;
        case Formulation::AttitudeOnly:
            break;
    }
    return d;
}

KinematicState make_state(Formulation f, double t, const Vec3& sigma_v, const Vec3& x) {
    KinematicState st;
    st.t = t;
    st.sigma = RotationVector(sigma_v);
    switch (f) {
        case Formulation::PtvThrust:
        case Formulation::PtvVtv:
            st.sp = TranslationVector::new_ptv(x);
            st.zeta = new_ptv_to_savage(st.sigma, st.sp);
            break;
        case Formulation::SavageVtv:
            st.zeta = TranslationVector::savage_ptv(x);
            st.sp = savage_to_new_ptv(st.sigma, st.zeta);
            break;
        case Formulation::AttitudeOnly:
            break;
    }
    return st;
}

}  // namespace

Trajectory rk4_integrate(Formulation f, const InputSource& inputs, const KinematicState& initial,
                         double t1, int steps) {
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
    initial.sigma.require_in_domain();

    const double t0 = initial.t;
    const double h = (t1 - t0) / steps;
    Vec3 sigma = initial.sigma.vec();
    Vec3 x = f == Formulation::SavageVtv ? initial.zeta.require(TranslationKind::SavagePtv).value()
                                         : initial.sp.require(TranslationKind::NewPtv).value();

    Trajectory out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(make_state(f, t0, sigma, x));

    for (int k = 0; k < steps; ++k) {
        const double t = t0 + k * h;
        const double t_next = k + 1 == steps ? t1 : t0 + (k + 1) * h;
        try {
            const RateInputs in0 = inputs(t);
            const RateInputs in_mid = inputs(t + 0.5 * h);
            const RateInputs in1 = inputs(t_next);

            const Derivative k1 = rates(f, sigma, x, in0);
            const Derivative k2 = rates(f, sigma + 0.5 * h * k1.sigma, x + 0.5 * h * k1.translation, in_mid);
            const Derivative k3 = rates(f, sigma + 0.5 * h * k2.sigma, x + 0.5 * h * k2.translation, in_mid);
            const Derivative k4 = rates(f, sigma + h * k3.sigma, x + h * k3.translation, in1);

            const Vec3 sigma_next =
                sigma + h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma);
            const Vec3 x_next = x + h / 6.0 * (k1.translation + 2.0 * k2.translation +
                                               2.0 * k3.translation + k4.translation);
            RotationVector(sigma_next).require_in_domain();
            sigma = sigma_next;
            x = x_next;
            out.push_back(make_state(f, t_next, sigma, x));
        } catch (const DomainError& e) {
            throw IntegrationAborted("rk4_integrate aborted at t = " + std::to_string(t) + ": " +
                                         e.what(),
                                     std::move(out));
        }
    }
    return out;
}

Trajectory rk4_integrate(Formulation f, const InputSource& inputs, double t0, double t1, int steps) {
    KinematicState initial;
    initial.t = t0;
    return rk4_integrate(f, inputs, initial, t1, steps);
}

}  // namespace ptv
