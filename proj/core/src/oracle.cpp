#include <ptv/errors.hpp>
#include <ptv/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace ptv {
namespace {

constexpr double kOracleMaxAngle = std::numbers::pi - 1e-3;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

struct FineState {
    Quaternion q = Quaternion::Identity();
    Vec3 v = Vec3::Zero();
    Vec3 p = Vec3::Zero();
};

struct FineRate {
    Eigen::Vector4d q;
    Vec3 v;
    Vec3 p;
};

FineRate fine_rate(const MotionProfile& profile, double t, const FineState& s) {
    const ProfileSample in = evaluate_profile(profile, t);
    const Quaternion qn = s.q.normalized();
    return {quat_rate(s.q, in.omega).coeffs(), qn.toRotationMatrix() * in.specific_force, s.v};
}

FineState advance(const FineState& s, const FineRate& r, double h) {
    FineState out;
    out.q.coeffs() = s.q.coeffs() + h * r.q;
    out.v = s.v + h * r.v;
    out.p = s.p + h * r.p;
    return out;
}

GroundTruthSample make_sample(double t, const FineState& s) {
    GroundTruthSample g;
    g.t = t;
    g.attitude = s.q.normalized();
    if (g.attitude.w() < 0.0) g.attitude.coeffs() = -g.attitude.coeffs();
    g.sigma = rotvec_from_quat(g.attitude);
    if (!(g.sigma.angle() < kOracleMaxAngle)) {
        throw DomainError("profile attitude angle " + std::to_string(g.sigma.angle()) +
                          " reaches pi - 1e-3 at t = " + std::to_string(t));
    }
    const Mat3 r = g.attitude.toRotationMatrix();
    g.interval_thrust_velocity = s.v;
    g.thrust_velocity = r.transpose() * s.v;
    g.double_integral = s.p;
    g.sv = thrust_velocity_to_vtv(g.sigma, g.thrust_velocity);
    g.sp = double_integral_to_ptv(g.sigma, g.double_integral);
    return g;
}

GroundTruth run_oracle(const MotionProfile& profile, const GroundTruthOptions& opt, int refine) {
    GroundTruth gt;
    gt.profile = profile;
    gt.options = opt;
    gt.options.refine_factor = refine;
    gt.samples.reserve(static_cast<std::size_t>(opt.coarse_samples) + 1);

    const long fine_steps = static_cast<long>(opt.coarse_samples) * refine;
    const double h = opt.t1 / static_cast<double>(fine_steps);
    FineState s;
    gt.samples.push_back(make_sample(0.0, s));
    for (long k = 0; k < fine_steps; ++k) {
        const double t = opt.t1 * static_cast<double>(k) / static_cast<double>(fine_steps);
        const FineRate k1 = fine_rate(profile, t, s);
        const FineRate k2 = fine_rate(profile, t + 0.5 * h, advance(s, k1, 0.5 * h));
        const FineRate k3 = fine_rate(profile, t + 0.5 * h, advance(s, k2, 0.5 * h));
        const FineRate k4 = fine_rate(profile, t + h, advance(s, k3, h));
        s.q.coeffs() += h / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
        s.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
        s.p += h / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
        s.q.normalize();
        // s.q starts at the identity and is never re-signed, so w < cos(max/2)
        // means the rotation since t = 0 has grown past the limit.
        if (s.q.w() <= std::cos(0.5 * kOracleMaxAngle)) {
            throw DomainError("profile attitude angle reaches pi - 1e-3 at t = " +
                              std::to_string(t + h));
        }
        if ((k + 1) % refine == 0) {
            const long idx = (k + 1) / refine;
            const double tk = idx == opt.coarse_samples
                                  ? opt.t1
                                  : opt.t1 * static_cast<double>(idx) / opt.coarse_samples;
            gt.samples.push_back(make_sample(tk, s));
        }
    }
    return gt;
}

template <class Get>
double scaled_difference(const GroundTruth& a, const GroundTruth& b, Get get) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k) {
        const Vec3 xa = get(a.samples[k]);
        const Vec3 xb = get(b.samples[k]);
        scale = std::max(scale, xa.cwiseAbs().maxCoeff());
        diff = std::max(diff, (xa - xb).cwiseAbs().maxCoeff());
    }
    if (diff == 0.0) return 0.0;
    return scale > 0.0 ? diff / scale : std::numeric_limits<double>::infinity();
}

Vec3 hermite(const std::vector<GroundTruthSample>& s, double dt, std::size_t k, double u,
             Vec3 (*get)(const GroundTruthSample&)) {
    const std::size_t n = s.size();
    auto tangent = [&](std::size_t i) -> Vec3 {
        if (i == 0) return (get(s[1]) - get(s[0])) / dt;
        if (i + 1 == n) return (get(s[n - 1]) - get(s[n - 2])) / dt;
        return (get(s[i + 1]) - get(s[i - 1])) / (2.0 * dt);
    };
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    return h00 * get(s[k]) + h10 * dt * tangent(k) + h01 * get(s[k + 1]) +
           h11 * dt * tangent(k + 1);
}

}  // namespace

double PolySinusoidChannel::operator()(double t) const {
    double acc = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * t + *it;
    return acc + amplitude * std::sin(frequency * t + phase);
}

ProfileSample evaluate_profile(const MotionProfile& profile, double t) {
    if (!(t >= 0.0) || t > profile.horizon * (1.0 + 1e-12)) {
        throw std::out_of_range("profile time " + std::to_string(t) + " outside [0, " +
                                std::to_string(profile.horizon) + "]");
    }
    return std::visit(
        overloaded{
            [](const ConstantMotion& m) { return ProfileSample{m.omega, m.specific_force}; },
            [t](const ConingMotion& m) {
                const double sa = std::sin(m.half_angle);
                const double wt = m.frequency * t;
                const Vec3 omega = m.frequency * Vec3(-sa * std::sin(wt), sa * std::cos(wt),
                                                      -2.0 * std::pow(std::sin(0.5 * m.half_angle), 2));
                return ProfileSample{omega, m.thrust * std::cos(m.thrust_frequency * t)};
            },
            [t](const PolySinusoidMotion& m) {
                return ProfileSample{Vec3(m.omega[0](t), m.omega[1](t), m.omega[2](t)),
                                     Vec3(m.specific_force[0](t), m.specific_force[1](t),
                                          m.specific_force[2](t))};
            }},
        profile.motion);
}

double max_scaled_difference(const GroundTruth& a, const GroundTruth& b) {
    if (a.samples.size() != b.samples.size()) {
        throw std::invalid_argument("ground truths sampled on different grids");
    }
    double worst = 0.0;
    auto take = [&](auto get) { worst = std::max(worst, scaled_difference(a, b, get)); };
    take([](const GroundTruthSample& g) { return g.sigma.vec(); });
    take([](const GroundTruthSample& g) { return g.thrust_velocity; });
    take([](const GroundTruthSample& g) { return g.interval_thrust_velocity; });
    take([](const GroundTruthSample& g) { return g.double_integral; });
    take([](const GroundTruthSample& g) { return g.sv.value(); });
    take([](const GroundTruthSample& g) { return g.sp.value(); });
    return worst;
}

GroundTruth generate_ground_truth(const MotionProfile& profile, const GroundTruthOptions& opt) {
    if (opt.refine_factor < 8) throw std::invalid_argument("refine_factor must be >= 8");
    if (opt.coarse_samples < 2) throw std::invalid_argument("coarse_samples must be >= 2");
    if (!(opt.t1 > 0.0) || opt.t1 > profile.horizon * (1.0 + 1e-12)) {
        throw std::invalid_argument("t1 must lie in (0, horizon]");
    }
    const GroundTruth coarse = run_oracle(profile, opt, opt.refine_factor);
    GroundTruth fine = run_oracle(profile, opt, 2 * opt.refine_factor);
    fine.refinement_change = max_scaled_difference(coarse, fine);
    if (!(fine.refinement_change < opt.refinement_tolerance)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", fine.refinement_change);
        throw ConvergenceError(std::string("ground truth moved by ") + buf +
                               " (relative) when doubling refine_factor");
    }
    return fine;
}

InputSource ground_truth_inputs(const GroundTruth& truth) {
    auto gt = std::make_shared<const GroundTruth>(truth);
    return [gt](double t) {
        const auto& s = gt->samples;
        const double dt = gt->options.t1 / gt->options.coarse_samples;
        const double u = t / dt;
        const double k_near = std::round(u);
        RateInputs in;
        in.omega = evaluate_profile(gt->profile, t).omega;
        if (std::abs(u - k_near) < 1e-6 && k_near >= 0.0 && k_near < static_cast<double>(s.size())) {
            const auto& g = s[static_cast<std::size_t>(k_near)];
            in.thrust_velocity = g.thrust_velocity;
            in.vtv = g.sv;
            return in;
        }
        if (u < 0.0 || u > static_cast<double>(s.size() - 1)) {
            throw std::out_of_range("input time " + std::to_string(t) + " outside ground truth");
        }
        const auto k = std::min(static_cast<std::size_t>(u), s.size() - 2);
        const double frac = u - static_cast<double>(k);
        in.thrust_velocity = hermite(s, dt, k, frac, [](const GroundTruthSample& g) { return g.thrust_velocity; });
        in.vtv = TranslationVector::vtv(
            hermite(s, dt, k, frac, [](const GroundTruthSample& g) { return g.sv.value(); }));
        return in;
    };
}

}  // namespace ptv
