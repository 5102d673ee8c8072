// Deterministic random inputs for property tests.
#pragma once

#include <ptv/rotkin.hpp>

#include <cmath>
#include <cstdint>
#include <random>

namespace ptv::testing {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Vec3 box(double half_width) {
        const double x = uniform(-half_width, half_width);
        const double y = uniform(-half_width, half_width);
        const double z = uniform(-half_width, half_width);
        return {x, y, z};
    }

    Vec3 direction() {
        std::normal_distribution<double> n(0.0, 1.0);
        Vec3 d;
        do {
            const double x = n(rng_), y = n(rng_), z = n(rng_);
            d = {x, y, z};
        } while (d.norm() == 0.0);
        return d.normalized();
    }

    /// Uniform in the ball of the given radius.
    Vec3 ball(double radius) {
        const Vec3 d = direction();
        return radius * std::cbrt(uniform(0.0, 1.0)) * d;
    }

    RotationVector rotation(double radius) { return RotationVector(ball(radius)); }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace ptv::testing
