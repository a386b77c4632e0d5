#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sphalu/matrix.hpp"

namespace sphalu {

// Seeded RNG with explicit bit-level draws so streams are reproducible.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t bits() { return eng_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(eng_() % static_cast<uint64_t>(hi - lo + 1));
    }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    cplx complex_gaussian() { return {gaussian(), gaussian()}; }

    // Uniform on the unit sphere of C^n.
    std::vector<cplx> unit_vector(int n) {
        std::vector<cplx> v(n);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (cplx& z : v) {
                z = complex_gaussian();
                norm2 += std::norm(z);
            }
        } while (norm2 < 1e-12);
        const double inv = 1.0 / std::sqrt(norm2);
        for (cplx& z : v) z *= inv;
        return v;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace sphalu
