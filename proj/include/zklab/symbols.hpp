#ifndef ZKLAB_SYMBOLS_HPP
#define ZKLAB_SYMBOLS_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "zklab/errors.hpp"

namespace zklab {

// Dispersion symbol of d_t + d_x Laplacian: omega(xi,mu) = xi (xi^2 + mu^2).
inline double omega(double xi, double mu) { return xi * (xi * xi + mu * mu); }

// x-component of the group velocity, h = d omega / d xi = 3 xi^2 + mu^2.
inline double group_velocity(double xi, double mu) { return 3.0 * xi * xi + mu * mu; }

// Three-wave resonance function
//   Omega(k1,k2) = omega(k1+k2) - omega(k1) - omega(k2).
inline double resonance(double xi1, double mu1, double xi2, double mu2) {
    // grouped so the expression is exactly symmetric in floating arithmetic
    return omega(xi1 + xi2, mu1 + mu2) - (omega(xi1, mu1) + omega(xi2, mu2));
}

// Algebraically expanded form of the resonance function, kept as an
// independent evaluation path:
//   xi3^3 - xi1^3 - xi2^3 + xi1 mu2 mu3 + xi2 mu1 mu3 + xi3 mu1 mu2,
// with (xi3, mu3) = (xi1+xi2, mu1+mu2).
inline double resonance_expanded(double xi1, double mu1, double xi2, double mu2) {
    const double xi3 = xi1 + xi2, mu3 = mu1 + mu2;
    return xi3 * xi3 * xi3 - xi1 * xi1 * xi1 - xi2 * xi2 * xi2 + xi1 * mu2 * mu3 +
           xi2 * mu1 * mu3 + xi3 * mu1 * mu2;
}

// Hessian-determinant kernel of the dispersion surface, K = 3 xi^2 - mu^2.
// Vanishes on the lines mu = +-sqrt(3) xi.
inline double kernel_K(double xi, double mu) { return 3.0 * xi * xi - mu * mu; }

// A dyadic number 2^l, l >= 0.
struct DyadicIndex {
    std::uint64_t value = 1;

    DyadicIndex() = default;
    explicit DyadicIndex(std::uint64_t v) : value(v) {
        if (v == 0 || (v & (v - 1)) != 0)
            throw invalid_input("DyadicIndex: " + std::to_string(v) + " is not a power of two >= 1");
    }
    operator double() const { return static_cast<double>(value); }
    bool operator==(const DyadicIndex& o) const { return value == o.value; }
    bool operator<(const DyadicIndex& o) const { return value < o.value; }
};

// Dyadic floor: the unique L = 2^l with L <= x < 2L. Inputs below 1 clamp to
// 1; the decomposition is nonhomogeneous and lumps low values into the first
// block.
inline DyadicIndex dyadic_floor(double x) {
    if (!std::isfinite(x)) throw invalid_input("dyadic_floor: non-finite input");
    if (x < 1.0) return DyadicIndex{1};
    std::uint64_t L = 1;
    while (2.0 * static_cast<double>(L) <= x) L *= 2;
    return DyadicIndex{L};
}

} // namespace zklab

#endif
