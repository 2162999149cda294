#ifndef ZKLAB_CUTOFFS_HPP
#define ZKLAB_CUTOFFS_HPP

#include <cmath>
#include <vector>

#include "zklab/field.hpp"
#include "zklab/symbols.hpp"

namespace zklab {

// Smooth cutoffs built from the classical exp(-1/t) glue.
namespace cutoff {

inline double glue(double t) { return (t > 0.0) ? std::exp(-1.0 / t) : 0.0; }

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
inline double smooth_step(double t) {
    const double a = glue(t);
    const double b = glue(1.0 - t);
    return a / (a + b);
}

// Base bump eta0: even, = 1 on [-1,1], supported in [-2,2], values in [0,1].
inline double eta0(double x) {
    const double a = std::abs(x);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return smooth_step(2.0 - a);
}

// Annular piece phi(x) = eta0(x) - eta0(2x), supported in 1/2 <= |x| <= 2.
inline double phi(double x) { return eta0(x) - eta0(2.0 * x); }

// Dyadic block eta_N. The N = 1 block is the full bump eta0 so that the
// family forms a nonhomogeneous partition of unity: for every x,
//   sum_{N in D} eta_N(x) = 1  (exact telescoping).
inline double eta_N(DyadicIndex N, double x) {
    if (N.value == 1) return eta0(x);
    return phi(x / static_cast<double>(N.value));
}

// Isotropic shell cutoff psi_H(xi,mu) = eta_H(xi^2 + mu^2).
inline double psi_H(DyadicIndex H, double xi, double mu) {
    return eta_N(H, xi * xi + mu * mu);
}

} // namespace cutoff

// Sharp dyadic sets used for probe supports (as opposed to the smooth
// multipliers used for projectors):
//   I_N     = { xi : N/2 <= |xi| <= 2N },
//   Delta_H = { (xi,mu) : h(xi,mu) in I_H },  h = 3 xi^2 + mu^2.
inline bool in_I_N(DyadicIndex N, double xi) {
    const double a = std::abs(xi);
    return 0.5 * static_cast<double>(N.value) <= a && a <= 2.0 * static_cast<double>(N.value);
}

inline bool in_Delta_H(DyadicIndex H, double xi, double mu) {
    return in_I_N(H, group_velocity(xi, mu));
}

// Dyadic shells needed to cover all squared radii on a grid (H = 1, 2, ...,
// up to the largest shell touching r2max).
inline std::vector<DyadicIndex> dyadic_range(double r2max) {
    std::vector<DyadicIndex> shells;
    std::uint64_t H = 1;
    // eta_H vanishes on [0, r2max] once H/2 > r2max.
    while (static_cast<double>(H) / 2.0 <= r2max || H == 1) {
        shells.emplace_back(H);
        if (static_cast<double>(H) > 4.0 * r2max) break;
        H *= 2;
    }
    return shells;
}

// Littlewood-Paley shell projector P_H: multiply modes by psi_H(xi,mu).
inline SpectralField2 project_dyadic(const SpectralField2& f, DyadicIndex H) {
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            out.at(ix, iy) *= cutoff::psi_H(H, g.kx(ix), g.ky(iy));
    return out;
}

// One-dimensional projector P^x_N: multiply modes by eta_N(xi).
inline SpectralField2 project_x(const SpectralField2& f, DyadicIndex N) {
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix) {
        const double w = cutoff::eta_N(N, g.kx(ix));
        for (int iy = 0; iy < g.ny; ++iy) out.at(ix, iy) *= w;
    }
    return out;
}

// Shells required to resum a field on this grid: xi^2 + mu^2 range.
inline std::vector<DyadicIndex> grid_shells(const Grid2& g) {
    const double r2 = g.kx_max() * g.kx_max() + g.ky_max() * g.ky_max();
    return dyadic_range(r2);
}

inline std::vector<DyadicIndex> grid_x_blocks(const Grid2& g) {
    return dyadic_range(g.kx_max());
}

} // namespace zklab

#endif
