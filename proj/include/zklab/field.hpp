#ifndef ZKLAB_FIELD_HPP
#define ZKLAB_FIELD_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "zklab/grid.hpp"

namespace zklab {

using cplx = std::complex<double>;

// Real samples at the grid nodes, row-major with x outer and y inner.
struct RealField2 {
    Grid2 grid;
    std::vector<double> values;

    RealField2() = default;
    explicit RealField2(const Grid2& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

    double& at(int ix, int iy) { return values[grid.index(ix, iy)]; }
    double at(int ix, int iy) const { return values[grid.index(ix, iy)]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

// Fourier coefficients c(k) of the trigonometric interpolant,
//   f(x,y) = sum_k c(k) exp(i(xi*x + mu*y)),
// stored on the full (nx,ny) index grid. A constant field c has c(0)=c and a
// unit cosine splits into two coefficients of magnitude 1/2. Fields that
// represent real functions satisfy c(-k) = conj(c(k)).
struct SpectralField2 {
    Grid2 grid;
    std::vector<cplx> modes;

    SpectralField2() = default;
    explicit SpectralField2(const Grid2& g) : grid(g), modes(g.size(), cplx{0.0, 0.0}) {}

    cplx& at(int ix, int iy) { return modes[grid.index(ix, iy)]; }
    cplx at(int ix, int iy) const { return modes[grid.index(ix, iy)]; }

    bool all_finite() const {
        for (const cplx& m : modes)
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) return false;
        return true;
    }
};

// Max relative deviation from Hermitian symmetry c(-k) = conj(c(k)).
inline double hermitian_defect(const SpectralField2& f) {
    const Grid2& g = f.grid;
    double max_abs = 0.0;
    for (const cplx& m : f.modes) max_abs = std::max(max_abs, std::abs(m));
    if (max_abs == 0.0) return 0.0;
    double worst = 0.0;
    for (int ix = 0; ix < g.nx; ++ix) {
        const int jx = (g.nx - ix) % g.nx;
        for (int iy = 0; iy < g.ny; ++iy) {
            const int jy = (g.ny - iy) % g.ny;
            const cplx d = f.at(ix, iy) - std::conj(f.at(jx, jy));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst / max_abs;
}

inline bool is_hermitian(const SpectralField2& f, double tol = 1e-12) {
    return hermitian_defect(f) <= tol;
}

} // namespace zklab

#endif
