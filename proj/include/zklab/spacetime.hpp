#ifndef ZKLAB_SPACETIME_HPP
#define ZKLAB_SPACETIME_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "zklab/fft.hpp"
#include "zklab/spectral.hpp"

namespace zklab {

// Periodic space-time lattice [0,T) x [0,Lx) x [0,Ly).
struct SpaceTimeGrid {
    int nt = 0;
    double T = 0.0;
    Grid2 space;

    SpaceTimeGrid() = default;
    SpaceTimeGrid(int nt_, double T_, const Grid2& s) : nt(nt_), T(T_), space(s) {
        if (nt < 16) throw invalid_input("SpaceTimeGrid: nt must be >= 16");
        if (!(T > 0.0)) throw invalid_input("SpaceTimeGrid: T must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(nt) * space.size(); }
    std::size_t index(int jt, int ix, int iy) const {
        return (static_cast<std::size_t>(jt) * space.nx + ix) * space.ny + iy;
    }
    double t(int jt) const { return jt * T / nt; }
    double tau(int jt) const { return 2.0 * M_PI * Grid2::wrap(jt, nt) / T; }
    double tau_max() const { return 2.0 * M_PI * (nt / 2) / T; }

    bool operator==(const SpaceTimeGrid& o) const {
        return nt == o.nt && T == o.T && space == o.space;
    }
};

// Space-time Fourier coefficients C(tau, xi, mu) of
//   f(t,x,y) = sum C exp(i (tau t + xi x + mu y)),
// so a free wave exp(i t omega) ghat concentrates on the plane tau = omega.
// Norms use the time-averaged Plancherel convention
//   ||f||^2 = Lx Ly sum |C|^2  ( = (1/T) int |f|^2 dt dx dy ),
// so free waves carry their spatial L2 size regardless of T.
struct SpaceTimeField {
    SpaceTimeGrid grid;
    std::vector<cplx> coeffs;

    SpaceTimeField() = default;
    explicit SpaceTimeField(const SpaceTimeGrid& g) : grid(g), coeffs(g.size(), cplx{0.0, 0.0}) {}

    cplx& at(int jt, int ix, int iy) { return coeffs[grid.index(jt, ix, iy)]; }
    cplx at(int jt, int ix, int iy) const { return coeffs[grid.index(jt, ix, iy)]; }
};

inline double st_norm(const SpaceTimeField& f) {
    double acc = 0.0;
    for (const cplx& c : f.coeffs) acc += std::norm(c);
    return std::sqrt(f.grid.space.Lx * f.grid.space.Ly * acc);
}

// Modulation of a lattice point: tau - omega(xi, mu).
inline double modulation(const SpaceTimeGrid& g, int jt, int ix, int iy) {
    return g.tau(jt) - omega(g.space.kx(ix), g.space.ky(iy));
}

// Build the coefficient cube from spatial-coefficient time slices
// (slices[m] = spatial modes at t_m). DFT along t with the e^{+i tau t}
// synthesis convention.
inline SpaceTimeField from_time_slices(const SpaceTimeGrid& g,
                                       const std::vector<SpectralField2>& slices) {
    if (static_cast<int>(slices.size()) != g.nt)
        throw invalid_input("from_time_slices: slice count != nt");
    SpaceTimeField out(g);
    for (int jt = 0; jt < g.nt; ++jt) {
        if (slices[jt].grid != g.space) throw invalid_input("from_time_slices: grid mismatch");
        for (std::size_t i = 0; i < g.space.size(); ++i)
            out.coeffs[static_cast<std::size_t>(jt) * g.space.size() + i] = slices[jt].modes[i];
    }
    // C(tau) = (1/nt) sum_m slice(t_m) e^{-i tau t_m}: a forward DFT along t.
    const std::size_t ns = g.space.size();
    std::vector<cplx> line(g.nt);
    for (std::size_t i = 0; i < ns; ++i) {
        for (int jt = 0; jt < g.nt; ++jt) line[jt] = out.coeffs[jt * ns + i];
        fft::dft({g.nt}, FFTW_FORWARD, line.data());
        for (int jt = 0; jt < g.nt; ++jt) out.coeffs[jt * ns + i] = line[jt] / double(g.nt);
    }
    return out;
}

// Inverse of from_time_slices.
inline std::vector<SpectralField2> to_time_slices(const SpaceTimeField& f) {
    const SpaceTimeGrid& g = f.grid;
    const std::size_t ns = g.space.size();
    std::vector<SpectralField2> slices(g.nt, SpectralField2(g.space));
    std::vector<cplx> line(g.nt);
    for (std::size_t i = 0; i < ns; ++i) {
        for (int jt = 0; jt < g.nt; ++jt) line[jt] = f.coeffs[jt * ns + i];
        fft::dft({g.nt}, FFTW_BACKWARD, line.data());
        for (int jt = 0; jt < g.nt; ++jt) slices[jt].modes[i] = line[jt];
    }
    return slices;
}

} // namespace zklab

#endif
