#ifndef ZKLAB_FUNCSPACE_HPP
#define ZKLAB_FUNCSPACE_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "zklab/cutoffs.hpp"
#include "zklab/rng.hpp"
#include "zklab/spacetime.hpp"

namespace zklab {

// Fraction of squared mass outside the sharp shell Delta_H; the modulation
// norms require essentially all of it inside.
inline double mass_fraction_outside_shell(const SpaceTimeField& f, DyadicIndex H) {
    const SpaceTimeGrid& g = f.grid;
    double inside = 0.0, outside = 0.0;
    for (int jt = 0; jt < g.nt; ++jt)
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy) {
                const double m = std::norm(f.at(jt, ix, iy));
                if (in_Delta_H(H, g.space.kx(ix), g.space.ky(iy)))
                    inside += m;
                else
                    outside += m;
            }
    const double total = inside + outside;
    return (total == 0.0) ? 0.0 : outside / total;
}

// l1-in-modulation Bourgain norm on the shell H:
//   sum_L L^{1/2} || eta_L(tau - omega) C ||,
// with the L = 1 block collecting modulations below 2.
inline double xh_norm(const SpaceTimeField& f, DyadicIndex H) {
    if (mass_fraction_outside_shell(f, H) > 1e-10)
        throw invalid_support("xh_norm: field carries mass outside the shell");
    const SpaceTimeGrid& g = f.grid;

    double sig_max = 0.0;
    for (int jt = 0; jt < g.nt; ++jt)
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy)
                if (f.at(jt, ix, iy) != cplx{0.0, 0.0})
                    sig_max = std::max(sig_max, std::abs(modulation(g, jt, ix, iy)));

    const std::vector<DyadicIndex> blocks = dyadic_range(sig_max);
    std::vector<double> mass(blocks.size(), 0.0);
    for (int jt = 0; jt < g.nt; ++jt)
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy) {
                const cplx c = f.at(jt, ix, iy);
                if (c == cplx{0.0, 0.0}) continue;
                const double sig = modulation(g, jt, ix, iy);
                for (std::size_t b = 0; b < blocks.size(); ++b) {
                    const double w = cutoff::eta_N(blocks[b], sig);
                    if (w > 0.0) mass[b] += w * w * std::norm(c);
                }
            }
    double total = 0.0;
    const double area = g.space.Lx * g.space.Ly;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        total += std::sqrt(static_cast<double>(blocks[b].value)) * std::sqrt(area * mass[b]);
    return total;
}

// Short-time version with beta = 1/2: the sup over window centers t_c of
// || F( eta0(H^{1/2} (t - t_c)) f ) ||_{X_H}, centers on a uniform lattice of
// spacing H^{-1/2}/4 (refine > 1 tightens the lattice).
inline double f_short_norm(const SpaceTimeField& f, DyadicIndex H, int refine = 1) {
    const SpaceTimeGrid& g = f.grid;
    const double Hb = std::sqrt(static_cast<double>(H.value)); // H^beta, beta = 1/2
    if (4.0 / Hb > g.T)
        throw config_error("f_short_norm: window of length 4 H^{-1/2} exceeds the time box");
    if (mass_fraction_outside_shell(f, H) > 1e-10)
        throw invalid_support("f_short_norm: field carries mass outside the shell");

    const std::vector<SpectralField2> slices = to_time_slices(f);
    const double spacing = 1.0 / (4.0 * Hb * refine);
    const int ncenters = static_cast<int>(std::ceil(g.T / spacing));

    double best = 0.0;
    std::vector<SpectralField2> windowed(g.nt, SpectralField2(g.space));
    for (int ic = 0; ic < ncenters; ++ic) {
        const double tc = ic * spacing;
        for (int jt = 0; jt < g.nt; ++jt) {
            double dt = f.grid.t(jt) - tc;
            dt -= g.T * std::round(dt / g.T); // periodic window
            const double w = cutoff::eta0(Hb * dt);
            for (std::size_t i = 0; i < g.space.size(); ++i)
                windowed[jt].modes[i] = w * slices[jt].modes[i];
        }
        best = std::max(best, xh_norm(from_time_slices(g, windowed), H));
    }
    return best;
}

// Support region D_{N,H,L}: xi in I_N (N = 0 meaning no x-localization),
// (xi,mu) in Delta_H, |tau - omega| <= L.
struct DyadicSupportSpec {
    std::uint64_t N = 0; // 0 = infinity
    DyadicIndex H{1};
    DyadicIndex L{1};
};

struct LatticePoint {
    int jt, ix, iy;   // lattice indices
    long kt;          // signed tau index (unwrapped)
    int kx, ky;       // signed spatial indices
};

// All lattice points of D_{N,H,L}; throws if the modulation interval around
// some shell point cannot be represented on the tau lattice.
inline std::vector<LatticePoint> enumerate_support(const SpaceTimeGrid& g,
                                                   const DyadicSupportSpec& spec) {
    if (spec.N != 0) DyadicIndex{spec.N}; // validates power of two
    std::vector<LatticePoint> pts;
    const double L = static_cast<double>(spec.L.value);
    for (int ix = 0; ix < g.space.nx; ++ix) {
        const double xi = g.space.kx(ix);
        if (spec.N != 0 && !in_I_N(DyadicIndex{spec.N}, xi)) continue;
        for (int iy = 0; iy < g.space.ny; ++iy) {
            const double mu = g.space.ky(iy);
            if (!in_Delta_H(spec.H, xi, mu)) continue;
            const double om = omega(xi, mu);
            if (std::abs(om) + L > g.tau_max())
                throw config_error("enumerate_support: modulation interval not representable "
                                   "(|omega| + L exceeds the tau Nyquist)");
            // tau lattice indices with |tau - omega| <= L
            const double dtau = 2.0 * M_PI / g.T;
            const long klo = static_cast<long>(std::ceil((om - L) / dtau - 1e-12));
            const long khi = static_cast<long>(std::floor((om + L) / dtau + 1e-12));
            for (long kt = klo; kt <= khi; ++kt) {
                const int jt = static_cast<int>(((kt % g.nt) + g.nt) % g.nt);
                pts.push_back(LatticePoint{jt, ix, iy, kt, Grid2::wrap(ix, g.space.nx),
                                           Grid2::wrap(iy, g.space.ny)});
            }
        }
    }
    if (pts.empty()) throw empty_support("enumerate_support: no lattice points in the region");
    return pts;
}

// Unit-norm field with independent complex Gaussian coefficients on the
// support lattice, deterministic per seed.
inline SpaceTimeField random_dnhl(const SpaceTimeGrid& g, const DyadicSupportSpec& spec,
                                  std::uint64_t seed) {
    const std::vector<LatticePoint> pts = enumerate_support(g, spec);
    SpaceTimeField f(g);
    Rng rng(seed);
    double mass = 0.0;
    for (const LatticePoint& p : pts) {
        const cplx c{rng.next_gaussian(), rng.next_gaussian()};
        f.at(p.jt, p.ix, p.iy) = c;
        mass += std::norm(c);
    }
    const double scale = 1.0 / std::sqrt(g.space.Lx * g.space.Ly * mass);
    for (cplx& c : f.coeffs) c *= scale;
    return f;
}

// Lattice trilinear functional int (f1 * f2) f3 with the convolution taken
// over the periodic frequency lattice and the measure LxLy per point:
//   T = (LxLy)^2 sum_{w1 + w2 = w3 (mod lattice)} C1(w1) C2(w2) C3(w3).
// Computed conjugation-free in physical space-time via three inverse
// transforms (the third on the index-reversed cube).
inline cplx trilinear_functional_complex(const SpaceTimeField& f1, const SpaceTimeField& f2,
                                         const SpaceTimeField& f3) {
    if (!(f1.grid == f2.grid) || !(f1.grid == f3.grid))
        throw invalid_input("trilinear_functional: lattice mismatch");
    const SpaceTimeGrid& g = f1.grid;
    const std::vector<int> shape{g.nt, g.space.nx, g.space.ny};

    std::vector<cplx> p1(f1.coeffs), p2(f2.coeffs), q3(g.size());
    // index reversal w -> -w  (mod lattice)
    for (int jt = 0; jt < g.nt; ++jt)
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy) {
                const int rt = (g.nt - jt) % g.nt;
                const int rx = (g.space.nx - ix) % g.space.nx;
                const int ry = (g.space.ny - iy) % g.space.ny;
                q3[g.index(jt, ix, iy)] = f3.coeffs[g.index(rt, rx, ry)];
            }
    fft::dft(shape, FFTW_BACKWARD, p1.data());
    fft::dft(shape, FFTW_BACKWARD, p2.data());
    fft::dft(shape, FFTW_BACKWARD, q3.data());

    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < p1.size(); ++i) acc += p1[i] * p2[i] * q3[i];
    const double area = g.space.Lx * g.space.Ly;
    return acc * (area * area / static_cast<double>(g.size()));
}

inline double trilinear_functional(const SpaceTimeField& f1, const SpaceTimeField& f2,
                                   const SpaceTimeField& f3) {
    return trilinear_functional_complex(f1, f2, f3).real();
}

// Same functional evaluated by iterating the two smaller supports and
// looking the sum point up on the lattice; equal to the transform path.
inline double trilinear_sparse(const SpaceTimeGrid& g, const std::vector<LatticePoint>& s1,
                               const std::vector<double>& v1, const std::vector<LatticePoint>& s2,
                               const std::vector<double>& v2, const std::vector<double>& dense3) {
    double acc = 0.0;
    for (std::size_t a = 0; a < s1.size(); ++a) {
        const LatticePoint& p = s1[a];
        const double va = v1[a];
        for (std::size_t b = 0; b < s2.size(); ++b) {
            const LatticePoint& q = s2[b];
            const int jt = static_cast<int>((((p.kt + q.kt) % g.nt) + g.nt) % g.nt);
            const int ix = (((p.kx + q.kx) % g.space.nx) + g.space.nx) % g.space.nx;
            const int iy = (((p.ky + q.ky) % g.space.ny) + g.space.ny) % g.space.ny;
            const double v3 = dense3[g.index(jt, ix, iy)];
            if (v3 != 0.0) acc += va * v2[b] * v3;
        }
    }
    const double area = g.space.Lx * g.space.Ly;
    return acc * area * area;
}

} // namespace zklab

#endif
