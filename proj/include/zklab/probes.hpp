#ifndef ZKLAB_PROBES_HPP
#define ZKLAB_PROBES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "zklab/evolution.hpp"
#include "zklab/funcspace.hpp"

namespace zklab {

struct RatioStats {
    double min = 0.0, median = 0.0, max = 0.0;
    double raw_median = 0.0; // functional itself, before dividing by the bound
    int trials = 0;
};

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

enum class BilinearCase { A, B, C };

namespace detail {

inline void sort3(double a, double b, double c, double& lo, double& med, double& hi) {
    lo = std::min({a, b, c});
    hi = std::max({a, b, c});
    med = a + b + c - lo - hi;
}

// Right-hand side of the estimate (without the implicit constant).
inline double bilinear_rhs(BilinearCase cs, const std::array<DyadicSupportSpec, 3>& specs) {
    double H[3], L[3], N[3];
    for (int i = 0; i < 3; ++i) {
        H[i] = static_cast<double>(specs[i].H.value);
        L[i] = static_cast<double>(specs[i].L.value);
        N[i] = specs[i].N == 0 ? 0.0 : static_cast<double>(specs[i].N);
    }
    double Hmin, Hmed, Hmax, Lmin, Lmed, Lmax;
    sort3(H[0], H[1], H[2], Hmin, Hmed, Hmax);
    sort3(L[0], L[1], L[2], Lmin, Lmed, Lmax);

    switch (cs) {
        case BilinearCase::A:
            return std::sqrt(Hmin) * std::sqrt(Lmin);
        case BilinearCase::B: {
            if (Hmax < 8.0 * Hmin)
                throw probe_misconfiguration("bilinear case b needs H_min << H_max (ratio >= 8)");
            // branch keyed on whether some index carries (H_min, L_max)
            bool min_carries_max = false;
            for (int i = 0; i < 3; ++i)
                if (H[i] == Hmin && L[i] == Lmax) min_carries_max = true;
            const double tail = min_carries_max ? std::sqrt(Lmax) : std::sqrt(Lmed);
            return std::pow(Hmax, -0.5) * std::pow(Hmin, 0.25) * std::sqrt(Lmin) * tail;
        }
        case BilinearCase::C: {
            if (Hmax > 2.0 * Hmin)
                throw probe_misconfiguration("bilinear case c needs H_min ~ H_max (ratio <= 2)");
            double Nmax = 0.0;
            for (int i = 0; i < 3; ++i) {
                if (specs[i].N == 0)
                    throw probe_misconfiguration("bilinear case c needs x-localized supports");
                Nmax = std::max(Nmax, N[i]);
            }
            return (1.0 / Nmax) * std::pow(Hmin, 0.25) * std::sqrt(Lmed) * std::sqrt(Lmax);
        }
    }
    return 1.0;
}

} // namespace detail

// Monte-Carlo probe of the shell-localized trilinear estimates. The bounds
// control nonnegative profiles, so each trial evaluates the functional on
// coefficient envelopes |g| of the complex Gaussian draws; observed is the
// functional divided by the case's right-hand side (constant-free).
inline RatioStats bilinear_probe(BilinearCase cs, const SpaceTimeGrid& g,
                                 const std::array<DyadicSupportSpec, 3>& specs, int trials,
                                 std::uint64_t seed) {
    if (trials < 1) throw invalid_input("bilinear_probe: trials must be >= 1");
    const double rhs = detail::bilinear_rhs(cs, specs);

    const std::vector<LatticePoint> s1 = enumerate_support(g, specs[0]);
    const std::vector<LatticePoint> s2 = enumerate_support(g, specs[1]);
    const std::vector<LatticePoint> s3 = enumerate_support(g, specs[2]);
    const double area = g.space.Lx * g.space.Ly;

    std::vector<double> v1(s1.size()), v2(s2.size()), v3(s3.size());
    std::vector<double> dense3(g.size(), 0.0);
    std::vector<double> ratios(trials), raws(trials);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(trial));
        auto draw = [&](std::vector<double>& v) {
            double mass = 0.0;
            for (double& x : v) {
                const double re = rng.next_gaussian(), im = rng.next_gaussian();
                x = std::hypot(re, im); // envelope of the complex draw
                mass += x * x;
            }
            const double scale = 1.0 / std::sqrt(area * mass);
            for (double& x : v) x *= scale;
        };
        draw(v1);
        draw(v2);
        draw(v3);
        for (std::size_t i = 0; i < s3.size(); ++i)
            dense3[g.index(s3[i].jt, s3[i].ix, s3[i].iy)] = v3[i];
        const double T = trilinear_sparse(g, s1, v1, s2, v2, dense3);
        for (std::size_t i = 0; i < s3.size(); ++i)
            dense3[g.index(s3[i].jt, s3[i].ix, s3[i].iy)] = 0.0;
        raws[trial] = T;
        ratios[trial] = T / rhs;
    }

    RatioStats st;
    st.trials = trials;
    st.min = *std::min_element(ratios.begin(), ratios.end());
    st.max = *std::max_element(ratios.begin(), ratios.end());
    st.median = median_of(ratios);
    st.raw_median = median_of(raws);
    return st;
}

// Least-squares slope of log2(y) against log2(x).
inline double fit_log2_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw invalid_input("fit_log2_slope: bad inputs");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log2(x[i]), ly = std::log2(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// L4 space-time size of the quarter-power Hessian multiplier applied to a
// free wave, against the L2 size of its data. Time integral over [0, T_probe]
// by the midpoint rule; the multiplier |3 xi^2 - mu^2|^{1/8} acts mode-wise.
struct StrichartzResult {
    RatioStats stats;
    int band; // largest |wavenumber index| carrying data
};

inline double strichartz_ratio(const SpectralField2& u0hat, int nt, double T_probe) {
    const Grid2& g = u0hat.grid;
    if (sobolev_norm(u0hat, 0.0) == 0.0) return 0.0;
    SpectralField2 amplified(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            amplified.at(ix, iy) =
                u0hat.at(ix, iy) * std::pow(std::abs(kernel_K(g.kx(ix), g.ky(iy))), 0.125);

    double acc = 0.0;
    for (int m = 0; m < nt; ++m) {
        const double t = (m + 0.5) * T_probe / nt;
        const std::vector<cplx> phys = inverse_transform_complex(linear_propagator(amplified, t));
        double slice = 0.0;
        for (const cplx& v : phys) {
            const double a2 = std::norm(v);
            slice += a2 * a2;
        }
        acc += slice * g.cell_area() * (T_probe / nt);
    }
    return std::pow(acc, 0.25) / sobolev_norm(u0hat, 0.0);
}

inline StrichartzResult strichartz_probe(const Grid2& g, int nt, int trials, std::uint64_t seed,
                                         double T_probe = 1.0) {
    StrichartzResult out;
    out.band = std::min(g.nx, g.ny) / 3;
    std::vector<double> ratios(trials);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(trial));
        SpectralField2 u0(g);
        // Hermitian band-limited random data
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const int kx = Grid2::wrap(ix, g.nx), ky = Grid2::wrap(iy, g.ny);
                if (std::abs(kx) > out.band || std::abs(ky) > out.band) continue;
                u0.at(ix, iy) = cplx{rng.next_gaussian(), rng.next_gaussian()};
            }
        SpectralField2 sym(g);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const int jx = (g.nx - ix) % g.nx, jy = (g.ny - iy) % g.ny;
                sym.at(ix, iy) = 0.5 * (u0.at(ix, iy) + std::conj(u0.at(jx, jy)));
            }
        const double l2 = sobolev_norm(sym, 0.0);
        for (cplx& c : sym.modes) c /= l2;
        ratios[trial] = strichartz_ratio(sym, nt, T_probe);
    }
    out.stats.trials = trials;
    out.stats.min = *std::min_element(ratios.begin(), ratios.end());
    out.stats.max = *std::max_element(ratios.begin(), ratios.end());
    out.stats.median = median_of(ratios);
    out.stats.raw_median = out.stats.median;
    return out;
}

// Size of the commutator [P_H^2 d_x, V] u against ||u|| ||grad V||_inf. The
// constant in the underlying bound is H-independent; sweeps check that.
struct CommutatorResult {
    double lhs, rhs, ratio;
};

inline CommutatorResult commutator_probe(DyadicIndex H, const RealField2& u, const RealField2& V) {
    if (u.grid != V.grid) throw invalid_input("commutator_probe: grid mismatch");
    const Grid2& g = u.grid;

    auto PH2dx = [&](const RealField2& f) {
        SpectralField2 fh = spectral_derivative(forward_transform(f), Axis::X, 1);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const double p = cutoff::psi_H(H, g.kx(ix), g.ky(iy));
                fh.at(ix, iy) *= p * p;
            }
        return inverse_transform(fh);
    };

    RealField2 Vu(g);
    for (std::size_t i = 0; i < Vu.values.size(); ++i) Vu.values[i] = V.values[i] * u.values[i];
    const RealField2 a = PH2dx(Vu);
    const RealField2 dxu = PH2dx(u);
    RealField2 comm(g);
    for (std::size_t i = 0; i < comm.values.size(); ++i)
        comm.values[i] = a.values[i] - V.values[i] * dxu.values[i];

    const SpectralField2 Vh = forward_transform(V);
    const RealField2 Vx = inverse_transform(spectral_derivative(Vh, Axis::X, 1));
    const RealField2 Vy = inverse_transform(spectral_derivative(Vh, Axis::Y, 1));
    double grad_inf = 0.0;
    for (std::size_t i = 0; i < Vx.values.size(); ++i)
        grad_inf = std::max(grad_inf, std::hypot(Vx.values[i], Vy.values[i]));

    CommutatorResult r{};
    r.lhs = l2_norm(comm);
    r.rhs = l2_norm(u) * grad_inf;
    r.ratio = (r.rhs == 0.0) ? ((r.lhs == 0.0) ? 0.0 : INFINITY) : r.lhs / r.rhs;
    return r;
}

} // namespace zklab

#endif
