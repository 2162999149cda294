#ifndef ZKLAB_SPECTRAL_HPP
#define ZKLAB_SPECTRAL_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "zklab/errors.hpp"
#include "zklab/fft.hpp"
#include "zklab/field.hpp"

namespace zklab {

// f(x,y) -> coefficients c(k) of the trigonometric interpolant.
inline SpectralField2 forward_transform(const RealField2& f) {
    if (!f.all_finite()) throw invalid_input("forward_transform: non-finite samples");
    const Grid2& g = f.grid;
    SpectralField2 out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out.modes[i] = cplx{f.values[i], 0.0};
    fft::dft({g.nx, g.ny}, FFTW_FORWARD, out.modes.data());
    const double scale = 1.0 / static_cast<double>(g.size());
    for (cplx& m : out.modes) m *= scale;
    return out;
}

// Coefficients -> samples; imaginary residue of Hermitian inputs is dropped.
inline RealField2 inverse_transform(const SpectralField2& f) {
    if (!f.all_finite()) throw invalid_input("inverse_transform: non-finite modes");
    const Grid2& g = f.grid;
    std::vector<cplx> work(f.modes);
    fft::dft({g.nx, g.ny}, FFTW_BACKWARD, work.data());
    RealField2 out(g);
    for (std::size_t i = 0; i < g.size(); ++i) out.values[i] = work[i].real();
    return out;
}

// Full complex inverse for fields without Hermitian symmetry.
inline std::vector<cplx> inverse_transform_complex(const SpectralField2& f) {
    const Grid2& g = f.grid;
    std::vector<cplx> work(f.modes);
    fft::dft({g.nx, g.ny}, FFTW_BACKWARD, work.data());
    return work;
}

enum class Axis { X, Y };

// Multiply modes by (i k)^order along one axis. The Nyquist column is zeroed
// for odd orders so real fields stay real.
inline SpectralField2 spectral_derivative(const SpectralField2& f, Axis axis, int order) {
    if (order < 0) throw invalid_input("spectral_derivative: negative order");
    if (order > 4) throw unsupported_order("spectral_derivative: order > 4 unsupported");
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    if (order == 0) return out;
    const bool odd = (order % 2 != 0);
    auto ik_pow = [order](double k) -> cplx {
        double p = 1.0;
        for (int j = 0; j < order; ++j) p *= k;
        switch (order % 4) {
            case 0: return cplx{p, 0.0};
            case 1: return cplx{0.0, p};
            case 2: return cplx{-p, 0.0};
            default: return cplx{0.0, -p};
        }
    };
    for (int ix = 0; ix < g.nx; ++ix) {
        for (int iy = 0; iy < g.ny; ++iy) {
            const double k = (axis == Axis::X) ? g.kx(ix) : g.ky(iy);
            cplx factor = ik_pow(k);
            if (odd) {
                const int j = (axis == Axis::X) ? ix : iy;
                const int n = (axis == Axis::X) ? g.nx : g.ny;
                if (j == n / 2) factor = 0.0;
            }
            out.at(ix, iy) *= factor;
        }
    }
    return out;
}

inline SpectralField2 laplacian(const SpectralField2& f) {
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double kx = g.kx(ix), ky = g.ky(iy);
            out.at(ix, iy) *= -(kx * kx + ky * ky);
        }
    return out;
}

// 2/3-rule mask: zero modes with |wrap(j)| > n/3 on either axis. Orthogonal
// projection, idempotent.
inline bool dealias_keeps(const Grid2& g, int ix, int iy) {
    return 3 * std::abs(Grid2::wrap(ix, g.nx)) <= g.nx && 3 * std::abs(Grid2::wrap(iy, g.ny)) <= g.ny;
}

inline SpectralField2 dealias(const SpectralField2& f) {
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            if (!dealias_keeps(g, ix, iy)) out.at(ix, iy) = 0.0;
    return out;
}

inline int dealias_retained_count(int n) { return 2 * (n / 3) + 1; }

// || (1 + |k|^2)^{s/2} c ||_{l2} scaled by sqrt(Lx Ly); s = 0 recovers the
// physical-space quadrature L2 norm by Parseval.
inline double sobolev_norm(const SpectralField2& f, double s) {
    if (s < -4.0 || s > 6.0) throw invalid_input("sobolev_norm: s outside [-4, 6]");
    const Grid2& g = f.grid;
    double acc = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double kx = g.kx(ix), ky = g.ky(iy);
            const double w = std::pow(1.0 + kx * kx + ky * ky, s);
            acc += w * std::norm(f.at(ix, iy));
        }
    return std::sqrt(g.Lx * g.Ly * acc);
}

inline double l2_norm(const RealField2& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v * v;
    return std::sqrt(acc * f.grid.cell_area());
}

inline double linf_norm(const RealField2& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

inline double integral(const RealField2& f) {
    double acc = 0.0;
    for (double v : f.values) acc += v;
    return acc * f.grid.cell_area();
}

inline double inner_product(const RealField2& f, const RealField2& g) {
    if (f.grid != g.grid) throw invalid_input("inner_product: grid mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
    return acc * f.grid.cell_area();
}

// Spectral-side L2 pairing <f, g> = Lx Ly sum conj(c_f) c_g (real part).
inline double spectral_pairing(const SpectralField2& f, const SpectralField2& g) {
    if (f.grid != g.grid) throw invalid_input("spectral_pairing: grid mismatch");
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.modes.size(); ++i) acc += std::conj(f.modes[i]) * g.modes[i];
    return (f.grid.Lx * f.grid.Ly) * acc.real();
}

// sup over grid nodes of |d^a f| for all multi-indices |a| <= k, derivatives
// taken spectrally. Matches the W^{k,inf} norm for well-resolved fields.
inline double wkinf_norm(const RealField2& f, int k) {
    if (k < 0) throw invalid_input("wkinf_norm: negative order");
    if (k > 4) throw unsupported_order("wkinf_norm: k > 4 unsupported");
    const SpectralField2 fh = forward_transform(f);
    double worst = 0.0;
    for (int ax = 0; ax <= k; ++ax) {
        SpectralField2 dxa = spectral_derivative(fh, Axis::X, ax);
        for (int ay = 0; ay + ax <= k; ++ay) {
            SpectralField2 d = spectral_derivative(dxa, Axis::Y, ay);
            worst = std::max(worst, linf_norm(inverse_transform(d)));
        }
    }
    return worst;
}

} // namespace zklab

#endif
