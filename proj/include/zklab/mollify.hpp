#ifndef ZKLAB_MOLLIFY_HPP
#define ZKLAB_MOLLIFY_HPP

#include "zklab/cutoffs.hpp"
#include "zklab/spectral.hpp"

namespace zklab {

// Smoothing by a Schwartz kernel of unit integral and vanishing higher
// moments, realized as the radial Fourier multiplier eta0(lambda |k|). The
// multiplier is identically 1 for lambda |k| <= 1, so band-limited data is
// returned unchanged once lambda * bandwidth <= 1.
inline SpectralField2 mollify_spectral(const SpectralField2& f, double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0)) throw invalid_input("mollify: lambda must be in (0,1]");
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double kx = g.kx(ix), ky = g.ky(iy);
            out.at(ix, iy) *= cutoff::eta0(lambda * std::sqrt(kx * kx + ky * ky));
        }
    return out;
}

inline RealField2 mollify(const RealField2& f, double lambda) {
    return inverse_transform(mollify_spectral(forward_transform(f), lambda));
}

} // namespace zklab

#endif
