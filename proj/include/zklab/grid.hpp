#ifndef ZKLAB_GRID_HPP
#define ZKLAB_GRID_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "zklab/errors.hpp"

namespace zklab {

// Uniform periodic grid on a [0,Lx) x [0,Ly) torus. Mode counts must be even
// so negative and positive wavenumbers pair up cleanly; the signed alias of
// index j lives in (-n/2, n/2].
struct Grid2 {
    int nx = 0, ny = 0;
    double Lx = 0.0, Ly = 0.0;

    Grid2() = default;
    Grid2(int nx_, int ny_, double Lx_, double Ly_) : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_) {
        if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
            throw invalid_input("Grid2: nx, ny must be even and >= 8 (got " + std::to_string(nx) +
                                "x" + std::to_string(ny) + ")");
        if (!(Lx > 0.0) || !(Ly > 0.0)) throw invalid_input("Grid2: Lx, Ly must be positive");
    }

    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(ix) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(iy);
    }

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double cell_area() const { return dx() * dy(); }

    double x(int ix) const { return ix * dx(); }
    double y(int iy) const { return iy * dy(); }

    // Signed alias in (-n/2, n/2].
    static int wrap(int j, int n) { return (j > n / 2) ? j - n : j; }

    double kx(int ix) const { return 2.0 * std::numbers::pi * wrap(ix, nx) / Lx; }
    double ky(int iy) const { return 2.0 * std::numbers::pi * wrap(iy, ny) / Ly; }

    double kx_max() const { return 2.0 * std::numbers::pi * (nx / 2) / Lx; }
    double ky_max() const { return 2.0 * std::numbers::pi * (ny / 2) / Ly; }

    bool operator==(const Grid2& o) const {
        return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
    }
    bool operator!=(const Grid2& o) const { return !(*this == o); }
};

} // namespace zklab

#endif
