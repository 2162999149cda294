#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "zklab/funcspace.hpp"

using namespace zklab;
using std::numbers::pi;

namespace {

// unit lattice: integer wavenumbers and integer tau values
SpaceTimeGrid unit_lattice(int nt, int nx, int ny) {
    return SpaceTimeGrid(nt, 2 * pi, Grid2(nx, ny, 2 * pi, 2 * pi));
}

// free wave e^{i t omega} ghat for spatial data on the shell H
SpaceTimeField free_wave(const SpaceTimeGrid& g, DyadicIndex H, std::uint64_t seed) {
    Rng rng(seed);
    SpectralField2 ghat(g.space);
    for (int ix = 0; ix < g.space.nx; ++ix)
        for (int iy = 0; iy < g.space.ny; ++iy)
            if (in_Delta_H(H, g.space.kx(ix), g.space.ky(iy)))
                ghat.at(ix, iy) = cplx{rng.next_gaussian(), rng.next_gaussian()};
    std::vector<SpectralField2> slices(g.nt, SpectralField2(g.space));
    for (int jt = 0; jt < g.nt; ++jt) {
        const double t = g.t(jt);
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy)
                slices[jt].at(ix, iy) =
                    ghat.at(ix, iy) *
                    std::exp(cplx{0.0, t * omega(g.space.kx(ix), g.space.ky(iy))});
    }
    return from_time_slices(g, slices);
}

} // namespace

TEST_CASE("space-time transform round trip") {
    SpaceTimeGrid g = unit_lattice(32, 16, 16);
    Rng rng(4);
    std::vector<SpectralField2> slices(g.nt, SpectralField2(g.space));
    for (auto& s : slices)
        for (cplx& m : s.modes) m = cplx{rng.next_gaussian(), rng.next_gaussian()};
    SpaceTimeField f = from_time_slices(g, slices);
    std::vector<SpectralField2> back = to_time_slices(f);
    double worst = 0.0;
    for (int jt = 0; jt < g.nt; ++jt)
        for (std::size_t i = 0; i < g.space.size(); ++i)
            worst = std::max(worst, std::abs(back[jt].modes[i] - slices[jt].modes[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("free waves concentrate at zero modulation") {
    SpaceTimeGrid g = unit_lattice(128, 16, 16);
    const DyadicIndex H{8};
    SpaceTimeField f = free_wave(g, H, 7);
    double off_plane = 0.0, total = 0.0;
    for (int jt = 0; jt < g.nt; ++jt)
        for (int ix = 0; ix < g.space.nx; ++ix)
            for (int iy = 0; iy < g.space.ny; ++iy) {
                const double m = std::norm(f.at(jt, ix, iy));
                total += m;
                if (std::abs(modulation(g, jt, ix, iy)) > 1e-9) off_plane += m;
            }
    CHECK(off_plane < 1e-20 * total);
}

TEST_CASE("xh_norm") {
    SpaceTimeGrid g = unit_lattice(128, 16, 16);
    const DyadicIndex H{8};

    SECTION("zero field") { CHECK(xh_norm(SpaceTimeField(g), H) == 0.0); }

    SECTION("support violations are rejected") {
        SpaceTimeField f(g);
        f.at(0, 1, 0) = 1.0; // h = 3 outside [4, 16]
        CHECK_THROWS_AS(xh_norm(f, H), invalid_support);
    }

    SECTION("single lattice point on a modulation shell") {
        // (xi, mu) = (1, 2): h = 7 in [4, 16]; omega = 5; tau = 21 -> sigma = 16
        SpaceTimeField f(g);
        f.at(21, 1, 2) = 0.25;
        const double l2 = st_norm(f);
        CHECK(xh_norm(f, H) == Catch::Approx(4.0 * l2).epsilon(1e-12));
    }

    SECTION("free wave sits in the lowest modulation block") {
        SpaceTimeField f = free_wave(g, H, 11);
        const double l2 = st_norm(f);
        CHECK(xh_norm(f, H) == Catch::Approx(l2).epsilon(1e-10));
    }

    SECTION("spread field over one shell within 10% of the exact weight") {
        // several points, all with sigma in the L = 16 block core
        SpaceTimeField f(g);
        int placed = 0;
        for (int ix = 0; ix < g.space.nx && placed < 6; ++ix)
            for (int iy = 0; iy < g.space.ny && placed < 6; ++iy) {
                const double xi = g.space.kx(ix), mu = g.space.ky(iy);
                if (!in_Delta_H(H, xi, mu)) continue;
                const long tau = std::lround(omega(xi, mu)) + 16;
                if (std::abs(tau) > g.nt / 2 - 1) continue;
                f.at(static_cast<int>(((tau % g.nt) + g.nt) % g.nt), ix, iy) = 1.0;
                ++placed;
            }
        REQUIRE(placed > 0);
        const double got = xh_norm(f, H);
        const double expected = 4.0 * st_norm(f);
        CHECK(std::abs(got - expected) <= 0.1 * expected);
    }
}

TEST_CASE("short-time norm") {
    SpaceTimeGrid g = unit_lattice(128, 16, 16);
    const DyadicIndex H{8};

    SECTION("zero field") { CHECK(f_short_norm(SpaceTimeField(g), H) == 0.0); }

    SECTION("window must fit in the time box") {
        SpaceTimeGrid tiny(16, 0.5, Grid2(16, 16, 2 * pi, 2 * pi));
        CHECK_THROWS_AS(f_short_norm(SpaceTimeField(tiny), DyadicIndex{1}), config_error);
    }

    SECTION("free wave: comparable to the single-window norm") {
        SpaceTimeField f = free_wave(g, H, 13);
        const double fs = f_short_norm(f, H);
        // one window by hand, centered mid-box
        const std::vector<SpectralField2> slices = to_time_slices(f);
        std::vector<SpectralField2> win(g.nt, SpectralField2(g.space));
        const double Hb = std::sqrt(8.0), tc = 0.5 * g.T;
        for (int jt = 0; jt < g.nt; ++jt) {
            double dt = g.t(jt) - tc;
            dt -= g.T * std::round(dt / g.T);
            const double w = cutoff::eta0(Hb * dt);
            for (std::size_t i = 0; i < g.space.size(); ++i)
                win[jt].modes[i] = w * slices[jt].modes[i];
        }
        const double one = xh_norm(from_time_slices(g, win), H);
        CHECK(fs >= 0.5 * one);
        CHECK(fs <= 2.0 * one);
    }

    SECTION("stable under window-lattice refinement") {
        SpaceTimeField f = free_wave(g, H, 19);
        const double a = f_short_norm(f, H, 1);
        const double b = f_short_norm(f, H, 2);
        CHECK(std::abs(a - b) <= 0.05 * std::max(a, b));
    }
}

TEST_CASE("random support fields") {
    SpaceTimeGrid g = unit_lattice(64, 16, 16);
    DyadicSupportSpec spec;
    spec.H = DyadicIndex{8};
    spec.L = DyadicIndex{4};

    SECTION("unit norm and support containment") {
        SpaceTimeField f = random_dnhl(g, spec, 42);
        CHECK(st_norm(f) == Catch::Approx(1.0).epsilon(1e-12));
        for (int jt = 0; jt < g.nt; ++jt)
            for (int ix = 0; ix < g.space.nx; ++ix)
                for (int iy = 0; iy < g.space.ny; ++iy) {
                    if (f.at(jt, ix, iy) == cplx{0.0, 0.0}) continue;
                    CHECK(in_Delta_H(spec.H, g.space.kx(ix), g.space.ky(iy)));
                    CHECK(std::abs(modulation(g, jt, ix, iy)) <= 4.0 + 1e-12);
                }
    }

    SECTION("x-localization honored when N is finite") {
        DyadicSupportSpec nspec = spec;
        nspec.N = 1;
        SpaceTimeField f = random_dnhl(g, nspec, 1);
        for (int jt = 0; jt < g.nt; ++jt)
            for (int ix = 0; ix < g.space.nx; ++ix)
                for (int iy = 0; iy < g.space.ny; ++iy)
                    if (f.at(jt, ix, iy) != cplx{0.0, 0.0})
                        CHECK(in_I_N(DyadicIndex{1}, g.space.kx(ix)));
    }

    SECTION("distinct seeds give distinct draws") {
        SpaceTimeField a = random_dnhl(g, spec, 3);
        SpaceTimeField b = random_dnhl(g, spec, 4);
        cplx ip{0.0, 0.0};
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            ip += a.coeffs[i] * std::conj(b.coeffs[i]);
        ip *= g.space.Lx * g.space.Ly;
        CHECK(std::abs(ip) < 0.5);
    }

    SECTION("deterministic per seed") {
        SpaceTimeField a = random_dnhl(g, spec, 5);
        SpaceTimeField b = random_dnhl(g, spec, 5);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
        CHECK(worst == 0.0);
    }

    SECTION("unrepresentable modulation interval is rejected") {
        DyadicSupportSpec bad;
        bad.H = DyadicIndex{8};
        bad.L = DyadicIndex{64}; // |omega| + 64 > tau Nyquist = 32
        CHECK_THROWS_AS(random_dnhl(g, bad, 1), config_error);
    }

    SECTION("empty regions are rejected") {
        DyadicSupportSpec empty;
        empty.H = DyadicIndex{8};
        empty.L = DyadicIndex{1};
        empty.N = 8; // I_8 = [4,16] but Delta_8 forces |xi| <= 2
        CHECK_THROWS_AS(random_dnhl(g, empty, 1), empty_support);
    }
}

TEST_CASE("trilinear functional") {
    SpaceTimeGrid g(16, 2 * pi, Grid2(8, 8, 2 * pi, 2 * pi));

    SECTION("vanishes when one factor is zero") {
        Rng rng(2);
        SpaceTimeField a(g), b(g), zero(g);
        for (cplx& c : a.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        for (cplx& c : b.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        CHECK(trilinear_functional(a, b, zero) == 0.0);
    }

    SECTION("transform path equals the direct lattice convolution sum") {
        Rng rng(9);
        SpaceTimeField f1(g), f2(g), f3(g);
        for (cplx& c : f1.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        for (cplx& c : f2.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        for (cplx& c : f3.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};

        cplx direct{0.0, 0.0};
        for (int t1 = 0; t1 < g.nt; ++t1)
            for (int x1 = 0; x1 < g.space.nx; ++x1)
                for (int y1 = 0; y1 < g.space.ny; ++y1)
                    for (int t2 = 0; t2 < g.nt; ++t2)
                        for (int x2 = 0; x2 < g.space.nx; ++x2)
                            for (int y2 = 0; y2 < g.space.ny; ++y2) {
                                const int t3 = (t1 + t2) % g.nt;
                                const int x3 = (x1 + x2) % g.space.nx;
                                const int y3 = (y1 + y2) % g.space.ny;
                                direct += f1.at(t1, x1, y1) * f2.at(t2, x2, y2) *
                                          f3.at(t3, x3, y3);
                            }
        const double area = g.space.Lx * g.space.Ly;
        direct *= area * area;
        const cplx fftv = trilinear_functional_complex(f1, f2, f3);
        CHECK(std::abs(fftv - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
    }

    SECTION("exchange symmetry with the reflected factor") {
        // int (f1*f2) f3 = int (f1~ * f3) f2 with f~(w) = f(-w)
        Rng rng(21);
        SpaceTimeField f1(g), f2(g), f3(g);
        for (cplx& c : f1.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        for (cplx& c : f2.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        for (cplx& c : f3.coeffs) c = cplx{rng.next_gaussian(), rng.next_gaussian()};
        SpaceTimeField f1r(g);
        for (int jt = 0; jt < g.nt; ++jt)
            for (int ix = 0; ix < g.space.nx; ++ix)
                for (int iy = 0; iy < g.space.ny; ++iy)
                    f1r.at(jt, ix, iy) = f1.at((g.nt - jt) % g.nt, (g.space.nx - ix) % g.space.nx,
                                               (g.space.ny - iy) % g.space.ny);
        const cplx lhs = trilinear_functional_complex(f1, f2, f3);
        const cplx rhs = trilinear_functional_complex(f1r, f3, f2);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(lhs)));
    }

    SECTION("lattice mismatch is rejected") {
        SpaceTimeGrid g2(16, 2 * pi, Grid2(16, 8, 2 * pi, 2 * pi));
        CHECK_THROWS_AS(
            trilinear_functional(SpaceTimeField(g), SpaceTimeField(g), SpaceTimeField(g2)),
            invalid_input);
    }

    SECTION("sparse path agrees with the transform path") {
        SpaceTimeGrid gl = unit_lattice(64, 16, 16);
        DyadicSupportSpec s1{0, DyadicIndex{4}, DyadicIndex{2}};
        DyadicSupportSpec s2{0, DyadicIndex{8}, DyadicIndex{4}};
        DyadicSupportSpec s3{0, DyadicIndex{8}, DyadicIndex{8}};
        SpaceTimeField f1 = random_dnhl(gl, s1, 100);
        SpaceTimeField f2 = random_dnhl(gl, s2, 101);
        SpaceTimeField f3 = random_dnhl(gl, s3, 102);
        // envelopes, as the probe uses
        for (cplx& c : f1.coeffs) c = std::abs(c);
        for (cplx& c : f2.coeffs) c = std::abs(c);
        for (cplx& c : f3.coeffs) c = std::abs(c);
        const double dense = trilinear_functional(f1, f2, f3);

        auto pts1 = enumerate_support(gl, s1);
        auto pts2 = enumerate_support(gl, s2);
        auto pts3 = enumerate_support(gl, s3);
        std::vector<double> v1, v2;
        for (const auto& p : pts1) v1.push_back(f1.at(p.jt, p.ix, p.iy).real());
        for (const auto& p : pts2) v2.push_back(f2.at(p.jt, p.ix, p.iy).real());
        std::vector<double> dense3(gl.size(), 0.0);
        for (const auto& p : pts3) dense3[gl.index(p.jt, p.ix, p.iy)] = f3.at(p.jt, p.ix, p.iy).real();
        const double sparse = trilinear_sparse(gl, pts1, v1, pts2, v2, dense3);
        CHECK(std::abs(dense - sparse) < 1e-10 * std::max(1.0, std::abs(dense)));
    }
}
