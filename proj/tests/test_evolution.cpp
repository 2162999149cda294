#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "zklab/diagnostics.hpp"
#include "zklab/evolution.hpp"

using namespace zklab;
using std::numbers::pi;

namespace {

RealField2 gaussian(const Grid2& g, double amp, double width) {
    RealField2 f(g);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double x = g.x(ix) - 0.5 * g.Lx, y = g.y(iy) - 0.5 * g.Ly;
            f.at(ix, iy) = amp * std::exp(-(x * x + y * y) / (width * width));
        }
    return f;
}

double rel_l2_diff(const SpectralField2& a, const SpectralField2& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.modes.size(); ++i) {
        num += std::norm(a.modes[i] - b.modes[i]);
        den += std::norm(a.modes[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

} // namespace

TEST_CASE("linear propagator") {
    Grid2 g(32, 32, 2 * pi, 2 * pi);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    RealField2 f(g);
    for (double& v : f.values) v = d(rng);
    SpectralField2 fh = forward_transform(f);

    SECTION("zero time is the identity") {
        SpectralField2 p = linear_propagator(fh, 0.0);
        CHECK(rel_l2_diff(fh, p) == 0.0);
    }

    SECTION("single mode advances by exp(i dt omega)") {
        SpectralField2 one(g);
        one.at(3, 2) = 1.0;
        const double dt = 0.37;
        SpectralField2 p = linear_propagator(one, dt);
        const cplx expected = std::exp(cplx{0.0, dt * omega(3.0, 2.0)});
        CHECK(std::abs(p.at(3, 2) - expected) < 1e-14);
    }

    SECTION("unitary to machine precision") {
        SpectralField2 p = linear_propagator(fh, 0.83);
        CHECK(std::abs(sobolev_norm(p, 0.0) - sobolev_norm(fh, 0.0)) <
              1e-13 * sobolev_norm(fh, 0.0));
    }

    SECTION("group law U(s) U(t) = U(s+t)") {
        SpectralField2 p1 = linear_propagator(linear_propagator(fh, 0.4), 0.35);
        SpectralField2 p2 = linear_propagator(fh, 0.75);
        CHECK(rel_l2_diff(p2, p1) < 1e-12);
    }
}

TEST_CASE("nonlinear right-hand side") {
    Grid2 g(64, 64, 20 * pi, 20 * pi);

    SECTION("zero state, zero background") {
        SpectralField2 u(g);
        SpectralField2 n = nonlinear_rhs(u, Background::zero(), 0.0);
        CHECK(sobolev_norm(n, 0.0) == 0.0);
    }

    SECTION("zero state reduces to the residual forcing") {
        const Background bg = Background::tanh_kink(0.5, 1.0);
        SpectralField2 u(g);
        SpectralField2 n = nonlinear_rhs(u, bg, 0.0, false);
        SpectralField2 r = residual_spectral(bg, 0.0, g);
        for (std::size_t i = 0; i < n.modes.size(); ++i) n.modes[i] += r.modes[i];
        CHECK(sobolev_norm(n, 0.0) < 1e-12);
    }

    SECTION("zero background matches the direct convolution") {
        // -1/2 d_x(u^2) via the mode-space convolution sum on a small grid
        Grid2 gs(16, 16, 2 * pi, 2 * pi);
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        RealField2 u(gs);
        for (double& v : u.values) v = d(rng);
        SpectralField2 uh = dealias(forward_transform(u));

        SpectralField2 conv(gs);
        for (int ax = 0; ax < gs.nx; ++ax)
            for (int ay = 0; ay < gs.ny; ++ay) {
                cplx acc{0.0, 0.0};
                for (int bx = 0; bx < gs.nx; ++bx)
                    for (int by = 0; by < gs.ny; ++by) {
                        const int cx = ((ax - bx) % gs.nx + gs.nx) % gs.nx;
                        const int cy = ((ay - by) % gs.ny + gs.ny) % gs.ny;
                        acc += uh.at(bx, by) * uh.at(cx, cy);
                    }
                conv.at(ax, ay) = acc;
            }
        // expected: dealias(-1/2 i xi conv)
        SpectralField2 expected(gs);
        for (int ix = 0; ix < gs.nx; ++ix)
            for (int iy = 0; iy < gs.ny; ++iy) {
                const double xi = (ix == gs.nx / 2) ? 0.0 : gs.kx(ix);
                expected.at(ix, iy) = cplx{0.0, -0.5 * xi} * conv.at(ix, iy);
            }
        expected = dealias(expected);

        SpectralField2 n = nonlinear_rhs(uh, Background::zero(), 0.0, true);
        double worst = 0.0;
        for (std::size_t i = 0; i < n.modes.size(); ++i)
            worst = std::max(worst, std::abs(n.modes[i] - expected.modes[i]));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("evolve basics") {
    Grid2 g(64, 64, 20 * pi, 20 * pi);

    SECTION("zero data on zero background stays zero") {
        SolverConfig cfg;
        cfg.dt = 1e-2;
        cfg.T = 0.1;
        Trajectory traj = evolve(RealField2(g), Background::zero(), cfg);
        CHECK(traj.size() >= 2);
        CHECK(sobolev_norm(traj.states.back().u, 0.0) == 0.0);
    }

    SECTION("time grid must divide evenly") {
        SolverConfig cfg;
        cfg.dt = 3e-3;
        cfg.T = 1.0;
        CHECK_THROWS_AS(evolve(RealField2(g), Background::zero(), cfg), config_error);
    }

    SECTION("blow-up raises a divergence error with the last state") {
        SolverConfig cfg;
        cfg.dt = 0.05;
        cfg.T = 2.0;
        RealField2 huge = gaussian(g, 3e7, 2.0);
        try {
            evolve(huge, Background::zero(), cfg);
            FAIL("expected divergence");
        } catch (const divergence_error& e) {
            CHECK(e.last.u.grid.size() == g.size());
        }
    }
}

TEST_CASE("etdrk4 self-convergence under dt halving") {
    Grid2 g(128, 128, 20 * pi, 20 * pi);
    RealField2 u0 = gaussian(g, 1.0, 2.0);
    const Background bg = Background::zero();

    auto final_state = [&](double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.T = 0.5;
        cfg.record_every = 1 << 20; // only endpoints
        return evolve(u0, bg, cfg).states.back().u;
    };
    SpectralField2 c = final_state(4e-3);
    SpectralField2 m = final_state(2e-3);
    SpectralField2 f = final_state(1e-3);
    const double e1 = rel_l2_diff(m, c);
    const double e2 = rel_l2_diff(f, m);
    INFO("coarse diff " << e1 << " fine diff " << e2);
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("schemes agree on a smooth soliton-background run") {
    Grid2 g(128, 64, 40 * pi, 10 * pi);
    RealField2 u0 = gaussian(g, 0.3, 2.0);
    const Background bg = Background::line_soliton(1.0);

    auto run = [&](Scheme s, double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.T = 0.25;
        cfg.scheme = s;
        cfg.record_every = 1 << 20;
        return evolve(u0, bg, cfg).states.back().u;
    };
    SpectralField2 e = run(Scheme::Etdrk4, 1e-3);
    SpectralField2 l = run(Scheme::LawsonRk4, 1e-3);
    CHECK(rel_l2_diff(e, l) < 1e-6);

    // Strang is second order: consistent at a looser tolerance
    SpectralField2 s = run(Scheme::Strang, 5e-4);
    CHECK(rel_l2_diff(e, s) < 5e-4);
}

TEST_CASE("zero-background conservation at desk scale") {
    Grid2 g(128, 128, 20 * pi, 20 * pi);
    RealField2 u0 = gaussian(g, 1.0, 2.0);
    SolverConfig cfg;
    cfg.dt = 2e-3;
    cfg.T = 0.5;
    cfg.record_every = 50;
    Trajectory traj = evolve(u0, Background::zero(), cfg);

    const ConservedTriple c0 = invariants(inverse_transform(traj.states.front().u));
    const ConservedTriple c1 = invariants(inverse_transform(traj.states.back().u));
    CHECK(std::abs(c1.I1 - c0.I1) < 1e-10);
    CHECK(std::abs(c1.I2 - c0.I2) < 1e-8 * std::abs(c0.I2));
    CHECK(std::abs(c1.I3 - c0.I3) < 1e-6 * std::abs(c0.I3));
}

TEST_CASE("scaling map") {
    Grid2 g(64, 64, 40 * pi, 40 * pi);
    RealField2 u0 = gaussian(g, 0.8, 3.0);

    SECTION("lambda = 1 is the identity") {
        RescaleResult r = rescale(u0, Background::line_soliton(1.0), 1.0);
        CHECK(r.data.grid == g);
        CHECK(r.time_scale == 1.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < u0.values.size(); ++i)
            worst = std::max(worst, std::abs(r.data.values[i] - u0.values[i]));
        CHECK(worst == 0.0);
    }

    SECTION("L2 norm scales by lambda^{1/2} exactly") {
        RescaleResult r = rescale(u0, Background::zero(), 4.0);
        CHECK(l2_norm(r.data) == Catch::Approx(2.0 * l2_norm(u0)).epsilon(1e-10));
    }

    SECTION("background families are closed under scaling") {
        RescaleResult r = rescale(u0, Background::cnoidal(0.2, 1.0, 0.9), 4.0);
        CHECK(r.background.family == BackgroundFamily::Cnoidal);
        CHECK(r.background.alpha == Catch::Approx(0.8));
        CHECK(r.background.gamma == Catch::Approx(2.0));
        CHECK(r.background.c == Catch::Approx(4.0 * Background::cnoidal(0.2, 1.0, 0.9).c));
    }

    SECTION("solve-rescale round trip matches the direct solve") {
        Grid2 gs(128, 64, 40 * pi, 10 * pi);
        RealField2 w0 = gaussian(gs, 0.5, 2.0);
        const Background bg = Background::line_soliton(1.0);
        const double lambda = 4.0, T = 0.25;

        SolverConfig direct;
        direct.dt = 2e-3;
        direct.T = T;
        direct.record_every = 1 << 20;
        Trajectory dtraj = evolve(w0, bg, direct);

        RescaleResult r = rescale(w0, bg, lambda);
        SolverConfig scaled;
        scaled.dt = direct.dt * r.time_scale;
        scaled.T = T * r.time_scale;
        scaled.record_every = 1 << 20;
        Trajectory straj = evolve(r.data, r.background, scaled);

        RealField2 undone =
            rescale_undo_field(inverse_transform(straj.states.back().u), lambda, gs);
        RealField2 direct_final = inverse_transform(dtraj.states.back().u);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < undone.values.size(); ++i) {
            num += std::pow(undone.values[i] - direct_final.values[i], 2);
            den += std::pow(direct_final.values[i], 2);
        }
        CHECK(std::sqrt(num / den) < 1e-6);
    }
}
