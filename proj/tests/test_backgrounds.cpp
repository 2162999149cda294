#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "zklab/background.hpp"

using namespace zklab;
using std::numbers::pi;

TEST_CASE("jacobi cn basics") {
    SECTION("cn(0, kappa) = 1") {
        for (double k : {0.1, 0.5, 0.9, 0.999}) CHECK(jacobi_cn(0.0, k) == Catch::Approx(1.0).margin(1e-14));
    }

    SECTION("small-modulus limit approaches cosine") {
        CHECK(jacobi_cn(1.0, 1e-6) == Catch::Approx(std::cos(1.0)).margin(1e-5));
    }

    SECTION("cn(K) = 0") {
        for (double k : {0.3, 0.9}) {
            const double K = elliptic_K(k);
            CHECK(std::abs(jacobi_cn(K, k)) < 1e-12);
        }
    }

    SECTION("Jacobi identities at random arguments") {
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> du(-10.0, 10.0);
        std::uniform_real_distribution<double> dk(0.01, 0.99);
        for (int i = 0; i < 1000; ++i) {
            const double u = du(rng), k = dk(rng);
            const JacobiTriple j = jacobi_sncndn(u, k);
            CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-10);
            CHECK(std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0) < 1e-10);
        }
    }

    SECTION("periodicity cn(u + 4K) = cn(u)") {
        for (double k : {0.2, 0.7, 0.95}) {
            const double K = elliptic_K(k);
            for (double u : {-2.0, 0.3, 1.7}) {
                CHECK(jacobi_cn(u + 4.0 * K, k) == Catch::Approx(jacobi_cn(u, k)).margin(1e-10));
            }
        }
    }

    SECTION("modulus outside (0,1) rejected") {
        CHECK_THROWS_AS(jacobi_cn(1.0, 1.5), invalid_input);
        CHECK_THROWS_AS(jacobi_cn(1.0, -0.1), invalid_input);
    }
}

TEST_CASE("cnoidal coefficients") {
    SECTION("reference values at (0, 1, 0.9)") {
        const CnoidalCoefficients p = cnoidal_params(0.0, 1.0, 0.9);
        CHECK(p.beta == Catch::Approx(9.72).margin(1e-12));
        CHECK(p.c == Catch::Approx(2.48).margin(1e-12));
    }

    SECTION("alpha shifts the speed by the same amount") {
        const CnoidalCoefficients p0 = cnoidal_params(0.0, 0.8, 0.6);
        const CnoidalCoefficients p1 = cnoidal_params(1.3, 0.8, 0.6);
        CHECK(p1.c - p0.c == Catch::Approx(1.3).margin(1e-14));
        CHECK(p1.beta == p0.beta);
    }

    SECTION("soliton limit kappa -> 1") {
        // alpha = 0, gamma = 1/2: beta -> 3, c -> 1, profile -> 3 sech^2(x/2)
        const double kappa = 1.0 - 1e-8;
        const CnoidalCoefficients p = cnoidal_params(0.0, 0.5, kappa);
        CHECK(p.beta == Catch::Approx(3.0).margin(1e-6));
        CHECK(p.c == Catch::Approx(1.0).margin(1e-6));
        for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
            const double cn = jacobi_cn(0.5 * x, kappa);
            const double soliton = 3.0 / std::pow(std::cosh(0.5 * x), 2);
            CHECK(p.beta * cn * cn == Catch::Approx(soliton).margin(1e-4));
        }
    }
}

TEST_CASE("background sampling") {
    Grid2 g(256, 16, 40 * pi, 2 * pi);

    SECTION("zero background samples to zero") {
        RealField2 f = sample(Background::zero(), 3.0, g);
        CHECK(linf_norm(f) == 0.0);
    }

    SECTION("line soliton peak value is 3c") {
        RealField2 f = sample(Background::line_soliton(1.0), 0.0, g);
        CHECK(f.at(0, 0) == Catch::Approx(3.0).margin(1e-12));
        CHECK(linf_norm(f) == Catch::Approx(3.0).margin(1e-12));
    }

    SECTION("kink values stay inside [-a, a] and approach a") {
        // mathematically |Psi| < a; the sup rounds to a in double precision
        RealField2 f = sample(Background::tanh_kink(1.0, 1.0), 0.7, g);
        CHECK(linf_norm(f) <= 1.0);
        CHECK(linf_norm(f) > 1.0 - 1e-8);
    }

    SECTION("kink on a short box is rejected") {
        Grid2 small(64, 8, 4 * pi, 1.0);
        CHECK_THROWS_AS(sample(Background::tanh_kink(1.0, 1.0), 0.0, small), config_error);
    }

    SECTION("incommensurate cnoidal box is rejected") {
        CHECK_THROWS_AS(sample(Background::cnoidal(0.0, 1.0, 0.9), 0.0, g), config_error);
    }

    SECTION("traveling sample equals translated initial sample") {
        Grid2 g(512, 16, 40 * pi, 2 * pi);
        const Background bg = Background::line_soliton(1.0);
        const double t = 1.375;
        RealField2 ft = sample(bg, t, g);
        // translate the t=0 sample by c t with a spectral phase shift
        SpectralField2 f0 = forward_transform(sample(bg, 0.0, g));
        for (int ix = 0; ix < g.nx; ++ix) {
            const cplx phase = std::exp(cplx{0.0, -g.kx(ix) * bg.c * t});
            for (int iy = 0; iy < g.ny; ++iy) f0.at(ix, iy) *= phase;
        }
        RealField2 shifted = inverse_transform(f0);
        double err = 0.0;
        for (std::size_t i = 0; i < ft.values.size(); ++i)
            err = std::max(err, std::abs(ft.values[i] - shifted.values[i]));
        CHECK(err < 1e-8);
    }
}

TEST_CASE("residuals of exact traveling waves vanish") {
    SECTION("zero background") {
        Grid2 g(64, 16, 2 * pi, 2 * pi);
        CHECK(sobolev_norm(residual_spectral(Background::zero(), 0.0, g), 3.0) == 0.0);
    }

    SECTION("line soliton at reference resolution") {
        // kmax ~ 12.8 puts the sech^2 tail below roundoff, so the spectrally
        // evaluated residual survives the k^3-weighted H^3 norm.
        Grid2 g(512, 16, 40 * pi, 2 * pi);
        const Background bg = Background::line_soliton(1.0);
        for (double t : {0.0, 0.5, 2.0}) {
            CHECK(sobolev_norm(residual_spectral(bg, t, g), 3.0) < 1e-6);
        }
    }

    SECTION("cnoidal wave on a commensurate box") {
        const Background bg = Background::cnoidal(0.0, 1.0, 0.9);
        const double quantum = bg.cnoidal_box_quantum();
        Grid2 g(512, 16, 8.0 * quantum, 2 * pi);
        for (double t : {0.0, 0.3}) {
            CHECK(sobolev_norm(residual_spectral(bg, t, g), 3.0) < 1e-6);
        }
    }

    SECTION("wrong cnoidal coefficients leave a visible residual") {
        // same profile with beta perturbed by 1% stops solving the equation
        Background bg = Background::cnoidal(0.0, 1.0, 0.9);
        bg.beta *= 1.01;
        Grid2 g(512, 16, 8.0 * bg.cnoidal_box_quantum(), 2 * pi);
        CHECK(sobolev_norm(residual_spectral(bg, 0.0, g), 3.0) > 1e-2);
    }
}

TEST_CASE("kink residual is finite and refinement-stable") {
    const Background bg = Background::tanh_kink(1.0, 1.0);
    Grid2 coarse(512, 8, 20 * pi, 1.0);
    Grid2 fine(1024, 8, 20 * pi, 1.0);
    const double r1 = sobolev_norm(residual_spectral(bg, 0.0, coarse), 3.0);
    const double r2 = sobolev_norm(residual_spectral(bg, 0.0, fine), 3.0);
    CHECK(std::isfinite(r1));
    CHECK(r1 > 0.0);
    CHECK(std::abs(r1 - r2) < 0.01 * r2);
}

TEST_CASE("hypothesis report") {
    SECTION("zero background reports zeros") {
        Grid2 g(64, 16, 2 * pi, 2 * pi);
        const HypothesisReport rep = hypothesis_report(Background::zero(), {0.0, 1.0}, g);
        CHECK(rep.w4inf == 0.0);
        CHECK(rep.resH3 == 0.0);
    }

    SECTION("empty time list rejected") {
        Grid2 g(64, 16, 2 * pi, 2 * pi);
        CHECK_THROWS_AS(hypothesis_report(Background::zero(), {}, g), invalid_input);
    }

    SECTION("cnoidal satisfies the admissibility bounds") {
        const Background bg = Background::cnoidal(0.0, 1.0, 0.9);
        Grid2 g(512, 16, 8.0 * bg.cnoidal_box_quantum(), 2 * pi);
        const HypothesisReport rep = hypothesis_report(bg, {0.0, 0.25, 0.7}, g);
        CHECK(rep.resH3 < 1e-6);
        CHECK(std::isfinite(rep.w4inf));
        CHECK(rep.w4inf > 0.0);
    }

    SECTION("kink W^{4,inf} matches the analytic derivative maxima") {
        // Derivatives of f = tanh(x) as polynomials in f:
        //   f' = 1-f^2, f'' = -2f(1-f^2), f''' = -2(1-f^2)(1-3f^2),
        //   f'''' = 4f(1-f^2)(4-6f^2).
        // Oracle: closed forms evaluated at the same grid nodes, so the
        // comparison isolates the spectral-derivative error.
        Grid2 g(512, 8, 20 * pi, 1.0);
        double analytic = 0.0;
        for (int ix = 0; ix < g.nx; ++ix) {
            const double f = std::tanh(g.x(ix) - 10 * pi);
            const double s2 = 1.0 - f * f;
            analytic = std::max({analytic, std::abs(f), s2, std::abs(2.0 * f * s2),
                                 std::abs(2.0 * s2 * (1.0 - 3.0 * f * f)),
                                 std::abs(4.0 * f * s2 * (4.0 - 6.0 * f * f))});
        }
        const Background bg = Background::tanh_kink(1.0, 1.0);
        const HypothesisReport rep = hypothesis_report(bg, {0.0}, g);
        CHECK(rep.w4inf == Catch::Approx(analytic).margin(1e-6));
    }
}
