#ifndef ZKLAB_EVOLUTION_HPP
#define ZKLAB_EVOLUTION_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "zklab/background.hpp"
#include "zklab/spectral.hpp"
#include "zklab/symbols.hpp"

namespace zklab {

// Multiply each mode by exp(i dt omega(xi,mu)): the unitary group of the
// linearized equation. Exactly norm-preserving.
inline SpectralField2 linear_propagator(const SpectralField2& f, double dt) {
    const Grid2& g = f.grid;
    SpectralField2 out = f;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            out.at(ix, iy) *= std::exp(cplx{0.0, dt * omega(g.kx(ix), g.ky(iy))});
    return out;
}

enum class Scheme { Etdrk4, LawsonRk4, Strang };

inline std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Etdrk4: return "etdrk4";
        case Scheme::LawsonRk4: return "lawson_rk4";
        default: return "strang";
    }
}

struct SolverConfig {
    double dt = 1e-3;
    double T = 1.0;
    Scheme scheme = Scheme::Etdrk4;
    bool dealias = true;
    int record_every = 1;

    void validate() const {
        if (!(dt > 0.0)) throw invalid_input("SolverConfig: dt must be positive");
        if (!(T > 0.0)) throw invalid_input("SolverConfig: T must be positive");
        if (record_every < 1) throw invalid_input("SolverConfig: record_every must be >= 1");
        const double steps = T / dt;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
            throw config_error("SolverConfig: T must be a whole number of steps (T/dt = " +
                               std::to_string(steps) + ")");
    }
    long steps() const { return std::lround(T / dt); }
};

struct SolverState {
    double t = 0.0;
    SpectralField2 u;
};

struct Trajectory {
    std::vector<SolverState> states;
    SolverConfig config;
    Background background;
    Grid2 grid;

    const SolverState& at(std::size_t i) const { return states[i]; }
    std::size_t size() const { return states.size(); }
    double record_dt() const { return config.dt * config.record_every; }
};

// Integration aborted: the solution left the trusted range. Carries the last
// finite state.
struct divergence_error : std::runtime_error {
    SolverState last;
    divergence_error(const std::string& msg, SolverState s)
        : std::runtime_error(msg), last(std::move(s)) {}
};

namespace detail {

// Shared stepping machinery: mode tables, dealias mask, background rows and
// the translated residual forcing.
class ZkStepper {
  public:
    ZkStepper(const Grid2& g, const Background& bg, bool do_dealias)
        : g_(g), bg_(bg), dealias_(do_dealias), n_(g.size()) {
        validate_background_grid(bg, g);
        xi_.resize(n_);
        om_.resize(n_);
        keep_.assign(n_, 1);
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const std::size_t i = g.index(ix, iy);
                xi_[i] = (ix == g.nx / 2) ? 0.0 : g.kx(ix); // odd multiplier: drop Nyquist
                om_[i] = omega(g.kx(ix), g.ky(iy));
                if (do_dealias && !dealias_keeps(g, ix, iy)) keep_[i] = 0;
            }
        if (!bg.is_zero()) {
            rhat0_ = residual_spectral(bg, 0.0, g).modes;
            if (dealias_)
                for (std::size_t i = 0; i < n_; ++i)
                    if (!keep_[i]) rhat0_[i] = 0.0;
        }
        phys_.resize(n_);
        work_.resize(n_);
        psi_row_.resize(g.nx);
        psi_row_t_ = std::nan("");
    }

    const std::vector<double>& omega_table() const { return om_; }

    // N(u, t) = dealias[ -1/2 i xi F(u^2 + 2 u Psi(t)) - F(R[Psi](t)) ]
    void rhs(const std::vector<cplx>& uhat, double t, std::vector<cplx>& out) {
        std::copy(uhat.begin(), uhat.end(), phys_.begin());
        fft::dft({g_.nx, g_.ny}, FFTW_BACKWARD, phys_.data());

        const bool with_bg = !bg_.is_zero();
        if (with_bg && t != psi_row_t_) {
            const RealField2 psi = sample(bg_, t, g_);
            for (int ix = 0; ix < g_.nx; ++ix) psi_row_[ix] = psi.at(ix, 0);
            psi_row_t_ = t;
        }
        for (int ix = 0; ix < g_.nx; ++ix) {
            const double p = with_bg ? psi_row_[ix] : 0.0;
            for (int iy = 0; iy < g_.ny; ++iy) {
                const std::size_t i = g_.index(ix, iy);
                const double u = phys_[i].real();
                work_[i] = cplx{u * u + 2.0 * u * p, 0.0};
            }
        }
        fft::dft({g_.nx, g_.ny}, FFTW_FORWARD, work_.data());
        const double norm = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = keep_[i] ? cplx{0.0, -0.5 * xi_[i]} * (work_[i] * norm) : cplx{0.0, 0.0};
        }
        if (with_bg) subtract_residual(t, out);
    }

  private:
    // R[Psi](t) is the t=0 residual translated by c t; apply the phase shift
    // mode by mode. Static families use the t=0 field as is.
    void subtract_residual(double t, std::vector<cplx>& out) {
        const double c = (bg_.family == BackgroundFamily::TanhKink) ? 0.0 : bg_.c;
        for (int ix = 0; ix < g_.nx; ++ix) {
            const cplx phase =
                (c == 0.0 || t == 0.0) ? cplx{1.0, 0.0} : std::exp(cplx{0.0, -g_.kx(ix) * c * t});
            for (int iy = 0; iy < g_.ny; ++iy) {
                const std::size_t i = g_.index(ix, iy);
                if (rhat0_[i] != cplx{0.0, 0.0}) out[i] -= phase * rhat0_[i];
            }
        }
    }

    Grid2 g_;
    Background bg_;
    bool dealias_;
    std::size_t n_;
    std::vector<double> xi_, om_;
    std::vector<char> keep_;
    std::vector<cplx> rhat0_;
    std::vector<cplx> phys_, work_;
    std::vector<double> psi_row_;
    double psi_row_t_;
};

// Entire-function coefficients phi_k(z) evaluated as means over a unit
// circle around z; avoids the cancellation of the closed forms near z = 0.
struct Etdrk4Coefficients {
    std::vector<cplx> E, E2, Q, f1, f2, f3;

    Etdrk4Coefficients(const std::vector<double>& om, double h) {
        const std::size_t n = om.size();
        E.resize(n);
        E2.resize(n);
        Q.resize(n);
        f1.resize(n);
        f2.resize(n);
        f3.resize(n);
        const int M = 32;
        std::vector<cplx> ring(M);
        for (int j = 0; j < M; ++j)
            ring[j] = std::exp(cplx{0.0, 2.0 * M_PI * (j + 0.5) / M});
        for (std::size_t i = 0; i < n; ++i) {
            const cplx z = cplx{0.0, h * om[i]};
            E[i] = std::exp(z);
            E2[i] = std::exp(0.5 * z);
            cplx q{}, a{}, b{}, c{};
            for (int j = 0; j < M; ++j) {
                const cplx w = z + ring[j];
                const cplx ew = std::exp(w);
                const cplx w2 = w * w, w3 = w2 * w;
                q += (std::exp(0.5 * w) - 1.0) / w;
                a += (-4.0 - w + ew * (4.0 - 3.0 * w + w2)) / w3;
                b += (2.0 + w + ew * (-2.0 + w)) / w3;
                c += (-4.0 - 3.0 * w - w2 + ew * (4.0 - w)) / w3;
            }
            const double hM = h / M;
            Q[i] = hM * q;
            f1[i] = hM * a;
            f2[i] = hM * b;
            f3[i] = hM * c;
        }
    }
};

} // namespace detail

// Integrate d_t u + d_x Lap u + d_x(u^2 + 2 u Psi)/2 + R[Psi] = 0 from u0.
// The linear part is treated exactly; the default scheme is the fourth-order
// exponential integrator.
inline Trajectory evolve(const RealField2& u0, const Background& bg, const SolverConfig& cfg) {
    cfg.validate();
    if (!u0.all_finite()) throw invalid_input("evolve: non-finite initial data");
    const Grid2& g = u0.grid;

    detail::ZkStepper stepper(g, bg, cfg.dealias);
    const std::vector<double>& om = stepper.omega_table();
    const double h = cfg.dt;
    const std::size_t n = g.size();

    std::vector<cplx> v = forward_transform(u0).modes;
    if (cfg.dealias) {
        SpectralField2 tmp(g);
        tmp.modes = v;
        v = dealias(tmp).modes;
    }

    Trajectory traj;
    traj.config = cfg;
    traj.background = bg;
    traj.grid = g;

    auto record = [&](double t, const std::vector<cplx>& modes) {
        SolverState s;
        s.t = t;
        s.u = SpectralField2(g);
        s.u.modes = modes;
        traj.states.push_back(std::move(s));
    };
    auto check_finite = [&](double t, const std::vector<cplx>& modes) {
        double l2 = 0.0;
        bool finite = true;
        for (const cplx& m : modes) {
            if (!std::isfinite(m.real()) || !std::isfinite(m.imag())) {
                finite = false;
                break;
            }
            l2 += std::norm(m);
        }
        l2 = std::sqrt(l2 * g.Lx * g.Ly);
        if (!finite || l2 > 1e8) {
            throw divergence_error("evolve: blow-up detected at t = " + std::to_string(t) +
                                       " (L2 = " + std::to_string(l2) + ")",
                                   traj.states.empty() ? SolverState{} : traj.states.back());
        }
    };

    record(0.0, v);

    std::vector<cplx> Nv(n), Na(n), Nb(n), Nc(n), a(n), b(n), c(n), k(n);

    const long nsteps = cfg.steps();

    if (cfg.scheme == Scheme::Etdrk4) {
        detail::Etdrk4Coefficients cf(om, h);
        for (long step = 0; step < nsteps; ++step) {
            const double t = step * h;
            stepper.rhs(v, t, Nv);
            for (std::size_t i = 0; i < n; ++i) a[i] = cf.E2[i] * v[i] + cf.Q[i] * Nv[i];
            stepper.rhs(a, t + 0.5 * h, Na);
            for (std::size_t i = 0; i < n; ++i) b[i] = cf.E2[i] * v[i] + cf.Q[i] * Na[i];
            stepper.rhs(b, t + 0.5 * h, Nb);
            for (std::size_t i = 0; i < n; ++i)
                c[i] = cf.E2[i] * a[i] + cf.Q[i] * (2.0 * Nb[i] - Nv[i]);
            stepper.rhs(c, t + h, Nc);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = cf.E[i] * v[i] + cf.f1[i] * Nv[i] + 2.0 * cf.f2[i] * (Na[i] + Nb[i]) +
                       cf.f3[i] * Nc[i];
            check_finite((step + 1) * h, v);
            if ((step + 1) % cfg.record_every == 0 || step + 1 == nsteps)
                record((step + 1) * h, v);
        }
    } else if (cfg.scheme == Scheme::LawsonRk4) {
        std::vector<cplx> E(n), E2(n);
        for (std::size_t i = 0; i < n; ++i) {
            E[i] = std::exp(cplx{0.0, h * om[i]});
            E2[i] = std::exp(cplx{0.0, 0.5 * h * om[i]});
        }
        for (long step = 0; step < nsteps; ++step) {
            const double t = step * h;
            stepper.rhs(v, t, Nv);
            for (std::size_t i = 0; i < n; ++i) a[i] = E2[i] * (v[i] + 0.5 * h * Nv[i]);
            stepper.rhs(a, t + 0.5 * h, Na);
            for (std::size_t i = 0; i < n; ++i) b[i] = E2[i] * v[i] + 0.5 * h * Na[i];
            stepper.rhs(b, t + 0.5 * h, Nb);
            for (std::size_t i = 0; i < n; ++i) c[i] = E[i] * v[i] + h * E2[i] * Nb[i];
            stepper.rhs(c, t + h, Nc);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = E[i] * v[i] +
                       (h / 6.0) * (E[i] * Nv[i] + 2.0 * E2[i] * (Na[i] + Nb[i]) + Nc[i]);
            check_finite((step + 1) * h, v);
            if ((step + 1) % cfg.record_every == 0 || step + 1 == nsteps)
                record((step + 1) * h, v);
        }
    } else { // Strang: half nonlinear, full linear, half nonlinear
        std::vector<cplx> E(n);
        for (std::size_t i = 0; i < n; ++i) E[i] = std::exp(cplx{0.0, h * om[i]});
        auto nonlinear_half = [&](double t0) {
            // classical RK4 on d_t uhat = N(uhat, t) over h/2
            const double hh = 0.5 * h;
            stepper.rhs(v, t0, Nv);
            for (std::size_t i = 0; i < n; ++i) a[i] = v[i] + 0.5 * hh * Nv[i];
            stepper.rhs(a, t0 + 0.5 * hh, Na);
            for (std::size_t i = 0; i < n; ++i) b[i] = v[i] + 0.5 * hh * Na[i];
            stepper.rhs(b, t0 + 0.5 * hh, Nb);
            for (std::size_t i = 0; i < n; ++i) c[i] = v[i] + hh * Nb[i];
            stepper.rhs(c, t0 + hh, Nc);
            for (std::size_t i = 0; i < n; ++i)
                v[i] += (hh / 6.0) * (Nv[i] + 2.0 * (Na[i] + Nb[i]) + Nc[i]);
        };
        for (long step = 0; step < nsteps; ++step) {
            const double t = step * h;
            nonlinear_half(t);
            for (std::size_t i = 0; i < n; ++i) v[i] *= E[i];
            nonlinear_half(t + 0.5 * h);
            check_finite((step + 1) * h, v);
            if ((step + 1) % cfg.record_every == 0 || step + 1 == nsteps)
                record((step + 1) * h, v);
        }
    }
    return traj;
}

// Spectral-space nonlinear right-hand side as a standalone operation:
// -1/2 d_x(u^2 + 2 u Psi(t)) - R[Psi](t), products formed in physical space.
inline SpectralField2 nonlinear_rhs(const SpectralField2& u, const Background& bg, double t,
                                    bool do_dealias = true) {
    detail::ZkStepper stepper(u.grid, bg, do_dealias);
    SpectralField2 out(u.grid);
    stepper.rhs(u.modes, t, out.modes);
    return out;
}

// The scaling map u_lambda(t,x,y) = lambda u(lambda^{3/2} t, lambda^{1/2} x,
// lambda^{1/2} y) realized as an exact relabeling: same samples, box lengths
// divided by lambda^{1/2}, values multiplied by lambda. Backgrounds map
// within their families. time_scale is the factor turning original times
// into rescaled ones (t' = time_scale * t).
struct RescaleResult {
    RealField2 data;
    Background background;
    double time_scale;
};

inline RescaleResult rescale(const RealField2& u0, const Background& bg, double lambda) {
    if (!(lambda > 0.0)) throw invalid_input("rescale: lambda must be positive");
    const Grid2& g = u0.grid;
    const double rt = std::sqrt(lambda);
    Grid2 gs(g.nx, g.ny, g.Lx / rt, g.Ly / rt);
    RealField2 data(gs);
    for (std::size_t i = 0; i < data.values.size(); ++i) data.values[i] = lambda * u0.values[i];

    Background sbg = bg;
    switch (bg.family) {
        case BackgroundFamily::Zero: break;
        case BackgroundFamily::LineSoliton: sbg = Background::line_soliton(lambda * bg.c); break;
        case BackgroundFamily::Cnoidal:
            sbg = Background::cnoidal(lambda * bg.alpha, rt * bg.gamma, bg.kappa);
            break;
        case BackgroundFamily::TanhKink:
            sbg = Background::tanh_kink(lambda * bg.a, rt * bg.b);
            break;
    }
    return RescaleResult{std::move(data), sbg, std::pow(lambda, -1.5)};
}

// Undo the field part of the scaling map on the original grid.
inline RealField2 rescale_undo_field(const RealField2& scaled, double lambda, const Grid2& g0) {
    RealField2 out(g0);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scaled.values[i] / lambda;
    return out;
}

} // namespace zklab

#endif
