#ifndef ZKLAB_DIAGNOSTICS_HPP
#define ZKLAB_DIAGNOSTICS_HPP

#include <cmath>
#include <vector>

#include "zklab/cutoffs.hpp"
#include "zklab/evolution.hpp"

namespace zklab {

// Mean, mass and energy of a field:
//   I1 = int v,  I2 = int v^2,  I3 = 1/2 int (|grad v|^2 - v^3/3).
// The cubic term pairs the dealiased square against the field, which is the
// exact continuum integral for band-limited v.
struct ConservedTriple {
    double I1, I2, I3;
};

inline double cubic_integral(const SpectralField2& vh, const RealField2& v) {
    RealField2 sq(v.grid);
    for (std::size_t i = 0; i < sq.values.size(); ++i) sq.values[i] = v.values[i] * v.values[i];
    const SpectralField2 sqh = dealias(forward_transform(sq));
    return spectral_pairing(sqh, vh);
}

inline double gradient_square_integral(const SpectralField2& vh) {
    const Grid2& g = vh.grid;
    double acc = 0.0;
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) {
            const double kx = g.kx(ix), ky = g.ky(iy);
            acc += (kx * kx + ky * ky) * std::norm(vh.at(ix, iy));
        }
    return g.Lx * g.Ly * acc;
}

inline ConservedTriple invariants(const RealField2& v) {
    const SpectralField2 vh = forward_transform(v);
    ConservedTriple out{};
    out.I1 = v.grid.Lx * v.grid.Ly * vh.at(0, 0).real();
    const double l2 = sobolev_norm(vh, 0.0);
    out.I2 = l2 * l2;
    out.I3 = 0.5 * (gradient_square_integral(vh) - cubic_integral(vh, v) / 3.0);
    return out;
}

// E(u) = int |grad u|^2 - 1/3 int u^2 (u + 3 Psi(t)).
inline double modified_energy(const RealField2& u, const Background& bg, double t) {
    const SpectralField2 uh = forward_transform(u);
    RealField2 sq(u.grid);
    for (std::size_t i = 0; i < sq.values.size(); ++i) sq.values[i] = u.values[i] * u.values[i];
    const SpectralField2 sqh = dealias(forward_transform(sq));
    double e = gradient_square_integral(uh) - spectral_pairing(sqh, uh) / 3.0;
    if (!bg.is_zero()) {
        const SpectralField2 ph = forward_transform(sample(bg, t, u.grid));
        e -= spectral_pairing(sqh, ph);
    }
    return e;
}

inline double modified_energy_state(const SolverState& s, const Background& bg) {
    return modified_energy(inverse_transform(s.u), bg, s.t);
}

// Exact rate identity for the modified energy along solutions:
//   dE/dt = 2 int u Lap R + int (u^2 + 2 u Psi) R - int u^2 Psi_t,
// with R = R[Psi]. lhs is the centered difference of E along the recorded
// trajectory; rhs is the quadrature of the right-hand side at the center.
struct RatePair {
    double lhs, rhs;
};

inline RatePair energy_rate_identity(const Trajectory& traj, const Background& bg,
                                     std::size_t index) {
    if (traj.size() < 3 || index == 0 || index + 1 >= traj.size())
        throw insufficient_stencil("energy_rate_identity: need an interior record");
    const double dt = traj.at(index + 1).t - traj.at(index - 1).t;

    RatePair out{};
    out.lhs = (modified_energy_state(traj.at(index + 1), bg) -
               modified_energy_state(traj.at(index - 1), bg)) /
              dt;

    const SolverState& s = traj.at(index);
    const Grid2& g = traj.grid;
    const RealField2 u = inverse_transform(s.u);
    const SpectralField2 rh = residual_spectral(bg, s.t, g);

    double rhs = 2.0 * spectral_pairing(s.u, laplacian(rh));

    const RealField2 psi = sample(bg, s.t, g);
    RealField2 w(g);
    for (std::size_t i = 0; i < w.values.size(); ++i)
        w.values[i] = u.values[i] * (u.values[i] + 2.0 * psi.values[i]);
    rhs += spectral_pairing(dealias(forward_transform(w)), rh);

    const RealField2 psit = time_derivative(bg, s.t, g);
    if (linf_norm(psit) > 0.0) {
        RealField2 sq(g);
        for (std::size_t i = 0; i < sq.values.size(); ++i)
            sq.values[i] = u.values[i] * u.values[i];
        rhs -= spectral_pairing(dealias(forward_transform(sq)), forward_transform(psit));
    }
    out.rhs = rhs;
    return out;
}

// Exponential envelope ||u(t)||^2 <= C_data exp(C_psi t).
struct GrowthEnvelope {
    double C_data = 0.0;
    double C_psi = 0.0;
};

struct GronwallRecord {
    double t;
    double mass;      // ||u||^2
    double l2_rate;   // centered d/dt (1/2 ||u||^2)
    double bound;     // (1 + 2||d_x Psi||_inf) ||u||^2 + ||R[Psi]||^2
    bool ok;
};

struct GronwallReport {
    std::vector<GronwallRecord> records; // interior records only
    GrowthEnvelope envelope;
    bool rate_ok = true;     // every interior record satisfies the bound
    bool envelope_ok = true; // mass curve dominated by the envelope
};

// Check the mass-growth differential inequality along a recorded trajectory
// and fit the explicit exponential envelope implied by it.
inline GronwallReport gronwall_check(const Trajectory& traj, const Background& bg,
                                     double tol_scale = 1e-6) {
    if (traj.size() < 3)
        throw insufficient_stencil("gronwall_check: need at least three records");
    const Grid2& g = traj.grid;

    std::vector<double> mass(traj.size()), psix(traj.size()), res2(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double m = sobolev_norm(traj.at(i).u, 0.0);
        mass[i] = m * m;
        if (bg.is_zero()) {
            psix[i] = 0.0;
            res2[i] = 0.0;
        } else {
            const SpectralField2 ph = forward_transform(sample(bg, traj.at(i).t, g));
            psix[i] = linf_norm(inverse_transform(spectral_derivative(ph, Axis::X, 1)));
            const double r = sobolev_norm(residual_spectral(bg, traj.at(i).t, g), 0.0);
            res2[i] = r * r;
        }
    }

    GronwallReport rep;
    double scale = 1.0;
    for (std::size_t i = 0; i < traj.size(); ++i)
        scale = std::max(scale, mass[i] + res2[i]);

    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        GronwallRecord rec{};
        rec.t = traj.at(i).t;
        rec.mass = mass[i];
        const double dt = traj.at(i + 1).t - traj.at(i - 1).t;
        rec.l2_rate = 0.5 * (mass[i + 1] - mass[i - 1]) / dt;
        rec.bound = (1.0 + 2.0 * psix[i]) * mass[i] + res2[i];
        rec.ok = rec.l2_rate <= rec.bound + tol_scale * scale;
        rep.rate_ok = rep.rate_ok && rec.ok;
        rep.records.push_back(rec);
    }

    double sup_psix = 0.0, sup_res2 = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        sup_psix = std::max(sup_psix, psix[i]);
        sup_res2 = std::max(sup_res2, res2[i]);
    }
    rep.envelope.C_psi = 2.0 + 2.0 * sup_psix;
    rep.envelope.C_data = mass[0] + sup_res2;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        if (mass[i] > rep.envelope.C_data * std::exp(rep.envelope.C_psi * traj.at(i).t) *
                          (1.0 + 1e-9)) {
            rep.envelope_ok = false;
        }
    }
    return rep;
}

// Discrete energy-space norm of a trajectory:
//   ||f||^2 = ||P_1 f(0)||^2 + sum_{H >= 2} H^s max_t ||P_H f(t)||^2,
// the max running over recorded times.
inline double bsT_norm(const Trajectory& traj, double s) {
    if (traj.size() == 0) throw invalid_input("bsT_norm: empty trajectory");
    const Grid2& g = traj.grid;
    const std::vector<DyadicIndex> shells = grid_shells(g);

    // per-shell squared multipliers, precomputed over the mode grid
    std::vector<std::vector<double>> w2(shells.size(), std::vector<double>(g.size()));
    for (std::size_t si = 0; si < shells.size(); ++si)
        for (int ix = 0; ix < g.nx; ++ix)
            for (int iy = 0; iy < g.ny; ++iy) {
                const double p = cutoff::psi_H(shells[si], g.kx(ix), g.ky(iy));
                w2[si][g.index(ix, iy)] = p * p;
            }

    std::vector<double> shell_max(shells.size(), 0.0);
    std::vector<double> shell_at0(shells.size(), 0.0);
    for (std::size_t r = 0; r < traj.size(); ++r) {
        const auto& modes = traj.at(r).u.modes;
        for (std::size_t si = 0; si < shells.size(); ++si) {
            double acc = 0.0;
            for (std::size_t i = 0; i < modes.size(); ++i) acc += w2[si][i] * std::norm(modes[i]);
            acc *= g.Lx * g.Ly; // ||P_H u||^2
            if (r == 0) shell_at0[si] = acc;
            shell_max[si] = std::max(shell_max[si], acc);
        }
    }

    double total = 0.0;
    for (std::size_t si = 0; si < shells.size(); ++si) {
        const double H = static_cast<double>(shells[si].value);
        if (shells[si].value == 1)
            total += shell_at0[si];
        else
            total += std::pow(H, s) * shell_max[si];
    }
    return std::sqrt(total);
}

struct DiagnosticsRecord {
    double t = 0.0;
    double I1 = 0.0, I2 = 0.0, I3 = 0.0;
    double modified_energy = 0.0;
    double l2_rate = 0.0;        // NaN at boundary records
    double gronwall_bound = 0.0; // bound of the rate inequality
    bool gronwall_ok = true;
    std::vector<double> sobolev_s;
};

// Per-record diagnostics table for a trajectory. Invariants are evaluated on
// the perturbation u; the caller decides whether the background is added.
inline std::vector<DiagnosticsRecord> diagnostics_table(const Trajectory& traj,
                                                        const Background& bg,
                                                        const std::vector<double>& sobolev_orders) {
    std::vector<DiagnosticsRecord> out(traj.size());
    GronwallReport gr;
    bool have_gr = traj.size() >= 3;
    if (have_gr) gr = gronwall_check(traj, bg);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        DiagnosticsRecord& r = out[i];
        r.t = traj.at(i).t;
        const RealField2 u = inverse_transform(traj.at(i).u);
        const ConservedTriple c = invariants(u);
        r.I1 = c.I1;
        r.I2 = c.I2;
        r.I3 = c.I3;
        r.modified_energy = modified_energy(u, bg, r.t);
        if (have_gr && i >= 1 && i + 1 < traj.size()) {
            r.l2_rate = gr.records[i - 1].l2_rate;
            r.gronwall_bound = gr.records[i - 1].bound;
            r.gronwall_ok = gr.records[i - 1].ok;
        } else {
            r.l2_rate = std::nan("");
            r.gronwall_bound = std::nan("");
        }
        for (double s : sobolev_orders) r.sobolev_s.push_back(sobolev_norm(traj.at(i).u, s));
    }
    return out;
}

} // namespace zklab

#endif
