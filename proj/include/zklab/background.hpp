#ifndef ZKLAB_BACKGROUND_HPP
#define ZKLAB_BACKGROUND_HPP

#include <cmath>
#include <string>
#include <vector>

#include "zklab/elliptic.hpp"
#include "zklab/errors.hpp"
#include "zklab/spectral.hpp"

namespace zklab {

enum class BackgroundFamily { Zero, LineSoliton, Cnoidal, TanhKink };

inline std::string family_name(BackgroundFamily f) {
    switch (f) {
        case BackgroundFamily::Zero: return "zero";
        case BackgroundFamily::LineSoliton: return "line_soliton";
        case BackgroundFamily::Cnoidal: return "cnoidal";
        default: return "tanh_kink";
    }
}

// Coefficients making alpha + beta cn^2(gamma (x - c t); kappa) a traveling
// wave of d_t v + d_x Lap v + d_x(v^2)/2 = 0 (y-independent). Derived from
// the integrated profile ODE phi'' = c phi - phi^2/2 + d with the cn^2
// second-derivative identity; the residual check is the ground truth.
struct CnoidalCoefficients {
    double beta, c;
};

inline CnoidalCoefficients cnoidal_params(double alpha, double gamma, double kappa) {
    const double beta = 12.0 * kappa * kappa * gamma * gamma;
    const double c = alpha + 4.0 * gamma * gamma * (2.0 * kappa * kappa - 1.0);
    return {beta, c};
}

// A bounded y-independent background profile Psi(t,x,y). line_soliton and
// cnoidal solve the equation exactly (zero residual); tanh_kink is a bounded
// front that does not, exercising the general forcing path.
struct Background {
    BackgroundFamily family = BackgroundFamily::Zero;
    double c = 0.0;                                         // traveling speed
    double alpha = 0.0, gamma = 0.0, kappa = 0.0, beta = 0.0; // cnoidal
    double a = 0.0, b = 0.0;                                // kink amplitude/steepness

    static Background zero() { return Background{}; }

    static Background line_soliton(double speed) {
        if (!(speed > 0.0)) throw invalid_input("line_soliton: speed must be positive");
        Background bg;
        bg.family = BackgroundFamily::LineSoliton;
        bg.c = speed;
        return bg;
    }

    static Background cnoidal(double alpha, double gamma, double kappa) {
        if (!(gamma > 0.0)) throw invalid_input("cnoidal: gamma must be positive");
        if (!(kappa > 0.0 && kappa < 1.0)) throw invalid_input("cnoidal: kappa must be in (0,1)");
        Background bg;
        bg.family = BackgroundFamily::Cnoidal;
        bg.alpha = alpha;
        bg.gamma = gamma;
        bg.kappa = kappa;
        const CnoidalCoefficients p = cnoidal_params(alpha, gamma, kappa);
        bg.beta = p.beta;
        bg.c = p.c;
        return bg;
    }

    static Background tanh_kink(double amplitude, double steepness) {
        if (!(steepness > 0.0)) throw invalid_input("tanh_kink: steepness must be positive");
        Background bg;
        bg.family = BackgroundFamily::TanhKink;
        bg.a = amplitude;
        bg.b = steepness;
        return bg;
    }

    bool is_zero() const { return family == BackgroundFamily::Zero; }
    double speed() const { return c; }

    // Spatial period of the cnoidal profile quantum 4K(kappa)/gamma.
    double cnoidal_box_quantum() const { return 4.0 * elliptic_K(kappa) / gamma; }
};

namespace detail {

inline double sech(double x) { return 1.0 / std::cosh(x); }

// Reduce x into the fundamental domain [-L/2, L/2).
inline double reduce(double x, double L) { return x - L * std::round(x / L); }

// Profile value at reduced coordinate xr for a box of length Lx. The kink is
// closed periodically with image fronts at +-Lx/2, so spectra of the sampled
// field converge; the images decay like exp(-b Lx) into the bulk.
inline double profile_value(const Background& bg, double xr, double Lx) {
    switch (bg.family) {
        case BackgroundFamily::Zero: return 0.0;
        case BackgroundFamily::LineSoliton: {
            const double s = sech(0.5 * std::sqrt(bg.c) * xr);
            return 3.0 * bg.c * s * s;
        }
        case BackgroundFamily::Cnoidal: {
            const double cn = jacobi_cn(bg.gamma * xr, bg.kappa);
            return bg.alpha + bg.beta * cn * cn;
        }
        case BackgroundFamily::TanhKink:
            return bg.a * (std::tanh(bg.b * xr) - std::tanh(bg.b * (xr - 0.5 * Lx)) -
                           std::tanh(bg.b * (xr + 0.5 * Lx)));
    }
    return 0.0;
}

} // namespace detail

// Reject boxes on which the profile cannot be represented to 1e-10: decaying
// tails must have died out (soliton, kink) and cnoidal boxes must hold a
// whole number of periods.
inline void validate_background_grid(const Background& bg, const Grid2& g) {
    switch (bg.family) {
        case BackgroundFamily::Zero: return;
        case BackgroundFamily::LineSoliton: {
            const double s = detail::sech(0.25 * std::sqrt(bg.c) * g.Lx);
            if (s * s > 1e-10)
                throw config_error("line_soliton: box Lx=" + std::to_string(g.Lx) +
                                   " too short, periodization error " + std::to_string(s * s));
            return;
        }
        case BackgroundFamily::Cnoidal: {
            const double quantum = bg.cnoidal_box_quantum();
            const double ratio = g.Lx / quantum;
            const double nearest = std::round(ratio);
            if (nearest < 1.0 || std::abs(ratio - nearest) > 1e-8 * std::max(1.0, nearest))
                throw config_error("cnoidal: box Lx=" + std::to_string(g.Lx) +
                                   " is not a whole multiple of the profile period " +
                                   std::to_string(quantum));
            return;
        }
        case BackgroundFamily::TanhKink: {
            const double defect = 4.0 * std::exp(-bg.b * g.Lx);
            if (defect > 1e-10)
                throw config_error("tanh_kink: box Lx=" + std::to_string(g.Lx) +
                                   " too short, periodic closure defect " + std::to_string(defect));
            return;
        }
    }
}

// Pointwise analytic sample of Psi(t, x, y); all families are y-independent.
// The cnoidal phase is reduced with integer arithmetic so that the sampled
// field is exactly box-periodic regardless of roundoff in K(kappa).
inline RealField2 sample(const Background& bg, double t, const Grid2& g) {
    validate_background_grid(bg, g);
    RealField2 out(g);
    if (bg.is_zero()) return out;

    std::vector<double> row(g.nx);
    if (bg.family == BackgroundFamily::Cnoidal) {
        // cn^2 via its nome series,
        //   cn^2(u) = (E/K - kappa'^2)/kappa^2
        //           + (2 pi^2 / (kappa^2 K^2)) sum_m m q^m/(1-q^{2m}) cos(m pi u / K),
        // with the spatial angle reduced by integer arithmetic so the sampled
        // field is exactly box-periodic.
        double K, E;
        elliptic_KE(bg.kappa, K, E);
        const double q = elliptic_nome(bg.kappa);
        const double k2 = bg.kappa * bg.kappa;
        const long mper = std::lround(g.Lx * bg.gamma / (4.0 * K));
        const double mean = (E / K - (1.0 - k2)) / k2;
        std::vector<double> amp, shift;
        double qm = 1.0;
        for (int m = 1; m <= 512; ++m) {
            qm *= q;
            const double a = (2.0 * M_PI * M_PI / (k2 * K * K)) * m * qm / (1.0 - qm * qm);
            if (std::abs(a) < 1e-18 && m > 8) break;
            amp.push_back(a);
            shift.push_back(std::fmod(m * M_PI * bg.gamma * bg.c * t / K, 2.0 * M_PI));
        }
        for (int ix = 0; ix < g.nx; ++ix) {
            double v = mean;
            for (std::size_t mi = 0; mi < amp.size(); ++mi) {
                const long mm = static_cast<long>(mi) + 1;
                const long r = (2 * mm * mper * ix) % g.nx;
                v += amp[mi] * std::cos(2.0 * M_PI * static_cast<double>(r) / g.nx - shift[mi]);
            }
            row[ix] = bg.alpha + bg.beta * v;
        }
    } else {
        for (int ix = 0; ix < g.nx; ++ix) {
            const double xr = detail::reduce(g.x(ix) - bg.c * t, g.Lx);
            row[ix] = detail::profile_value(bg, xr, g.Lx);
        }
    }
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy) out.at(ix, iy) = row[ix];
    return out;
}

// d Psi / dt = -c d_x Psi for traveling families (x-derivative spectral),
// identically zero for static ones.
inline RealField2 time_derivative(const Background& bg, double t, const Grid2& g) {
    if (bg.is_zero() || bg.family == BackgroundFamily::TanhKink) return RealField2(g);
    const SpectralField2 ph = forward_transform(sample(bg, t, g));
    SpectralField2 dph = spectral_derivative(ph, Axis::X, 1);
    for (cplx& m : dph.modes) m *= -bg.c;
    return inverse_transform(dph);
}

// Residual R[Psi] = d_t Psi + d_x Lap Psi + d_x(Psi^2)/2, evaluated
// spectrally from the sampled profile (time derivative analytic per family).
// The top-third band holds only aliased images of the quadratic term for a
// resolved profile, so the result is returned dealiased.
inline SpectralField2 residual_spectral(const Background& bg, double t, const Grid2& g) {
    const RealField2 psi = sample(bg, t, g);
    const SpectralField2 ph = forward_transform(psi);

    SpectralField2 r = spectral_derivative(laplacian(ph), Axis::X, 1);
    if (bg.c != 0.0 && bg.family != BackgroundFamily::TanhKink) {
        const SpectralField2 dx = spectral_derivative(ph, Axis::X, 1);
        for (std::size_t i = 0; i < r.modes.size(); ++i) r.modes[i] -= bg.c * dx.modes[i];
    }
    RealField2 sq(g);
    for (std::size_t i = 0; i < sq.values.size(); ++i) sq.values[i] = psi.values[i] * psi.values[i];
    const SpectralField2 sqx = spectral_derivative(forward_transform(sq), Axis::X, 1);
    for (std::size_t i = 0; i < r.modes.size(); ++i) r.modes[i] += 0.5 * sqx.modes[i];
    return dealias(r);
}

inline RealField2 residual(const Background& bg, double t, const Grid2& g) {
    return inverse_transform(residual_spectral(bg, t, g));
}

// Suprema over sampled times of the two admissibility quantities: the
// W^{4,inf} size of Psi and the H^3 size of its residual.
struct HypothesisReport {
    double w4inf = 0.0;
    double resH3 = 0.0;
    std::vector<double> times;
};

inline HypothesisReport hypothesis_report(const Background& bg, const std::vector<double>& times,
                                          const Grid2& g) {
    if (times.empty()) throw invalid_input("hypothesis_report: empty time sample");
    HypothesisReport rep;
    rep.times = times;
    for (double t : times) {
        rep.w4inf = std::max(rep.w4inf, wkinf_norm(sample(bg, t, g), 4));
        rep.resH3 = std::max(rep.resH3, sobolev_norm(residual_spectral(bg, t, g), 3.0));
    }
    return rep;
}

} // namespace zklab

#endif
