#ifndef ZKLAB_ELLIPTIC_HPP
#define ZKLAB_ELLIPTIC_HPP

#include <cmath>

#include "zklab/errors.hpp"

namespace zklab {

// Complete elliptic integral of the first kind, modulus convention:
//   K(kappa) = int_0^{pi/2} dt / sqrt(1 - kappa^2 sin^2 t),
// computed by the arithmetic-geometric mean, K = pi / (2 agm(1, kappa')).
inline double elliptic_K(double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw invalid_input("elliptic_K: modulus must be in (0,1)");
    double a = 1.0;
    double b = std::sqrt((1.0 - kappa) * (1.0 + kappa));
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
        const double am = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = am;
    }
    return M_PI / (2.0 * a);
}

// K and E together from one AGM chain: E = K (1 - sum 2^{i-1} c_i^2).
inline void elliptic_KE(double kappa, double& K, double& E) {
    if (!(kappa > 0.0 && kappa < 1.0)) throw invalid_input("elliptic_KE: modulus must be in (0,1)");
    double a = 1.0, b = std::sqrt((1.0 - kappa) * (1.0 + kappa));
    double c = kappa, sum = 0.5 * c * c, pow2 = 1.0;
    for (int i = 1; i < 64 && std::abs(c) > 1e-17; ++i) {
        c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += 0.5 * pow2 * c * c;
    }
    K = M_PI / (2.0 * a);
    E = K * (1.0 - sum);
}

// Nome q = exp(-pi K'/K).
inline double elliptic_nome(double kappa) {
    const double K = elliptic_K(kappa);
    const double Kp = elliptic_K(std::sqrt((1.0 - kappa) * (1.0 + kappa)));
    return std::exp(-M_PI * Kp / K);
}

struct JacobiTriple {
    double sn, cn, dn;
};

// Jacobi elliptic sn, cn, dn by AGM descent with backward recurrence.
// Modulus convention: kappa in (0,1), parameter m = kappa^2. sn^2 + cn^2 = 1
// holds exactly by construction.
inline JacobiTriple jacobi_sncndn(double u, double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw invalid_input("jacobi_sncndn: modulus must be in (0,1)");
    if (!std::isfinite(u)) throw invalid_input("jacobi_sncndn: non-finite argument");

    const double CA = 1.0e-9;
    double emc = (1.0 - kappa) * (1.0 + kappa); // complementary parameter 1 - kappa^2
    JacobiTriple r{0.0, 1.0, 1.0};

    if (emc == 0.0) { // degenerate kappa -> 1 limit
        r.sn = std::tanh(u);
        r.cn = 1.0 / std::cosh(u);
        r.dn = r.cn;
        return r;
    }

    double em[16], en[16];
    double a = 1.0, c = 0.0;
    double dn = 1.0;
    int l = 0;
    for (int i = 0; i < 16; ++i) {
        l = i;
        em[i] = a;
        emc = std::sqrt(emc);
        en[i] = emc;
        c = 0.5 * (a + emc);
        if (std::abs(a - emc) <= CA * a) break;
        emc *= a;
        a = c;
    }
    u *= c;
    double sn = std::sin(u), cn = std::cos(u);
    if (sn != 0.0) {
        a = cn / sn;
        c *= a;
        for (int ii = l; ii >= 0; --ii) {
            const double b = em[ii];
            a *= c;
            c *= dn;
            dn = (en[ii] + a) / (b + a);
            a = c / b;
        }
        a = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn >= 0.0) ? a : -a;
        cn = c * sn;
    }
    r.sn = sn;
    r.cn = cn;
    r.dn = dn;
    return r;
}

inline double jacobi_cn(double u, double kappa) { return jacobi_sncndn(u, kappa).cn; }

} // namespace zklab

#endif
