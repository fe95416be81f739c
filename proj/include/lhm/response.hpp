#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "lhm/errors.hpp"
#include "lhm/params.hpp"

// Analytic first-order steady-state coherences rho43 and rho21 of the
// four-level scheme, evaluated verbatim from their published closed forms.
// Everything here is a pure function of its arguments.

namespace lhm {

using complexd = std::complex<double>;

struct Coherences {
    complexd rho43{0.0, 0.0};
    complexd rho21{0.0, 0.0};
};

// The A/D coefficient algebra entering rho43 and rho21.
struct CoefficientSet {
    complexd A0, A11, A12, A13;
    complexd A21, A22, A23;
    complexd A31, A32, A33;
    complexd A41, A42, A43;
    complexd D0, D1, D2;
};

inline CoefficientSet coefficients(const CoherenceDampings& g,
                                   const DriveConfig& drv,
                                   const DecayRates& rates) {
    const complexd i{0.0, 1.0};
    const double G1 = g.Gamma1, G2 = g.Gamma2, G3 = g.Gamma3;
    const double G5 = g.Gamma5, G6 = g.Gamma6;
    const double g31 = rates.gamma31;
    const double Dp = drv.delta_p, Dc = drv.delta_c, Dm = drv.delta_m;
    const double Wc = drv.omega_c, Ws = drv.omega_s;
    const double Wc2 = Wc * Wc, Ws2 = Ws * Ws;

    const double a0_den = G2 * G2 * g31 + g31 * Dc * Dc + 4.0 * G2 * Wc2;
    if (a0_den == 0.0)
        throw pole_error("coefficients: A0 denominator vanishes "
                         "(gamma31 = 0 and Gamma2*Omega_c^2 = 0)");

    CoefficientSet c;
    c.A0 = i / a0_den;
    c.A11 = g31 * (G2 - i * Dc) + 2.0 * G1 * (G3 + i * (Dc + Dp));
    c.A12 = (G1 + i * Dm) * (G6 - i * (Dc - Dp)) + Wc2;
    c.A13 = Ws2 * (i * g31 * Dc - G2 * (g31 - 2.0 * G6 + 2.0 * i * Dc - 2.0 * i * Dp));
    c.A21 = (G2 - i * Dc) * (G3 + G6 + 2.0 * i * Dp) * (G2 * g31 + i * g31 * Dc + Wc2);
    c.A22 = g31 * (G1 + i * Dm) * (-G3 - i * (Dc + Dp));
    c.A23 = G3 - g31 + G6 + 2.0 * i * Dp;
    c.A31 = -G2 * g31 - i * g31 * Dc - Wc2;
    c.A32 = G3 + i * (Dc + Dp);
    c.A33 = G6 + i * (Dp - Dc);
    c.A41 = G3 + G6 + 2.0 * i * Dp;
    c.A42 = G3 + g31 + i * (Dc + Dp);
    c.A43 = g31 * (Dp - i * G5) + i * Wc2;
    c.D0 = (G1 + i * Dm) * (G6 - i * (Dc - Dp)) + Wc2;
    c.D1 = (G5 + i * Dp) * (G3 + i * (Dc + Dp)) + Wc2;
    c.D2 = (i * G6 + Dc - Dp) * (Dp - i * G5) + (G1 + i * Dm) * (G3 + i * (Dc + Dp)) -
           2.0 * Wc2;
    return c;
}

namespace detail {

// Shared response denominator D0*D1 + D2*Ws^2 + Ws^4, with a scale-relative
// pole guard so large-Omega_s points do not trip false positives.
inline complexd response_denominator(const CoefficientSet& c, const DriveConfig& drv) {
    const double Ws2 = drv.omega_s * drv.omega_s;
    const complexd den = c.D0 * c.D1 + c.D2 * Ws2 + Ws2 * Ws2;
    const double scale = std::max({std::abs(c.D0 * c.D1), std::abs(c.D2) * Ws2,
                                   Ws2 * Ws2});
    if (std::abs(den) < 1e-12 * scale) {
        std::ostringstream os;
        os << "response denominator vanishes at delta_p=" << drv.delta_p
           << ", delta_c=" << drv.delta_c << ", delta_m=" << drv.delta_m
           << ", omega_c=" << drv.omega_c << ", omega_s=" << drv.omega_s;
        throw pole_error(os.str());
    }
    return den;
}

} // namespace detail

inline complexd rho43(const CoherenceDampings& g, const DriveConfig& drv,
                      const DecayRates& rates) {
    const CoefficientSet c = coefficients(g, drv, rates);
    const complexd den = detail::response_denominator(c, drv);
    const complexd i{0.0, 1.0};
    const double G2 = g.Gamma2;
    const double g31 = rates.gamma31;
    const double Dc = drv.delta_c;
    const double Wc = drv.omega_c, Ws = drv.omega_s;
    const double Wc2 = Wc * Wc, Ws2 = Ws * Ws;
    const complexd phase = std::exp(i * drv.theta);

    const complexd electric = c.A0 * Wc2 * drv.omega_pe * (c.A11 * c.A12 + c.A13);
    const complexd cross =
        phase * c.A0 * drv.omega_pm * Wc * Ws *
        (c.A21 - (G2 + i * Dc) * (c.A22 - c.A23 * Wc2 - g31 * Ws2));
    return (electric + cross) / den;
}

inline complexd rho21(const CoherenceDampings& g, const DriveConfig& drv,
                      const DecayRates& rates) {
    const CoefficientSet c = coefficients(g, drv, rates);
    const complexd den = detail::response_denominator(c, drv);
    const complexd i{0.0, 1.0};
    const double G2 = g.Gamma2, G5 = g.Gamma5, G6 = g.Gamma6;
    const double g31 = rates.gamma31;
    const double Dp = drv.delta_p, Dc = drv.delta_c;
    const double Wc = drv.omega_c, Ws = drv.omega_s;
    const double Wc2 = Wc * Wc, Ws2 = Ws * Ws;
    const complexd phase = std::exp(i * drv.theta);

    const complexd cross =
        phase * c.A0 * drv.omega_pe * Wc * Ws *
        (c.A41 * (G2 + i * Dc) * Wc2 +
         (i * Dc - G2) * (g31 * Ws2 - c.A42 * Wc2 + (i * G6 + Dc - Dp) * c.A43));
    const complexd magnetic =
        c.A0 * drv.omega_pm * c.A31 * (i * Dc - G2) *
            (c.A33 * ((G5 + i * Dp) * c.A32 + Wc2) + c.A32 * Ws2) -
        c.A0 * drv.omega_pm * Wc2 * (G2 + i * Dc) *
            ((g31 - c.A33) * ((G5 + i * Dp) * c.A32 + Wc2) - (c.A32 + g31) * Ws2);
    return (cross + magnetic) / den;
}

inline Coherences steady_coherences(const CoherenceDampings& g, const DriveConfig& drv,
                                    const DecayRates& rates) {
    return Coherences{rho43(g, drv, rates), rho21(g, drv, rates)};
}

} // namespace lhm
