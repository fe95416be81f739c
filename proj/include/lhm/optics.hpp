#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string_view>

#include "lhm/errors.hpp"
#include "lhm/params.hpp"
#include "lhm/response.hpp"

// Microscopic coherences -> macroscopic material constants via the electric
// and magnetic Clausius-Mossotti relations, plus the left-handed refractive
// index branch and the absorption figure of merit.

namespace lhm {

enum class WindowLabel {
    LeftHandedLowLoss,
    LeftHandedLossy,
    NotLeftHanded,
};

inline std::string_view to_string(WindowLabel l) {
    switch (l) {
    case WindowLabel::LeftHandedLowLoss: return "LEFT_HANDED_LOW_LOSS";
    case WindowLabel::LeftHandedLossy: return "LEFT_HANDED_LOSSY";
    case WindowLabel::NotLeftHanded: return "NOT_LEFT_HANDED";
    }
    return "NOT_LEFT_HANDED";
}

struct MediumResponse {
    complexd gamma_e{0.0, 0.0}; // electric polarizability volume, m^3
    complexd gamma_m{0.0, 0.0}; // magnetic polarizability volume, m^3
    complexd chi_e{0.0, 0.0};
    complexd eps_r{1.0, 0.0};
    complexd mu_r{1.0, 0.0};
    complexd n{0.0, 0.0};
    complexd n_squared{0.0, 0.0}; // eps_r * mu_r, kept so users can re-branch
    double fom = 0.0;             // |Re n| / |Im n|, +inf when Im n == 0
    WindowLabel label = WindowLabel::NotLeftHanded;
};

// gamma_e = 2 d34^2 rho43 / (eps0 hbar Omega_pe)
inline complexd electric_polarizability(complexd rho43, double omega_pe,
                                        const MediumConstants& k) {
    if (omega_pe <= 0.0)
        throw validation_error("electric_polarizability: probe must be on (omega_pe > 0)");
    return 2.0 * k.d34 * k.d34 * rho43 / (MediumConstants::eps0 * MediumConstants::hbar * omega_pe);
}

// gamma_m = 2 mu0 mu12 rho21 / Bp with Bp = hbar Omega_pe / (d34 c), so
// gamma_m = 2 mu0 mu12 rho21 c d34 / (hbar Omega_pe).
inline complexd magnetic_polarizability(complexd rho21, double omega_pe,
                                        const MediumConstants& k) {
    if (omega_pe <= 0.0)
        throw validation_error("magnetic_polarizability: probe must be on (omega_pe > 0)");
    return 2.0 * MediumConstants::mu0 * k.mu12 * rho21 * MediumConstants::c * k.d34 /
           (MediumConstants::hbar * omega_pe);
}

// chi_e = N gamma_e / (1 - N gamma_e / 3)
inline complexd electric_susceptibility(complexd gamma_e, double N) {
    const complexd den = 1.0 - N * gamma_e / 3.0;
    if (std::abs(den) < 1e-12)
        throw pole_error("electric_susceptibility: local-field catastrophe (N*gamma_e -> 3)");
    return N * gamma_e / den;
}

// mu_r = (1 + 2/3 N gamma_m) / (1 - 1/3 N gamma_m)
inline complexd relative_permeability(complexd gamma_m, double N) {
    const complexd den = 1.0 - N * gamma_m / 3.0;
    if (std::abs(den) < 1e-12)
        throw pole_error("relative_permeability: local-field catastrophe (N*gamma_m -> 3)");
    return (1.0 + 2.0 * N * gamma_m / 3.0) / den;
}

// Inverse of relative_permeability: gamma_m = (1/N)(mu_r - 1)/(2/3 + mu_r/3).
inline complexd cm_roundtrip_check(complexd mu_r, double N) {
    const complexd den = 2.0 / 3.0 + mu_r / 3.0;
    if (std::abs(den) < 1e-12)
        throw pole_error("cm_roundtrip_check: pole at mu_r = -2");
    return (mu_r - 1.0) / (N * den);
}

// Left-handed branch: n = -(principal sqrt of eps_r * mu_r), so Re(n) <= 0.
inline complexd refractive_index(complexd eps_r, complexd mu_r) {
    complexd n = -std::sqrt(eps_r * mu_r);
    if (n.real() > 0.0)
        n = -n; // principal root landed on the Re > 0 half plane
    return n;
}

inline double figure_of_merit(complexd n) {
    if (n.imag() == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::abs(n.real()) / std::abs(n.imag());
}

// Left-handed iff Re eps_r < 0 and Re mu_r < 0; low-loss iff additionally the
// figure of merit clears the threshold (default 100).
inline WindowLabel classify_point(const MediumResponse& r, double fom_threshold = 100.0) {
    if (r.eps_r.real() < 0.0 && r.mu_r.real() < 0.0)
        return r.fom > fom_threshold ? WindowLabel::LeftHandedLowLoss
                                     : WindowLabel::LeftHandedLossy;
    return WindowLabel::NotLeftHanded;
}

// Full pipeline from coherences to material constants at one parameter point.
inline MediumResponse medium_response(const Coherences& coh, double omega_pe,
                                      const MediumConstants& k,
                                      double fom_threshold = 100.0) {
    k.validate();
    MediumResponse r;
    r.gamma_e = electric_polarizability(coh.rho43, omega_pe, k);
    r.gamma_m = magnetic_polarizability(coh.rho21, omega_pe, k);
    r.chi_e = electric_susceptibility(r.gamma_e, k.N);
    r.eps_r = 1.0 + r.chi_e;
    r.mu_r = relative_permeability(r.gamma_m, k.N);
    r.n_squared = r.eps_r * r.mu_r;
    r.n = refractive_index(r.eps_r, r.mu_r);
    r.fom = figure_of_merit(r.n);
    r.label = classify_point(r, fom_threshold);
    return r;
}

} // namespace lhm
