#pragma once

#include <cmath>

#include "lhm/constants.hpp"
#include "lhm/errors.hpp"

// Physical parameter records for the four-level scheme. All rates, Rabi
// frequencies and detunings are stored in absolute angular-frequency units
// (s^-1); gamma-unit conversion happens only at the I/O boundary.

namespace lhm {

// Spontaneous emission and collisional dephasing rates. gamma_scale is the
// unit "gamma" everything is quoted in at the I/O boundary.
struct DecayRates {
    double gamma_scale = 1.0e7; // s^-1
    double gamma43 = 0.0;
    double gamma42 = 0.0;
    double gamma31 = 0.0;
    double gamma21 = 0.0;
    double gamma1 = 0.0; // ground-level width, zero in this scheme
    double gamma_c = 0.0; // collisional dephasing

    // Reference parameter set: gamma43 = 0.8g, gamma42 = 1.5g, gamma31 = 1.2g,
    // gamma_c = 0.8g, gamma21 = gamma43/137^2, gamma1 = 0.
    static DecayRates reference(double gamma_scale = 1.0e7) {
        DecayRates r;
        r.gamma_scale = gamma_scale;
        r.gamma43 = 0.8 * gamma_scale;
        r.gamma42 = 1.5 * gamma_scale;
        r.gamma31 = 1.2 * gamma_scale;
        r.gamma21 = r.gamma43 / (137.0 * 137.0);
        r.gamma1 = 0.0;
        r.gamma_c = 0.8 * gamma_scale;
        return r;
    }

    void validate() const {
        if (gamma_scale <= 0.0)
            throw validation_error("DecayRates: gamma_scale must be positive");
        if (gamma43 < 0.0 || gamma42 < 0.0 || gamma31 < 0.0 || gamma21 < 0.0 ||
            gamma1 < 0.0 || gamma_c < 0.0)
            throw validation_error("DecayRates: rates must be non-negative");
    }
};

// Coherence damping coefficients Gamma1..Gamma6, indexed by the level pair
// they damp: 1<->(2,1), 2<->(3,1), 3<->(4,1), 4<->(4,2), 5<->(4,3), 6<->(3,2).
struct CoherenceDampings {
    double Gamma1 = 0.0;
    double Gamma2 = 0.0;
    double Gamma3 = 0.0;
    double Gamma4 = 0.0;
    double Gamma5 = 0.0;
    double Gamma6 = 0.0;
};

// Gamma6 as printed carries no collisional dephasing term. The flag restores
// it for differential experiments against the master-equation oracle.
inline CoherenceDampings derive_dampings(const DecayRates& r,
                                         bool gamma6_includes_dephasing = false) {
    r.validate();
    CoherenceDampings d;
    d.Gamma1 = 0.5 * (r.gamma1 + r.gamma21) + r.gamma_c;
    d.Gamma2 = 0.5 * (r.gamma1 + r.gamma31) + r.gamma_c;
    d.Gamma3 = 0.5 * (r.gamma1 + r.gamma42 + r.gamma43) + r.gamma_c;
    d.Gamma4 = 0.5 * (r.gamma21 + r.gamma42 + r.gamma43) + r.gamma_c;
    d.Gamma5 = 0.5 * (r.gamma31 + r.gamma42 + r.gamma43) + r.gamma_c;
    d.Gamma6 = 0.5 * (r.gamma31 + r.gamma21);
    if (gamma6_includes_dephasing)
        d.Gamma6 += r.gamma_c;
    return d;
}

// Field drives: Rabi frequencies, detunings and the relative phase
// theta = theta_c - theta_s (electric and magnetic probe phases are equal in
// a nonconductor, so only this combination survives).
struct DriveConfig {
    double omega_pe = 0.0; // electric probe Rabi frequency
    double omega_pm = 0.0; // magnetic probe Rabi frequency
    double omega_c = 0.0;  // control (two-photon effective)
    double omega_s = 0.0;  // signal
    double delta_p = 0.0;
    double delta_c = 0.0;
    double delta_s = 0.0; // stored for completeness; the analytic formulas do
                          // not contain it and the oracle enforces loop closure
    double delta_m = 0.0;
    double theta = 0.0;

    void validate() const {
        if (omega_pe < 0.0 || omega_pm < 0.0 || omega_c < 0.0 || omega_s < 0.0)
            throw validation_error("DriveConfig: Rabi frequencies must be non-negative");
    }

    bool weak_probe() const { return omega_pe < 0.1 * omega_c; }
};

// Magnetic probe Rabi frequency for a shared probe beam: Bp = Ep/c together
// with the two Rabi definitions gives Omega_pm = Omega_pe * mu12 / (c * d34).
inline double probe_magnetic_rabi(double omega_pe, double d34, double mu12) {
    if (d34 <= 0.0)
        throw validation_error("probe_magnetic_rabi: d34 must be positive");
    return omega_pe * mu12 / (constants::speed_of_light * d34);
}

// Dipole moments, density and the shared physical constants.
struct MediumConstants {
    double d34 = 2.5e-29;  // electric dipole moment, C*m
    double mu12 = 7.0e-23; // magnetic dipole moment, A*m^2
    double N = 5.0e24;     // number density, m^-3

    static constexpr double c = constants::speed_of_light;
    static constexpr double eps0 = constants::vacuum_permittivity;
    static constexpr double mu0 = constants::vacuum_permeability;
    static constexpr double hbar = constants::hbar;

    void validate() const {
        if (N <= 0.0)
            throw validation_error("MediumConstants: N must be positive");
        if (d34 <= 0.0)
            throw validation_error("MediumConstants: d34 must be positive");
    }
};

} // namespace lhm
