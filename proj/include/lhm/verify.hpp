#pragma once

#include <ostream>
#include <vector>

#include "lhm/oracle.hpp"
#include "lhm/response.hpp"
#include "lhm/sweep.hpp"

// Analytic-vs-oracle comparison over a coarse detuning grid.

namespace lhm {

struct VerifyPoint {
    double omega_s_over_gamma = 0.0;
    double delta_p_over_gamma = 0.0;
    oracle::DiscrepancyReport report;
};

struct VerifyResult {
    std::vector<VerifyPoint> points;
    double worst_rel43 = 0.0;
    double worst_rel21 = 0.0;
    VerifyPoint worst_point;

    double worst() const { return std::max(worst_rel43, worst_rel21); }
    bool all_within(double band) const { return worst() < band; }
    bool structural_mismatch() const { return worst() > 1e-3; }
};

inline VerifyResult run_verify(const SweepConfig& cfg, int grid_points = 61) {
    cfg.validate();
    const DecayRates rates = cfg.rates();
    const CoherenceDampings g = derive_dampings(rates, cfg.gamma6_includes_dephasing);
    VerifyResult result;
    const double step = (cfg.delta_p_to - cfg.delta_p_from) / (grid_points - 1);
    for (double ws : cfg.omega_s_list) {
        for (int k = 0; k < grid_points; ++k) {
            const double dp = cfg.delta_p_from + step * k;
            const DriveConfig drv = cfg.drive(dp, ws);
            const Coherences analytic = steady_coherences(g, drv, rates);
            const Coherences numeric = oracle::linear_response(rates, g, drv);
            VerifyPoint p{ws, dp, oracle::compare(analytic, numeric)};
            if (p.report.worst() > result.worst()) result.worst_point = p;
            result.worst_rel43 = std::max(result.worst_rel43, p.report.rel43);
            result.worst_rel21 = std::max(result.worst_rel21, p.report.rel21);
            result.points.push_back(p);
        }
    }
    return result;
}

inline void print_verify_report(const VerifyResult& r, std::ostream& out) {
    int agree = 0, tol = 0, structural = 0;
    for (const auto& p : r.points) {
        switch (p.report.band) {
        case oracle::AgreementBand::Agreement: ++agree; break;
        case oracle::AgreementBand::Tolerance: ++tol; break;
        case oracle::AgreementBand::Structural: ++structural; break;
        }
    }
    out << "verify: " << r.points.size() << " points; agreement(<1e-8): " << agree
        << ", tolerance(1e-8..1e-3): " << tol << ", structural(>1e-3): " << structural
        << '\n';
    out << "worst rel error rho43: " << r.worst_rel43
        << ", rho21: " << r.worst_rel21 << '\n';
    out << "worst point: omega_s=" << r.worst_point.omega_s_over_gamma
        << " gamma, delta_p=" << r.worst_point.delta_p_over_gamma << " gamma\n";
    if (structural > 0) {
        // Parameter regions of mismatch, per overlay.
        out << "structural-mismatch regions (delta_p/gamma):\n";
        double cur_ws = -1.0, lo = 0.0, hi = 0.0;
        bool open = false;
        auto flush = [&] {
            if (open)
                out << "  omega_s=" << cur_ws << " gamma: [" << lo << ", " << hi << "]\n";
            open = false;
        };
        for (const auto& p : r.points) {
            if (p.omega_s_over_gamma != cur_ws) { flush(); cur_ws = p.omega_s_over_gamma; }
            if (p.report.band == oracle::AgreementBand::Structural) {
                if (!open) { lo = p.delta_p_over_gamma; open = true; }
                hi = p.delta_p_over_gamma;
            } else {
                flush();
            }
        }
        flush();
    }
}

} // namespace lhm
