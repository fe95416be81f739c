// Command-line driver: detuning sweeps, analytic-vs-oracle verification and
// golden-data regeneration for the four-level left-handed vapor model.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "lhm/golden.hpp"
#include "lhm/oracle.hpp"
#include "lhm/sweep.hpp"
#include "lhm/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify_failed = 2;
constexpr int exit_io = 3;

lhm::SweepConfig load_or_default(const std::string& path) {
    if (path.empty())
        return lhm::SweepConfig{};
    return lhm::load_config(path);
}

void warn_delta_s(const lhm::SweepConfig& cfg) {
    // The formulas contain no independent delta_s; the oracle enforces
    // delta_s = delta_c + delta_p - delta_m (loop closure).
    if (cfg.delta_s_explicit)
        std::cerr << "warning: delta_s is not an independent parameter of this "
                     "model; the configured value is ignored (loop closure)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"four-level EIT left-handed medium response"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path = "sweep.csv";
    bool plot = false;
    unsigned threads = 1;
    bool report_only = false;
    double band = 1e-6;
    int verify_points = 61;
    std::string golden_path = "golden_oracle.txt";

    auto* sweep_cmd = app.add_subcommand("sweep", "run the detuning sweep and emit CSV");
    sweep_cmd->add_option("--config", config_path, "config file (flat key = value)");
    sweep_cmd->add_option("--out", out_path, "output CSV path");
    sweep_cmd->add_flag("--plot", plot, "also emit plot-data blocks next to the CSV");
    sweep_cmd->add_option("--threads", threads, "worker pool width");

    auto* verify_cmd = app.add_subcommand("verify", "compare analytic coherences against the master-equation oracle");
    verify_cmd->add_option("--config", config_path, "config file (flat key = value)");
    verify_cmd->add_flag("--report-only", report_only, "always exit 0, just print the report");
    verify_cmd->add_option("--band", band, "acceptance band for relative error");
    verify_cmd->add_option("--points", verify_points, "grid points per overlay");

    auto* golden_cmd = app.add_subcommand("golden", "golden-data table maintenance");
    auto* regen_cmd = golden_cmd->add_subcommand("regen", "regenerate the oracle golden table");
    regen_cmd->add_option("--config", config_path, "config file (flat key = value)");
    regen_cmd->add_option("--out", golden_path, "golden table path");
    regen_cmd->add_option("--points", verify_points, "grid points per overlay");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (sweep_cmd->parsed()) {
            const lhm::SweepConfig cfg = load_or_default(config_path);
            warn_delta_s(cfg);
            const lhm::SweepGrid grid = lhm::run_sweep(cfg, threads);
            try {
                lhm::emit_csv(grid, out_path);
                if (plot)
                    lhm::emit_plotdata(grid, out_path + ".plot");
            } catch (const std::ios_base::failure& e) {
                std::cerr << "I/O error: " << e.what() << '\n';
                return exit_io;
            }
            std::size_t poles = 0;
            for (const auto& r : grid.records)
                if (r.pole) ++poles;
            std::cout << "wrote " << grid.records.size() << " records to " << out_path;
            if (poles) std::cout << " (" << poles << " pole-marked rows)";
            std::cout << '\n';
            return exit_ok;
        }
        if (verify_cmd->parsed()) {
            const lhm::SweepConfig cfg = load_or_default(config_path);
            warn_delta_s(cfg);
            const lhm::VerifyResult r = lhm::run_verify(cfg, verify_points);
            lhm::print_verify_report(r, std::cout);
            if (report_only || r.all_within(band))
                return exit_ok;
            return exit_verify_failed;
        }
        if (regen_cmd->parsed()) {
            const lhm::SweepConfig cfg = load_or_default(config_path);
            const lhm::DecayRates rates = cfg.rates();
            const lhm::CoherenceDampings g =
                lhm::derive_dampings(rates, cfg.gamma6_includes_dephasing);
            lhm::golden::Table table;
            const double step =
                (cfg.delta_p_to - cfg.delta_p_from) / (verify_points - 1);
            for (double ws : cfg.omega_s_list)
                for (int k = 0; k < verify_points; ++k) {
                    const lhm::DriveConfig drv =
                        cfg.drive(cfg.delta_p_from + step * k, ws);
                    table[lhm::golden::point_hash(rates, drv)] =
                        lhm::oracle::linear_response(rates, g, drv);
                }
            try {
                lhm::golden::write(table, golden_path);
            } catch (const std::ios_base::failure& e) {
                std::cerr << "I/O error: " << e.what() << '\n';
                return exit_io;
            }
            std::cout << "wrote " << table.size() << " golden records to "
                      << golden_path << '\n';
            return exit_ok;
        }
        std::cerr << "no subcommand\n";
        return exit_usage;
    } catch (const lhm::config_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const lhm::validation_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_io;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
