#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lhm/errors.hpp"
#include "lhm/optics.hpp"
#include "lhm/params.hpp"
#include "lhm/response.hpp"

// Detuning sweeps: config ingestion, deterministic parallel grid evaluation,
// CSV and plot-data emission.

namespace lhm {

struct SweepConfig {
    double gamma = 1.0e7; // absolute scale, s^-1
    // rates in gamma units
    double gamma43 = 0.8;
    double gamma42 = 1.5;
    double gamma31 = 1.2;
    double gamma21 = 0.8 / (137.0 * 137.0);
    double gamma_c = 0.8;
    // medium
    double d34 = 2.5e-29;
    double mu12 = 7.0e-23;
    double N = 5.0e24;
    // drive, gamma units (theta in rad)
    double omega_pe = 0.05;
    std::optional<double> omega_pm; // default: derived from shared probe beam
    double omega_c = 8.0;
    double delta_c = 0.005;
    double delta_m = 0.005;
    double delta_s = 0.0;          // accepted, ignored by the formulas
    bool delta_s_explicit = false; // set when the config file supplied delta_s
    double theta = 0.5235987755982988; // pi/6
    // sweep axis
    double delta_p_from = -30.0;
    double delta_p_to = 30.0;
    int delta_p_steps = 6001;
    std::vector<double> omega_s_list{14.0, 18.0, 20.0};
    double fom_threshold = 100.0;
    bool gamma6_includes_dephasing = false;

    void validate() const {
        std::vector<std::string> bad;
        if (gamma <= 0.0) bad.push_back("gamma must be positive");
        if (delta_p_steps < 2) bad.push_back("delta_p_steps must be >= 2");
        if (!(delta_p_from < delta_p_to)) bad.push_back("delta_p_from must be < delta_p_to");
        if (omega_s_list.empty()) bad.push_back("omega_s list must be non-empty");
        if (gamma43 < 0 || gamma42 < 0 || gamma31 < 0 || gamma21 < 0 || gamma_c < 0)
            bad.push_back("decay rates must be non-negative");
        if (N <= 0.0) bad.push_back("N must be positive");
        if (d34 <= 0.0) bad.push_back("d34 must be positive");
        if (!bad.empty()) {
            std::string msg = "invalid config:";
            for (const auto& b : bad) msg += "\n  - " + b;
            throw config_error(msg);
        }
    }

    DecayRates rates() const {
        DecayRates r;
        r.gamma_scale = gamma;
        r.gamma43 = gamma43 * gamma;
        r.gamma42 = gamma42 * gamma;
        r.gamma31 = gamma31 * gamma;
        r.gamma21 = gamma21 * gamma;
        r.gamma1 = 0.0;
        r.gamma_c = gamma_c * gamma;
        return r;
    }

    MediumConstants medium() const {
        MediumConstants k;
        k.d34 = d34;
        k.mu12 = mu12;
        k.N = N;
        return k;
    }

    // Drive at one (delta_p, omega_s) grid point, absolute units.
    DriveConfig drive(double delta_p_over_gamma, double omega_s_over_gamma) const {
        DriveConfig d;
        d.omega_pe = omega_pe * gamma;
        d.omega_pm = omega_pm ? *omega_pm * gamma
                              : probe_magnetic_rabi(d.omega_pe, d34, mu12);
        d.omega_c = omega_c * gamma;
        d.omega_s = omega_s_over_gamma * gamma;
        d.delta_p = delta_p_over_gamma * gamma;
        d.delta_c = delta_c * gamma;
        d.delta_m = delta_m * gamma;
        d.delta_s = delta_s * gamma;
        d.theta = theta;
        return d;
    }
};

namespace config_detail {

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "gamma", "gamma43", "gamma42", "gamma31", "gamma21", "gamma_c",
        "d34", "mu12", "N",
        "omega_pe", "omega_pm", "omega_c",
        "delta_c", "delta_m", "delta_s", "theta",
        "delta_p_from", "delta_p_to", "delta_p_steps",
        "omega_s", "fom_threshold", "gamma6_includes_dephasing"};
    return keys;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

inline std::string nearest_key(const std::string& key) {
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& k : known_keys()) {
        const std::size_t d = edit_distance(key, k);
        if (d < best_d) { best_d = d; best = k; }
    }
    return best;
}

inline std::string trim(std::string s) {
    const auto ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& v, int line, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": key '" + key +
                           "': cannot parse number '" + v + "'");
    }
}

} // namespace config_detail

// Flat key = value format, '#' comments, no nesting. Unknown keys are
// rejected, naming the nearest valid key. Omitted keys keep the reference
// defaults.
inline SweepConfig parse_config(std::istream& in) {
    using namespace config_detail;
    SweepConfig cfg;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) + ": expected 'key = value', got '" + s + "'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end())
            throw config_error("line " + std::to_string(line) + ": unknown key '" + key +
                               "' (did you mean '" + nearest_key(key) + "'?)");
        if (key == "gamma") cfg.gamma = parse_number(val, line, key);
        else if (key == "gamma43") cfg.gamma43 = parse_number(val, line, key);
        else if (key == "gamma42") cfg.gamma42 = parse_number(val, line, key);
        else if (key == "gamma31") cfg.gamma31 = parse_number(val, line, key);
        else if (key == "gamma21") cfg.gamma21 = parse_number(val, line, key);
        else if (key == "gamma_c") cfg.gamma_c = parse_number(val, line, key);
        else if (key == "d34") cfg.d34 = parse_number(val, line, key);
        else if (key == "mu12") cfg.mu12 = parse_number(val, line, key);
        else if (key == "N") cfg.N = parse_number(val, line, key);
        else if (key == "omega_pe") cfg.omega_pe = parse_number(val, line, key);
        else if (key == "omega_pm") cfg.omega_pm = parse_number(val, line, key);
        else if (key == "omega_c") cfg.omega_c = parse_number(val, line, key);
        else if (key == "delta_c") cfg.delta_c = parse_number(val, line, key);
        else if (key == "delta_m") cfg.delta_m = parse_number(val, line, key);
        else if (key == "delta_s") {
            cfg.delta_s = parse_number(val, line, key);
            cfg.delta_s_explicit = true;
        }
        else if (key == "theta") cfg.theta = parse_number(val, line, key);
        else if (key == "delta_p_from") cfg.delta_p_from = parse_number(val, line, key);
        else if (key == "delta_p_to") cfg.delta_p_to = parse_number(val, line, key);
        else if (key == "delta_p_steps")
            cfg.delta_p_steps = static_cast<int>(parse_number(val, line, key));
        else if (key == "fom_threshold") cfg.fom_threshold = parse_number(val, line, key);
        else if (key == "gamma6_includes_dephasing") {
            if (val == "true") cfg.gamma6_includes_dephasing = true;
            else if (val == "false") cfg.gamma6_includes_dephasing = false;
            else throw config_error("line " + std::to_string(line) +
                                    ": gamma6_includes_dephasing must be true or false");
        } else if (key == "omega_s") {
            cfg.omega_s_list.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ','))
                cfg.omega_s_list.push_back(parse_number(trim(item), line, key));
        }
    }
    cfg.validate();
    return cfg;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw config_error("cannot open config file: " + path);
    return parse_config(f);
}

struct SweepRecord {
    double omega_s_over_gamma = 0.0;
    double delta_p_over_gamma = 0.0;
    MediumResponse response;
    bool pole = false;        // denominator pole at this grid point
    std::string pole_message; // description when pole is set
};

struct SweepGrid {
    std::vector<double> delta_p_axis; // gamma units, ascending
    std::vector<double> omega_s_list; // gamma units
    std::vector<SweepRecord> records; // overlay-major, delta_p ascending
};

// Evaluate one grid point through the analytic-coherence pipeline.
inline SweepRecord evaluate_point(const SweepConfig& cfg, double delta_p_over_gamma,
                                  double omega_s_over_gamma) {
    SweepRecord rec;
    rec.omega_s_over_gamma = omega_s_over_gamma;
    rec.delta_p_over_gamma = delta_p_over_gamma;
    try {
        const DecayRates rates = cfg.rates();
        const CoherenceDampings g = derive_dampings(rates, cfg.gamma6_includes_dephasing);
        const DriveConfig drv = cfg.drive(delta_p_over_gamma, omega_s_over_gamma);
        const Coherences coh = steady_coherences(g, drv, rates);
        rec.response = medium_response(coh, drv.omega_pe, cfg.medium(), cfg.fom_threshold);
    } catch (const pole_error& e) {
        rec.pole = true;
        rec.pole_message = e.what();
    }
    return rec;
}

// Deterministic parallel sweep: records are stored by grid index, so the
// output is independent of thread count and scheduling.
inline SweepGrid run_sweep(const SweepConfig& cfg, unsigned threads = 1) {
    cfg.validate();
    SweepGrid grid;
    grid.omega_s_list = cfg.omega_s_list;
    grid.delta_p_axis.resize(static_cast<std::size_t>(cfg.delta_p_steps));
    const double step = (cfg.delta_p_to - cfg.delta_p_from) / (cfg.delta_p_steps - 1);
    for (int k = 0; k < cfg.delta_p_steps; ++k)
        grid.delta_p_axis[static_cast<std::size_t>(k)] = cfg.delta_p_from + step * k;

    const std::size_t n_points = grid.omega_s_list.size() * grid.delta_p_axis.size();
    grid.records.resize(n_points);
    const std::size_t n_dp = grid.delta_p_axis.size();

    auto work_on = [&](std::size_t idx) {
        const std::size_t overlay = idx / n_dp;
        const std::size_t k = idx % n_dp;
        grid.records[idx] =
            evaluate_point(cfg, grid.delta_p_axis[k], grid.omega_s_list[overlay]);
    };

    if (threads <= 1) {
        for (std::size_t idx = 0; idx < n_points; ++idx)
            work_on(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < n_points;
                     idx = next.fetch_add(1))
                    work_on(idx);
            });
        for (auto& th : pool)
            th.join();
    }
    if (grid.records.empty())
        throw config_error("run_sweep: empty grid");
    return grid;
}

namespace csv_detail {

// Shortest round-trip decimal; `inf`/`nan` literals for non-finite values.
inline std::string fmt(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

} // namespace csv_detail

inline void write_csv(const SweepGrid& grid, std::ostream& out) {
    out << "omega_s_over_gamma,delta_p_over_gamma,re_eps,im_eps,re_mu,im_mu,"
           "re_n,im_n,fom,label\n";
    using csv_detail::fmt;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& r : grid.records) {
        out << fmt(r.omega_s_over_gamma) << ',' << fmt(r.delta_p_over_gamma) << ',';
        if (r.pole) {
            for (int k = 0; k < 7; ++k)
                out << fmt(nan) << ',';
            out << "POLE_ERROR\n";
            continue;
        }
        const auto& m = r.response;
        out << fmt(m.eps_r.real()) << ',' << fmt(m.eps_r.imag()) << ','
            << fmt(m.mu_r.real()) << ',' << fmt(m.mu_r.imag()) << ','
            << fmt(m.n.real()) << ',' << fmt(m.n.imag()) << ','
            << fmt(m.fom) << ',' << to_string(m.label) << '\n';
    }
}

inline void emit_csv(const SweepGrid& grid, const std::string& path) {
    if (grid.records.empty())
        throw config_error("emit_csv: empty grid");
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::ios_base::failure("emit_csv: cannot open " + path);
    write_csv(grid, f);
    if (!f)
        throw std::ios_base::failure("emit_csv: write failed for " + path);
}

// One whitespace-separated block per (overlay, observable), blank-line
// separated, for generic plotting tools. A companion gnuplot script is
// written next to the data file.
inline void emit_plotdata(const SweepGrid& grid, const std::string& path) {
    if (grid.records.empty())
        throw config_error("emit_plotdata: empty grid");
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::ios_base::failure("emit_plotdata: cannot open " + path);
    using csv_detail::fmt;
    const std::size_t n_dp = grid.delta_p_axis.size();
    static constexpr const char* observables[] = {"re_eps", "im_eps", "re_mu", "im_mu",
                                                  "re_n", "im_n", "fom"};
    for (std::size_t ov = 0; ov < grid.omega_s_list.size(); ++ov) {
        for (const char* obs : observables) {
            f << "# omega_s_over_gamma=" << fmt(grid.omega_s_list[ov])
              << " observable=" << obs << "\n";
            for (std::size_t k = 0; k < n_dp; ++k) {
                const auto& r = grid.records[ov * n_dp + k];
                double v = std::numeric_limits<double>::quiet_NaN();
                if (!r.pole) {
                    const auto& m = r.response;
                    const std::string_view o{obs};
                    v = o == "re_eps" ? m.eps_r.real()
                        : o == "im_eps" ? m.eps_r.imag()
                        : o == "re_mu" ? m.mu_r.real()
                        : o == "im_mu" ? m.mu_r.imag()
                        : o == "re_n" ? m.n.real()
                        : o == "im_n" ? m.n.imag()
                                      : m.fom;
                }
                f << fmt(r.delta_p_over_gamma) << ' ' << fmt(v) << '\n';
            }
            f << '\n';
        }
    }
    if (!f)
        throw std::ios_base::failure("emit_plotdata: write failed for " + path);

    std::ofstream script(path + ".gp", std::ios::binary);
    if (script) {
        script << "# gnuplot companion for " << path << "\n"
               << "# blocks are ordered overlay-major: for each omega_s, the\n"
               << "# observables re_eps, im_eps, re_mu, im_mu, re_n, im_n, fom\n"
               << "set xlabel 'delta_p / gamma'\n"
               << "plot for [b=0:" << grid.omega_s_list.size() * 7 - 1 << "] '"
               << path << "' index b with lines title sprintf('block %d', b)\n";
    }
}

} // namespace lhm
