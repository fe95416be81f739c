#include <catch2/catch_amalgamated.hpp>
#include <sstream>

#include "lhm/sweep.hpp"
#include "test_support.hpp"

using namespace lhm;

namespace {

SweepConfig small_config() {
    std::istringstream in("delta_p_from = -5\n"
                          "delta_p_to = 5\n"
                          "delta_p_steps = 11\n"
                          "omega_s = 14, 20\n");
    return parse_config(in);
}

std::string csv_string(const SweepGrid& grid) {
    std::ostringstream os;
    write_csv(grid, os);
    return os.str();
}

} // namespace

TEST_CASE("parse_config: empty input yields the reference defaults") {
    std::istringstream in("");
    const SweepConfig cfg = parse_config(in);
    CHECK(cfg.gamma == 1e7);
    CHECK(cfg.N == 5e24);
    CHECK(cfg.omega_pe == 0.05);
    CHECK(cfg.omega_c == 8.0);
    CHECK(cfg.delta_c == 0.005);
    CHECK(cfg.delta_m == 0.005);
    CHECK_THAT(cfg.theta, Catch::Matchers::WithinRel(std::acos(-1.0) / 6.0, 1e-15));
    CHECK(cfg.omega_s_list == std::vector<double>{14.0, 18.0, 20.0});
    CHECK(cfg.delta_p_from == -30.0);
    CHECK(cfg.delta_p_to == 30.0);
    CHECK(cfg.delta_p_steps == 6001);
    CHECK_THAT(cfg.gamma21, Catch::Matchers::WithinRel(0.8 / (137.0 * 137.0), 1e-14));
    CHECK_FALSE(cfg.gamma6_includes_dephasing);
}

TEST_CASE("parse_config: comments, whitespace, overrides") {
    std::istringstream in("# comment line\n"
                          "omega_c = 6.5  # trailing comment\n"
                          "\n"
                          "omega_s = 10\n"
                          "gamma6_includes_dephasing = true\n");
    const SweepConfig cfg = parse_config(in);
    CHECK(cfg.omega_c == 6.5);
    CHECK(cfg.omega_s_list == std::vector<double>{10.0});
    CHECK(cfg.gamma6_includes_dephasing);
}

TEST_CASE("parse_config: single-step sweep rejected") {
    std::istringstream in("delta_p_steps = 1\n");
    CHECK_THROWS_AS(parse_config(in), config_error);
}

TEST_CASE("parse_config: unknown key names the nearest valid one") {
    std::istringstream in("omega_sig = 14\n");
    try {
        parse_config(in);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("omega_sig") != std::string::npos);
        CHECK(msg.find("omega_s") != std::string::npos);
    }
}

TEST_CASE("parse_config: malformed number carries line context") {
    std::istringstream in("\n\nomega_c = fast\n");
    try {
        parse_config(in);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("omega_c") != std::string::npos);
    }
}

TEST_CASE("run_sweep: record count and deterministic ordering") {
    const SweepConfig cfg = small_config();
    const SweepGrid grid = run_sweep(cfg);
    REQUIRE(grid.records.size() == 22); // 2 overlays x 11 points
    // overlay-major, delta_p ascending
    CHECK(grid.records[0].omega_s_over_gamma == 14.0);
    CHECK(grid.records[10].omega_s_over_gamma == 14.0);
    CHECK(grid.records[11].omega_s_over_gamma == 20.0);
    for (std::size_t i = 1; i < 11; ++i)
        CHECK(grid.records[i].delta_p_over_gamma >
              grid.records[i - 1].delta_p_over_gamma);
    CHECK(grid.records[0].delta_p_over_gamma == -5.0);
    CHECK(grid.records[10].delta_p_over_gamma == 5.0);
}

TEST_CASE("run_sweep: identical bytes across runs and thread counts") {
    const SweepConfig cfg = small_config();
    const std::string a = csv_string(run_sweep(cfg, 1));
    const std::string b = csv_string(run_sweep(cfg, 1));
    const std::string c = csv_string(run_sweep(cfg, 4));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("write_csv: exact header and one line per record") {
    const SweepConfig cfg = small_config();
    const std::string csv = csv_string(run_sweep(cfg));
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "omega_s_over_gamma,delta_p_over_gamma,re_eps,im_eps,re_mu,im_mu,re_n,"
          "im_n,fom,label");
    std::size_t rows = 0;
    for (std::string line; std::getline(lines, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 22);
    CHECK(csv.find("\r") == std::string::npos); // LF endings only
}

TEST_CASE("write_csv: inf literal and pole-marked rows") {
    SweepGrid grid;
    grid.delta_p_axis = {0.0, 1.0};
    grid.omega_s_list = {14.0};
    SweepRecord healthy;
    healthy.omega_s_over_gamma = 14.0;
    healthy.delta_p_over_gamma = 0.0;
    healthy.response.eps_r = {-1.0, 0.0};
    healthy.response.mu_r = {-1.0, 0.0};
    healthy.response.n = {-1.0, 0.0};
    healthy.response.fom = std::numeric_limits<double>::infinity();
    healthy.response.label = WindowLabel::LeftHandedLowLoss;
    SweepRecord poled;
    poled.omega_s_over_gamma = 14.0;
    poled.delta_p_over_gamma = 1.0;
    poled.pole = true;
    poled.pole_message = "test pole";
    grid.records = {healthy, poled};

    const std::string csv = csv_string(grid);
    CHECK(csv.find(",inf,LEFT_HANDED_LOW_LOSS") != std::string::npos);
    CHECK(csv.find("nan,nan,nan,nan,nan,nan,nan,POLE_ERROR") != std::string::npos);
    // the pole affects only its own row
    CHECK(csv.find("14,0,-1,0,-1,0,-1,0,inf,LEFT_HANDED_LOW_LOSS") != std::string::npos);
}

TEST_CASE("run_sweep: pole errors mark rows instead of aborting") {
    // gamma31 = 0 with gamma_c = 0 makes the A0 denominator vanish everywhere
    std::istringstream in("gamma31 = 0\n"
                          "gamma_c = 0\n"
                          "delta_p_from = -1\n"
                          "delta_p_to = 1\n"
                          "delta_p_steps = 3\n"
                          "omega_s = 14\n");
    const SweepConfig cfg = parse_config(in);
    const SweepGrid grid = run_sweep(cfg);
    REQUIRE(grid.records.size() == 3);
    for (const auto& r : grid.records) {
        CHECK(r.pole);
        CHECK_FALSE(r.pole_message.empty());
    }
}

TEST_CASE("emit_plotdata: block structure") {
    const SweepConfig cfg = small_config();
    const SweepGrid grid = run_sweep(cfg);
    const std::string path = "/tmp/lhm_plotdata_test.txt";
    emit_plotdata(grid, path);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::size_t blank_lines = 0, comment_lines = 0;
    for (std::string line; std::getline(f, line);) {
        if (line.empty()) ++blank_lines;
        if (!line.empty() && line[0] == '#') ++comment_lines;
    }
    // one block per (overlay, observable)
    CHECK(comment_lines == 2 * 7);
    CHECK(blank_lines == 2 * 7);
    std::remove(path.c_str());
    std::remove((path + std::string(".gp")).c_str());
}

TEST_CASE("sweep config round trip into absolute units") {
    const SweepConfig cfg = small_config();
    const DriveConfig d = cfg.drive(2.0, 14.0);
    CHECK(d.omega_pe == 0.05 * 1e7);
    CHECK(d.omega_s == 14.0 * 1e7);
    CHECK(d.delta_p == 2.0 * 1e7);
    // omega_pm defaults to the shared-beam coupling
    CHECK_THAT(d.omega_pm,
               Catch::Matchers::WithinRel(
                   probe_magnetic_rabi(0.05 * 1e7, 2.5e-29, 7.0e-23), 1e-14));
    // explicit override wins
    SweepConfig o = cfg;
    o.omega_pm = 0.01;
    CHECK(o.drive(0.0, 14.0).omega_pm == 0.01 * 1e7);
}
