// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "rimnull/config.hpp"
#include "rimnull/csv_io.hpp"
#include "rimnull/efficiency.hpp"
#include "rimnull/errors.hpp"
#include "rimnull/plot.hpp"
#include "support.hpp"

using namespace rimnull;

namespace {

RunConfig parse(const std::string& text, const std::string& base = ".")
{
    std::istringstream in(text);
    return parse_run_config(in, base);
}

std::string config_error(const std::string& text)
{
    try {
        parse(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

const char* const kSmall =
    "[dish]\ndiameter_m = 3\ninner_diameter_m = 2.7\nfocal_length_m = 1.2\nfrequency_hz = 1.5e9\n"
    "[null]\ntheta_z_deg = 6\nphi_deg = 30\n";

SweepRecord sample_record(std::size_t index, const Direction& d)
{
    SweepRecord r;
    r.index = index;
    r.null = d;
    r.ok = true;
    r.reference_db = 17.123456789012345;
    r.ims_db = -3.0 / 7.0;
    r.null_depth_db = r.reference_db - r.ims_db;
    r.peak_db = 33.1;
    r.peak = {1e-7, 2.5};
    r.e_r = 0.99912345;
    r.residual = 1.0 / 3.0;
    r.error = "";
    return r;
}

}  // namespace

TEST_CASE("defaults describe the solid 18 m dish")
{
    const RunConfig cfg = parse("");
    CHECK(cfg.diameter == 18.0);
    CHECK(cfg.inner_diameter == 18.0);
    CHECK(cfg.focal_length == 7.2);
    CHECK(cfg.frequency == 1.5e9);
    CHECK(cfg.feed_exponent == 1.14);
    CHECK(cfg.polarization == Polarization::y);
    CHECK(cfg.dyad_kind == DyadKind::ruc_table2);
    CHECK_FALSE(cfg.null.has_value());
    CHECK(cfg.eta_s_eta_t() == kSpilloverTaperFullDish);
    CHECK(cfg.cut_azimuth() == 0.0);
}

TEST_CASE("full config parses with units converted")
{
    const RunConfig cfg = parse(std::string(kSmall) +
                                "[feed]\npolarization = X\namplitude_v = 2\n[mesh]\ncell_subdivisions = 2\n"
                                "[dyads]\nsource = ideal_one_bit\n");
    CHECK(cfg.inner_diameter == 2.7);
    CHECK(cfg.polarization == Polarization::x);
    CHECK(cfg.mesh.cell_subdivisions == 2);
    CHECK(cfg.dyad_kind == DyadKind::ideal_one_bit);
    REQUIRE(cfg.null.has_value());
    CHECK(cfg.null->direction.theta_z == doctest::Approx(deg_to_rad(6.0)));
    CHECK(cfg.cut_azimuth() == doctest::Approx(deg_to_rad(30.0)));
    CHECK(cfg.eta_s_eta_t() == kSpilloverTaperReallocatedRim);
    CHECK(cfg.dish().boundary_angle() < cfg.dish().rim_angle());
}

TEST_CASE("sweep lists and ranges")
{
    const RunConfig cfg = parse("[sweep]\ntheta_z_deg = 1.0:2.0:0.25\nphi_deg = 0, 30 ,60\n");
    REQUIRE(cfg.sweep.theta_z.size() == 5);
    CHECK(rad_to_deg(cfg.sweep.theta_z.back()) == doctest::Approx(2.0));
    CHECK(cfg.sweep.phi.size() == 3);
    const RunConfig defaulted = parse("[sweep]\ntheta_z_deg = 3\n");
    CHECK(defaulted.sweep.phi == std::vector<double>{0.0});
}

TEST_CASE("config errors name the offending field")
{
    CHECK(config_error("[dish]\ndiameter_m = -1\n").find("dish.diameter_m") == 0);
    CHECK(config_error("[dish]\ndiameter_m = abc\n").find("dish.diameter_m") == 0);
    CHECK(config_error("[dish]\ninner_diameter_m = 19\n").find("dish.inner_diameter_m") == 0);
    CHECK(config_error("[dish]\ncolour = red\n").find("dish.colour: unknown key") == 0);
    CHECK(config_error("[antenna]\nx = 1\n").find("antenna: unknown section") == 0);
    CHECK(config_error("[feed]\npolarization = z\n").find("feed.polarization") == 0);
    CHECK(config_error("[mesh]\nsamples_per_wavelength = 1.5\n").find("mesh.samples_per_wavelength") == 0);
    CHECK(config_error("[mesh]\ncell_subdivisions = 0\n").find("mesh.cell_subdivisions") == 0);
    CHECK(config_error("[mesh]\ncell_subdivisions = 2.5\n").find("mesh.cell_subdivisions") == 0);
    CHECK(config_error("[dyads]\nsource = gold\n").find("dyads.source") == 0);
    CHECK(config_error("[dyads]\nsource = user_table\n").find("dyads.table") == 0);
    CHECK(config_error("[dyads]\ntable = x.csv\n").find("dyads.table") == 0);
    CHECK(config_error("[dyads]\nsource = user_table\ntable = /nonexistent.csv\n").find("dyads.table") == 0);
    CHECK(config_error("[null]\nphi_deg = 3\n").find("null.theta_z_deg") == 0);
    CHECK(config_error("[null]\ntheta_z_deg = 90\n").find("null.theta_z_deg") == 0);
    CHECK(config_error("[null]\ntheta_z_deg = 1\nstates = on, on\n").find("null.states") == 0);
    CHECK(config_error("[null]\ntheta_z_deg = 1\nstates = on, dim\n").find("null.states") == 0);
    CHECK(config_error("[pattern]\ntheta_min_deg = -95\n").find("pattern.theta_min_deg") == 0);
    CHECK(config_error("[pattern]\ntheta_min_deg = 5\ntheta_max_deg = 5\n").find("pattern.theta_max_deg") == 0);
    CHECK(config_error("[pattern]\nstep_deg = 0\n").find("pattern.step_deg") == 0);
    CHECK(config_error("[efficiency]\nspillover_taper = 1.2\n").find("efficiency.spillover_taper") == 0);
    CHECK(config_error("[sweep]\nphi_deg = 0\n").find("sweep.theta_z_deg") == 0);
    CHECK(config_error("[sweep]\ntheta_z_deg = 2:1:0.5\n").find("sweep.theta_z_deg") == 0);
    CHECK(config_error("[sweep]\ntheta_z_deg = 95\n").find("sweep.theta_z_deg") == 0);
    CHECK(config_error("[run]\nworkers = -2\n").find("run.workers") == 0);
    CHECK(config_error("[output]\ndirectory =\n").find("output.directory") == 0);
    CHECK(config_error("[dish]\nfrequency_hz = inf\n").find("dish.frequency_hz") == 0);
    CHECK(config_error("[dish\n").find("syntax") == 0);
    CHECK_THROWS_AS(load_run_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("user dyad table path resolves against the config directory")
{
    const auto dir = test::temp_dir("io_table");
    {
        std::ofstream t(dir / "dyads.csv");
        t << "on,1.5e9,31.25,1,90,0,0,0,0,1,90\noff,1.5e9,31.25,1,-90,0,0,0,0,1,-90\n";
        std::ofstream c(dir / "run.ini");
        c << "[dyads]\nsource = user_table\ntable = dyads.csv\n[output]\ndirectory = results\n";
    }
    const RunConfig cfg = load_run_config((dir / "run.ini").string());
    CHECK(cfg.dyad_table == (dir / "dyads.csv").lexically_normal().string());
    CHECK(cfg.output_directory == (dir / "results").lexically_normal().string());
    CHECK(cfg.dyad_table_digest != 0);
    CHECK(cfg.dyad_source().entries().size() == 2);
    CHECK(canonical_form(cfg).find("dyads.table_digest=") != std::string::npos);

    const std::string before = config_hash(cfg);
    {
        std::ofstream t(dir / "dyads.csv");
        t << "on,1.5e9,31.25,1,80,0,0,0,0,1,90\noff,1.5e9,31.25,1,-90,0,0,0,0,1,-90\n";
    }
    CHECK(config_hash(load_run_config((dir / "run.ini").string())) != before);
}

TEST_CASE("config hash ignores formatting, output location and workers")
{
    const RunConfig a = parse(kSmall);
    const RunConfig b = parse(std::string("# comment\n") +
                              "[null]\nphi_deg=30.0\ntheta_z_deg=6.000\n"
                              "[dish]\nfrequency_hz=1500000000\ndiameter_m=3.0\nfocal_length_m=1.2\n"
                              "inner_diameter_m=2.7\n[output]\ndirectory=/tmp/elsewhere\n[run]\nworkers=3\n");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a).rfind("fnv1a64:", 0) == 0);
    CHECK(config_hash(a).size() == 8 + 16);
    CHECK(config_hash(a) != config_hash(parse(std::string(kSmall) + "[mesh]\nsamples_per_wavelength = 5\n")));
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("worker count precedence")
{
    RunConfig cfg = parse("[run]\nworkers = 3\n");
    const char* env = std::getenv("RIMNULL_WORKERS");
    if (env == nullptr) {
        CHECK(cfg.resolved_workers() == 3);
    }
    cfg.workers = 0;
    CHECK(cfg.resolved_workers() >= 1);
}

TEST_CASE("CSV quoting round trip")
{
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "two lines");
    std::istringstream in("# kind test\n# rimnull 0.1.0\nx,y\n\"a,b\",\"q\"\"q\"\n1.5,-inf\n");
    const CsvTable t = read_csv(in);
    CHECK(t.meta.at("kind") == "test");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.text(0, "x") == "a,b");
    CHECK(t.text(0, "y") == "q\"q");
    CHECK(t.number(1, "x") == 1.5);
    CHECK(t.number(1, "y") == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(t.number(0, "x"), ConfigError);
    CHECK_THROWS_AS(t.column("z"), ConfigError);

    std::istringstream ragged("a,b\n1\n");
    CHECK_THROWS_AS(read_csv(ragged), ConfigError);
    std::istringstream open_quote("a\n\"x\n");
    CHECK_THROWS_AS(read_csv(open_quote), ConfigError);
}

TEST_CASE("format_double round-trips exactly")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 48.42712345678901, 1e21}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("result headers carry version, hash, mesh and units")
{
    const RunConfig cfg = parse(kSmall);
    std::ostringstream out;
    write_header(out, Provenance::from(cfg, "pattern_cut"));
    std::istringstream in(out.str() + "a\n");
    const CsvTable t = read_csv(in);
    CHECK(t.meta.at("rimnull") == code_version());
    CHECK(t.meta.at("kind") == "pattern_cut");
    CHECK(t.meta.at("config_hash") == config_hash(cfg));
    CHECK(t.meta.at("mesh") == "samples_per_wavelength=4 cell_subdivisions=3");
    CHECK(t.meta.at("dyads") == "ruc_table2");
    CHECK(t.meta.at("units").find("10log10") != std::string::npos);
}

TEST_CASE("pattern CSV round trip")
{
    const RunConfig cfg = parse(kSmall);
    FarFieldResult r;
    r.p_rad = 0.125;
    r.directions = {Direction::on_cut(-0.01, 0.5), Direction::on_cut(0.02, 0.5)};
    r.cut_angles = {-0.01, 0.02};
    r.e_co = {{1.0, -2.0}, {0.5, 0.25}};
    r.e_cr = {{0.0, 0.0}, {1e-3, 0.0}};
    r.d_co_db = {12.5, 11.0};
    r.d_cr_db = {-std::numeric_limits<double>::infinity(), -20.0};
    std::ostringstream out;
    write_pattern_csv(out, Provenance::from(cfg, "pattern_cut"), r, 0.5);
    std::istringstream in(out.str());
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.number(0, "theta_z_deg") == rad_to_deg(-0.01));
    CHECK(t.number(1, "phi_deg") == rad_to_deg(0.5));
    CHECK(t.number(0, "E_co_im") == -2.0);
    CHECK(t.number(0, "D_cr_dB") == -std::numeric_limits<double>::infinity());
    CHECK(std::stod(t.meta.at("p_rad_w")) == 0.125);
    CHECK(std::stod(t.meta.at("cut_phi_deg")) == doctest::Approx(rad_to_deg(0.5)));
}

TEST_CASE("switch map round trip and mismatch detection")
{
    const RunConfig cfg = parse(kSmall);
    const auto cells = tessellate_annulus(cfg.dish(), 1);
    REQUIRE(!cells.empty());
    std::vector<SwitchState> states(cells.size(), SwitchState::off);
    for (std::size_t i = 0; i < states.size(); i += 4) {
        states[i] = SwitchState::on;
    }
    std::ostringstream out;
    write_switch_map_csv(out, Provenance::from(cfg, "switch_map"), cells, states);
    std::istringstream in(out.str());
    const CsvTable t = read_csv(in);
    CHECK(read_switch_map(t, cells) == states);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(std::abs(t.number(i, "theta_p_deg") - rad_to_deg(cells[i].center.theta_p)) < 1e-9);
        CHECK(std::abs(t.number(i, "phi_p_deg") - rad_to_deg(cells[i].center.phi_p)) < 1e-9);
    }

    CsvTable moved = t;
    moved.rows[3][moved.column("phi_p_deg")] = "1.0";
    CHECK_THROWS_AS(read_switch_map(moved, cells), ConfigError);
    CsvTable short_map = t;
    short_map.rows.pop_back();
    CHECK_THROWS_AS(read_switch_map(short_map, cells), ConfigError);
    CsvTable bad_state = t;
    bad_state.rows[0][bad_state.column("state")] = "half";
    CHECK_THROWS_AS(read_switch_map(bad_state, cells), ConfigError);
    states.pop_back();
    std::ostringstream sink;
    CHECK_THROWS_AS(write_switch_map_csv(sink, Provenance{}, cells, states), ContractError);
}

TEST_CASE("checkpoint round trip is bit-exact")
{
    const std::vector<Direction> grid{{0.01, 0.0}, {0.02, 0.5}, {0.03, 1.0}};
    std::ostringstream out;
    Provenance p;
    p.config_hash = "fnv1a64:0123456789abcdef";
    write_checkpoint_header(out, p);
    SweepRecord a = sample_record(0, grid[0]);
    SweepRecord b = sample_record(2, grid[2]);
    b.ok = false;
    b.error = "no reflection dyad, \"on\"";
    write_checkpoint_row(out, a);
    write_checkpoint_row(out, b);
    std::istringstream in(out.str());
    const auto done = read_checkpoint(in, p.config_hash, grid);
    REQUIRE(done.size() == 2);
    CHECK(done.at(0) == a);
    CHECK(done.at(2) == b);
}

TEST_CASE("checkpoint drops a torn last line and rejects foreign files")
{
    const std::vector<Direction> grid{{0.01, 0.0}, {0.02, 0.5}};
    Provenance p;
    p.config_hash = "fnv1a64:0000000000000001";
    std::ostringstream out;
    write_checkpoint_header(out, p);
    write_checkpoint_row(out, sample_record(0, grid[0]));
    std::ostringstream second;
    write_checkpoint_row(second, sample_record(1, grid[1]));
    const std::string torn = out.str() + second.str().substr(0, 20);
    std::istringstream in(torn);
    const auto done = read_checkpoint(in, p.config_hash, grid);
    CHECK(done.size() == 1);
    CHECK(done.count(0) == 1);

    std::istringstream wrong_hash(out.str());
    CHECK_THROWS_AS(read_checkpoint(wrong_hash, "fnv1a64:ffffffffffffffff", grid), ConfigError);

    const std::vector<Direction> other{{0.05, 0.0}, {0.02, 0.5}};
    std::istringstream wrong_grid(out.str());
    CHECK_THROWS_AS(read_checkpoint(wrong_grid, p.config_hash, other), ConfigError);
}

TEST_CASE("sweep and timing CSV rows")
{
    std::ostringstream out;
    write_sweep_header(out, Provenance{});
    write_sweep_row(out, sample_record(4, {deg_to_rad(1.25), deg_to_rad(30.0)}));
    write_timing_header(out, Provenance{});
    std::istringstream in(out.str().substr(0, out.str().find("# rimnull", 10)));
    const CsvTable t = read_csv(in);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.number(0, "index") == 4);
    CHECK(t.number(0, "theta_z_deg") == doctest::Approx(1.25).epsilon(1e-14));
    CHECK(t.text(0, "status") == "ok");
    CHECK(t.number(0, "e_r") == 0.99912345);

    std::ostringstream timing;
    write_timing_row(timing, 3, 1.5, true);
    CHECK(timing.str() == "3,1.5,1\n");
}

TEST_CASE("SVG output is produced from CSV tables alone")
{
    std::istringstream pattern_in(
        "# rimnull 0.1.0\n# kind pattern_cut\n# config_hash fnv1a64:00\n# mesh samples_per_wavelength=4\n"
        "theta_z_deg,phi_deg,D_co_dB,D_cr_dB,E_co_re,E_co_im,E_cr_re,E_cr_im\n"
        "-1,0,30,-inf,0,0,0,0\n0,0,48.4,-inf,0,0,0,0\n1,0,30,5,0,0,0,0\n");
    const CsvTable pattern = read_csv(pattern_in);
    const std::string svg = pattern_svg(pattern, &pattern);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("fnv1a64:00") != std::string::npos);
    CHECK(svg.find("reference co-pol") != std::string::npos);
    CHECK(svg.find("nan") == std::string::npos);
    CHECK(pattern_svg(pattern) == pattern_svg(pattern));

    CsvTable empty = pattern;
    empty.rows.clear();
    CHECK_THROWS_AS(pattern_svg(empty), ConfigError);

    const RunConfig cfg = parse(kSmall);
    const auto cells = tessellate_annulus(cfg.dish(), 1);
    std::vector<SwitchState> states(cells.size(), SwitchState::on);
    std::ostringstream map_out;
    write_switch_map_csv(map_out, Provenance::from(cfg, "switch_map"), cells, states);
    std::istringstream map_in(map_out.str());
    const std::string map_svg = state_map_svg(read_csv(map_in));
    CHECK(map_svg.find(std::to_string(cells.size()) + " cells") != std::string::npos);
    CHECK(map_svg.find("nan") == std::string::npos);

    const auto dir = test::temp_dir("io_svg");
    write_text_file((dir / "p.svg").string(), svg);
    std::ifstream back(dir / "p.svg");
    std::ostringstream contents;
    contents << back.rdbuf();
    CHECK(contents.str() == svg);
    CHECK_THROWS(write_text_file("/nonexistent/dir/p.svg", svg));
}
