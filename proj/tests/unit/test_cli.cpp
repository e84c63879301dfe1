// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rimnull/cli.hpp"
#include "rimnull/csv_io.hpp"
#include "support.hpp"

using namespace rimnull;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "rimnull");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const char* const kSmallDish =
    "[dish]\ndiameter_m = 3\ninner_diameter_m = 2.7\nfocal_length_m = 1.2\nfrequency_hz = 1.5e9\n"
    "[pattern]\ntheta_min_deg = -10\ntheta_max_deg = 10\nstep_deg = 0.5\n"
    "[run]\nworkers = 1\n";

fs::path write_config(const fs::path& dir, const std::string& name, const std::string& text)
{
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
}

nlohmann::json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("usage errors exit with the config code")
{
    CHECK(cli({}).code == kExitConfig);
    CHECK(cli({"frobnicate"}).code == kExitConfig);
    CHECK(cli({"reference"}).code == kExitConfig);
    CHECK(cli({"--help"}).code == kExitOk);
    const Run version = cli({"--version"});
    CHECK(version.code == kExitOk);
    CHECK(version.out.find(std::string(code_version())) != std::string::npos);
}

TEST_CASE("configuration problems exit 1 with the field named")
{
    const auto dir = test::temp_dir("cli_config");
    const auto bad = write_config(dir, "bad.ini", "[dish]\ndiameter_m = -3\n");
    const Run r = cli({"reference", "-c", bad.string()});
    CHECK(r.code == kExitConfig);
    CHECK(r.err.find("config error: dish.diameter_m") != std::string::npos);

    const auto no_null = write_config(dir, "no_null.ini", kSmallDish);
    const Run d = cli({"design", "-c", no_null.string(), "-o", (dir / "o").string()});
    CHECK(d.code == kExitConfig);
    CHECK(d.err.find("null.theta_z_deg") != std::string::npos);

    const Run missing = cli({"pattern", "-c", no_null.string(), "-o", (dir / "empty").string()});
    CHECK(missing.code == kExitConfig);
    CHECK(missing.err.find("no switch map") != std::string::npos);

    CHECK(cli({"reference", "-c", (dir / "absent.ini").string()}).code == kExitConfig);
}

TEST_CASE("reference, design, export, import and pattern on a small dish")
{
    const auto dir = test::temp_dir("cli_flow");
    const auto cfg = write_config(dir, "run.ini", std::string(kSmallDish) + "[null]\ntheta_z_deg = 6\nphi_deg = 30\n");
    const std::string out = (dir / "out").string();

    const Run ref = cli({"reference", "-c", cfg.string(), "-o", out});
    REQUIRE(ref.code == kExitOk);
    const auto ref_summary = read_json(fs::path(out) / "reference_summary.json");
    CHECK(ref_summary["efficiency"]["e_r"].get<double>() == doctest::Approx(1.0));
    CHECK(ref_summary["cut"]["points"].get<int>() == 41);
    CHECK(fs::exists(fs::path(out) / "reference_pattern.svg"));
    const CsvTable ref_csv = read_csv_file((fs::path(out) / "reference_pattern.csv").string());
    CHECK(ref_csv.rows.size() == 41);
    CHECK(ref_csv.meta.at("kind") == "reference_pattern_cut");

    const Run design = cli({"design", "-c", cfg.string(), "-o", out});
    REQUIRE(design.code == kExitOk);
    const auto summary = read_json(fs::path(out) / "design_summary.json");
    CHECK(summary["null"]["null_depth_db"].get<double>() > 15.0);
    CHECK(summary["cells"].get<int>() > 0);
    CHECK(summary["efficiency"]["e_r"].get<double>() >= 0.985);
    for (const char* f : {"design_pattern.csv", "design_pattern.svg", "switch_map.csv", "switch_map.svg"}) {
        CHECK(fs::exists(fs::path(out) / f));
    }

    const std::string exported = (dir / "exported.csv").string();
    REQUIRE(cli({"states", "export", "-c", cfg.string(), "-o", out, "--to", exported}).code == kExitOk);
    const std::string imported_dir = (dir / "imported").string();
    REQUIRE(cli({"states", "import", "-c", cfg.string(), "-o", imported_dir, "--from", exported}).code == kExitOk);
    const auto states_summary = read_json(fs::path(imported_dir) / "states_summary.json");
    CHECK(states_summary["cells_on"].get<int>() == summary["cells_on"].get<int>());

    REQUIRE(cli({"pattern", "-c", cfg.string(), "-o", imported_dir}).code == kExitOk);
    const auto pattern_summary = read_json(fs::path(imported_dir) / "pattern_summary.json");
    CHECK(pattern_summary["null"]["null_depth_db"].get<double>() ==
          doctest::Approx(summary["null"]["null_depth_db"].get<double>()).epsilon(1e-12));
    CHECK(pattern_summary["peak"]["directivity_db"].get<double>() ==
          doctest::Approx(summary["peak"]["directivity_db"].get<double>()).epsilon(1e-12));

    // A switch map for another tessellation is refused.
    const auto wrong = write_config(dir, "wrong.ini",
                                    "[dish]\ndiameter_m = 3\ninner_diameter_m = 2.6\nfocal_length_m = 1.2\n");
    const Run refused = cli({"states", "import", "-c", wrong.string(), "-o", (dir / "x").string(), "--from", exported});
    CHECK(refused.code == kExitConfig);
}

TEST_CASE("sweep resumes from its checkpoint")
{
    const auto dir = test::temp_dir("cli_sweep");
    const auto cfg = write_config(dir, "sweep.ini", std::string(kSmallDish) + "[sweep]\ntheta_z_deg = 5, 7\nphi_deg = 0, 90\n");
    const std::string out = (dir / "out").string();
    REQUIRE(cli({"sweep", "-c", cfg.string(), "-o", out}).code == kExitOk);
    const CsvTable full = read_csv_file((fs::path(out) / "sweep.csv").string());
    REQUIRE(full.rows.size() == 4);

    // Keep the header and two completed rows, plus half of a third.
    const fs::path ckpt = fs::path(out) / "sweep.checkpoint";
    std::ifstream in(ckpt);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    std::size_t pos = 0;
    int data_lines = 0;
    while (data_lines < 2) {
        const std::size_t end = text.find('\n', pos);
        REQUIRE(end != std::string::npos);
        if (text[pos] != '#' && text.compare(pos, 5, "index") != 0) {
            ++data_lines;
        }
        pos = end + 1;
    }
    REQUIRE(pos > 0);
    std::ofstream(ckpt, std::ios::trunc) << text.substr(0, pos) << text.substr(pos, 15);

    const Run resumed = cli({"sweep", "-c", cfg.string(), "-o", out, "--resume"});
    REQUIRE(resumed.code == kExitOk);
    const CsvTable again = read_csv_file((fs::path(out) / "sweep.csv").string());
    CHECK(again.rows == full.rows);
    const CsvTable timing = read_csv_file((fs::path(out) / "sweep_timing.csv").string());
    CHECK(timing.text(0, "resumed") == "1");
    CHECK(timing.text(1, "resumed") == "1");
    CHECK(timing.text(2, "resumed") == "0");
    const auto summary = read_json(fs::path(out) / "sweep_summary.json");
    CHECK(summary["resumed"].get<int>() == 2);

    // The repaired checkpoint now covers every point.
    std::ifstream ck(ckpt);
    const std::vector<double> thetas{deg_to_rad(5.0), deg_to_rad(7.0)};
    const std::vector<double> phis{0.0, deg_to_rad(90.0)};
    const auto grid = null_grid(thetas, phis);
    CHECK(read_checkpoint(ck, full.meta.at("config_hash"), grid).size() == 4);
}

TEST_CASE("failed sweep points exit with the numeric code")
{
    const auto dir = test::temp_dir("cli_numeric");
    std::ofstream(dir / "off_only.csv") << "off,1.5e9,31.25,1,-90,0,0,0,0,1,-90\n";
    const auto cfg = write_config(dir, "run.ini",
                                  std::string(kSmallDish) +
                                      "[dyads]\nsource = user_table\ntable = off_only.csv\n[sweep]\ntheta_z_deg = 6\n");
    const Run r = cli({"sweep", "-c", cfg.string(), "-o", (dir / "out").string()});
    CHECK(r.code == kExitNumeric);
    const auto summary = read_json(dir / "out" / "sweep_summary.json");
    CHECK(summary["failed"].get<int>() == 1);
}

TEST_CASE("shipped sample configurations parse")
{
    const char* root = std::getenv("RIMNULL_TEST_CONFIGS");
    REQUIRE(root != nullptr);
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.path().extension() == ".ini") {
            INFO(entry.path().string());
            CHECK_NOTHROW(load_run_config(entry.path().string()));
        }
    }
}
