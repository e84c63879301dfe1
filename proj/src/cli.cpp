// SPDX-License-Identifier: Apache-2.0
#include "rimnull/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rimnull/config.hpp"
#include "rimnull/csv_io.hpp"
#include "rimnull/efficiency.hpp"
#include "rimnull/errors.hpp"
#include "rimnull/nullsteer.hpp"
#include "rimnull/plot.hpp"
#include "rimnull/sweep.hpp"

namespace rimnull {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Options {
    std::string config_path;
    int workers = 0;
    std::string output_override;
    std::string states_path;
    bool resume = false;
};

struct Context {
    RunConfig cfg;
    int workers = 1;
    fs::path out_dir;
    std::ostream& log;

    std::string path(const std::string& name) const { return (out_dir / name).string(); }
    Provenance provenance(const std::string& kind) const { return Provenance::from(cfg, kind); }
};

Context make_context(const Options& opt, std::ostream& log)
{
    Context ctx{load_run_config(opt.config_path), 1, {}, log};
    ctx.workers = opt.workers > 0 ? opt.workers : ctx.cfg.resolved_workers();
    ctx.out_dir = opt.output_override.empty() ? fs::path(ctx.cfg.output_directory) : fs::path(opt.output_override);
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) {
        throw ConfigError("output.directory: cannot create '" + ctx.out_dir.string() + "': " + ec.message());
    }
    return ctx;
}

Json header_json(const Context& ctx, const std::string& kind)
{
    const auto& c = ctx.cfg;
    const DishConfig dish = c.dish();
    Json j;
    j["rimnull_version"] = std::string(code_version());
    j["kind"] = kind;
    j["config_hash"] = config_hash(c);
    j["mesh"] = {{"samples_per_wavelength", c.mesh.samples_per_wavelength},
                 {"cell_subdivisions", c.mesh.cell_subdivisions}};
    j["dyads"] = std::string(to_string(c.dyad_kind));
    j["units"] = "angles in degrees; directivity and gain in dBi (10log10); field magnitudes 20log10";
    j["dish"] = {{"diameter_m", c.diameter},
                 {"inner_diameter_m", c.inner_diameter},
                 {"focal_length_m", c.focal_length},
                 {"frequency_hz", c.frequency},
                 {"wavelength_m", dish.wavelength()},
                 {"rim_angle_deg", rad_to_deg(dish.rim_angle())},
                 {"boundary_angle_deg", rad_to_deg(dish.boundary_angle())},
                 {"feed_exponent", c.feed_exponent},
                 {"polarization", std::string(to_string(c.polarization))}};
    j["workers"] = ctx.workers;
    return j;
}

Json peak_json(const PeakResult& peak)
{
    return {{"directivity_db", peak.d_co_db},
            {"theta_z_deg", rad_to_deg(peak.direction.theta_z)},
            {"phi_deg", rad_to_deg(peak.direction.phi)}};
}

Json efficiency_json(const EfficiencyReport& r)
{
    return {{"e_r", r.e_r}, {"eta_s_eta_t", r.eta_s_eta_t}, {"eta_ap", r.eta_ap}, {"gain_db", r.gain_db}};
}

void write_json(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

FarFieldResult run_cut(const Context& ctx, const CurrentSheet& sheet, double p_rad)
{
    const auto& p = ctx.cfg.pattern;
    return pattern_cut(sheet, ctx.cfg.polarization, p_rad, ctx.cfg.cut_azimuth(), p.theta_min, p.theta_max, p.step,
                       ctx.workers);
}

// Writes <stem>.csv and <stem>.svg; returns the CSV path.
std::string emit_pattern(const Context& ctx, const std::string& stem, const std::string& kind,
                         const FarFieldResult& cut, const std::string& reference_csv = {})
{
    const std::string csv = ctx.path(stem + ".csv");
    {
        std::ofstream out(csv);
        write_pattern_csv(out, ctx.provenance(kind), cut, ctx.cfg.cut_azimuth());
    }
    const CsvTable table = read_csv_file(csv);
    if (reference_csv.empty()) {
        write_text_file(ctx.path(stem + ".svg"), pattern_svg(table));
    } else {
        const CsvTable ref = read_csv_file(reference_csv);
        write_text_file(ctx.path(stem + ".svg"), pattern_svg(table, &ref));
    }
    return csv;
}

void emit_switch_map(const Context& ctx, const std::string& csv_path, std::span<const UnitCell> cells,
                     std::span<const SwitchState> states)
{
    {
        std::ofstream out(csv_path);
        write_switch_map_csv(out, ctx.provenance("switch_map"), cells, states);
    }
    const fs::path svg = fs::path(csv_path).replace_extension(".svg");
    write_text_file(svg.string(), state_map_svg(read_csv_file(csv_path)));
}

ImsModel solid_model(const RunConfig& cfg)
{
    return ImsModel(cfg.dish().solid(), DyadSource::pec(), cfg.mesh, cfg.feed_amplitude);
}

ImsModel ims_model(const RunConfig& cfg)
{
    ImsModel model(cfg.dish(), cfg.dyad_source(), cfg.mesh, cfg.feed_amplitude);
    if (model.cells().empty()) {
        throw ConfigError("dish.inner_diameter_m: no reflectarray cells fit between the inner and outer diameter");
    }
    return model;
}

const NullConfig& require_null(const RunConfig& cfg, const char* command)
{
    if (!cfg.null) {
        throw ConfigError(std::string("null.theta_z_deg: the ") + command + " command needs a [null] section");
    }
    return *cfg.null;
}

int cmd_reference(const Options& opt, std::ostream& log)
{
    const auto start = Clock::now();
    const Context ctx = make_context(opt, log);
    const ImsModel model = solid_model(ctx.cfg);
    log << "reference: " << model.reflector_mesh().size() << " surface samples, " << ctx.workers << " workers\n";

    const auto t_cut = Clock::now();
    const FarFieldResult cut = run_cut(ctx, model.reflector_currents(), model.p_rad());
    const double cut_seconds = seconds_since(t_cut);
    const PeakResult peak = find_peak(model.reflector_currents(), ctx.cfg.polarization, model.p_rad(), ctx.workers);
    const double e_r = radiation_efficiency(reflection_samples(model, {}));
    const double eta = ctx.cfg.spillover_taper.value_or(kSpilloverTaperFullDish);
    const auto report = efficiency_report(e_r, eta, ctx.cfg.diameter, model.dish().wavelength());

    const std::string csv = emit_pattern(ctx, "reference_pattern", "reference_pattern_cut", cut);
    Json j = header_json(ctx, "reference_summary");
    j["p_rad_w"] = model.p_rad();
    j["peak"] = peak_json(peak);
    j["efficiency"] = efficiency_json(report);
    j["cut"] = {{"file", fs::path(csv).filename().string()},
                {"phi_deg", rad_to_deg(ctx.cfg.cut_azimuth())},
                {"points", cut.directions.size()},
                {"seconds", cut_seconds}};
    j["seconds"] = seconds_since(start);
    write_json(ctx.path("reference_summary.json"), j);
    log << "peak D_co " << format_double(peak.d_co_db) << " dBi, e_r " << format_double(e_r) << ", cut "
        << cut.directions.size() << " points in " << cut_seconds << " s\n";
    return kExitOk;
}

struct DesignRun {
    ImsModel model;
    NullDesign design;
};

DesignRun run_design(const Context& ctx)
{
    const NullConfig& null = require_null(ctx.cfg, "design");
    ImsModel model = ims_model(ctx.cfg);
    ctx.log << "design: " << model.reflector_mesh().size() << " surface samples, " << model.cells().size()
            << " cells, " << ctx.workers << " workers\n";
    NullDesign design = design_null(model, NullSpec{null.direction, null.states}, ctx.workers);
    return {std::move(model), std::move(design)};
}

Json null_json(const Context& ctx, const ImsModel& model, const CurrentSheet& sheet, const Direction& null,
               const CurrentSheet& reference)
{
    const Polarization pol = ctx.cfg.polarization;
    const double ref_db = directivity_db(ludwig_field(radiate(reference, null, ctx.workers), null, pol).co,
                                         model.p_rad());
    const double ims_db =
        directivity_db(ludwig_field(radiate(sheet, null, ctx.workers), null, pol).co, model.p_rad());
    return {{"theta_z_deg", rad_to_deg(null.theta_z)},
            {"phi_deg", rad_to_deg(null.phi)},
            {"reference_db", ref_db},
            {"ims_db", ims_db},
            {"null_depth_db", ref_db - ims_db}};
}

Json ideal_mode_note(const RunConfig& cfg)
{
    Json notes = Json::array();
    if (cfg.dyad_kind == DyadKind::ideal_one_bit) {
        notes.push_back(
            "ideal_one_bit applies exact +j / -j reflection in every cell; it stands in for a fixed, "
            "passive reflectarray whose patch sizes would be synthesised per cell, so its directivity is "
            "expected near but not equal to such a design");
    }
    return notes;
}

int cmd_design(const Options& opt, std::ostream& log)
{
    const auto start = Clock::now();
    const Context ctx = make_context(opt, log);
    const DesignRun run = run_design(ctx);
    const ImsModel& model = run.model;
    const auto dyads = apply_states(model, run.design.config);
    const CurrentSheet sheet = model.currents(dyads);

    const ImsModel solid = solid_model(ctx.cfg);
    const FarFieldResult ref_cut = run_cut(ctx, solid.reflector_currents(), solid.p_rad());
    const std::string ref_csv = emit_pattern(ctx, "reference_pattern", "reference_pattern_cut", ref_cut);
    const FarFieldResult cut = run_cut(ctx, sheet, model.p_rad());
    emit_pattern(ctx, "design_pattern", "design_pattern_cut", cut, ref_csv);
    emit_switch_map(ctx, ctx.path("switch_map.csv"), model.cells(), run.design.config.states);

    const PeakResult peak = find_peak(sheet, ctx.cfg.polarization, model.p_rad(), ctx.workers);
    const double e_r = radiation_efficiency(reflection_samples(model, dyads));
    const auto report = efficiency_report(e_r, ctx.cfg.eta_s_eta_t(), ctx.cfg.diameter, model.dish().wavelength());
    const auto& states = run.design.config.states;
    const auto n_on = std::count(states.begin(), states.end(), SwitchState::on);

    Json j = header_json(ctx, "design_summary");
    j["rings"] = model.cells().empty() ? 0 : model.cells().back().ring + 1;
    j["cells"] = model.cells().size();
    j["cells_on"] = n_on;
    j["p_rad_w"] = model.p_rad();
    j["null"] = null_json(ctx, model, sheet, run.design.null.direction, solid.reflector_currents());
    j["null"]["t0_abs"] = std::abs(run.design.t0);
    j["null"]["residual_abs"] = std::abs(run.design.config.residual);
    j["peak"] = peak_json(peak);
    j["efficiency"] = efficiency_json(report);
    j["notes"] = ideal_mode_note(ctx.cfg);
    j["seconds"] = seconds_since(start);
    write_json(ctx.path("design_summary.json"), j);
    log << "rings " << j["rings"] << ", cells " << model.cells().size() << " (" << n_on << " on), null depth "
        << format_double(j["null"]["null_depth_db"].get<double>()) << " dB, peak D_co " << format_double(peak.d_co_db)
        << " dBi, e_r " << format_double(e_r) << "\n";
    return kExitOk;
}

int cmd_pattern(const Options& opt, std::ostream& log)
{
    const Context ctx = make_context(opt, log);
    const bool has_annulus = ctx.cfg.inner_diameter < ctx.cfg.diameter;
    const ImsModel model = has_annulus ? ims_model(ctx.cfg) : solid_model(ctx.cfg);
    std::vector<ReflectionDyad> dyads;
    if (has_annulus) {
        const std::string states_path = opt.states_path.empty() ? ctx.path("switch_map.csv") : opt.states_path;
        if (!fs::exists(states_path)) {
            throw ConfigError("states: no switch map at '" + states_path + "' (run design or states import first)");
        }
        dyads = apply_states(model, read_switch_map(read_csv_file(states_path), model.cells()));
        log << "pattern: states from " << states_path << "\n";
    }
    const CurrentSheet sheet = model.currents(dyads);
    const FarFieldResult cut = run_cut(ctx, sheet, model.p_rad());
    emit_pattern(ctx, "pattern", "pattern_cut", cut);
    const PeakResult peak = find_peak(sheet, ctx.cfg.polarization, model.p_rad(), ctx.workers);
    const double e_r = radiation_efficiency(reflection_samples(model, dyads));
    const auto report = efficiency_report(e_r, ctx.cfg.eta_s_eta_t(), ctx.cfg.diameter, model.dish().wavelength());

    Json j = header_json(ctx, "pattern_summary");
    j["p_rad_w"] = model.p_rad();
    j["peak"] = peak_json(peak);
    j["efficiency"] = efficiency_json(report);
    if (ctx.cfg.null) {
        const ImsModel solid = solid_model(ctx.cfg);
        j["null"] = null_json(ctx, model, sheet, ctx.cfg.null->direction, solid.reflector_currents());
    }
    write_json(ctx.path("pattern_summary.json"), j);
    log << "peak D_co " << format_double(peak.d_co_db) << " dBi, e_r " << format_double(e_r) << "\n";
    return kExitOk;
}

// Drops a torn final line so appended rows start on a fresh line.
void trim_partial_line(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    if (!text.empty() && text.back() != '\n') {
        const auto nl = text.find_last_of('\n');
        text.erase(nl == std::string::npos ? 0 : nl + 1);
        write_text_file(path, text);
    }
}

int cmd_sweep(const Options& opt, std::ostream& log)
{
    const auto start = Clock::now();
    const Context ctx = make_context(opt, log);
    if (ctx.cfg.sweep.theta_z.empty()) {
        throw ConfigError("sweep.theta_z_deg: the sweep command needs a [sweep] section");
    }
    const auto grid = null_grid(ctx.cfg.sweep.theta_z, ctx.cfg.sweep.phi);
    const ImsModel model = ims_model(ctx.cfg);
    const ImsModel solid = solid_model(ctx.cfg);

    const std::string checkpoint = ctx.path("sweep.checkpoint");
    std::map<std::size_t, SweepRecord> completed;
    const bool resuming = opt.resume && fs::exists(checkpoint);
    if (resuming) {
        std::ifstream in(checkpoint);
        completed = read_checkpoint(in, config_hash(ctx.cfg), grid);
        trim_partial_line(checkpoint);
    }
    log << "sweep: " << grid.size() << " points, " << completed.size() << " already done, " << ctx.workers
        << " workers\n";

    std::ofstream csv(ctx.path("sweep.csv"));
    std::ofstream timing(ctx.path("sweep_timing.csv"));
    std::ofstream ckpt(checkpoint, resuming ? std::ios::app : std::ios::trunc);
    write_sweep_header(csv, ctx.provenance("sweep"));
    write_timing_header(timing, ctx.provenance("sweep_timing"));
    if (!resuming) {
        write_checkpoint_header(ckpt, ctx.provenance("sweep_checkpoint"));
        ckpt.flush();
    }

    std::size_t failed = 0;
    double min_depth = std::numeric_limits<double>::infinity();
    double max_depth = -std::numeric_limits<double>::infinity();
    run_sweep(
        model, solid.reflector_currents(), grid, ctx.workers,
        [&](const SweepRecord& rec, double seconds, bool resumed) {
            write_sweep_row(csv, rec);
            write_timing_row(timing, rec.index, seconds, resumed);
            csv.flush();
            timing.flush();
            if (!resumed) {
                write_checkpoint_row(ckpt, rec);
                ckpt.flush();
            }
            if (rec.ok) {
                min_depth = std::min(min_depth, rec.null_depth_db);
                max_depth = std::max(max_depth, rec.null_depth_db);
            } else {
                ++failed;
            }
        },
        completed);

    Json j = header_json(ctx, "sweep_summary");
    j["points"] = grid.size();
    j["resumed"] = completed.size();
    j["failed"] = failed;
    j["null_depth_db"] = {{"min", min_depth}, {"max", max_depth}};
    j["seconds"] = seconds_since(start);
    write_json(ctx.path("sweep_summary.json"), j);
    log << "sweep done: " << grid.size() - failed << " ok, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitNumeric;
}

int cmd_states_export(const Options& opt, std::ostream& log)
{
    const Context ctx = make_context(opt, log);
    const DesignRun run = run_design(ctx);
    const std::string path = opt.states_path.empty() ? ctx.path("switch_map.csv") : opt.states_path;
    emit_switch_map(ctx, path, run.model.cells(), run.design.config.states);
    log << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_states_import(const Options& opt, std::ostream& log)
{
    const Context ctx = make_context(opt, log);
    const ImsModel model = ims_model(ctx.cfg);
    const auto states = read_switch_map(read_csv_file(opt.states_path), model.cells());
    const std::string path = ctx.path("switch_map.csv");
    emit_switch_map(ctx, path, model.cells(), states);
    const double e_r = radiation_efficiency(reflection_samples(model, apply_states(model, states)));
    Json j = header_json(ctx, "states_summary");
    j["source"] = opt.states_path;
    j["cells"] = states.size();
    j["cells_on"] = std::count(states.begin(), states.end(), SwitchState::on);
    j["e_r"] = e_r;
    write_json(ctx.path("states_summary.json"), j);
    log << "imported " << states.size() << " states into " << path << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Reflector antenna with a switchable rim reflectarray: patterns and null steering", "rimnull"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(code_version()));
    Options opt;
    app.add_option("--workers", opt.workers, "Worker threads (default: RIMNULL_WORKERS, run.workers, or all cores)")
        ->check(CLI::NonNegativeNumber);

    const auto with_config = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opt.config_path, "Run configuration (INI)")->required();
        sub->add_option("-o,--output", opt.output_override, "Output directory (overrides output.directory)");
    };
    auto* reference = app.add_subcommand("reference", "Pattern of the solid PEC dish");
    with_config(reference);
    auto* design = app.add_subcommand("design", "Serial-search switch states for the configured null");
    with_config(design);
    auto* pattern = app.add_subcommand("pattern", "Pattern for a saved switch map");
    with_config(pattern);
    pattern->add_option("--states", opt.states_path, "Switch map CSV (default: <output>/switch_map.csv)");
    auto* sweep = app.add_subcommand("sweep", "Null designs over a grid of directions");
    with_config(sweep);
    sweep->add_flag("--resume", opt.resume, "Skip points already in <output>/sweep.checkpoint");
    auto* states = app.add_subcommand("states", "Switch map export and import");
    states->require_subcommand(1);
    auto* exp = states->add_subcommand("export", "Design and write the switch map only");
    with_config(exp);
    exp->add_option("--to", opt.states_path, "Destination CSV (default: <output>/switch_map.csv)");
    auto* imp = states->add_subcommand("import", "Validate a switch map against the tessellation and adopt it");
    with_config(imp);
    imp->add_option("--from", opt.states_path, "Switch map CSV to import")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o;
        std::ostringstream eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*reference) {
            return cmd_reference(opt, out);
        }
        if (*design) {
            return cmd_design(opt, out);
        }
        if (*pattern) {
            return cmd_pattern(opt, out);
        }
        if (*sweep) {
            return cmd_sweep(opt, out);
        }
        if (*exp) {
            return cmd_states_export(opt, out);
        }
        if (*imp) {
            return cmd_states_import(opt, out);
        }
    } catch (const ConfigError& e) {
        err << "rimnull: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const LookupError& e) {
        err << "rimnull: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "rimnull: numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitConfig;
}

}  // namespace rimnull
