#include "homsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "homsim/bell.hpp"
#include "homsim/random.hpp"
#include "json.hpp"

namespace homsim::scenario {

namespace {

using nlohmann::json;

constexpr double kDegree = std::numbers::pi / 180.0;

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error("config parse error in " + path.string() + ": " +
                           e.what());
    }
    return j;
}

const json& require_field(const json& j, const std::string& key,
                          const std::string& context) {
    auto it = j.find(key);
    if (it == j.end())
        throw config_error("missing config field: " + context + key);
    return *it;
}

double get_number(const json& j, const std::string& key,
                  const std::string& context) {
    const json& v = require_field(j, key, context);
    if (!v.is_number())
        throw config_error("config field " + context + key +
                           " must be a number");
    return v.get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback,
                     const std::string& context) {
    if (!j.contains(key)) return fallback;
    return get_number(j, key, context);
}

int get_int(const json& j, const std::string& key,
            const std::string& context) {
    const json& v = require_field(j, key, context);
    if (!v.is_number_integer())
        throw config_error("config field " + context + key +
                           " must be an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& context) {
    const json& v = require_field(j, key, context);
    if (!v.is_string())
        throw config_error("config field " + context + key +
                           " must be a string");
    return v.get<std::string>();
}

MaskSpec parse_mask_spec(const json& j, const std::string& context) {
    MaskSpec spec;
    spec.type = get_string(j, "type", context);
    if (spec.type == "zero") {
    } else if (spec.type == "linear") {
        spec.slope = get_number(j, "slope", context);
    } else if (spec.type == "pi-step") {
        spec.offset = get_number(j, "offset", context);
    } else if (spec.type == "file") {
        spec.path = get_string(j, "path", context);
    } else {
        throw config_error("config field " + context +
                           "type: unknown mask type '" + spec.type + "'");
    }
    return spec;
}

std::vector<double> linspace(double lo, double hi, int count,
                             const char* what) {
    if (count < 2)
        throw config_error(std::string("config: ") + what +
                           " count must be at least 2");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    return v;
}

std::string format_int(long long v) { return std::to_string(v); }

std::string fmt_fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

BellLabel label_from_name(const std::string& name) {
    if (name == "phi_plus") return BellLabel::PhiPlus;
    if (name == "phi_minus") return BellLabel::PhiMinus;
    if (name == "psi_plus") return BellLabel::PsiPlus;
    if (name == "psi_minus") return BellLabel::PsiMinus;
    throw config_error("config field bell.recipe: unknown recipe '" + name +
                       "'");
}

struct Workspace {
    SpectralGrid grid;
    Spectrum spectrum;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> metadata;
    std::filesystem::path out_csv;
};

std::filesystem::path resolve(const ScenarioConfig& config,
                              const std::filesystem::path& p) {
    if (p.is_absolute()) return p;
    return config.base_dir / p;
}

PhaseMask build_mask(const MaskSpec& spec, const ScenarioConfig& config,
                     const SpectralGrid& grid) {
    if (spec.type == "zero") return mask_zero(grid);
    if (spec.type == "linear") return mask_linear(grid, spec.slope);
    if (spec.type == "pi-step") return mask_pi_step(grid, spec.offset);
    return parse_custom_mask(resolve(config, spec.path), grid);
}

void write_rows_csv(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& metadata,
                    const std::string& header,
                    const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path.string());
    for (const auto& [key, value] : metadata)
        out << "# " << key << " = " << value << "\n";
    out << header << "\n";
    for (const auto& row : rows) out << row << "\n";
    if (!out) throw io_error("failed writing output file: " + path.string());
}

void write_bell_csv(const std::filesystem::path& path,
                    const BellCurves& curves,
                    std::map<std::string, std::string> metadata) {
    metadata["parameter"] = "alpha_rad";
    metadata["state"] = to_string(curves.state_label);
    std::vector<std::string> rows;
    rows.reserve(curves.alphas.size());
    for (std::size_t i = 0; i < curves.alphas.size(); ++i)
        rows.push_back(format_value(curves.alphas[i]) + "," +
                       format_value(curves.r_orth[i]) + "," +
                       format_value(curves.r_same[i]));
    write_rows_csv(path, metadata, "parameter,r_orth,r_same", rows);
}

void run_hom_scan(const ScenarioConfig& config, Workspace& ws,
                  const RunOptions& options, std::ostream& summary,
                  const std::optional<PhaseMask>& mask_x,
                  const std::optional<PhaseMask>& mask_y) {
    const std::vector<double> delays =
        linspace(config.delay_min, config.delay_max, config.delay_count,
                 "delay");
    ScanCurve curve = hom_scan(ws.spectrum, delays, mask_x, mask_y, config.mu);
    curve.metadata.insert(ws.metadata.begin(), ws.metadata.end());
    write_scan_csv(ws.out_csv, curve);

    std::size_t extremum = 0;
    for (std::size_t i = 0; i < curve.rates.size(); ++i)
        if (std::abs(curve.rates[i] - 1.0) >
            std::abs(curve.rates[extremum] - 1.0))
            extremum = i;
    if (!options.quiet)
        summary << config.scenario << ": points=" << curve.rates.size()
                << " extremum_rate=" << fmt_sci(curve.rates[extremum])
                << " at_delay=" << fmt_sci(curve.parameter_values[extremum])
                << " visibility=" << fmt_fixed(visibility(curve)) << "\n";
}

void run_step_scan(const ScenarioConfig& config, Workspace& ws,
                   const RunOptions& options, std::ostream& summary) {
    const std::vector<double> offsets =
        linspace(config.offset_min, config.offset_max, config.offset_count,
                 "offset");
    ScanCurve curve = step_scan(ws.spectrum, offsets, config.mu);
    curve.metadata.insert(ws.metadata.begin(), ws.metadata.end());
    write_scan_csv(ws.out_csv, curve);

    std::size_t peak = 0;
    for (std::size_t i = 0; i < curve.rates.size(); ++i)
        if (curve.rates[i] > curve.rates[peak]) peak = i;
    if (!options.quiet)
        summary << "step-scan: points=" << curve.rates.size()
                << " peak_rate=" << fmt_fixed(curve.rates[peak])
                << " at_offset=" << fmt_sci(curve.parameter_values[peak])
                << " visibility=" << fmt_fixed(visibility(curve)) << "\n";
}

void run_bell(const ScenarioConfig& config, Workspace& ws,
              const RunOptions& options, std::ostream& summary) {
    const BellLabel label = label_from_name(config.recipe);
    const BiphotonState state = synthesize(recipe_for(label), ws.spectrum);
    const double f = fidelity(state, label);

    if (!(config.alpha_step_deg > 0.0))
        throw config_error("config field bell.alpha_step_deg must be positive");
    std::vector<double> alphas;
    for (double a = config.alpha_start_deg; a <= config.alpha_stop_deg + 1e-9;
         a += config.alpha_step_deg)
        alphas.push_back(a * kDegree);
    std::vector<double> alphas_diag(alphas);
    for (double& a : alphas_diag) a += std::numbers::pi / 4.0;

    const BellCurves curves = bell_curves(state, alphas, config.mu, label);
    const BellCurves diag = bell_curves(state, alphas_diag, config.mu, label);

    ws.metadata["recipe"] = config.recipe;
    ws.metadata["rate_scale"] = "plateau-1 (unpolarized orthogonal split = 1)";
    write_bell_csv(ws.out_csv, curves, ws.metadata);
    std::filesystem::path diag_path = ws.out_csv;
    diag_path.replace_filename(ws.out_csv.stem().string() + "_diag" +
                               ws.out_csv.extension().string());
    auto diag_meta = ws.metadata;
    diag_meta["basis"] = "alpha + 45 deg";
    write_bell_csv(diag_path, diag, diag_meta);

    std::string vis_text = "visibilities=undefined";
    try {
        const CurveVisibilities v = curve_visibilities(curves);
        vis_text = "v_orth=" + fmt_fixed(v.v_orth) +
                   " v_same=" + fmt_fixed(v.v_same);
    } catch (const std::invalid_argument&) {
    }
    // the two-basis fringe witness is uninformative for the
    // rotation-invariant states (their analysis curves carry no fringe)
    std::string bound_text = "n/a";
    if (label == BellLabel::PhiMinus || label == BellLabel::PsiPlus) {
        try {
            bound_text = fmt_fixed(fidelity_lower_bound(curves, diag));
        } catch (const std::invalid_argument&) {
            bound_text = "undefined";
        }
    }
    const CauchySchwarzResult cs =
        cauchy_schwarz(state, maximal_fringe_alpha(label), config.mu);

    if (!options.quiet)
        summary << "bell[" << to_string(label)
                << "]: fidelity=" << fmt_fixed(f) << " " << vis_text
                << " fidelity_lower_bound=" << bound_text
                << " cauchy_schwarz="
                << (cs.violated ? "violated" : "not_violated")
                << " (lhs=" << fmt_sci(cs.lhs) << ", rhs=" << fmt_sci(cs.rhs)
                << ")\n";
}

void run_custom_mask(const ScenarioConfig& config, Workspace& ws,
                     const RunOptions& options, std::ostream& summary) {
    const PhaseMask mask_x =
        parse_custom_mask(resolve(config, config.mask_x_path), ws.grid);
    const PhaseMask mask_y =
        parse_custom_mask(resolve(config, config.mask_y_path), ws.grid);
    const PhaseMask theta = theta_xy(mask_x, mask_y);

    ws.metadata["mask_x"] = config.mask_x_path.string();
    ws.metadata["mask_y"] = config.mask_y_path.string();
    run_hom_scan(config, ws, options, summary, mask_x, mask_y);

    const double rc0 = coincidence_closed_form(ws.spectrum, theta, config.mu);
    const ZeroCoincidenceCertificate cert =
        zero_coincidence_certificate(ws.spectrum, theta);
    if (!options.quiet) {
        summary << "custom-mask: rc_at_zero_delay=" << fmt_fixed(rc0)
                << " zero_coincidence_possible="
                << (cert.exists ? "yes" : "no");
        if (cert.exists)
            summary << " witness_delay=" << fmt_sci(cert.witness_delay);
        else
            summary << " linearity_residual=" << fmt_sci(cert.max_residual);
        summary << "\n";
    }
}

void run_dfs_check(const ScenarioConfig& config, Workspace& ws,
                   const RunOptions& options, std::ostream& summary) {
    if (config.n_channels < 1)
        throw config_error("config field dfs.n_channels must be positive");
    const BiphotonState singlet =
        synthesize(recipe_for(BellLabel::PsiMinus), ws.spectrum);
    const BiphotonState control =
        bell_state(BellLabel::PhiPlus, ws.spectrum);

    std::vector<double> alphas;
    for (int d = 0; d <= 180; d += 15) alphas.push_back(d * kDegree);

    std::mt19937_64 rng(ws.seed);
    std::vector<std::string> rows;
    double min_f_singlet = 1.0, max_r_same = 0.0;
    int degraded = 0;
    for (int ch = 0; ch < config.n_channels; ++ch) {
        const PhaseMask dispersion = random_smooth_phase(
            ws.grid, config.phase_order, config.phase_amplitude, rng);
        const Mat2 u = random_unitary(rng);
        const BiphotonState singlet_out =
            fiber_channel(singlet, dispersion, u);
        const BiphotonState control_out =
            fiber_channel(control, dispersion, u);

        const double fs = fidelity(singlet_out, BellLabel::PsiMinus);
        const double fc = fidelity(control_out, BellLabel::PhiPlus);
        double r_same = 0.0;
        for (double a : alphas) {
            const DetectionConfig cfg{
                a, DetectionMode::Same,
                std::numeric_limits<double>::infinity(), 1.0};
            r_same = std::max(r_same, coincidence_oracle(singlet_out, cfg));
        }
        min_f_singlet = std::min(min_f_singlet, fs);
        max_r_same = std::max(max_r_same, r_same);
        if (fc < 0.99) ++degraded;
        rows.push_back(format_int(ch) + "," + format_value(fs) + "," +
                       format_value(r_same) + "," + format_value(fc));
    }
    ws.metadata["parameter"] = "channel";
    ws.metadata["channels"] = format_int(config.n_channels);
    ws.metadata["phase_order"] = format_int(config.phase_order);
    ws.metadata["phase_amplitude"] = format_value(config.phase_amplitude);
    write_rows_csv(ws.out_csv, ws.metadata,
                   "parameter,fidelity_singlet,r_same_max,fidelity_phi_plus",
                   rows);
    if (!options.quiet)
        summary << "dfs-check: channels=" << config.n_channels
                << " singlet_min_fidelity=" << fmt_fixed(min_f_singlet)
                << " singlet_max_r_same=" << fmt_sci(max_r_same)
                << " phi_plus_degraded=" << degraded << "/"
                << config.n_channels << "\n";
}

}  // namespace

ScenarioConfig load_config(const std::filesystem::path& path) {
    const json j = load_json(path);
    ScenarioConfig c;
    c.base_dir = path.has_parent_path() ? path.parent_path()
                                        : std::filesystem::path(".");

    const json& grid = require_field(j, "grid", "");
    c.omega0 = get_number(grid, "omega0", "grid.");
    c.detuning_max = get_number(grid, "detuning_max", "grid.");
    c.n_bins = get_int(grid, "n_bins", "grid.");

    const json& spectrum = require_field(j, "spectrum", "");
    c.spectrum_model = get_string(spectrum, "model", "spectrum.");
    if (c.spectrum_model == "gaussian") {
        c.sigma = get_number(spectrum, "sigma", "spectrum.");
    } else if (c.spectrum_model == "type1") {
        c.curvature = get_number(spectrum, "curvature", "spectrum.");
    } else if (c.spectrum_model == "custom-file") {
        c.spectrum_path = get_string(spectrum, "path", "spectrum.");
    } else {
        throw config_error("config field spectrum.model: unknown model '" +
                           c.spectrum_model + "'");
    }

    c.mu = get_number_or(j, "mu", 1.0, "");
    if (j.contains("seed")) {
        const json& s = j.at("seed");
        if (!s.is_number_unsigned())
            throw config_error("config field seed must be a non-negative "
                               "integer");
        c.seed = s.get<std::uint64_t>();
    }
    c.scenario = get_string(j, "scenario", "");
    c.output = get_string(j, "output", "");
    if (c.output.empty())
        throw config_error("config field output must not be empty");

    if (c.scenario == "hom-scan" || c.scenario == "custom-mask") {
        const char* section =
            c.scenario == "hom-scan" ? "hom_scan" : "custom_mask";
        const json& s = require_field(j, section, "");
        const std::string ctx = std::string(section) + ".";
        c.delay_min = get_number(s, "delay_min", ctx);
        c.delay_max = get_number(s, "delay_max", ctx);
        c.delay_count = get_int(s, "delay_count", ctx);
        if (c.scenario == "hom-scan") {
            if (s.contains("extra_mask_x"))
                c.extra_mask_x =
                    parse_mask_spec(s.at("extra_mask_x"), ctx + "extra_mask_x.");
            if (s.contains("extra_mask_y"))
                c.extra_mask_y =
                    parse_mask_spec(s.at("extra_mask_y"), ctx + "extra_mask_y.");
        } else {
            c.mask_x_path = get_string(s, "mask_x", ctx);
            c.mask_y_path = get_string(s, "mask_y", ctx);
        }
    } else if (c.scenario == "step-scan") {
        const json& s = require_field(j, "step_scan", "");
        c.offset_min = get_number(s, "offset_min", "step_scan.");
        c.offset_max = get_number(s, "offset_max", "step_scan.");
        c.offset_count = get_int(s, "offset_count", "step_scan.");
    } else if (c.scenario == "bell") {
        const json& s = require_field(j, "bell", "");
        c.recipe = get_string(s, "recipe", "bell.");
        c.alpha_start_deg = get_number_or(s, "alpha_start_deg", 0.0, "bell.");
        c.alpha_stop_deg = get_number_or(s, "alpha_stop_deg", 180.0, "bell.");
        c.alpha_step_deg = get_number_or(s, "alpha_step_deg", 5.0, "bell.");
    } else if (c.scenario == "dfs-check") {
        const json& s = require_field(j, "dfs", "");
        c.n_channels = get_int(s, "n_channels", "dfs.");
        c.phase_order = 5;
        if (s.contains("phase_order")) c.phase_order =
            get_int(s, "phase_order", "dfs.");
        c.phase_amplitude =
            get_number_or(s, "phase_amplitude", std::numbers::pi, "dfs.");
    } else {
        throw config_error("config field scenario: unknown scenario '" +
                           c.scenario + "'");
    }
    return c;
}

void run(const ScenarioConfig& config, const RunOptions& options,
         std::ostream& summary) {
    Workspace ws;
    ws.grid = make_grid(config.omega0, config.detuning_max, config.n_bins);
    if (config.spectrum_model == "gaussian") {
        ws.spectrum = spectrum_gaussian(ws.grid, config.sigma);
        ws.metadata["spectrum.sigma"] = format_value(config.sigma);
    } else if (config.spectrum_model == "type1") {
        ws.spectrum = spectrum_type1(ws.grid, config.curvature);
        ws.metadata["spectrum.curvature"] = format_value(config.curvature);
    } else {
        ws.spectrum = parse_custom_spectrum(
            resolve(config, config.spectrum_path), ws.grid);
        ws.metadata["spectrum.path"] = config.spectrum_path.string();
    }
    ws.seed = options.seed.value_or(config.seed);
    ws.metadata["grid.omega0"] = format_value(config.omega0);
    ws.metadata["grid.detuning_max"] = format_value(config.detuning_max);
    ws.metadata["grid.n_bins"] = format_int(config.n_bins);
    ws.metadata["spectrum.model"] = config.spectrum_model;
    ws.metadata["mu"] = format_value(config.mu);
    ws.metadata["seed"] = format_int(static_cast<long long>(ws.seed));
    ws.metadata["scenario"] = config.scenario;

    std::error_code ec;
    std::filesystem::create_directories(options.output_dir, ec);
    if (ec)
        throw io_error("cannot create output directory: " +
                       options.output_dir.string());
    ws.out_csv = options.output_dir / config.output;

    if (config.scenario == "hom-scan") {
        std::optional<PhaseMask> mx, my;
        if (config.extra_mask_x)
            mx = build_mask(*config.extra_mask_x, config, ws.grid);
        if (config.extra_mask_y)
            my = build_mask(*config.extra_mask_y, config, ws.grid);
        run_hom_scan(config, ws, options, summary, mx, my);
    } else if (config.scenario == "step-scan") {
        run_step_scan(config, ws, options, summary);
    } else if (config.scenario == "bell") {
        run_bell(config, ws, options, summary);
    } else if (config.scenario == "custom-mask") {
        run_custom_mask(config, ws, options, summary);
    } else if (config.scenario == "dfs-check") {
        run_dfs_check(config, ws, options, summary);
    } else {
        throw config_error("unknown scenario '" + config.scenario + "'");
    }
}

namespace {

// Shared reader for the two-column sample files.
std::vector<std::pair<double, double>> read_sample_rows(
    const std::filesystem::path& path, int expected_rows) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open sample file: " + path.string());
    std::vector<std::pair<double, double>> rows;
    std::string line;
    int data_row = 0;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        ++data_row;
        std::istringstream fields(line);
        double a = 0.0, b = 0.0;
        std::string extra;
        if (!(fields >> a >> b) || (fields >> extra))
            throw config_error("sample file " + path.string() +
                               ": malformed data row " +
                               std::to_string(data_row) +
                               " (expected two numeric columns)");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw config_error("sample file " + path.string() +
                               ": non-finite value at data row " +
                               std::to_string(data_row));
        rows.emplace_back(a, b);
    }
    if (static_cast<int>(rows.size()) != expected_rows)
        throw config_error("sample file " + path.string() + ": expected " +
                           std::to_string(expected_rows) +
                           " data rows, found " +
                           std::to_string(rows.size()));
    return rows;
}

}  // namespace

PhaseMask parse_custom_mask(const std::filesystem::path& path,
                            const SpectralGrid& grid) {
    const auto rows = read_sample_rows(path, grid.n_bins);
    std::vector<double> upper(grid.n_bins), lower(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k) {
        upper[k] = rows[k].first;
        lower[k] = rows[k].second;
    }
    return mask_custom(grid, upper, lower);
}

Spectrum parse_custom_spectrum(const std::filesystem::path& path,
                               const SpectralGrid& grid) {
    const auto rows = read_sample_rows(path, grid.n_bins);
    std::vector<std::complex<double>> samples(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k)
        samples[k] = {rows[k].first, rows[k].second};
    return spectrum_from_samples(grid, samples);
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void write_scan_csv(const std::filesystem::path& path,
                    const ScanCurve& curve) {
    auto metadata = curve.metadata;
    metadata["parameter"] = curve.parameter_name;
    metadata["normalization"] = format_value(curve.normalization);
    std::vector<std::string> rows;
    rows.reserve(curve.rates.size());
    for (std::size_t i = 0; i < curve.rates.size(); ++i)
        rows.push_back(format_value(curve.parameter_values[i]) + "," +
                       format_value(curve.rates[i]));
    write_rows_csv(path, metadata, "parameter,rate", rows);
}

}  // namespace homsim::scenario
