#pragma once

// Configuration-driven front end: parses a JSON scenario file, runs the
// requested scan or analysis, writes CSV curve files and prints a one-line
// summary per key scalar.
//
// Output is deterministic: the same config and seed produce byte-identical
// CSV files (fixed 12-significant-digit scientific formatting, '\n' line
// endings, sorted metadata keys).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "homsim/interference.hpp"
#include "homsim/spectral.hpp"

namespace homsim::scenario {

// Config file or referenced-input format problems (exit code 2).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failures (exit code 4).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaskSpec {
    std::string type;  // "zero" | "linear" | "pi-step" | "file"
    double slope = 0.0;
    double offset = 0.0;
    std::filesystem::path path;
};

struct ScenarioConfig {
    // grid
    double omega0 = 0.0;
    double detuning_max = 0.0;
    int n_bins = 0;
    // spectrum
    std::string spectrum_model;  // "gaussian" | "type1" | "custom-file"
    double sigma = 0.0;
    double curvature = 0.0;
    std::filesystem::path spectrum_path;
    // common
    double mu = 1.0;
    std::uint64_t seed = 0;
    std::string scenario;  // "hom-scan" | "step-scan" | "bell" |
                           // "custom-mask" | "dfs-check"
    std::string output;    // CSV file name
    // hom-scan / custom-mask
    double delay_min = 0.0, delay_max = 0.0;
    int delay_count = 0;
    std::optional<MaskSpec> extra_mask_x, extra_mask_y;
    std::filesystem::path mask_x_path, mask_y_path;
    // step-scan
    double offset_min = 0.0, offset_max = 0.0;
    int offset_count = 0;
    // bell
    std::string recipe;  // "phi_plus" | "phi_minus" | "psi_plus" | "psi_minus"
    double alpha_start_deg = 0.0, alpha_stop_deg = 180.0, alpha_step_deg = 5.0;
    // dfs-check
    int n_channels = 0;
    int phase_order = 5;
    double phase_amplitude = 0.0;

    std::filesystem::path base_dir;  // directory of the config file;
                                     // referenced paths resolve against it
};

ScenarioConfig load_config(const std::filesystem::path& path);

struct RunOptions {
    std::filesystem::path output_dir = ".";
    std::optional<std::uint64_t> seed;  // overrides the config seed
    bool quiet = false;
};

// Executes the scenario; writes CSV files under options.output_dir and
// summary lines to `summary` (unless quiet).  Throws config_error, io_error
// or std::invalid_argument (numeric precondition violations).
void run(const ScenarioConfig& config, const RunOptions& options,
         std::ostream& summary);

// Mask sample file: '#' comment lines, then exactly n_bins data rows of two
// whitespace-separated columns (value at w0 + u_k, value at w0 - u_k).
PhaseMask parse_custom_mask(const std::filesystem::path& path,
                            const SpectralGrid& grid);

// Spectrum sample file, same layout; columns are Re g(u_k) and Im g(u_k).
// The amplitude is normalized on the grid after loading.
Spectrum parse_custom_spectrum(const std::filesystem::path& path,
                               const SpectralGrid& grid);

// Fixed CSV formatting helpers (12 significant digits, scientific).
std::string format_value(double v);
void write_scan_csv(const std::filesystem::path& path, const ScanCurve& curve);

}  // namespace homsim::scenario
