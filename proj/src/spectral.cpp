#include "homsim/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homsim {

namespace detail {

void require_same_grid(const SpectralGrid& a, const SpectralGrid& b,
                       const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace detail

SpectralGrid make_grid(double omega0, double detuning_max, int n_bins) {
    if (n_bins < 2)
        throw std::invalid_argument("make_grid: n_bins must be >= 2");
    if (!(detuning_max > 0.0) || !std::isfinite(detuning_max))
        throw std::invalid_argument("make_grid: detuning_max must be positive");
    if (!(omega0 > detuning_max) || !std::isfinite(omega0))
        throw std::invalid_argument(
            "make_grid: omega0 must exceed detuning_max (negative absolute "
            "frequency)");
    return SpectralGrid{omega0, detuning_max, n_bins};
}

namespace {

Spectrum normalized_from_power(const SpectralGrid& grid,
                               const std::vector<double>& power) {
    double total = 0.0;
    for (double p : power) total += p;
    total *= grid.spacing();
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("spectrum: power not normalizable");
    Spectrum s;
    s.grid = grid;
    s.amplitude.resize(power.size());
    for (std::size_t k = 0; k < power.size(); ++k)
        s.amplitude[k] = std::sqrt(power[k] / total);
    return s;
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

Spectrum spectrum_gaussian(const SpectralGrid& grid, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("spectrum_gaussian: sigma must be positive");
    std::vector<double> power(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k) {
        const double u = grid.detuning(k);
        power[k] = std::exp(-u * u / (2.0 * sigma * sigma));
    }
    return normalized_from_power(grid, power);
}

Spectrum spectrum_type1(const SpectralGrid& grid, double curvature) {
    if (!(curvature > 0.0) || !std::isfinite(curvature))
        throw std::invalid_argument(
            "spectrum_type1: curvature must be positive");
    std::vector<double> power(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k) {
        const double u = grid.detuning(k);
        const double s = sinc(curvature * u * u);
        power[k] = s * s;
    }
    return normalized_from_power(grid, power);
}

Spectrum spectrum_from_samples(const SpectralGrid& grid,
                               std::span<const std::complex<double>> samples) {
    if (static_cast<int>(samples.size()) != grid.n_bins)
        throw std::invalid_argument(
            "spectrum_from_samples: expected " + std::to_string(grid.n_bins) +
            " samples, got " + std::to_string(samples.size()));
    double total = 0.0;
    for (const auto& a : samples) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw std::invalid_argument(
                "spectrum_from_samples: non-finite amplitude");
        total += std::norm(a);
    }
    total *= grid.spacing();
    if (!(total > 0.0))
        throw std::invalid_argument("spectrum_from_samples: zero power");
    Spectrum s;
    s.grid = grid;
    s.amplitude.assign(samples.begin(), samples.end());
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : s.amplitude) a *= scale;
    return s;
}

PhaseMask mask_zero(const SpectralGrid& grid) {
    PhaseMask m;
    m.grid = grid;
    m.phase_upper.assign(grid.n_bins, 0.0);
    m.phase_lower.assign(grid.n_bins, 0.0);
    return m;
}

PhaseMask mask_linear(const SpectralGrid& grid, double slope) {
    if (!std::isfinite(slope))
        throw std::invalid_argument("mask_linear: non-finite slope");
    PhaseMask m = mask_zero(grid);
    for (int k = 0; k < grid.n_bins; ++k) {
        m.phase_upper[k] = slope * grid.upper_frequency(k);
        m.phase_lower[k] = slope * grid.lower_frequency(k);
    }
    return m;
}

PhaseMask mask_pi_step(const SpectralGrid& grid, double step_offset) {
    if (!std::isfinite(step_offset))
        throw std::invalid_argument("mask_pi_step: non-finite step offset");
    PhaseMask m = mask_zero(grid);
    for (int k = 0; k < grid.n_bins; ++k) {
        if (grid.detuning(k) > step_offset)
            m.phase_upper[k] = std::numbers::pi;
        if (-grid.detuning(k) > step_offset)
            m.phase_lower[k] = std::numbers::pi;
    }
    return m;
}

PhaseMask mask_custom(const SpectralGrid& grid, std::span<const double> upper,
                      std::span<const double> lower) {
    if (static_cast<int>(upper.size()) != grid.n_bins ||
        static_cast<int>(lower.size()) != grid.n_bins)
        throw std::invalid_argument(
            "mask_custom: expected " + std::to_string(grid.n_bins) +
            " samples per half-spectrum, got " + std::to_string(upper.size()) +
            "/" + std::to_string(lower.size()));
    for (int k = 0; k < grid.n_bins; ++k)
        if (!std::isfinite(upper[k]) || !std::isfinite(lower[k]))
            throw std::invalid_argument("mask_custom: non-finite phase at bin " +
                                        std::to_string(k));
    PhaseMask m;
    m.grid = grid;
    m.phase_upper.assign(upper.begin(), upper.end());
    m.phase_lower.assign(lower.begin(), lower.end());
    return m;
}

PhaseMask add_masks(const PhaseMask& a, const PhaseMask& b) {
    detail::require_same_grid(a.grid, b.grid, "add_masks");
    PhaseMask m = a;
    for (int k = 0; k < m.grid.n_bins; ++k) {
        m.phase_upper[k] += b.phase_upper[k];
        m.phase_lower[k] += b.phase_lower[k];
    }
    return m;
}

PhaseMask theta_xy(const PhaseMask& mask_x, const PhaseMask& mask_y) {
    detail::require_same_grid(mask_x.grid, mask_y.grid, "theta_xy");
    PhaseMask t;
    t.grid = mask_x.grid;
    t.phase_upper.resize(t.grid.n_bins);
    t.phase_lower.resize(t.grid.n_bins);
    for (int k = 0; k < t.grid.n_bins; ++k) {
        t.phase_upper[k] = mask_x.phase_upper[k] - mask_y.phase_upper[k];
        t.phase_lower[k] = mask_x.phase_lower[k] - mask_y.phase_lower[k];
    }
    return t;
}

std::vector<double> antisymmetric_part(const PhaseMask& theta) {
    std::vector<double> a(theta.grid.n_bins);
    for (int k = 0; k < theta.grid.n_bins; ++k)
        a[k] = 0.5 * (theta.phase_upper[k] - theta.phase_lower[k]);
    return a;
}

std::vector<double> symmetric_part(const PhaseMask& theta) {
    std::vector<double> s(theta.grid.n_bins);
    for (int k = 0; k < theta.grid.n_bins; ++k)
        s[k] = 0.5 * (theta.phase_upper[k] + theta.phase_lower[k]);
    return s;
}

}  // namespace homsim
