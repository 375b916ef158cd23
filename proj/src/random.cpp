#include "homsim/random.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace homsim {

Mat2 random_unitary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    const double phi = std::acos(std::sqrt(unit(rng)));
    const double psi = two_pi * unit(rng);
    const double chi = two_pi * unit(rng);
    const double global = two_pi * unit(rng);
    const std::complex<double> i{0.0, 1.0};
    Mat2 u;
    u << std::exp(i * psi) * std::cos(phi), std::exp(i * chi) * std::sin(phi),
        -std::exp(-i * chi) * std::sin(phi), std::exp(-i * psi) * std::cos(phi);
    return std::exp(i * global) * u;
}

PhaseMask random_smooth_phase(const SpectralGrid& grid, int max_order,
                              double amplitude, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coeff(-amplitude, amplitude);
    std::vector<double> c(max_order + 1);
    for (double& v : c) v = coeff(rng);
    auto eval = [&](double detuning) {
        const double x = detuning / grid.detuning_max;
        double phase = 0.0;
        double xn = 1.0;
        for (double v : c) {
            phase += v * xn;
            xn *= x;
        }
        return phase;
    };
    PhaseMask m = mask_zero(grid);
    for (int k = 0; k < grid.n_bins; ++k) {
        m.phase_upper[k] = eval(grid.detuning(k));
        m.phase_lower[k] = eval(-grid.detuning(k));
    }
    return m;
}

Spectrum random_spectrum(const SpectralGrid& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double broad = grid.detuning_max * (0.10 + 0.20 * unit(rng));
    const double narrow = grid.detuning_max * (0.02 + 0.08 * unit(rng));
    const double center = grid.detuning_max * 0.6 * unit(rng);
    const double weight = unit(rng);
    std::vector<std::complex<double>> samples(grid.n_bins);
    for (int k = 0; k < grid.n_bins; ++k) {
        const double u = grid.detuning(k);
        const double p =
            (1.0 - weight) * std::exp(-u * u / (2.0 * broad * broad)) +
            weight * std::exp(-(u - center) * (u - center) /
                              (2.0 * narrow * narrow));
        samples[k] = std::sqrt(p);
    }
    return spectrum_from_samples(grid, samples);
}

PhaseMask random_sample_mask(const SpectralGrid& grid, double amplitude,
                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(-amplitude, amplitude);
    PhaseMask m = mask_zero(grid);
    for (int k = 0; k < grid.n_bins; ++k) {
        m.phase_upper[k] = phase(rng);
        m.phase_lower[k] = phase(rng);
    }
    return m;
}

}  // namespace homsim
