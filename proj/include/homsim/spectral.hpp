#pragma once

// Spectral discretization for collinear degenerate photon pairs.
//
// The pair occupies the conjugate frequencies (w0 + u, w0 - u) where w0 is
// the degenerate frequency (half the pump) and u > 0 is the detuning.  All
// spectral quantities live on a uniform midpoint grid over u in (0, u_max]:
//
//   u_k = (k + 1/2) * du,   du = u_max / n_bins,   k = 0 .. n_bins-1.
//
// There is deliberately no sample at u = 0; the exactly-degenerate pair is a
// set of measure zero and keeping it off-grid makes the map between bins and
// conjugate frequency pairs injective.

#include <complex>
#include <span>
#include <vector>

namespace homsim {

struct SpectralGrid {
    double omega0 = 0.0;        // degenerate frequency w0 = w_p / 2
    double detuning_max = 0.0;  // half-width u_max of the simulated band
    int n_bins = 0;

    double spacing() const { return detuning_max / n_bins; }
    // midpoint detuning of bin k
    double detuning(int k) const { return (k + 0.5) * spacing(); }
    double upper_frequency(int k) const { return omega0 + detuning(k); }
    double lower_frequency(int k) const { return omega0 - detuning(k); }

    bool operator==(const SpectralGrid&) const = default;
};

// Validates invariants: n_bins >= 2, u_max > 0, w0 > u_max (no negative
// absolute frequencies on the lower half).
SpectralGrid make_grid(double omega0, double detuning_max, int n_bins);

// Complex spectral amplitude g(u_k) of the pair, normalized as a probability
// density over detuning: sum_k |g_k|^2 du = 1.
struct Spectrum {
    SpectralGrid grid;
    std::vector<std::complex<double>> amplitude;

    double power(int k) const { return std::norm(amplitude[k]); }
};

// |g|^2 ~ exp(-u^2 / (2 sigma^2)); the reference model with closed-form
// interference curves.
Spectrum spectrum_gaussian(const SpectralGrid& grid, double sigma);

// |g|^2 ~ sinc^2(b u^2), the degenerate type-I down-conversion shape (phase
// mismatch quadratic in detuning).  sinc(0) = 1.
Spectrum spectrum_type1(const SpectralGrid& grid, double curvature);

// Spectrum from caller-supplied complex samples; renormalized on the grid.
Spectrum spectrum_from_samples(const SpectralGrid& grid,
                               std::span<const std::complex<double>> samples);

// A sampled spectral phase theta(omega) over the full band, stored as the
// values at the conjugate frequencies of each bin:
//   phase_upper[k] = theta(w0 + u_k),  phase_lower[k] = theta(w0 - u_k).
struct PhaseMask {
    SpectralGrid grid;
    std::vector<double> phase_upper;
    std::vector<double> phase_lower;
};

PhaseMask mask_zero(const SpectralGrid& grid);

// theta(omega) = slope * omega (a group delay of `slope` across the band).
PhaseMask mask_linear(const SpectralGrid& grid, double slope);

// theta(omega) = pi for omega > w0 + step_offset, 0 otherwise.  Half-open
// convention: the step frequency itself gets 0.  step_offset may be negative.
PhaseMask mask_pi_step(const SpectralGrid& grid, double step_offset);

// Caller samples, stored verbatim.  Rejects wrong lengths and non-finite
// entries.
PhaseMask mask_custom(const SpectralGrid& grid, std::span<const double> upper,
                      std::span<const double> lower);

// Pointwise sum of two masks on the same grid.
PhaseMask add_masks(const PhaseMask& a, const PhaseMask& b);

// The phase difference between the two shaper arms,
//   Theta(u) = theta_X(w0 + u) - theta_Y(w0 + u),
// evaluated on both halves of the band and returned as a PhaseMask holding
// Theta(+u_k) / Theta(-u_k).
PhaseMask theta_xy(const PhaseMask& mask_x, const PhaseMask& mask_y);

// Decomposition about w0:  antisym[k] = (Theta(+u_k) - Theta(-u_k)) / 2,
// sym[k] = (Theta(+u_k) + Theta(-u_k)) / 2.  Recombining reproduces the
// input exactly:  upper = sym + antisym, lower = sym - antisym.
std::vector<double> antisymmetric_part(const PhaseMask& theta);
std::vector<double> symmetric_part(const PhaseMask& theta);

namespace detail {
void require_same_grid(const SpectralGrid& a, const SpectralGrid& b,
                       const char* where);
}

}  // namespace homsim
