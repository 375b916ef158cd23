#pragma once

// Seeded deterministic generators used by property scenarios and tests.

#include <random>

#include "homsim/biphoton.hpp"
#include "homsim/spectral.hpp"

namespace homsim {

// Haar-distributed 2x2 unitary.
Mat2 random_unitary(std::mt19937_64& rng);

// Random polynomial spectral phase phi(omega) = sum_m c_m x^m with
// x = (omega - w0)/u_max and coefficients uniform in [-amplitude, amplitude],
// sampled on both half-spectra.  Orders 0..max_order.
PhaseMask random_smooth_phase(const SpectralGrid& grid, int max_order,
                              double amplitude, std::mt19937_64& rng);

// Random strictly-positive smooth spectrum: a mixture of a broad Gaussian
// and a randomly placed narrower one, normalized on the grid.
Spectrum random_spectrum(const SpectralGrid& grid, std::mt19937_64& rng);

// Independent uniform phase samples in [-amplitude, amplitude] on every bin
// of both half-spectra.
PhaseMask random_sample_mask(const SpectralGrid& grid, double amplitude,
                             std::mt19937_64& rng);

}  // namespace homsim
