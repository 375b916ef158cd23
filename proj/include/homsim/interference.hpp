#pragma once

// Coincidence rates between the two PBS output ports.
//
// Two independent routes to the same observable:
//
//  * coincidence_closed_form evaluates the shaped-interference formula
//      R_c = 1 - mu * Re sum_k |g_k|^2 e^{i (Theta(+u_k) - Theta(-u_k))} du,
//    normalized so that the incoherent (large-delay) plateau is exactly 1.
//
//  * coincidence_oracle computes the same observable by brute force from a
//    BiphotonState: it rotates the state into the detection basis, collects
//    the detection amplitude for every ordered frequency assignment
//    (coherent over routing alternatives, incoherent over the frequency
//    difference, which distinguishes the two assignments in the long
//    coincidence-window limit), and sums the outcomes where both detectors
//    fire.
//
// Partial distinguishability enters through a single scalar mu in [0, 1]
// that scales every interference (cross) term while leaving the incoherent
// baseline fixed; operationally the rate is
//     R(mu) = mu * R_pure + (1 - mu) * R_unpolarized,
// the rate of the state mixed with polarization white noise.  mu = 1 is the
// ideal case; mu = 0 removes all polarization interference.

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "homsim/biphoton.hpp"
#include "homsim/spectral.hpp"

namespace homsim {

enum class DetectionMode {
    Orthogonal,  // R_{alpha, alpha_perp}: one detector per PBS port
    Same         // R_{alpha, alpha}: polarizer at alpha, then rotate to X;
                 // the recorded rate is half the rate of alpha-polarized
                 // pairs because each photon picks a port at random
};

struct DetectionConfig {
    double alpha = 0.0;  // analysis angle w.r.t. H, radians
    DetectionMode mode = DetectionMode::Orthogonal;
    // Coincidence-circuit window; informational.  The rates computed here
    // assume it is much longer than the biphoton correlation time.
    double coincidence_window = std::numeric_limits<double>::infinity();
    double mu = 1.0;
};

struct ScanCurve {
    std::string parameter_name;
    std::vector<double> parameter_values;
    std::vector<double> rates;
    double normalization = 1.0;  // reference plateau used for visibility
    std::map<std::string, std::string> metadata;
};

// Closed-form rate for the canonical shaped pair (beta = pi source followed
// by the two-SLM shaper), given the arm phase difference Theta_XY.  The
// bilateral sum pairs conjugate terms, so its imaginary part is pure
// roundoff; it is asserted below 1e-8 and discarded.
double coincidence_closed_form(const Spectrum& spectrum,
                               const PhaseMask& theta_xy, double mu);

// Brute-force detection-amplitude rate for an arbitrary state, same
// plateau-1 normalization.
double coincidence_oracle(const BiphotonState& state,
                          const DetectionConfig& config);

// Delay scan of the interference pattern.  For each delay tau the arms get
// opposing linear phases theta_X = +tau*omega/2, theta_Y = -tau*omega/2
// (arm phase difference tau*omega, relative group delay tau), composed with
// the optional extra masks, and the closed form is evaluated.
ScanCurve hom_scan(const Spectrum& spectrum, std::span<const double> delays,
                   const std::optional<PhaseMask>& extra_mask_x,
                   const std::optional<PhaseMask>& extra_mask_y, double mu);

// Scans the position w0 + offset of a spectral pi step at zero delay.
// R_c(offset) = 1 - mu * [P(|u| < |offset|) - P(|u| > |offset|)], so the
// magnitude of its derivative is 2 mu |g(offset)|^2.
ScanCurve step_scan(const Spectrum& spectrum, std::span<const double> offsets,
                    double mu);

// Contrast of a scan curve relative to its normalization plateau:
// (plateau - extremum)/plateau for dips, (extremum - plateau)/plateau for
// peaks, where the extremum is the point farthest from the plateau.
double visibility(const ScanCurve& curve);

struct ZeroCoincidenceCertificate {
    bool exists = false;        // true iff the antisymmetric part of Theta
                                // is linear in detuning (within tolerance)
    double witness_delay = 0.0; // the arm delay encoded in Theta; applying
                                // the opposite delay restores R_c = 0
    double max_residual = 0.0;  // worst per-bin deviation from linearity
};

// Decides whether any arm delay can null the coincidence rate: possible iff
// Theta's antisymmetric part is exactly linear in detuning (tolerance 1e-9
// rad per bin, least-squares fit).  When it exists, the closed form with the
// compensating delay is asserted below 1e-9.
ZeroCoincidenceCertificate zero_coincidence_certificate(
    const Spectrum& spectrum, const PhaseMask& theta_xy);

}  // namespace homsim
